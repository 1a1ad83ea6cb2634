#ifndef FAULTSCALE_METRICS_HPP
#define FAULTSCALE_METRICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultscale/resources.hpp"

namespace faultscale {

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Half-open time interval [start, start + duration) in seconds.
struct Window {
  double start = 0.0;
  double duration = 0.0;

  double end() const { return start + duration; }
  bool operator==(const Window&) const = default;
};

/// Multi-channel utilization time series at a fixed sampling interval.
/// Utilization samples are fractions of provisioned capacity in [0,1];
/// the latency channel (milliseconds, >= 0) is optional and auxiliary.
struct MetricTrace {
  double sample_interval = 1.0;  // seconds
  double start_offset = 0.0;     // seconds, timestamp of sample 0
  std::array<std::vector<double>, kResourceCount> channels;
  std::optional<std::vector<double>> latency_ms;

  std::size_t sample_count() const { return channels[0].size(); }
  double duration() const { return sample_count() * sample_interval; }
  double time_at(std::size_t i) const {
    return start_offset + static_cast<double>(i) * sample_interval;
  }

  std::vector<double>& channel(ResourceKind kind) {
    return channels[index_of(kind)];
  }
  const std::vector<double>& channel(ResourceKind kind) const {
    return channels[index_of(kind)];
  }

  /// Equal channel lengths, samples in [0,1], latency >= 0.
  void validate() const;

  bool operator==(const MetricTrace&) const = default;
};

/// Sample index range [first, last) covered by the window; clipped to the
/// trace bounds.
struct SampleRange {
  std::size_t first = 0;
  std::size_t last = 0;
  bool empty() const { return first >= last; }
  std::size_t count() const { return empty() ? 0 : last - first; }
};

SampleRange sample_range(const MetricTrace& trace, const Window& window);

/// Per-channel maximum over all samples inside the window.
/// Throws TraceError when the window covers no samples.
ResourceVector max_aggregate(const MetricTrace& trace, const Window& window);

/// Maximum of the latency channel over the window. Throws when the trace has
/// no latency channel or the window is empty.
double max_latency(const MetricTrace& trace, const Window& window);

inline double clamp_utilization(double raw) {
  if (raw < 0.0) return 0.0;
  if (raw > 1.0) return 1.0;
  return raw;
}

/// CSV import/export. Header: t_s,cpu,memory,disk_io,network[,latency_ms]
MetricTrace import_trace(const std::string& document);
MetricTrace import_trace_file(const std::string& path);
std::string export_trace(const MetricTrace& trace);
void export_trace_file(const MetricTrace& trace, const std::string& path);

/// Replaces every utilization sample with the maximum over its enclosing
/// bucket (bucket_s seconds, aligned to the trace start). Optional pre-
/// bucketing step; windowed maxima are unchanged for bucket-aligned windows.
MetricTrace bucket_max(const MetricTrace& trace, double bucket_s = 60.0);

}  // namespace faultscale

#endif
