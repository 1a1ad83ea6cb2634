#ifndef FAULTSCALE_WORKLOAD_HPP
#define FAULTSCALE_WORKLOAD_HPP

#include <array>
#include <cstdint>

#include "faultscale/metrics.hpp"
#include "faultscale/resources.hpp"

namespace faultscale {

/// Synthetic "normal state" workload: a mean-reverting noise process per
/// channel, clamped to [0,1]. Stands in for the live benchmark the scaling
/// decisions would otherwise observe.
///
/// Channel means and the CPU volatility are the headline calibration knobs;
/// the remaining channels default to lower volatility (memory and I/O move
/// slowly relative to CPU under a request-driven workload).
struct WorkloadProfile {
  ResourceVector mean{0.45, 0.50, 0.20, 0.25};          // utilization fractions
  ResourceVector volatility{0.05, 0.01, 0.02, 0.02};    // stationary std dev
  double mean_reversion_per_s = 0.1;
  double latency_mean_ms = 30.0;
  double latency_volatility_ms = 3.0;
  double duration_s = 900.0;
  double sample_interval_s = 1.0;
  std::uint64_t seed = 0;

  void validate() const;  // means in [0,1], volatility >= 0, duration > 0
};

/// Deterministic: (profile, seed) fully determines the trace.
MetricTrace generate_baseline(const WorkloadProfile& profile);

}  // namespace faultscale

#endif
