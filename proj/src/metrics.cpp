#include "faultscale/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace faultscale {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(trim(field));
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, std::size_t row,
                    const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw TraceError("bad " + what + " value '" + text + "' at row " +
                     std::to_string(row));
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void MetricTrace::validate() const {
  if (!(sample_interval > 0.0) || !std::isfinite(sample_interval)) {
    throw TraceError("sample interval must be positive");
  }
  if (start_offset < 0.0 || !std::isfinite(start_offset)) {
    throw TraceError("start offset must be non-negative");
  }
  const std::size_t n = channels[0].size();
  for (ResourceKind kind : kResourceKinds) {
    const auto& c = channel(kind);
    if (c.size() != n) {
      throw TraceError("channel length mismatch: " + std::string(to_string(kind)));
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i]) || c[i] < 0.0 || c[i] > 1.0) {
        throw TraceError("utilization out of range at row " +
                         std::to_string(i + 1) + " (" +
                         std::string(to_string(kind)) + ")");
      }
    }
  }
  if (latency_ms) {
    if (latency_ms->size() != n) throw TraceError("latency channel length mismatch");
    for (std::size_t i = 0; i < latency_ms->size(); ++i) {
      if (!std::isfinite((*latency_ms)[i]) || (*latency_ms)[i] < 0.0) {
        throw TraceError("latency out of range at row " + std::to_string(i + 1));
      }
    }
  }
}

SampleRange sample_range(const MetricTrace& trace, const Window& window) {
  const double dt = trace.sample_interval;
  const double eps = 1e-9;
  double first = std::ceil((window.start - trace.start_offset) / dt - eps);
  double last = std::ceil((window.end() - trace.start_offset) / dt - eps);
  const double n = static_cast<double>(trace.sample_count());
  first = std::clamp(first, 0.0, n);
  last = std::clamp(last, 0.0, n);
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

ResourceVector max_aggregate(const MetricTrace& trace, const Window& window) {
  if (trace.sample_count() == 0) throw TraceError("empty trace");
  if (!(window.duration > 0.0)) throw TraceError("window duration must be positive");
  SampleRange r = sample_range(trace, window);
  if (r.empty()) throw TraceError("window covers no samples");
  ResourceVector out;
  for (ResourceKind kind : kResourceKinds) {
    const auto& c = trace.channel(kind);
    out[kind] = *std::max_element(c.begin() + static_cast<long>(r.first),
                                  c.begin() + static_cast<long>(r.last));
  }
  return out;
}

double max_latency(const MetricTrace& trace, const Window& window) {
  if (!trace.latency_ms) throw TraceError("trace has no latency channel");
  SampleRange r = sample_range(trace, window);
  if (r.empty()) throw TraceError("window covers no samples");
  const auto& c = *trace.latency_ms;
  return *std::max_element(c.begin() + static_cast<long>(r.first),
                           c.begin() + static_cast<long>(r.last));
}

MetricTrace import_trace(const std::string& document) {
  std::istringstream in(document);
  std::string line;
  if (!std::getline(in, line)) throw TraceError("empty trace document");
  auto header = split(trim(line), ',');

  const std::vector<std::string> required = {"t_s", "cpu", "memory", "disk_io",
                                             "network"};
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (i >= header.size() || header[i] != required[i]) {
      throw TraceError("missing or misplaced column: " + required[i]);
    }
  }
  bool has_latency = false;
  if (header.size() == required.size() + 1) {
    if (header.back() != "latency_ms") {
      throw TraceError("unexpected column: " + header.back());
    }
    has_latency = true;
  } else if (header.size() != required.size()) {
    throw TraceError("unexpected trailing columns in trace header");
  }

  MetricTrace trace;
  if (has_latency) trace.latency_ms.emplace();
  std::vector<double> times;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw TraceError("ragged row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    times.push_back(parse_double(fields[0], row, "t_s"));
    for (std::size_t k = 0; k < kResourceCount; ++k) {
      double v = parse_double(fields[k + 1], row, header[k + 1]);
      if (v < 0.0 || v > 1.0) {
        throw TraceError("utilization out of range at row " + std::to_string(row) +
                         " (" + header[k + 1] + ")");
      }
      trace.channels[k].push_back(v);
    }
    if (has_latency) {
      double v = parse_double(fields.back(), row, "latency_ms");
      if (v < 0.0) {
        throw TraceError("latency out of range at row " + std::to_string(row));
      }
      trace.latency_ms->push_back(v);
    }
  }
  if (times.empty()) throw TraceError("trace has no samples");

  trace.start_offset = times.front();
  trace.sample_interval = times.size() > 1 ? times[1] - times[0] : 1.0;
  if (!(trace.sample_interval > 0.0)) {
    throw TraceError("non-increasing timestamps at row 2");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    double expected = trace.start_offset + static_cast<double>(i) * trace.sample_interval;
    if (std::abs(times[i] - expected) > 1e-6 * std::max(1.0, std::abs(expected))) {
      throw TraceError("non-uniform sample spacing at row " + std::to_string(i + 1));
    }
  }
  trace.validate();
  return trace;
}

MetricTrace import_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_trace(buf.str());
}

std::string export_trace(const MetricTrace& trace) {
  std::string out = "t_s,cpu,memory,disk_io,network";
  if (trace.latency_ms) out += ",latency_ms";
  out += "\n";
  for (std::size_t i = 0; i < trace.sample_count(); ++i) {
    out += fmt(trace.time_at(i));
    for (ResourceKind kind : kResourceKinds) {
      out += ",";
      out += fmt(trace.channel(kind)[i]);
    }
    if (trace.latency_ms) {
      out += ",";
      out += fmt((*trace.latency_ms)[i]);
    }
    out += "\n";
  }
  return out;
}

void export_trace_file(const MetricTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TraceError("cannot write trace file: " + path);
  out << export_trace(trace);
}

MetricTrace bucket_max(const MetricTrace& trace, double bucket_s) {
  if (!(bucket_s > 0.0)) throw TraceError("bucket size must be positive");
  MetricTrace out = trace;
  const std::size_t n = trace.sample_count();
  const auto per_bucket =
      static_cast<std::size_t>(std::max(1.0, std::round(bucket_s / trace.sample_interval)));
  for (std::size_t begin = 0; begin < n; begin += per_bucket) {
    const std::size_t end = std::min(n, begin + per_bucket);
    for (ResourceKind kind : kResourceKinds) {
      auto& c = out.channel(kind);
      double m = *std::max_element(c.begin() + static_cast<long>(begin),
                                   c.begin() + static_cast<long>(end));
      std::fill(c.begin() + static_cast<long>(begin),
                c.begin() + static_cast<long>(end), m);
    }
  }
  return out;
}

}  // namespace faultscale
