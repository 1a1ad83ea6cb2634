#include "faultscale/faults.hpp"

#include <algorithm>
#include <cmath>

#include "faultscale/rng.hpp"

namespace faultscale {

std::string_view to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::SynFlood: return "syn";
    case FaultKind::UdpFlood: return "udp";
    case FaultKind::Volumetric: return "vol";
    case FaultKind::RouterFailure: return "rtr";
    case FaultKind::DiskFailure: return "disk";
    case FaultKind::SoftwareProblem: return "app";
  }
  throw std::logic_error("invalid FaultKind");
}

FaultKind fault_kind_from_string(std::string_view name) {
  for (FaultKind kind : kFaultKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw FaultError("unknown fault kind '" + std::string(name) +
                   "', valid kinds: " + valid_fault_kind_names());
}

std::string valid_fault_kind_names() {
  std::string names;
  for (FaultKind kind : kFaultKinds) {
    if (!names.empty()) names += " ";
    names += to_string(kind);
  }
  return names;
}

FaultParams default_fault_params(FaultKind kind) {
  FaultParams p;
  p["burstable_damping"] = 0.7;
  switch (kind) {
    case FaultKind::SynFlood:
    case FaultKind::UdpFlood:
      p["saturation_level"] = 0.98;
      p["cpu_jitter_sd"] = 0.02;
      p["flood_network_level"] = 0.9;
      p["network_jitter_sd"] = 0.02;
      break;
    case FaultKind::Volumetric:
      p["cpu_add"] = 0.5;
      p["disk_io_add"] = 0.3;
      p["network_add"] = 0.3;
      break;
    case FaultKind::RouterFailure:
      p["latency_add_ms"] = 200.0;
      p["latency_jitter_ms"] = 50.0;
      p["io_wait_factor"] = 0.6;
      p["network_factor"] = 0.7;
      break;
    case FaultKind::DiskFailure:
      p["pause_fraction"] = 0.6;
      p["pause_disk_factor"] = 0.02;
      p["pause_cpu_floor"] = 0.8;
      p["backlog_cpu_surge"] = 0.6;
      p["backlog_disk_level"] = 0.95;
      p["backlog_jitter_sd"] = 0.02;
      break;
    case FaultKind::SoftwareProblem:
      p["retry_overhead"] = 0.25;
      p["burst_amplitude"] = 0.35;
      p["burst_probability"] = 0.4;
      p["latency_add_ms"] = 80.0;
      p["packet_loss_rate"] = 0.5;  // scenario metadata, not distortion math
      break;
  }
  return p;
}

FaultParams FaultScenario::effective_params() const {
  FaultParams merged = default_fault_params(kind);
  for (const auto& [key, value] : params) {
    auto it = merged.find(key);
    if (it == merged.end()) {
      throw FaultError("unknown parameter '" + key + "' for fault kind " +
                       std::string(to_string(kind)));
    }
    if (!std::isfinite(value)) {
      throw FaultError("parameter '" + key + "' must be finite");
    }
    it->second = value;
  }
  // range checks for the fraction-like parameters
  for (const char* frac : {"pause_fraction", "burst_probability",
                           "burstable_damping", "packet_loss_rate"}) {
    auto it = merged.find(frac);
    if (it != merged.end() && (it->second < 0.0 || it->second > 1.0)) {
      throw FaultError(std::string("parameter '") + frac + "' must be in [0,1]");
    }
  }
  for (const auto& [key, value] : merged) {
    if (value < 0.0) {
      throw FaultError("parameter '" + key + "' must be non-negative");
    }
  }
  return merged;
}

namespace {

double param(const FaultParams& p, const char* key) { return p.at(key); }

}  // namespace

MetricTrace apply_fault(const MetricTrace& trace, const FaultScenario& scenario,
                        bool burstable_target) {
  if (trace.sample_count() == 0) throw FaultError("empty trace");
  const FaultParams p = scenario.effective_params();

  const Window& w = scenario.window;
  if (!(w.duration > 0.0) || w.start < trace.start_offset ||
      w.start >= trace.start_offset + trace.duration()) {
    throw FaultError("fault window outside trace");
  }
  // the window may extend past the trace end; distortion applies to the
  // covered part
  SampleRange r = sample_range(trace, w);
  if (r.empty()) throw FaultError("fault window covers no samples");

  MetricTrace out = trace;
  Rng rng(mix_seed(scenario.seed, static_cast<std::uint64_t>(scenario.kind)));

  const double damping = burstable_target ? param(p, "burstable_damping") : 1.0;
  auto set_cpu = [&](std::size_t i, double raw) {
    const double base = trace.channel(ResourceKind::Cpu)[i];
    out.channel(ResourceKind::Cpu)[i] =
        clamp_utilization(base + (raw - base) * damping);
  };
  auto set_util = [&](ResourceKind kind, std::size_t i, double raw) {
    out.channel(kind)[i] = clamp_utilization(raw);
  };
  auto add_latency = [&](std::size_t i, double add) {
    if (!out.latency_ms) return;
    (*out.latency_ms)[i] = std::max(0.0, (*out.latency_ms)[i] + add);
  };

  switch (scenario.kind) {
    case FaultKind::SynFlood:
    case FaultKind::UdpFlood: {
      const double sat = param(p, "saturation_level");
      const double cpu_jit = param(p, "cpu_jitter_sd");
      const double flood = param(p, "flood_network_level");
      const double net_jit = param(p, "network_jitter_sd");
      for (std::size_t i = r.first; i < r.last; ++i) {
        const double cpu_base = trace.channel(ResourceKind::Cpu)[i];
        const double net_base = trace.channel(ResourceKind::NetworkBandwidth)[i];
        set_cpu(i, std::max(cpu_base, sat + rng.normal(0.0, cpu_jit)));
        set_util(ResourceKind::NetworkBandwidth, i,
                 std::max(net_base, flood + rng.normal(0.0, net_jit)));
      }
      break;
    }
    case FaultKind::Volumetric: {
      const double cpu_add = param(p, "cpu_add");
      const double disk_add = param(p, "disk_io_add");
      const double net_add = param(p, "network_add");
      for (std::size_t i = r.first; i < r.last; ++i) {
        set_cpu(i, trace.channel(ResourceKind::Cpu)[i] + cpu_add);
        set_util(ResourceKind::DiskIo, i,
                 trace.channel(ResourceKind::DiskIo)[i] + disk_add);
        set_util(ResourceKind::NetworkBandwidth, i,
                 trace.channel(ResourceKind::NetworkBandwidth)[i] + net_add);
      }
      break;
    }
    case FaultKind::RouterFailure: {
      const double lat_add = param(p, "latency_add_ms");
      const double lat_jit = param(p, "latency_jitter_ms");
      const double io_wait = param(p, "io_wait_factor");
      const double net_factor = param(p, "network_factor");
      for (std::size_t i = r.first; i < r.last; ++i) {
        set_cpu(i, trace.channel(ResourceKind::Cpu)[i] * io_wait);
        set_util(ResourceKind::NetworkBandwidth, i,
                 trace.channel(ResourceKind::NetworkBandwidth)[i] * net_factor);
        add_latency(i, lat_add + rng.uniform(-lat_jit, lat_jit));
      }
      break;
    }
    case FaultKind::DiskFailure: {
      // I/O pause first, then the reconnection backlog works off the queue.
      const double pause_fraction = param(p, "pause_fraction");
      const double pause_disk = param(p, "pause_disk_factor");
      const double cpu_floor = param(p, "pause_cpu_floor");
      const double surge = param(p, "backlog_cpu_surge");
      const double backlog_disk = param(p, "backlog_disk_level");
      const double jit = param(p, "backlog_jitter_sd");
      const std::size_t covered = r.count();
      const auto pause_len = static_cast<std::size_t>(
          std::floor(static_cast<double>(covered) * pause_fraction));
      for (std::size_t i = r.first; i < r.last; ++i) {
        const std::size_t k = i - r.first;
        const double cpu_base = trace.channel(ResourceKind::Cpu)[i];
        const double disk_base = trace.channel(ResourceKind::DiskIo)[i];
        if (k < pause_len) {
          const double progress =
              pause_len > 1 ? static_cast<double>(k) / static_cast<double>(pause_len - 1)
                            : 1.0;
          const double factor = 1.0 - (1.0 - cpu_floor) * progress;
          set_cpu(i, cpu_base * factor);
          set_util(ResourceKind::DiskIo, i, disk_base * pause_disk);
        } else {
          set_cpu(i, cpu_base + surge + rng.normal(0.0, jit));
          set_util(ResourceKind::DiskIo, i,
                   std::max(disk_base, backlog_disk + rng.normal(0.0, jit)));
        }
      }
      break;
    }
    case FaultKind::SoftwareProblem: {
      const double retry = param(p, "retry_overhead");
      const double amplitude = param(p, "burst_amplitude");
      const double probability = param(p, "burst_probability");
      const double lat_add = param(p, "latency_add_ms");
      for (std::size_t i = r.first; i < r.last; ++i) {
        double burst = 0.0;
        if (rng.bernoulli(probability)) burst = amplitude * rng.uniform();
        set_cpu(i, trace.channel(ResourceKind::Cpu)[i] + retry + burst);
        add_latency(i, lat_add);
      }
      break;
    }
  }
  return out;
}

}  // namespace faultscale
