#include "faultscale/autoscaler.hpp"

#include <algorithm>
#include <cmath>

namespace faultscale {

void SloConfig::validate() const {
  if (!(target > 0.0) || target > 1.0) {
    throw std::invalid_argument("SLO target must be in (0,1]");
  }
  if (!(lookback.duration > 0.0)) {
    throw std::invalid_argument("lookback duration must be positive");
  }
}

SloConfig slo_preset(const std::string& name) {
  // sloNN -> target NN/100
  if (name.size() > 3 && name.rfind("slo", 0) == 0) {
    const std::string digits = name.substr(3);
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      const int pct = std::stoi(digits);
      if (pct >= 1 && pct <= 100) {
        SloConfig slo;
        slo.target = static_cast<double>(pct) / 100.0;
        return slo;
      }
    }
  }
  throw std::invalid_argument("unknown SLO preset '" + name +
                              "' (expected e.g. slo85 or slo50)");
}

VerticalSizingRule sizing_rule_from_string(const std::string& name) {
  if (name == "literal") return VerticalSizingRule::Literal;
  if (name == "headroom") return VerticalSizingRule::Headroom;
  throw std::invalid_argument("unknown eq1 interpretation '" + name +
                              "' (literal|headroom)");
}

std::string_view to_string(Policy policy) {
  return policy == Policy::Vertical ? "vertical" : "horizontal";
}

Policy policy_from_string(std::string_view name) {
  if (name == "vertical") return Policy::Vertical;
  if (name == "horizontal") return Policy::Horizontal;
  throw std::invalid_argument("unknown policy '" + std::string(name) +
                              "' (vertical|horizontal)");
}

namespace {

// tolerance before ceiling so products that are integral up to floating-point
// noise do not round an extra step up
constexpr double kCeilEpsilon = 1e-9;

double multiplier(double util_max, double slo, VerticalSizingRule rule) {
  switch (rule) {
    case VerticalSizingRule::Literal:
      // max - (slo - max), floored at zero
      return std::max(0.0, 2.0 * util_max - slo);
    case VerticalSizingRule::Headroom:
      return util_max / slo;
  }
  throw std::logic_error("invalid sizing rule");
}

}  // namespace

ResourceVector vertical_raw_opt_spec(const ResourceVector& spec,
                                     const ResourceVector& util_max, double slo,
                                     VerticalSizingRule rule) {
  require_valid(spec, "vertical spec");
  require_valid(util_max, "vertical utilization");
  ResourceVector out;
  for (ResourceKind kind : kResourceKinds) {
    out[kind] = spec[kind] * multiplier(util_max[kind], slo, rule);
  }
  return out;
}

ResourceVector vertical_opt_spec(const ResourceVector& spec,
                                 const ResourceVector& util_max, double slo,
                                 VerticalSizingRule rule) {
  ResourceVector raw = vertical_raw_opt_spec(spec, util_max, slo, rule);
  ResourceVector out;
  for (ResourceKind kind : kResourceKinds) {
    out[kind] = std::max(0.0, std::ceil(raw[kind] - kCeilEpsilon));
  }
  return out;
}

ScalingDecision vertical_decide(const InstanceCatalog& catalog,
                                const InstanceType& current,
                                const MetricTrace& trace, const SloConfig& slo,
                                VerticalSizingRule rule) {
  slo.validate();
  ScalingDecision d;
  d.policy = Policy::Vertical;
  d.aggregated_metrics = max_aggregate(trace, slo.lookback);
  d.raw_opt_spec =
      vertical_raw_opt_spec(current.specs, d.aggregated_metrics, slo.target, rule);
  d.opt_spec = vertical_opt_spec(current.specs, d.aggregated_metrics, slo.target, rule);

  ResourceVector demand = d.opt_spec;
  if (!current.has_disk_spec) demand.disk_io = 0.0;
  try {
    d.chosen_instance = grid_search(catalog, demand);
  } catch (const UnsatisfiableDemandError& e) {
    d.demand_exceeds_catalog = true;
    d.violated_dimensions = e.violated_dimensions;
    d.chosen_instance = max_size_entry(catalog);
  }
  return d;
}

int horizontal_opt_replicas(int current_replicas, const ResourceVector& util_max,
                            double slo_target, int min_replicas,
                            std::optional<int> max_replicas) {
  if (current_replicas < 1) {
    throw std::invalid_argument("current_replicas must be >= 1");
  }
  require_valid(util_max, "horizontal utilization");
  if (!(slo_target > 0.0) || slo_target > 1.0) {
    throw std::invalid_argument("SLO target must be in (0,1]");
  }
  int best = 0;
  for (ResourceKind kind : kResourceKinds) {
    const double scaled =
        static_cast<double>(current_replicas) * util_max[kind] / slo_target;
    best = std::max(best, static_cast<int>(std::ceil(scaled - kCeilEpsilon)));
  }
  best = std::max(best, min_replicas);
  if (max_replicas) best = std::min(best, *max_replicas);
  return best;
}

ScalingDecision horizontal_decide(int current_replicas, const MetricTrace& trace,
                                  const SloConfig& slo, int min_replicas,
                                  std::optional<int> max_replicas) {
  slo.validate();
  ScalingDecision d;
  d.policy = Policy::Horizontal;
  d.aggregated_metrics = max_aggregate(trace, slo.lookback);
  d.opt_replicas = horizontal_opt_replicas(current_replicas, d.aggregated_metrics,
                                           slo.target, min_replicas, max_replicas);
  return d;
}

bool composite_trigger(const MetricTrace& trace,
                       const std::map<std::string, double>& thresholds,
                       TriggerMode mode) {
  if (trace.sample_count() == 0) throw TraceError("empty trace");
  const Window whole{trace.start_offset, trace.duration()};
  bool any = false;
  bool all = true;
  for (const auto& [channel, threshold] : thresholds) {
    double observed = 0.0;
    if (channel == "latency_ms") {
      observed = max_latency(trace, whole);
    } else {
      ResourceKind kind = [&] {
        try {
          return resource_kind_from_string(channel);
        } catch (const std::invalid_argument&) {
          throw TraceError("unknown trigger channel: " + channel);
        }
      }();
      const auto& c = trace.channel(kind);
      observed = *std::max_element(c.begin(), c.end());
    }
    const bool exceeded = observed > threshold;
    any = any || exceeded;
    all = all && exceeded;
  }
  return mode == TriggerMode::All ? all : any;
}

}  // namespace faultscale
