#ifndef FAULTSCALE_AUTOSCALER_HPP
#define FAULTSCALE_AUTOSCALER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faultscale/catalog.hpp"
#include "faultscale/metrics.hpp"
#include "faultscale/resources.hpp"

namespace faultscale {

/// Scaling trigger threshold: utilization fraction of the observed metrics.
/// 0.85 favors cost efficiency, 0.50 favors stability.
struct SloConfig {
  double target = 0.85;          // in (0, 1]
  Window lookback{0.0, 900.0};   // aggregation window for the decision

  void validate() const;
};

SloConfig slo_preset(const std::string& name);  // "slo85" | "slo50"

/// Vertical sizing rule: either the literal multiplier
/// spec * (2*max - slo), or the conventional target-tracking ratio
/// spec * max / slo for sensitivity analysis.
enum class VerticalSizingRule { Literal, Headroom };

VerticalSizingRule sizing_rule_from_string(const std::string& name);

enum class Policy { Vertical, Horizontal };

std::string_view to_string(Policy policy);
Policy policy_from_string(std::string_view name);

struct ScalingDecision {
  Policy policy = Policy::Vertical;
  ResourceVector aggregated_metrics;        // windowed maxima the decision saw
  bool triggered = true;

  // vertical
  ResourceVector raw_opt_spec;              // pre-ceiling, floored at 0
  ResourceVector opt_spec;                  // ceiled demand fed to grid search
  std::optional<InstanceType> chosen_instance;
  bool demand_exceeds_catalog = false;      // grid search fell back to max size
  std::vector<ResourceKind> violated_dimensions;

  // horizontal
  int opt_replicas = 0;
};

/// Per-dimension optimal spec, pre-ceiling: spec_i * (2*max_i - slo),
/// floored at 0 when the multiplier is negative.
ResourceVector vertical_raw_opt_spec(
    const ResourceVector& spec, const ResourceVector& util_max, double slo,
    VerticalSizingRule rule = VerticalSizingRule::Literal);

/// Ceiled form of the above (what the grid search consumes).
ResourceVector vertical_opt_spec(
    const ResourceVector& spec, const ResourceVector& util_max, double slo,
    VerticalSizingRule rule = VerticalSizingRule::Literal);

/// Aggregates the lookback window, sizes per the vertical rule from the
/// current instance's specs, and grid-searches the catalog. When no entry
/// satisfies the demand the decision carries the max-size entry plus the
/// demand_exceeds_catalog marker.
ScalingDecision vertical_decide(
    const InstanceCatalog& catalog, const InstanceType& current,
    const MetricTrace& trace, const SloConfig& slo,
    VerticalSizingRule rule = VerticalSizingRule::Literal);

/// optReplicas = max_i ceil(current * max_i / slo), floored at min_replicas.
int horizontal_opt_replicas(int current_replicas,
                            const ResourceVector& util_max, double slo_target,
                            int min_replicas = 1,
                            std::optional<int> max_replicas = std::nullopt);

ScalingDecision horizontal_decide(int current_replicas,
                                  const MetricTrace& trace,
                                  const SloConfig& slo, int min_replicas = 1,
                                  std::optional<int> max_replicas = std::nullopt);

enum class TriggerMode { Any, All };

/// Channel-name -> threshold. Channels: cpu, memory, disk_io, network, and
/// latency_ms against the latency channel. A channel triggers when its
/// maximum over the trace strictly exceeds the threshold.
/// Mode All: every referenced channel must exceed (empty set is true).
/// Mode Any: at least one referenced channel exceeds.
bool composite_trigger(const MetricTrace& trace,
                       const std::map<std::string, double>& thresholds,
                       TriggerMode mode);

}  // namespace faultscale

#endif
