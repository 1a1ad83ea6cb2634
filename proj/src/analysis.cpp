#include "faultscale/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "faultscale/rng.hpp"

namespace faultscale {

double error_ratio(double v_normal, double v_abnormal) {
  if (v_normal == 0.0) throw UndefinedRatioError();
  if (!std::isfinite(v_normal) || !std::isfinite(v_abnormal)) {
    throw std::invalid_argument("error_ratio: values must be finite");
  }
  return (v_abnormal - v_normal) / v_normal * 100.0;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Overprovision: return "overprovision";
    case Classification::Underprovision: return "underprovision";
    case Classification::Neutral: return "neutral";
  }
  throw std::logic_error("invalid Classification");
}

Classification classify(double error_ratio_pct, double tolerance_pct) {
  if (tolerance_pct < 0.0) throw std::invalid_argument("tolerance must be >= 0");
  if (std::abs(error_ratio_pct) <= tolerance_pct) return Classification::Neutral;
  return error_ratio_pct > 0.0 ? Classification::Overprovision
                               : Classification::Underprovision;
}

FaultParams MatrixConfig::params_for(FaultKind kind) const {
  FaultScenario scenario;
  scenario.kind = kind;
  auto it = fault_overrides.find(kind);
  if (it != fault_overrides.end()) scenario.params = it->second;
  return scenario.effective_params();
}

namespace {

struct ScenarioKey {
  std::size_t fault_idx;
  std::size_t instance_idx;
  std::size_t slo_idx;
  std::size_t policy_idx;
  std::size_t seed_idx;
};

Window effective_fault_window(const MetricTrace& trace, const Window& window) {
  const double trace_end = trace.start_offset + trace.duration();
  const double end = std::min(window.end(), trace_end);
  return Window{window.start, end - window.start};
}

struct PreparedTraces {
  MetricTrace baseline;
  // distorted traces per fault, for plain and burstable targets
  std::map<FaultKind, MetricTrace> distorted;
  std::map<FaultKind, MetricTrace> distorted_burstable;
};

std::string dimension_of(ResourceKind kind) { return std::string(to_string(kind)); }

void evaluate_scenario(const MatrixConfig& config, const ScenarioKey& key,
                       const PreparedTraces& traces, ExperimentReport& row) {
  const InstanceType& instance = config.catalog.entries[key.instance_idx];
  const FaultKind fault = config.faults[key.fault_idx];
  const SloSpec& slo_spec = config.slos[key.slo_idx];
  const Policy policy = config.policies[key.policy_idx];

  const MetricTrace& trace_n = traces.baseline;
  const MetricTrace& trace_ab = instance.burstable
                                    ? traces.distorted_burstable.at(fault)
                                    : traces.distorted.at(fault);

  SloConfig slo;
  slo.target = slo_spec.target;
  slo.lookback = config.decision_window == DecisionWindow::FaultWindow
                     ? effective_fault_window(trace_n, config.fault_window)
                     : Window{trace_n.start_offset, trace_n.duration()};

  bool enact_normal = true;
  bool enact_abnormal = true;
  if (config.trigger.enabled) {
    enact_normal = composite_trigger(trace_n, config.trigger.thresholds,
                                     config.trigger.mode);
    enact_abnormal = composite_trigger(trace_ab, config.trigger.thresholds,
                                       config.trigger.mode);
    row.abnormal_triggered = enact_abnormal;
  }

  if (policy == Policy::Vertical) {
    ScalingDecision dn =
        vertical_decide(config.catalog, instance, trace_n, slo, config.sizing_rule);
    ScalingDecision da =
        vertical_decide(config.catalog, instance, trace_ab, slo, config.sizing_rule);

    for (ResourceKind kind : kResourceKinds) {
      DimensionRatio dim{dimension_of(kind), std::nullopt};
      const double v_n = dn.raw_opt_spec[kind];
      if (v_n != 0.0) dim.ratio_pct = error_ratio(v_n, da.raw_opt_spec[kind]);
      row.ratios.push_back(std::move(dim));
    }

    const InstanceType& enacted_n =
        enact_normal ? *dn.chosen_instance : instance;
    const InstanceType& enacted_ab =
        enact_abnormal ? *da.chosen_instance : instance;
    row.cost_normal = monthly_cost(enacted_n, 1, config.hours_per_month);
    row.cost_abnormal = monthly_cost(enacted_ab, 1, config.hours_per_month);
    row.normal_choice = enacted_n.name();
    row.abnormal_choice = enacted_ab.name();
    row.risk_flag = da.demand_exceeds_catalog;
  } else {
    ScalingDecision dn = horizontal_decide(config.current_replicas, trace_n, slo,
                                           config.min_replicas, config.max_replicas);
    ScalingDecision da = horizontal_decide(config.current_replicas, trace_ab, slo,
                                           config.min_replicas, config.max_replicas);
    const int enacted_n = enact_normal ? dn.opt_replicas : config.current_replicas;
    const int enacted_ab = enact_abnormal ? da.opt_replicas : config.current_replicas;
    DimensionRatio dim{"replicas", std::nullopt};
    dim.ratio_pct = error_ratio(static_cast<double>(enacted_n),
                                static_cast<double>(enacted_ab));
    row.ratios.push_back(std::move(dim));

    row.cost_normal = monthly_cost(instance, enacted_n, config.hours_per_month);
    row.cost_abnormal = monthly_cost(instance, enacted_ab, config.hours_per_month);
    row.normal_choice = std::to_string(enacted_n);
    row.abnormal_choice = std::to_string(enacted_ab);
  }

  row.cost_delta = row.cost_abnormal - row.cost_normal;

  // reported dimension: largest |ratio| among the defined ones
  const DimensionRatio* dominant = nullptr;
  for (const auto& dim : row.ratios) {
    if (!dim.ratio_pct) continue;
    if (dominant == nullptr ||
        std::abs(*dim.ratio_pct) > std::abs(*dominant->ratio_pct)) {
      dominant = &dim;
    }
  }
  if (dominant != nullptr) {
    row.dimension = dominant->dimension;
    row.error_ratio_pct = dominant->ratio_pct;
    row.classification = classify(*dominant->ratio_pct, config.classify_tolerance_pct);
    if (row.classification == Classification::Underprovision) row.risk_flag = true;
  } else {
    row.dimension = "n/a";
  }
}

}  // namespace

std::vector<ExperimentReport> run_matrix(const MatrixConfig& config) {
  if (config.catalog.entries.empty()) throw std::invalid_argument("empty catalog");
  if (config.faults.empty() || config.slos.empty() || config.policies.empty() ||
      config.seeds.empty()) {
    throw std::invalid_argument(
        "matrix needs at least one fault, SLO, policy and seed");
  }
  if (config.current_replicas < 1) {
    throw std::invalid_argument("current_replicas must be >= 1");
  }
  config.profile.validate();
  for (FaultKind fault : config.faults) config.params_for(fault);  // validate early

  // Control and experimental traces share the seed; the fault is the only
  // difference between them.
  std::vector<PreparedTraces> prepared(config.seeds.size());
  for (std::size_t s = 0; s < config.seeds.size(); ++s) {
    WorkloadProfile profile = config.profile;
    profile.seed = config.seeds[s];
    MetricTrace baseline = generate_baseline(profile);
    PreparedTraces& t = prepared[s];
    for (FaultKind fault : config.faults) {
      FaultScenario scenario;
      scenario.kind = fault;
      scenario.window = config.fault_window;
      auto it = config.fault_overrides.find(fault);
      if (it != config.fault_overrides.end()) scenario.params = it->second;
      scenario.seed = mix_seed(config.seeds[s],
                               static_cast<std::uint64_t>(fault) + 0x10);
      t.distorted.emplace(fault, apply_fault(baseline, scenario, false));
      t.distorted_burstable.emplace(fault, apply_fault(baseline, scenario, true));
    }
    if (config.per_minute_bucketing) {
      baseline = bucket_max(baseline);
      for (auto& [kind, trace] : t.distorted) trace = bucket_max(trace);
      for (auto& [kind, trace] : t.distorted_burstable) trace = bucket_max(trace);
    }
    t.baseline = std::move(baseline);
  }

  std::vector<ScenarioKey> keys;
  for (std::size_t f = 0; f < config.faults.size(); ++f)
    for (std::size_t i = 0; i < config.catalog.entries.size(); ++i)
      for (std::size_t o = 0; o < config.slos.size(); ++o)
        for (std::size_t p = 0; p < config.policies.size(); ++p)
          for (std::size_t s = 0; s < config.seeds.size(); ++s)
            keys.push_back({f, i, o, p, s});

  std::vector<ExperimentReport> reports(keys.size());
  auto run_one = [&](std::size_t idx) {
    const ScenarioKey& key = keys[idx];
    ExperimentReport& row = reports[idx];
    const InstanceType& instance = config.catalog.entries[key.instance_idx];
    row.fault = config.faults[key.fault_idx];
    row.family = instance.family;
    row.size = instance.size;
    row.slo_name = config.slos[key.slo_idx].name;
    row.slo_target = config.slos[key.slo_idx].target;
    row.policy = config.policies[key.policy_idx];
    row.seed = config.seeds[key.seed_idx];
    try {
      evaluate_scenario(config, key, prepared[key.seed_idx], row);
    } catch (const std::exception& e) {
      row.error = e.what();  // recorded, not fatal
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1 || keys.size() < 2) {
    for (std::size_t i = 0; i < keys.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> workers;
    const auto nthreads = static_cast<std::size_t>(jobs);
    for (std::size_t t = 0; t < nthreads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < keys.size(); i += nthreads) run_one(i);
      });
    }
    for (auto& w : workers) w.join();
  }
  return reports;
}

}  // namespace faultscale
