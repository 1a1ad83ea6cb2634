#ifndef FAULTSCALE_ANALYSIS_HPP
#define FAULTSCALE_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultscale/autoscaler.hpp"
#include "faultscale/catalog.hpp"
#include "faultscale/faults.hpp"
#include "faultscale/workload.hpp"

namespace faultscale {

struct UndefinedRatioError : std::runtime_error {
  UndefinedRatioError() : std::runtime_error("error ratio undefined: normal-state value is zero") {}
};

/// (v_abnormal - v_normal) / v_normal * 100. Positive = overprovision,
/// negative = underprovision. Throws UndefinedRatioError when v_normal == 0.
double error_ratio(double v_normal, double v_abnormal);

enum class Classification { Overprovision, Underprovision, Neutral };

std::string_view to_string(Classification c);

/// |ratio| <= tolerance -> Neutral, else the sign decides.
Classification classify(double error_ratio_pct, double tolerance_pct = 5.0);

/// Which window the scaling decision aggregates over.
///   FaultWindow: the fault activation window (clipped to the trace) — the
///     default; the decision reflects the metrics the fault distorts.
///   FullTrace: the whole trace.
enum class DecisionWindow { FaultWindow, FullTrace };

struct SloSpec {
  std::string name;   // slo85, slo50
  double target = 0.85;
};

struct TriggerConfig {
  bool enabled = false;
  TriggerMode mode = TriggerMode::All;
  std::map<std::string, double> thresholds;
};

/// Fully resolved experiment matrix: fault x instance x SLO x policy x seed.
struct MatrixConfig {
  InstanceCatalog catalog;
  WorkloadProfile profile;                       // seed field unused; see seeds
  std::vector<FaultKind> faults{kFaultKinds.begin(), kFaultKinds.end()};
  std::map<FaultKind, FaultParams> fault_overrides;
  Window fault_window{750.0, 300.0};
  std::vector<SloSpec> slos{{"slo85", 0.85}, {"slo50", 0.50}};
  std::vector<Policy> policies{Policy::Vertical, Policy::Horizontal};
  std::vector<std::uint64_t> seeds{0};
  int current_replicas = 3;
  int min_replicas = 1;
  std::optional<int> max_replicas;
  double hours_per_month = kDefaultHoursPerMonth;
  DecisionWindow decision_window = DecisionWindow::FaultWindow;
  VerticalSizingRule sizing_rule = VerticalSizingRule::Literal;
  bool per_minute_bucketing = false;
  double classify_tolerance_pct = 5.0;
  TriggerConfig trigger;
  int jobs = 1;

  FaultParams params_for(FaultKind kind) const;
};

struct DimensionRatio {
  std::string dimension;
  std::optional<double> ratio_pct;  // nullopt = normal-state value was zero
};

/// One scenario row: the gap between the fault-state and normal-state
/// scaling outcome, plus its monthly cost consequence.
struct ExperimentReport {
  FaultKind fault = FaultKind::SynFlood;
  std::string family;
  std::string size;
  std::string slo_name;
  double slo_target = 0.85;
  Policy policy = Policy::Vertical;
  std::uint64_t seed = 0;

  std::vector<DimensionRatio> ratios;        // per resource (vertical) or replicas
  std::string dimension;                     // reported dimension (largest |ratio|)
  std::optional<double> error_ratio_pct;
  std::optional<Classification> classification;

  double cost_normal = 0.0;
  double cost_abnormal = 0.0;
  double cost_delta = 0.0;                   // abnormal - normal
  bool risk_flag = false;                    // underprovision / demand exceeded catalog
  bool abnormal_triggered = true;            // trigger policy outcome, when enabled

  std::string normal_choice;                 // instance name or replica count
  std::string abnormal_choice;

  std::optional<std::string> error;          // scenario failed; row kept
};

/// Runs every (fault x instance x SLO x policy x seed) cell. Control and
/// experimental traces share the seed, so the fault is the only difference.
/// Per-scenario errors are recorded in their rows; the run never aborts on
/// one. Report order is the canonical scenario-id order regardless of jobs.
std::vector<ExperimentReport> run_matrix(const MatrixConfig& config);

}  // namespace faultscale

#endif
