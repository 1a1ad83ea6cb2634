#ifndef FAULTSCALE_FAULTS_HPP
#define FAULTSCALE_FAULTS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "faultscale/metrics.hpp"

namespace faultscale {

enum class FaultKind { SynFlood, UdpFlood, Volumetric, RouterFailure,
                       DiskFailure, SoftwareProblem };

inline constexpr std::array<FaultKind, 6> kFaultKinds = {
    FaultKind::SynFlood,      FaultKind::UdpFlood,
    FaultKind::Volumetric,    FaultKind::RouterFailure,
    FaultKind::DiskFailure,   FaultKind::SoftwareProblem};

/// Short names used in configs, CLI and reports: syn udp vol rtr disk app.
std::string_view to_string(FaultKind kind);
FaultKind fault_kind_from_string(std::string_view name);
std::string valid_fault_kind_names();

struct FaultError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Named real parameters of one distortion model. Ordered map so parameter
/// listings and reports are deterministic.
using FaultParams = std::map<std::string, double>;

/// Documented defaults per kind. Every value is overridable via config.
FaultParams default_fault_params(FaultKind kind);

struct FaultScenario {
  FaultKind kind = FaultKind::SynFlood;
  Window window{750.0, 300.0};  // activation window, may clip at trace end
  FaultParams params;           // missing keys fall back to defaults
  std::uint64_t seed = 0;       // jitter stream

  /// Params merged over the kind defaults.
  FaultParams effective_params() const;
};

/// Applies the kind-specific distortion inside the activation window and
/// returns a new trace. Samples before the window are bit-identical to the
/// input. When burstable_target is set, CPU distortion magnitudes are damped
/// by params["burstable_damping"].
/// Throws FaultError when the window starts outside the trace.
MetricTrace apply_fault(const MetricTrace& trace, const FaultScenario& scenario,
                        bool burstable_target = false);

}  // namespace faultscale

#endif
