#include "faultscale/workload.hpp"

#include <cmath>
#include <stdexcept>

#include "faultscale/rng.hpp"

namespace faultscale {

void WorkloadProfile::validate() const {
  for (ResourceKind kind : kResourceKinds) {
    if (mean[kind] < 0.0 || mean[kind] > 1.0 || !std::isfinite(mean[kind])) {
      throw std::invalid_argument("workload mean out of [0,1]: " +
                                  std::string(to_string(kind)));
    }
    if (volatility[kind] < 0.0 || !std::isfinite(volatility[kind])) {
      throw std::invalid_argument("workload volatility must be >= 0");
    }
  }
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
  if (!(sample_interval_s > 0.0)) {
    throw std::invalid_argument("sample interval must be positive");
  }
  if (mean_reversion_per_s < 0.0 || latency_mean_ms < 0.0 ||
      latency_volatility_ms < 0.0) {
    throw std::invalid_argument("workload rates must be non-negative");
  }
}

namespace {

/// AR(1) deviations with the requested stationary standard deviation.
/// phi = 1 - rate*dt; noise is scaled so sd(x_k) == volatility at every k.
void fill_mean_reverting(std::vector<double>& out, std::size_t n, double mean,
                         double volatility, double phi, Rng& rng, bool clamp01) {
  out.resize(n);
  const double noise_sd = volatility * std::sqrt(std::max(0.0, 1.0 - phi * phi));
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dev = phi * dev + (volatility > 0.0 ? rng.normal(0.0, noise_sd) : 0.0);
    double v = mean + dev;
    if (clamp01) {
      v = clamp_utilization(v);
    } else if (v < 0.0) {
      v = 0.0;
    }
    out[i] = v;
  }
}

}  // namespace

MetricTrace generate_baseline(const WorkloadProfile& profile) {
  profile.validate();
  const auto n = static_cast<std::size_t>(
      std::llround(profile.duration_s / profile.sample_interval_s));
  if (n == 0) throw std::invalid_argument("profile yields zero samples");

  const double phi =
      std::clamp(1.0 - profile.mean_reversion_per_s * profile.sample_interval_s,
                 0.0, 1.0);

  MetricTrace trace;
  trace.sample_interval = profile.sample_interval_s;
  trace.start_offset = 0.0;

  Rng rng(mix_seed(profile.seed, 0x6261736546c6f77ULL));
  for (ResourceKind kind : kResourceKinds) {
    fill_mean_reverting(trace.channel(kind), n, profile.mean[kind],
                        profile.volatility[kind], phi, rng, /*clamp01=*/true);
  }
  trace.latency_ms.emplace();
  fill_mean_reverting(*trace.latency_ms, n, profile.latency_mean_ms,
                      profile.latency_volatility_ms, phi, rng,
                      /*clamp01=*/false);
  return trace;
}

}  // namespace faultscale
