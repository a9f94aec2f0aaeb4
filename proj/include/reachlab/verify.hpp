#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "reachlab/maps.hpp"
#include "reachlab/metrics.hpp"
#include "reachlab/reach.hpp"

namespace reachlab {

using AnyMap = std::variant<LinearMapSpec, NonlinearMap>;

/// Structured record of one verification check.
struct VerificationReport {
  std::string check_name;
  std::map<std::string, std::string> inputs_digest;  // manifold, map, N, seed, ...
  std::map<std::string, double> measured;
  std::map<std::string, double> bound;
  bool passed = false;
  double tolerance_used = 0.0;
  std::string notes;
};

/// Default resolutions/tolerances for the checks. Analytic identities use
/// 1e-9 relative, sampled estimates 2% relative at N = 8192 for curves and
/// N = 16384 for surfaces; all overridable.
struct CheckDefaults {
  static std::size_t samples_for(const ParametricManifold& m) {
    return m.intrinsic_dim == 1 ? 8192 : 16384;
  }
  static constexpr double kAnalyticTol = 1e-9;
  static constexpr double kSampledTol = 0.02;
  static constexpr std::size_t kPairCount = 10000;
};

/// Per-trial seed derivation for multi-trial experiments.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

/// Dimension, diameter, and volume distortion stay inside the measured
/// (l, u) sandwich: l diam <= diam' <= u diam and l^k vol <= vol' <= u^k vol,
/// with relative slack >= -1e-6.
VerificationReport check_basic_properties(const ParametricManifold& manifold, const AnyMap& map,
                                          std::size_t n_samples, std::uint64_t seed);

/// Principal angles between tangent pairs are unchanged by an exact
/// (orthogonal) isometry, to 1e-8 per pair.
VerificationReport check_angles_exact(const ParametricManifold& manifold,
                                      const LinearMapSpec& orthogonal_map,
                                      std::size_t pair_count, std::uint64_t seed,
                                      std::size_t n_samples = 0);

/// Tangent-angle distortion under a linear map stays below the explicit
/// near-isometry bound for every sampled pair.
VerificationReport check_angle_bound(const ParametricManifold& manifold,
                                     const LinearMapSpec& linear_map, std::size_t pair_count,
                                     std::uint64_t seed, std::size_t n_samples = 0);

/// Reach estimates agree to 1e-9 relative before/after an orthogonal map,
/// on the same sample indices.
VerificationReport check_reach_exact(const ParametricManifold& manifold,
                                     const LinearMapSpec& orthogonal_map, std::size_t n_samples,
                                     std::uint64_t seed);

/// The smoothed-cusp construction: a near-isometry of the flat segment
/// (l = 1, u <= 1 + c/delta) whose image reach collapses to <= delta/sqrt(2).
VerificationReport run_counterexample(double delta, double c, double rho, std::size_t n_samples,
                                      double tolerance = CheckDefaults::kSampledTol);

/// Reach of the image of a full-rank linear map is at least
/// (sigma_min^2 / sigma_max) rch for m = n, and
/// (sigma_min^2 l^2 / sigma_max^3) rch for m < n.
VerificationReport check_reach_lower_bound(const ParametricManifold& manifold,
                                           const LinearMapSpec& linear_map,
                                           std::size_t n_samples, std::uint64_t seed,
                                           double tolerance = CheckDefaults::kSampledTol);

/// Sample-size planning figure ceil((k/delta) max(1, log(vol^{1/k}/reach))).
long rip_sample_size(int k, double delta, double vol_k, double reach);

/// Draws n_trials Gaussian maps R^n -> R^m on the (already embedded)
/// manifold, checking the reach lower bound per trial. The final report
/// aggregates the pass rate and the singular-value mean against sqrt(n/m).
std::vector<VerificationReport> random_projection_experiment(const ParametricManifold& manifold,
                                                             int m, std::size_t n_trials,
                                                             std::uint64_t seed,
                                                             std::size_t n_samples = 1024);

}  // namespace reachlab
