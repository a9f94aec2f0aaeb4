#include "reachlab/verify.hpp"

#include <cmath>
#include <limits>

#include "reachlab/detail/rng.hpp"
#include "reachlab/zoo.hpp"

namespace reachlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string map_label(const AnyMap& map) {
  return std::visit([](const auto& m) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearMapSpec>) return m.label();
    else return m.label;
  }, map);
}

IsometryReport iso_of(const AnyMap& map, const SampledManifold& s) {
  return std::visit([&](const auto& m) { return isometry_constants(m, s); }, map);
}

SampledManifold push_of(const AnyMap& map, const SampledManifold& s) {
  return std::visit([&](const auto& m) { return pushforward(m, s); }, map);
}

ParametricManifold compose_of(const AnyMap& map, const ParametricManifold& m) {
  return std::visit([&](const auto& mp) { return compose(mp, m); }, map);
}

// A <= B with relative slack: B - A >= -tol * max(|A|, |B|)
bool holds_with_slack(double lower, double upper, double tol) {
  if (std::isinf(lower) && std::isinf(upper)) return true;
  return upper - lower >= -tol * std::max({std::abs(lower), std::abs(upper), 1e-300});
}

/// Closed-form reach when the chart records one, else the sampled estimate.
/// The source is reported so downstream readers know which was used.
std::pair<double, std::string> resolve_reach(const ParametricManifold& manifold,
                                             const SampledManifold& s) {
  if (manifold.known_reach) return {*manifold.known_reach, "closed-form"};
  const ReachEstimate est = estimate_reach(s);
  if (!(est.value > 0.0)) {
    throw ReachUnavailableError(manifold.label + ": no closed form and estimate unusable");
  }
  return {est.value, "sampled-estimate"};
}

void require_orthogonal(const LinearMapSpec& map, const char* where) {
  if (!map.is_orthogonal()) {
    throw NonOrthogonalMapError(std::string(where) + ": map is not orthogonal (" + map.label() +
                                ")");
  }
}

std::pair<std::size_t, std::size_t> draw_pair(std::mt19937_64& eng, std::size_t n) {
  std::size_t i = detail::uniform_index(eng, n);
  std::size_t j = detail::uniform_index(eng, n);
  while (j == i) j = detail::uniform_index(eng, n);
  return {i, j};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t state = seed ^ (0xa0761d6478bd642fULL + trial * 0xe7037ed1a0b428dbULL);
  return detail::splitmix64(state);
}

VerificationReport check_basic_properties(const ParametricManifold& manifold, const AnyMap& map,
                                          std::size_t n_samples, std::uint64_t seed) {
  VerificationReport report;
  report.check_name = "basic_properties";
  report.inputs_digest = {{"manifold", manifold.label},
                          {"map", map_label(map)},
                          {"n_samples", std::to_string(n_samples)},
                          {"seed", std::to_string(seed)}};
  report.tolerance_used = 1e-6;

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const IsometryReport iso = iso_of(map, s);
  const SampledManifold image = push_of(map, s);  // throws if tangent rank drops
  const int k = manifold.intrinsic_dim;

  const double diam0 = diameter(s);
  const double diam1 = diameter(image);
  report.measured = {{"l", iso.l}, {"u", iso.u}, {"diam", diam0}, {"diam_image", diam1},
                     {"tangent_rank", static_cast<double>(k)}};
  report.bound = {{"diam_lower", iso.l * diam0}, {"diam_upper", iso.u * diam0}};

  bool ok = holds_with_slack(iso.l * diam0, diam1, report.tolerance_used) &&
            holds_with_slack(diam1, iso.u * diam0, report.tolerance_used);

  if (k <= 2) {
    const double vol0 = volume_k(s, manifold);
    const ParametricManifold image_chart = compose_of(map, manifold);
    const double vol1 = volume_k(image, image_chart);
    const double lk = std::pow(iso.l, k);
    const double uk = std::pow(iso.u, k);
    report.measured["vol"] = vol0;
    report.measured["vol_image"] = vol1;
    report.bound["vol_lower"] = lk * vol0;
    report.bound["vol_upper"] = uk * vol0;
    ok = ok && holds_with_slack(lk * vol0, vol1, report.tolerance_used) &&
         holds_with_slack(vol1, uk * vol0, report.tolerance_used);
  }
  report.passed = ok;
  return report;
}

VerificationReport check_angles_exact(const ParametricManifold& manifold,
                                      const LinearMapSpec& orthogonal_map,
                                      std::size_t pair_count, std::uint64_t seed,
                                      std::size_t n_samples) {
  require_orthogonal(orthogonal_map, "check_angles_exact");
  if (n_samples == 0) n_samples = CheckDefaults::samples_for(manifold);

  VerificationReport report;
  report.check_name = "angles_exact_isometry";
  report.inputs_digest = {{"manifold", manifold.label},
                          {"map", orthogonal_map.label()},
                          {"n_samples", std::to_string(n_samples)},
                          {"pair_count", std::to_string(pair_count)},
                          {"seed", std::to_string(seed)}};
  report.tolerance_used = 1e-8;

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const SampledManifold image = pushforward(orthogonal_map, s);

  auto eng = detail::seeded_engine(seed, 0x21);
  double max_dev = 0.0;
  for (std::size_t p = 0; p < pair_count; ++p) {
    const auto [i, j] = draw_pair(eng, s.size());
    const double before = principal_angle_cos(s.tangents[i], s.tangents[j]);
    const double after = principal_angle_cos(image.tangents[i], image.tangents[j]);
    max_dev = std::max(max_dev, std::abs(after - before));
  }
  report.measured = {{"max_deviation", max_dev}};
  report.bound = {{"max_deviation", report.tolerance_used}};
  report.passed = max_dev <= report.tolerance_used;
  return report;
}

VerificationReport check_angle_bound(const ParametricManifold& manifold,
                                     const LinearMapSpec& linear_map, std::size_t pair_count,
                                     std::uint64_t seed, std::size_t n_samples) {
  if (n_samples == 0) n_samples = CheckDefaults::samples_for(manifold);

  VerificationReport report;
  report.check_name = "angle_bound_linear";
  report.inputs_digest = {{"manifold", manifold.label},
                          {"map", linear_map.label()},
                          {"n_samples", std::to_string(n_samples)},
                          {"pair_count", std::to_string(pair_count)},
                          {"seed", std::to_string(seed)}};
  report.tolerance_used = 1e-9;

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const IsometryReport iso = iso_of(AnyMap(linear_map), s);
  if (!(iso.l > 0.0)) {
    throw CollapseError("check_angle_bound: measured l = 0, map not bi-Lipschitz on sample");
  }
  const SampledManifold image = pushforward(linear_map, s);
  const auto [rch, rch_source] = resolve_reach(manifold, s);
  report.inputs_digest["reach_source"] = rch_source;

  const double l2 = iso.l * iso.l;
  const double spect = std::max(linear_map.spectral_norm() * linear_map.spectral_norm(),
                                iso.u * iso.u) + 1.0;
  const double delta_term =
      18.0 * std::max(iso.delta, std::sqrt(iso.delta)) / l2;

  auto eng = detail::seeded_engine(seed, 0x22);
  double max_lhs = 0.0;
  double min_margin = kInf;
  for (std::size_t p = 0; p < pair_count; ++p) {
    const auto [i, j] = draw_pair(eng, s.size());
    const double lhs = std::abs(principal_angle_cos(image.tangents[i], image.tangents[j]) -
                                principal_angle_cos(s.tangents[i], s.tangents[j]));
    const double pq2 = (s.points[j] - s.points[i]).squaredNorm();
    const double curvature_term =
        std::isinf(rch) ? 0.0 : 25.0 / (4.0 * l2) * (pq2 / (rch * rch)) * spect * spect;
    const double rhs = curvature_term + delta_term;
    max_lhs = std::max(max_lhs, lhs);
    min_margin = std::min(min_margin, rhs - lhs);
  }
  report.measured = {{"max_lhs", max_lhs}, {"min_margin", min_margin},
                     {"l", iso.l}, {"u", iso.u}, {"delta", iso.delta}, {"reach", rch}};
  report.bound = {{"min_margin", -report.tolerance_used}};
  report.passed = min_margin >= -report.tolerance_used;
  return report;
}

VerificationReport check_reach_exact(const ParametricManifold& manifold,
                                     const LinearMapSpec& orthogonal_map, std::size_t n_samples,
                                     std::uint64_t seed) {
  require_orthogonal(orthogonal_map, "check_reach_exact");

  VerificationReport report;
  report.check_name = "reach_exact_isometry";
  report.inputs_digest = {{"manifold", manifold.label},
                          {"map", orthogonal_map.label()},
                          {"n_samples", std::to_string(n_samples)},
                          {"seed", std::to_string(seed)}};
  report.tolerance_used = CheckDefaults::kAnalyticTol;

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const ReachEstimate before = estimate_reach(s);
  const ReachEstimate after = estimate_reach(pushforward(orthogonal_map, s));

  report.measured = {{"reach", before.value}, {"reach_image", after.value}};
  report.bound = {{"relative_difference", report.tolerance_used}};
  if (before.is_infinite() || after.is_infinite()) {
    report.passed = before.is_infinite() && after.is_infinite();
    report.measured["relative_difference"] = report.passed ? 0.0 : kInf;
  } else {
    const double rel = std::abs(after.value - before.value) / before.value;
    report.measured["relative_difference"] = rel;
    report.passed = rel <= report.tolerance_used;
  }
  return report;
}

VerificationReport run_counterexample(double delta, double c, double rho, std::size_t n_samples,
                                      double tolerance) {
  const NonlinearMap map = counterexample_map(delta, c, rho);

  VerificationReport report;
  report.check_name = "counterexample_reach_collapse";
  report.inputs_digest = {{"manifold", "segment"},
                          {"map", map.label},
                          {"n_samples", std::to_string(n_samples)},
                          {"seed", "0"}};
  report.tolerance_used = tolerance;

  const ParametricManifold segment = zoo::segment();
  const SampledManifold s = sample(segment, n_samples, SampleStrategy::kUniformGrid, 0);
  const ReachEstimate flat = estimate_reach(s);
  const IsometryReport iso = isometry_constants(map, s);
  const SampledManifold image = pushforward(map, s);
  const ReachEstimate collapsed = estimate_reach(image);

  const double u_limit = 1.0 + c / delta;
  const double reach_limit = delta / std::sqrt(2.0);

  report.measured = {{"l", iso.l},
                     {"u", iso.u},
                     {"reach_domain", flat.value},
                     {"reach_image", collapsed.value}};
  report.bound = {{"l_lower", 1.0}, {"u_upper", u_limit}, {"reach_image_upper", reach_limit}};
  report.passed = flat.is_infinite() && iso.l >= 1.0 - 1e-9 && iso.u > 1.0 &&
                  iso.u <= u_limit + 1e-6 && !collapsed.is_infinite() &&
                  collapsed.value <= reach_limit * (1.0 + tolerance);
  report.notes =
      "near-isometry with collapsed image reach; the flat segment is an open curve "
      "(endpoints excluded), unlike the closed manifolds used elsewhere";
  return report;
}

VerificationReport check_reach_lower_bound(const ParametricManifold& manifold,
                                           const LinearMapSpec& linear_map,
                                           std::size_t n_samples, std::uint64_t seed,
                                           double tolerance) {
  const int m = linear_map.rows();
  const int n = linear_map.cols();
  if (linear_map.rank() < m) {
    throw RankDeficiencyError("check_reach_lower_bound: map rank " +
                              std::to_string(linear_map.rank()) + " below row count " +
                              std::to_string(m));
  }

  VerificationReport report;
  report.check_name = "reach_lower_bound_linear";
  report.inputs_digest = {{"manifold", manifold.label},
                          {"map", linear_map.label()},
                          {"n_samples", std::to_string(n_samples)},
                          {"seed", std::to_string(seed)}};
  report.tolerance_used = tolerance;

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const IsometryReport iso = iso_of(AnyMap(linear_map), s);
  const auto [rch0, rch_source] = resolve_reach(manifold, s);
  report.inputs_digest["reach_source"] = rch_source;

  const double smin = linear_map.sigma_min();
  const double smax = linear_map.sigma_max();
  const double factor =
      m == n ? smin * smin / smax : smin * smin * iso.l * iso.l / (smax * smax * smax);
  const double bound = factor * rch0;
  const ReachEstimate image_reach = estimate_reach(pushforward(linear_map, s));

  report.measured = {{"l", iso.l}, {"u", iso.u}, {"reach_domain", rch0},
                     {"reach_image", image_reach.value}};
  report.bound = {{"reach_lower", bound}};
  if (std::isinf(bound)) {
    report.passed = image_reach.is_infinite();
    report.measured["ratio"] = report.passed ? 1.0 : 0.0;
  } else {
    report.measured["ratio"] = image_reach.value / bound;
    report.passed = image_reach.value >= bound * (1.0 - report.tolerance_used);
  }
  return report;
}

long rip_sample_size(int k, double delta, double vol_k, double reach) {
  if (k < 1 || !(delta > 0.0) || !(vol_k > 0.0) || !(reach > 0.0)) {
    throw ParameterError("rip_sample_size: inputs must be positive");
  }
  const double arg = std::pow(vol_k, 1.0 / k) / reach;
  const double log_term = std::max(1.0, std::log(arg));  // clamp handles arg <= e
  return static_cast<long>(std::ceil(static_cast<double>(k) / delta * log_term));
}

std::vector<VerificationReport> random_projection_experiment(const ParametricManifold& manifold,
                                                             int m, std::size_t n_trials,
                                                             std::uint64_t seed,
                                                             std::size_t n_samples) {
  manifold.validate();
  const int n = manifold.ambient_dim;
  if (!(n >= m) || m < manifold.intrinsic_dim) {
    throw ValidationError("random_projection_experiment: need ambient n >= m >= k");
  }

  const SampledManifold s = sample(manifold, n_samples, SampleStrategy::kUniformGrid, seed);
  const auto [rch0, rch_source] = resolve_reach(manifold, s);

  std::vector<VerificationReport> reports;
  reports.reserve(n_trials + 1);
  std::size_t passes = 0;
  double sigma_sum = 0.0;
  std::size_t sigma_count = 0;

  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const LinearMapSpec map = make_gaussian_map(m, n, derive_seed(seed, trial));
    const IsometryReport iso = isometry_constants(map, s);
    const ReachEstimate image_reach = estimate_reach(pushforward(map, s));
    const double smin = map.sigma_min();
    const double smax = map.sigma_max();
    const double bound = m == n
                             ? smin * smin / smax * rch0
                             : smin * smin * iso.l * iso.l / (smax * smax * smax) * rch0;

    VerificationReport r;
    r.check_name = "random_projection_trial";
    r.inputs_digest = {{"manifold", manifold.label},
                       {"map", map.label()},
                       {"n_samples", std::to_string(n_samples)},
                       {"seed", std::to_string(seed)},
                       {"trial", std::to_string(trial)},
                       {"reach_source", rch_source}};
    r.tolerance_used = CheckDefaults::kSampledTol;
    r.measured = {{"l", iso.l},         {"u", iso.u},
                  {"sigma_min", smin},  {"sigma_max", smax},
                  {"reach_domain", rch0}, {"reach_image", image_reach.value},
                  {"ratio", image_reach.value / bound}};
    r.bound = {{"reach_lower", bound}};
    r.passed = image_reach.value >= bound * (1.0 - r.tolerance_used);
    if (r.passed) ++passes;
    for (int i = 0; i < map.singular_values().size(); ++i) {
      sigma_sum += map.singular_values()(i);
      ++sigma_count;
    }
    reports.push_back(std::move(r));
  }

  const double sigma_mean = sigma_sum / static_cast<double>(sigma_count);
  const double cluster = std::sqrt(static_cast<double>(n) / static_cast<double>(m));

  VerificationReport summary;
  summary.check_name = "random_projection_summary";
  summary.inputs_digest = {{"manifold", manifold.label},
                           {"map", "gaussian(" + std::to_string(m) + "x" + std::to_string(n) +
                                       ")"},
                           {"n_samples", std::to_string(n_samples)},
                           {"n_trials", std::to_string(n_trials)},
                           {"seed", std::to_string(seed)}};
  summary.tolerance_used = 0.25;
  summary.measured = {{"pass_rate", static_cast<double>(passes) / n_trials},
                      {"sigma_mean", sigma_mean}};
  summary.bound = {{"pass_rate", 1.0}, {"sigma_cluster", cluster}};
  summary.passed = passes == n_trials &&
                   std::abs(sigma_mean - cluster) <= summary.tolerance_used * cluster;
  reports.push_back(std::move(summary));
  return reports;
}

}  // namespace reachlab
