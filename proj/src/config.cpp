#include "reachlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reachlab/zoo.hpp"

namespace reachlab {

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ValidationError(std::string("config: missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json value_to_json(double v) {
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

}  // namespace

ParametricManifold resolve_manifold(const json& spec) {
  if (!spec.is_object() || !spec.contains("name") || !spec["name"].is_string()) {
    throw ValidationError("config: manifold spec needs a string 'name'");
  }
  const std::string name = spec["name"].get<std::string>();
  ParametricManifold m;
  if (name == "circle") {
    m = zoo::circle(spec.value("radius", 1.0));
  } else if (name == "ellipse") {
    if (!spec.contains("radii") || !spec["radii"].is_array() || spec["radii"].size() != 2) {
      throw ValidationError("config: ellipse needs 'radii' [r1, r2]");
    }
    m = zoo::ellipse(spec["radii"][0].get<double>(), spec["radii"][1].get<double>());
  } else if (name == "ellipsoid") {
    if (!spec.contains("radii") || !spec["radii"].is_array() || spec["radii"].size() != 3) {
      throw ValidationError("config: ellipsoid needs 'radii' [r1, r2, r3]");
    }
    m = zoo::ellipsoid(spec["radii"][0].get<double>(), spec["radii"][1].get<double>(),
                       spec["radii"][2].get<double>());
  } else if (name == "sphere") {
    m = zoo::sphere(spec.value("radius", 1.0));
  } else if (name == "tilted-circle") {
    m = zoo::tilted_circle(require_number(spec, "theta"));
  } else if (name == "trefoil") {
    m = zoo::trefoil();
  } else if (name == "segment") {
    m = zoo::segment();
  } else {
    throw ValidationError("config: unknown manifold '" + name + "'");
  }
  if (spec.contains("pad_to")) {
    const int n_target = spec["pad_to"].get<int>();
    const std::uint64_t pad_seed = spec.value("pad_seed", std::uint64_t{1});
    m = zoo::pad_with_rotation(m, n_target, pad_seed);
  }
  return m;
}

AnyMap resolve_map(const json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string()) {
    throw ValidationError("config: map spec needs a string 'type'");
  }
  const std::string type = spec["type"].get<std::string>();
  if (type == "gaussian") {
    return make_gaussian_map(static_cast<int>(require_number(spec, "m")),
                             static_cast<int>(require_number(spec, "n")),
                             spec.value("seed", std::uint64_t{1}));
  }
  if (type == "orthogonal") {
    return make_orthogonal_map(static_cast<int>(require_number(spec, "n")),
                               spec.value("seed", std::uint64_t{1}));
  }
  if (type == "projection") {
    return make_projection_map(static_cast<int>(require_number(spec, "m")),
                               static_cast<int>(require_number(spec, "n")));
  }
  if (type == "matrix") {
    if (!spec.contains("rows") || !spec["rows"].is_array() || spec["rows"].empty()) {
      throw ValidationError("config: matrix map needs nonempty 'rows'");
    }
    const auto& rows = spec["rows"];
    const std::size_t ncols = rows[0].size();
    Matrix a(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != ncols) {
        throw ValidationError("config: matrix rows must have equal length");
      }
      for (std::size_t j = 0; j < ncols; ++j) a(i, j) = rows[i][j].get<double>();
    }
    return LinearMapSpec::from_matrix(std::move(a));
  }
  if (type == "counterexample") {
    return counterexample_map(require_number(spec, "delta"), require_number(spec, "c"),
                              require_number(spec, "rho"));
  }
  throw ValidationError("config: unknown map type '" + type + "'");
}

json ExperimentConfig::resolved() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["operation"] = operation;
  j["manifold"] = manifold_spec;
  if (!map_spec.is_null()) j["map"] = map_spec;
  j["n_samples"] = n_samples;
  j["pair_count"] = pair_count;
  j["n_trials"] = n_trials;
  j["seed"] = seed;
  if (tolerance > 0.0) j["tolerance"] = tolerance;
  if (radius > 0.0) j["radius"] = radius;
  j["probes_per_point"] = probes_per_point;
  if (reach_value > 0.0) j["reach_value"] = reach_value;
  j["n_probes"] = n_probes;
  if (m_rows > 0) j["m"] = m_rows;
  json out;
  if (!json_out.empty()) out["json"] = json_out;
  if (!csv_out.empty()) out["csv"] = csv_out;
  if (!out.is_null()) j["output"] = out;
  return j;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigParseError("config: top level must be an object");

  ExperimentConfig cfg;
  if (!j.contains("operation") || !j["operation"].is_string()) {
    throw ValidationError("config: missing string field 'operation'");
  }
  cfg.operation = j["operation"].get<std::string>();
  cfg.manifold_spec = j.value("manifold", json());
  cfg.map_spec = j.value("map", json());
  cfg.n_samples = j.value("n_samples", std::size_t{0});
  cfg.pair_count = j.value("pair_count", CheckDefaults::kPairCount);
  cfg.n_trials = j.value("n_trials", std::size_t{100});
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.tolerance = j.value("tolerance", 0.0);
  cfg.radius = j.value("radius", 0.0);
  cfg.probes_per_point = j.value("probes_per_point", std::size_t{8});
  cfg.reach_value = j.value("reach_value", 0.0);
  cfg.n_probes = j.value("n_probes", std::size_t{4096});
  cfg.m_rows = j.value("m", 0);
  if (j.contains("output")) {
    cfg.json_out = j["output"].value("json", "");
    cfg.csv_out = j["output"].value("csv", "");
  }

  static const std::vector<std::string> known_ops = {
      "check_basic_properties",      "check_angles_exact",
      "check_angle_bound",           "check_reach_exact",
      "check_reach_lower_bound",     "run_counterexample",
      "random_projection_experiment", "estimate_reach",
      "isometry_constants",          "normal_bundle_test",
      "curvature_bound_check"};
  if (std::find(known_ops.begin(), known_ops.end(), cfg.operation) == known_ops.end()) {
    throw ValidationError("config: unknown operation '" + cfg.operation + "'");
  }
  const bool needs_manifold = cfg.operation != "run_counterexample";
  if (needs_manifold) resolve_manifold(cfg.manifold_spec);  // validates names/params now
  const bool needs_map = cfg.operation == "check_basic_properties" ||
                         cfg.operation == "check_angles_exact" ||
                         cfg.operation == "check_angle_bound" ||
                         cfg.operation == "check_reach_exact" ||
                         cfg.operation == "check_reach_lower_bound" ||
                         cfg.operation == "isometry_constants" ||
                         cfg.operation == "run_counterexample";
  if (needs_map) resolve_map(cfg.map_spec);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::size_t samples_or_default(const ExperimentConfig& cfg, const ParametricManifold& m) {
  return cfg.n_samples > 0 ? cfg.n_samples : CheckDefaults::samples_for(m);
}

LinearMapSpec expect_linear(const AnyMap& map, const char* op) {
  if (const auto* linear = std::get_if<LinearMapSpec>(&map)) return *linear;
  throw ValidationError(std::string("config: operation '") + op + "' needs a linear map");
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult result;
  const std::string& op = cfg.operation;

  const double sampled_tol = cfg.tolerance > 0.0 ? cfg.tolerance : CheckDefaults::kSampledTol;

  if (op == "run_counterexample") {
    const json& ms = cfg.map_spec;
    const double delta = require_number(ms, "delta");
    const double c = require_number(ms, "c");
    const double rho = require_number(ms, "rho");
    const std::size_t n = cfg.n_samples > 0 ? cfg.n_samples : 8192;
    result.reports.push_back(run_counterexample(delta, c, rho, n, sampled_tol));
  } else {
    const ParametricManifold manifold = resolve_manifold(cfg.manifold_spec);
    const std::size_t n = samples_or_default(cfg, manifold);

    if (op == "check_basic_properties") {
      result.reports.push_back(
          check_basic_properties(manifold, resolve_map(cfg.map_spec), n, cfg.seed));
    } else if (op == "check_angles_exact") {
      result.reports.push_back(check_angles_exact(manifold,
                                                  expect_linear(resolve_map(cfg.map_spec), "check_angles_exact"),
                                                  cfg.pair_count, cfg.seed, n));
    } else if (op == "check_angle_bound") {
      result.reports.push_back(check_angle_bound(manifold,
                                                 expect_linear(resolve_map(cfg.map_spec), "check_angle_bound"),
                                                 cfg.pair_count, cfg.seed, n));
    } else if (op == "check_reach_exact") {
      result.reports.push_back(check_reach_exact(
          manifold, expect_linear(resolve_map(cfg.map_spec), "check_reach_exact"), n, cfg.seed));
    } else if (op == "check_reach_lower_bound") {
      result.reports.push_back(check_reach_lower_bound(
          manifold, expect_linear(resolve_map(cfg.map_spec), "check_reach_lower_bound"), n,
          cfg.seed, sampled_tol));
    } else if (op == "random_projection_experiment") {
      if (cfg.m_rows < 1) throw ValidationError("config: random projection needs 'm' >= 1");
      result.reports =
          random_projection_experiment(manifold, cfg.m_rows, cfg.n_trials, cfg.seed,
                                       cfg.n_samples > 0 ? cfg.n_samples : 1024);
    } else if (op == "estimate_reach") {
      const SampledManifold s = sample(manifold, n, SampleStrategy::kUniformGrid, cfg.seed);
      const ReachEstimate est = estimate_reach(s);
      VerificationReport r;
      r.check_name = "estimate_reach";
      r.inputs_digest = {{"manifold", manifold.label},
                         {"n_samples", std::to_string(n)},
                         {"seed", std::to_string(cfg.seed)},
                         {"method", "sampled-pointwise"}};
      r.measured = {{"reach", est.value}};
      r.tolerance_used = sampled_tol;
      if (manifold.known_reach) {
        r.bound = {{"reach_closed_form", *manifold.known_reach}};
        if (std::isinf(*manifold.known_reach)) {
          r.passed = est.is_infinite();
        } else {
          r.passed =
              std::abs(est.value - *manifold.known_reach) <= r.tolerance_used * *manifold.known_reach;
        }
      } else {
        r.passed = est.value > 0.0;
      }
      if (est.attaining_pair) {
        r.measured["attaining_i"] = static_cast<double>(est.attaining_pair->first);
        r.measured["attaining_j"] = static_cast<double>(est.attaining_pair->second);
      }
      result.reports.push_back(std::move(r));
    } else if (op == "isometry_constants") {
      const SampledManifold s = sample(manifold, n, SampleStrategy::kUniformGrid, cfg.seed);
      const AnyMap map = resolve_map(cfg.map_spec);
      const IsometryReport iso = std::visit(
          [&](const auto& mp) { return isometry_constants(mp, s); }, map);
      VerificationReport r;
      r.check_name = "isometry_constants";
      r.inputs_digest = {{"manifold", manifold.label},
                         {"map", std::visit(
                                     [](const auto& mp) -> std::string {
                                       if constexpr (std::is_same_v<std::decay_t<decltype(mp)>,
                                                                    LinearMapSpec>)
                                         return mp.label();
                                       else
                                         return mp.label;
                                     },
                                     map)},
                         {"n_samples", std::to_string(n)},
                         {"seed", std::to_string(cfg.seed)}};
      r.measured = {{"l", iso.l},
                    {"u", iso.u},
                    {"delta", iso.delta},
                    {"pair_count", static_cast<double>(iso.sample_pair_count)}};
      r.inputs_digest["min_pair"] =
          std::to_string(iso.min_pair.first) + "," + std::to_string(iso.min_pair.second);
      r.inputs_digest["max_pair"] =
          std::to_string(iso.max_pair.first) + "," + std::to_string(iso.max_pair.second);
      r.passed = iso.l > 0.0 && iso.l <= iso.u;
      result.reports.push_back(std::move(r));
    } else if (op == "normal_bundle_test") {
      if (!(cfg.radius > 0.0)) throw ValidationError("config: normal_bundle_test needs 'radius'");
      const SampledManifold s = sample(manifold, n, SampleStrategy::kUniformGrid, cfg.seed);
      const bool embedded =
          normal_bundle_embedding_test(s, cfg.radius, cfg.probes_per_point, cfg.seed);
      VerificationReport r;
      r.check_name = "normal_bundle_test";
      r.inputs_digest = {{"manifold", manifold.label},
                         {"n_samples", std::to_string(n)},
                         {"seed", std::to_string(cfg.seed)},
                         {"radius", fmt_double(cfg.radius)}};
      r.measured = {{"embedded", embedded ? 1.0 : 0.0}};
      r.passed = true;  // the op reports evidence; there is no expected value
      r.notes = embedded ? "no collision found (evidence that r < reach)"
                         : "collision found: r >= reach";
      result.reports.push_back(std::move(r));
    } else if (op == "curvature_bound_check") {
      double rv = cfg.reach_value;
      if (rv <= 0.0) {
        if (!manifold.known_reach || std::isinf(*manifold.known_reach)) {
          throw ValidationError("config: curvature_bound_check needs 'reach_value'");
        }
        rv = *manifold.known_reach;
      }
      const bool ok = curvature_bound_check(manifold, rv, cfg.n_probes);
      VerificationReport r;
      r.check_name = "curvature_bound_check";
      r.inputs_digest = {{"manifold", manifold.label},
                         {"reach_value", fmt_double(rv)},
                         {"n_probes", std::to_string(cfg.n_probes)}};
      r.measured = {{"within_bound", ok ? 1.0 : 0.0}};
      r.bound = {{"curvature_limit", 1.0 / rv}};
      r.passed = ok;
      result.reports.push_back(std::move(r));
    }
  }

  result.all_passed = true;
  for (const auto& r : result.reports) result.all_passed = result.all_passed && r.passed;
  return result;
}

json report_to_json(const VerificationReport& report) {
  json j;
  j["check_name"] = report.check_name;
  j["inputs_digest"] = report.inputs_digest;
  json measured = json::object();
  for (const auto& [k, v] : report.measured) measured[k] = value_to_json(v);
  j["measured"] = measured;
  json bound = json::object();
  for (const auto& [k, v] : report.bound) bound[k] = value_to_json(v);
  j["bound"] = bound;
  j["passed"] = report.passed;
  j["tolerance_used"] = report.tolerance_used;
  j["notes"] = report.notes;
  return j;
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string join_kv(const std::map<std::string, double>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ";";
    out += k + "=" + fmt_double(v);
  }
  return out;
}

}  // namespace

std::string csv_header() {
  return "check_name,manifold,map,n_samples,seed,passed,tolerance,measured,bound,notes";
}

std::string csv_row(const VerificationReport& r) {
  auto digest = [&](const char* key) -> std::string {
    auto it = r.inputs_digest.find(key);
    return it == r.inputs_digest.end() ? "" : it->second;
  };
  std::string row;
  row += csv_escape(r.check_name) + ",";
  row += csv_escape(digest("manifold")) + ",";
  row += csv_escape(digest("map")) + ",";
  row += digest("n_samples") + ",";
  row += digest("seed") + ",";
  row += (r.passed ? "true" : "false");
  row += ",";
  row += fmt_double(r.tolerance_used) + ",";
  row += csv_escape(join_kv(r.measured)) + ",";
  row += csv_escape(join_kv(r.bound)) + ",";
  row += csv_escape(r.notes);
  return row;
}

void write_json_report(const std::string& path, const ExperimentConfig& config,
                       const RunResult& result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config.resolved();
  json reports = json::array();
  for (const auto& r : result.reports) reports.push_back(report_to_json(r));
  j["reports"] = reports;
  j["all_passed"] = result.all_passed;
  atomic_write(path, j.dump(2) + "\n");
}

void write_csv_report(const std::string& path, const RunResult& result) {
  std::string content = csv_header() + "\n";
  for (const auto& r : result.reports) content += csv_row(r) + "\n";
  atomic_write(path, content);
}

}  // namespace reachlab
