#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reachlab/config.hpp"
#include "reachlab/zoo.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

int cmd_run(const std::string& config_path, std::string json_out, std::string csv_out) {
  reachlab::ExperimentConfig config;
  try {
    config = reachlab::load_config(config_path);
  } catch (const reachlab::ConfigParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const reachlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (!json_out.empty()) config.json_out = json_out;
  if (!csv_out.empty()) config.csv_out = csv_out;

  reachlab::RunResult result;
  try {
    result = reachlab::run_experiment(config);
  } catch (const reachlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const reachlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (!config.json_out.empty()) reachlab::write_json_report(config.json_out, config, result);
  if (!config.csv_out.empty()) reachlab::write_csv_report(config.csv_out, result);

  for (const auto& report : result.reports) {
    std::cout << (report.passed ? "[pass] " : "[FAIL] ") << report.check_name;
    const auto it = report.inputs_digest.find("manifold");
    if (it != report.inputs_digest.end()) std::cout << " (" << it->second << ")";
    std::cout << "\n";
    if (!report.passed) {
      // one diagnostic line per failure
      std::cout << "       measured:";
      for (const auto& [k, v] : report.measured) std::cout << " " << k << "=" << v;
      std::cout << "\n       bound:";
      for (const auto& [k, v] : report.bound) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
  }
  std::cout << (result.all_passed ? "all checks passed" : "some checks FAILED") << "\n";
  return result.all_passed ? 0 : 1;
}

int cmd_list_zoo() {
  std::cout << "manifolds:\n";
  for (const auto& line : reachlab::zoo::describe_entries()) std::cout << "  " << line << "\n";
  std::cout << "\nmap specs (JSON):\n"
            << "  {\"type\": \"gaussian\", \"m\": <rows>, \"n\": <cols>, \"seed\": <s>}  "
               "entries ~ N(0, 1/m)\n"
            << "  {\"type\": \"orthogonal\", \"n\": <dim>, \"seed\": <s>}           "
               "seed 0 = identity\n"
            << "  {\"type\": \"matrix\", \"rows\": [[...], ...]}                  explicit "
               "matrix\n"
            << "  {\"type\": \"projection\", \"m\": <rows>, \"n\": <cols>}          leading-"
               "coordinate projection\n"
            << "  {\"type\": \"counterexample\", \"delta\": d, \"c\": c, \"rho\": r}  smoothed "
               "cusp (0 < c < delta < 1, rho < delta/2)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reachlab: manifold reach and bi-Lipschitz embedding experiments"};
  app.require_subcommand(0, 1);

  std::string config_path, json_out, csv_out;
  auto* run = app.add_subcommand("run", "run an experiment config and emit reports");
  run->add_option("config", config_path, "path to a JSON experiment config")->required();
  run->add_option("--json", json_out, "write the full JSON report here");
  run->add_option("--csv", csv_out, "write the CSV summary here");

  auto* list = app.add_subcommand("list-zoo", "list built-in manifolds and map grammar");
  auto* version = app.add_subcommand("version", "print version");
  app.set_version_flag("--version", std::string("reachlab ") + kVersion);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, json_out, csv_out);
  if (list->parsed()) return cmd_list_zoo();
  if (version->parsed()) {
    std::cout << "reachlab " << kVersion << " (report schema 1)\n";
    return 0;
  }
  std::cout << app.help();
  return 0;
}
