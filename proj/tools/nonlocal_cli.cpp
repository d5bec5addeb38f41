// Command-line front end: theta sweeps, bound tables, model curves,
// classification reports, and the self-verification suite.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonlocal/nonlocal.hpp"

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Failure that must surface as exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

nonlocal::Bloch3 to_bloch(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) {
    throw std::invalid_argument(std::string(flag) + " needs three components");
  }
  return {v[0], v[1], v[2]};
}

nonlocal::Bloch3 bloch_from_json(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) {
    throw std::invalid_argument("config key '" + key +
                                "' must be an array of three numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

// State shared by the subcommands; config-file values fill in wherever the
// matching flag was not given on the command line.
struct CliState {
  std::string config_path;
  bool degrees = false;

  nonlocal::ScanConfig scan;
  std::string state_name = "singlet";
  std::vector<double> bloch_a{0.0, 0.0, 1.0};
  std::vector<double> bloch_b{0.0, 0.0, 1.0};

  double theta = std::numbers::pi / 4.0;  // classify
  int points = 201;                       // kappa3-models
  std::string output_path;                // kappa3-models

  std::uint64_t seed = nonlocal::sampling::kDefaultSeed;
  bool inject_fault = false;
};

void apply_config(const json& cfg, const CLI::App* cmd, CliState& st) {
  auto flag_absent = [&](const std::string& name) {
    return cmd->get_option_no_throw(name) == nullptr ||
           cmd->count(name) == 0;
  };
  if (cfg.contains("theta_start") && flag_absent("--theta-start"))
    st.scan.theta_start = cfg["theta_start"].get<double>();
  if (cfg.contains("theta_end") && flag_absent("--theta-end"))
    st.scan.theta_end = cfg["theta_end"].get<double>();
  if (cfg.contains("steps") && flag_absent("--steps"))
    st.scan.steps = cfg["steps"].get<int>();
  if (cfg.contains("state") && flag_absent("--state"))
    st.state_name = cfg["state"].get<std::string>();
  if (cfg.contains("bloch_a") && flag_absent("--bloch-a"))
    st.scan.bloch_a = bloch_from_json(cfg["bloch_a"], "bloch_a");
  if (cfg.contains("bloch_b") && flag_absent("--bloch-b"))
    st.scan.bloch_b = bloch_from_json(cfg["bloch_b"], "bloch_b");
  if (cfg.contains("max_order") && flag_absent("--max-order"))
    st.scan.max_order = cfg["max_order"].get<int>();
  if (cfg.contains("output_path") && flag_absent("--output"))
    st.scan.output_path = cfg["output_path"].get<std::string>();
  if (cfg.contains("theta") && flag_absent("--theta"))
    st.theta = cfg["theta"].get<double>();
  if (cfg.contains("points") && flag_absent("--points"))
    st.points = cfg["points"].get<int>();
  if (cfg.contains("seed") && flag_absent("--seed"))
    st.seed = cfg["seed"].get<std::uint64_t>();
}

int run_scan_command(const CLI::App* cmd, CliState& st) {
  st.scan.state = nonlocal::parse_scan_state(st.state_name);
  if (cmd->count("--bloch-a") > 0) st.scan.bloch_a = to_bloch(st.bloch_a, "--bloch-a");
  if (cmd->count("--bloch-b") > 0) st.scan.bloch_b = to_bloch(st.bloch_b, "--bloch-b");
  if (st.degrees) {
    st.scan.theta_start = degrees_to_radians(st.scan.theta_start);
    st.scan.theta_end = degrees_to_radians(st.scan.theta_end);
  }
  write_output(st.scan.output_path, nonlocal::scan_csv(st.scan));
  return kExitOk;
}

int run_kappa3_models_command(CliState& st) {
  write_output(st.output_path, nonlocal::kappa3_models_csv(st.points));
  return kExitOk;
}

int run_bounds_command() {
  std::cout << nonlocal::bounds_table();
  return kExitOk;
}

ordered_json witness_json(const nonlocal::WitnessResult& w, double threshold) {
  return ordered_json{
      {"value", w.value}, {"threshold", threshold}, {"violated", w.violated}};
}

int run_classify_command(const CLI::App* cmd, CliState& st) {
  st.scan.state = nonlocal::parse_scan_state(st.state_name);
  if (cmd->count("--bloch-a") > 0) st.scan.bloch_a = to_bloch(st.bloch_a, "--bloch-a");
  if (cmd->count("--bloch-b") > 0) st.scan.bloch_b = to_bloch(st.bloch_b, "--bloch-b");
  if (st.degrees) st.theta = degrees_to_radians(st.theta);

  const nonlocal::DensityMatrix rho = nonlocal::make_scan_state(st.scan);
  const nonlocal::BipartiteScenario sc = nonlocal::canonical_scenario(st.theta);
  const nonlocal::CumulantReport report =
      nonlocal::classify(rho, sc, st.scan.max_order);

  ordered_json out;
  out["theta"] = st.theta;
  out["state"] = nonlocal::scan_state_name(st.scan.state);
  out["max_order"] = st.scan.max_order;
  out["mean_s"] = report.mean_s;
  out["moments"] = report.moments;
  out["cumulants"] = report.cumulants;
  out["chsh"] = witness_json(report.chsh, nonlocal::kChshClassicalBound);
  out["skewness"] =
      witness_json(report.skewness, nonlocal::kSkewnessClassicalBound);
  ordered_json orders = ordered_json::array();
  for (const auto& oa : report.orders) {
    orders.push_back(ordered_json{{"order", oa.order},
                                  {"kappa", oa.kappa},
                                  {"classical_min", oa.classical_min},
                                  {"classical_max", oa.classical_max},
                                  {"kappa_in_classical_range",
                                   oa.kappa_in_classical_range},
                                  {"nonlocal", oa.nonlocal}});
  }
  out["orders"] = orders;
  out["classical_min"] = report.classical_min;
  out["classical_max"] = report.classical_max;
  out["witness_value"] = report.witness_value;
  out["verdict"] = nonlocal::verdict_label(report.verdict);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_verify_command(const CliState& st) {
  nonlocal::VerifyOptions opts;
  opts.seed = st.seed;
  opts.flip_s_sign = st.inject_fault;
  const auto results = nonlocal::run_verification(opts);
  int passed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << "\n";
    if (r.passed) ++passed;
  }
  std::cout << "seed: " << opts.seed << "\n";
  std::cout << "result: " << passed << "/" << results.size()
            << " checks passed\n";
  return nonlocal::all_passed(results) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-scenario correlation models, bounds, and witnesses"};
  app.require_subcommand(1);
  CliState st;

  auto add_common = [&st](CLI::App* cmd) {
    cmd->add_option("--config", st.config_path,
                    "JSON config file; explicit flags override it");
    cmd->add_flag("--degrees", st.degrees,
                  "interpret input angles as degrees instead of radians");
  };
  auto add_state_options = [&st](CLI::App* cmd) {
    cmd->add_option("--state", st.state_name,
                    "state: singlet, product, or mixed");
    cmd->add_option("--bloch-a", st.bloch_a,
                    "Bloch vector of the first qubit (product state)")
        ->expected(3);
    cmd->add_option("--bloch-b", st.bloch_b,
                    "Bloch vector of the second qubit (product state)")
        ->expected(3);
    cmd->add_option("--max-order", st.scan.max_order,
                    "highest cumulant order to assess (2..4)");
  };

  CLI::App* scan = app.add_subcommand("scan", "sweep theta and emit one CSV row per grid point");
  add_common(scan);
  add_state_options(scan);
  scan->add_option("--theta-start", st.scan.theta_start, "sweep start (radians)");
  scan->add_option("--theta-end", st.scan.theta_end, "sweep end (radians)");
  scan->add_option("--steps", st.scan.steps, "grid points, endpoints included");
  scan->add_option("--output", st.scan.output_path, "CSV path (default: stdout)");

  CLI::App* bounds = app.add_subcommand("bounds", "print the model-hierarchy bound table");
  add_common(bounds);

  CLI::App* kappa3 = app.add_subcommand(
      "kappa3-models", "emit the third-cumulant model curves as CSV");
  add_common(kappa3);
  kappa3->add_option("--points", st.points, "grid points, endpoints included");
  kappa3->add_option("--output", st.output_path, "CSV path (default: stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify);
  verify->add_option("--seed", st.seed, "seed for randomized checks");
  verify
      ->add_flag("--inject-fault", st.inject_fault,
                 "test hook: flip a sign in S so identity checks fail")
      ->group("");  // hidden

  CLI::App* classify = app.add_subcommand(
      "classify", "classify one (state, theta) point; JSON to stdout");
  add_common(classify);
  add_state_options(classify);
  classify->add_option("--theta", st.theta, "angle between X and Y (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!st.config_path.empty()) apply_config(load_config(st.config_path), cmd, st);
    if (cmd == scan) return run_scan_command(scan, st);
    if (cmd == bounds) return run_bounds_command();
    if (cmd == kappa3) return run_kappa3_models_command(st);
    if (cmd == verify) return run_verify_command(st);
    if (cmd == classify) return run_classify_command(classify, st);
    std::cerr << "error: no subcommand selected\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
