#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mecopt/errors.hpp"
#include "mecopt/experiment.hpp"
#include "mecopt/json_io.hpp"
#include "mecopt/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;

int run_solve(const std::string& instance_path, const std::string& method,
              const std::string& out_path, int threads) {
  const mecopt::Instance instance = mecopt::load_instance(instance_path);
  const mecopt::SolveResult result =
      mecopt::run_method(instance, method, threads);
  mecopt::write_file(out_path, mecopt::emit_result_json(instance, result));
  return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  int threads, bool timings) {
  const mecopt::ScenarioConfig config = mecopt::load_config(config_path);
  if (config.methods.empty())
    throw std::invalid_argument("config JSON: 'methods' must be non-empty");
  const auto rows =
      mecopt::run_sweep(config, config.methods, threads, timings);
  mecopt::write_file(out_path, mecopt::emit_csv(rows));
  return kExitOk;
}

int run_verify(const std::string& suite, int trials, uint64_t seed) {
  std::vector<mecopt::SuiteReport> reports;
  if (suite == "all") {
    reports = mecopt::verify_all(trials, seed);
  } else if (suite == "makespan") {
    reports.push_back(mecopt::verify_makespan(trials, seed));
  } else if (suite == "johnson") {
    reports.push_back(mecopt::verify_johnson(trials, seed));
  } else {
    reports.push_back(mecopt::verify_kkt(trials, seed));
  }

  bool all_passed = true;
  for (const auto& r : reports) {
    std::printf("suite %-8s %d/%d passed\n", r.suite.c_str(),
                r.trials - r.failures, r.trials);
    all_passed = all_passed && r.passed();
  }
  return all_passed ? kExitOk : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal transmit scheduling for deadline-bound offloading"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "cap on worker threads (0 = hardware default)");

  auto* solve = app.add_subcommand("solve", "solve one instance file");
  std::string instance_path, method, solve_out;
  solve->add_option("--instance", instance_path, "instance JSON file")
      ->required();
  solve->add_option("--method", method, "solver to run")
      ->required()
      ->check(CLI::IsMember(std::set<std::string>(
          mecopt::kKnownMethods.begin(), mecopt::kKnownMethods.end())));
  solve->add_option("--out", solve_out, "result JSON file")->required();

  auto* sweep = app.add_subcommand("sweep", "run a configured parameter sweep");
  std::string config_path, sweep_out;
  bool timings = false;
  sweep->add_option("--config", config_path, "sweep config JSON file")
      ->required();
  sweep->add_option("--out", sweep_out, "output CSV file")->required();
  sweep->add_flag("--timings", timings,
                  "measure wall time per solve (makes output nondeterministic)");

  auto* verify = app.add_subcommand("verify", "run randomized property suites");
  std::string suite = "all";
  int trials = 100;
  uint64_t seed = 1;
  verify->add_option("--suite", suite, "which suite to run")
      ->check(CLI::IsMember({"makespan", "johnson", "kkt", "all"}));
  verify->add_option("--trials", trials, "randomized checks per suite");
  verify->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) return run_solve(instance_path, method, solve_out, threads);
    if (sweep->parsed()) return run_sweep_cmd(config_path, sweep_out, threads, timings);
    return run_verify(suite, trials, seed);
  } catch (const mecopt::InfeasibleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
}
