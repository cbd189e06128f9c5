// Command-line front end: batch experiments, summaries, reference fronts and
// feasible-ratio sampling.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cmoead/harness.hpp"
#include "cmoead/problems.hpp"

namespace {

using namespace cmoead;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string default_output_dir() {
  const char* env = std::getenv("CMOEAD_OUT_DIR");
  return env && *env ? env : "results";
}

int lir_id(const std::string& text) {
  const std::string name = canonical_problem_name(text);
  if (name == "gripper") throw std::invalid_argument("the gripper has no known Pareto front");
  return std::stoi(name.substr(8));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained MOEA/D experiments"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run problem x algorithm x seed cells");
  std::string problem_arg = "all";
  std::string algo_arg = "all";
  std::size_t pop = 300;
  std::size_t max_evals = 300000;
  std::optional<std::size_t> gripper_evals;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::string out = default_output_dir();
  std::string metric_arg = "igd,hv";
  std::string scalarization = "tch";
  std::size_t z_samples = 100;
  std::size_t jobs = 1;
  std::size_t neighborhood = 30;
  run_cmd->add_option("--problem", problem_arg, "Problem id list (1..14, gripper) or 'all'");
  run_cmd->add_option("--algo", algo_arg, "iepsilon|epsilon|cdp|sr|cmoead list or 'all'");
  run_cmd->add_option("--pop", pop, "Population size")->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-evals", max_evals, "Evaluation budget per run")->check(CLI::PositiveNumber);
  run_cmd->add_option("--gripper-evals", gripper_evals, "Evaluation budget for the gripper (default 600000)");
  run_cmd->add_option("--neighbors", neighborhood, "Neighborhood size")->check(CLI::PositiveNumber);
  run_cmd->add_option("--runs", runs, "Independent runs per cell")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Base seed; run i uses seed + i");
  run_cmd->add_option("--out", out, "Output directory (env CMOEAD_OUT_DIR)");
  run_cmd->add_option("--metric", metric_arg, "Metrics to compute: igd,hv");
  run_cmd->add_option("--scalarization", scalarization, "tch|ws|pbi");
  run_cmd->add_option("--z-samples", z_samples, "Gripper actuator samples")->check(CLI::Range(2, 100000));
  run_cmd->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  // summarize
  auto* sum_cmd = app.add_subcommand("summarize", "Rebuild summary tables from a results directory");
  std::string in_dir = default_output_dir();
  std::string reference_algo = "iepsilon";
  sum_cmd->add_option("--in", in_dir, "Results directory");
  sum_cmd->add_option("--reference", reference_algo, "Algorithm the others are tested against");

  // reffront
  auto* front_cmd = app.add_subcommand("reffront", "Write a sampled reference Pareto front");
  std::string front_problem;
  std::optional<std::size_t> front_size;
  std::string front_out;
  front_cmd->add_option("--problem", front_problem, "LIR-CMOP id")->required();
  front_cmd->add_option("--size", front_size, "Number of points");
  front_cmd->add_option("--out", front_out, "Output file")->required();

  // rfs
  auto* rfs_cmd = app.add_subcommand("rfs", "Estimate the feasible ratio by sampling");
  std::string rfs_problem = "gripper";
  std::size_t samples = 1000000;
  std::uint64_t rfs_seed = 1;
  rfs_cmd->add_option("--problem", rfs_problem, "Problem id");
  rfs_cmd->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  rfs_cmd->add_option("--seed", rfs_seed, "Sampling seed");
  std::size_t optimizer_samples = 0;
  std::size_t rfs_evals = 600000;
  rfs_cmd->add_option("--optimizer-samples", optimizer_samples,
                      "Also pool this many solutions evaluated by IEpsilon runs");
  rfs_cmd->add_option("--max-evals", rfs_evals, "Budget of each pooled run")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      ExperimentConfig cfg;
      cfg.problems = problem_arg == "all" ? all_problem_names() : split_list(problem_arg);
      if (algo_arg == "all") {
        cfg.algorithms = {PolicyKind::kIEpsilon, PolicyKind::kEpsilon, PolicyKind::kSr,
                          PolicyKind::kCdp, PolicyKind::kCmoead};
      } else {
        for (const auto& a : split_list(algo_arg)) cfg.algorithms.push_back(parse_policy(a));
      }
      cfg.runs = runs;
      cfg.base_seed = seed;
      cfg.engine.population_size = pop;
      cfg.engine.neighborhood_size = std::min(neighborhood, pop);
      cfg.engine.max_evaluations = max_evals;
      cfg.engine.scalarization = parse_scalarization(scalarization);
      if (gripper_evals) cfg.gripper_max_evaluations = *gripper_evals;
      cfg.gripper_z_samples = z_samples;
      cfg.output_dir = out;
      cfg.parallel_runs = jobs;
      const auto metrics = split_list(metric_arg);
      cfg.compute_igd = std::find(metrics.begin(), metrics.end(), "igd") != metrics.end();
      cfg.compute_hv = std::find(metrics.begin(), metrics.end(), "hv") != metrics.end();
      for (const auto& m : metrics)
        if (m != "igd" && m != "hv") throw std::invalid_argument("unknown metric: " + m);

      const ExperimentOutcome outcome = run_experiment(cfg);
      std::cout << format_summary_table(outcome.summary);
      for (const auto& f : outcome.failures)
        std::cerr << "failed: " << f.problem << ' ' << f.algorithm << " run " << f.run_index << ": "
                  << f.message << '\n';
      return outcome.failures.empty() ? 0 : 2;
    }
    if (*sum_cmd) {
      std::cout << format_summary_table(summarize_directory(in_dir, reference_algo));
      return 0;
    }
    if (*front_cmd) {
      const int id = lir_id(front_problem);
      write_front(front_out, reference_front(id, front_size.value_or(default_front_size(id))));
      return 0;
    }
    if (*rfs_cmd) {
      const auto problem = make_problem(canonical_problem_name(rfs_problem));
      EngineConfig engine;
      engine.seed = rfs_seed;
      engine.max_evaluations = rfs_evals;
      const auto s = sample_feasible_ratio(*problem, samples, optimizer_samples, engine);
      std::cout << "random " << s.random_feasible << '/' << s.random_total << '\n';
      if (s.optimizer_total)
        std::cout << "optimizer " << s.optimizer_feasible << '/' << s.optimizer_total << '\n';
      std::cout << "ratio " << s.ratio() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
