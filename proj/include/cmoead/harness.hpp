#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmoead/constraints.hpp"
#include "cmoead/engine.hpp"

namespace cmoead {

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

enum class Orientation { kLowerIsBetter, kHigherIsBetter };

/// Verdict for sample_b measured against the reference sample_a: kWorse is
/// the dagger marker in a results table, kBetter the double dagger.
enum class Verdict { kWorse, kBetter, kNotSignificant };

std::string_view to_string(Verdict v);

struct RankSumResult {
  double p_value = 1.0;
  double u_statistic = 0.0;  // Mann-Whitney U of sample_a
  bool exact = false;
  Verdict verdict = Verdict::kNotSignificant;
};

/// Two-sided Wilcoxon rank-sum test. Uses the exact permutation distribution
/// (midranks for ties) when the smaller sample has at most 12 values and the
/// pooled size is at most 200; otherwise the normal approximation with tie
/// correction. Throws std::invalid_argument if either sample is empty.
RankSumResult wilcoxon_rank_sum(const std::vector<double>& sample_a,
                                const std::vector<double>& sample_b, double significance = 0.05,
                                Orientation orientation = Orientation::kLowerIsBetter);

double mean(const std::vector<double>& values);
// Sample standard deviation (n - 1); 0 for fewer than two values, +inf when
// the values are not all finite.
double sample_std(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Experiment records
// ---------------------------------------------------------------------------

struct RunRecord {
  std::string problem;
  std::string algorithm;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  std::size_t archive_size = 0;
  std::map<std::string, double> metrics;  // "igd", "hv"
};

/// Structured-text metrics record, one `key value` pair per line, doubles
/// printed with 17 significant digits.
std::string format_run_record(const RunRecord& record);
RunRecord parse_run_record(std::string_view text);

/// CSV with header x_1..x_n,f_1..f_m,phi.
std::string format_archive_csv(const std::vector<Solution>& archive, std::size_t dimension,
                               std::size_t num_objectives);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

struct SummaryRow {
  std::string problem;
  std::string algorithm;
  std::string metric;
  std::size_t runs = 0;
  double mean = 0.0;
  double std = 0.0;
  std::optional<Verdict> verdict;  // unset for the reference algorithm
  std::optional<double> p_value;
  bool best = false;
  bool partial = false;
};

Orientation metric_orientation(std::string_view metric);

/// Aggregates per-run records into one row per (problem, algorithm, metric).
/// Rows follow problem order of first appearance, then algorithm order in
/// `algorithm_order` (unknown names last, alphabetically). Cells with fewer
/// than `expected_runs` values are flagged partial.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records,
                                  std::string_view reference_algorithm,
                                  std::size_t expected_runs,
                                  const std::vector<std::string>& algorithm_order = {},
                                  double significance = 0.05);

std::string format_summary_csv(const std::vector<SummaryRow>& rows);
// Fixed-width table with dagger/double-dagger markers and '*' on best means.
std::string format_summary_table(const std::vector<SummaryRow>& rows);

// ---------------------------------------------------------------------------
// Experiment orchestration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<PolicyKind> algorithms;
  std::size_t runs = 30;
  std::uint64_t base_seed = 1;
  EngineConfig engine;
  // Budget override for the gripper cell; unset keeps engine.max_evaluations.
  std::optional<std::size_t> gripper_max_evaluations = 600000;
  std::size_t gripper_z_samples = 100;
  std::filesystem::path output_dir = "results";
  // Where reference fronts are cached; empty means <output_dir>/fronts.
  std::filesystem::path front_cache_dir;
  bool compute_igd = true;
  bool compute_hv = true;
  std::size_t parallel_runs = 1;

  void validate() const;
};

struct CellFailure {
  std::string problem;
  std::string algorithm;
  std::size_t run_index;
  std::string message;
};

struct ExperimentOutcome {
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
  std::vector<CellFailure> failures;
};

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index);

std::filesystem::path archive_path(const std::filesystem::path& out, std::string_view problem,
                                   std::string_view algorithm, std::size_t run_index);
std::filesystem::path metrics_path(const std::filesystem::path& out, std::string_view problem,
                                   std::string_view algorithm, std::size_t run_index);

/// Runs one (problem, algorithm, seed) cell and computes its metrics.
/// Returns the record and the feasible archive.
std::pair<RunRecord, std::vector<Solution>> run_cell(const ExperimentConfig& cfg,
                                                     std::string_view problem,
                                                     PolicyKind algorithm,
                                                     std::size_t run_index);

/// Executes every cell, writes per-run archives and metrics records,
/// summary.csv, summary.txt and manifest.txt under cfg.output_dir. A failing
/// cell is recorded and the remaining cells still run.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Feasible fraction over a pooled sample: `random_samples` uniform points in
/// the bound box plus up to `optimizer_samples` solutions evaluated by
/// successive runs of `engine` (seeds engine.seed, engine.seed + 1, ...).
/// Runs end on whole generations, so the optimizer part can fall short by
/// less than two population sizes. With
/// optimizer_samples = 0 this is plain uniform sampling.
struct FeasibleRatioSample {
  std::size_t random_total = 0;
  std::size_t random_feasible = 0;
  std::size_t optimizer_total = 0;
  std::size_t optimizer_feasible = 0;
  double ratio() const;
};
FeasibleRatioSample sample_feasible_ratio(const Problem& problem, std::size_t random_samples,
                                          std::size_t optimizer_samples,
                                          const EngineConfig& engine);

/// Reads every metrics record under `dir` and rebuilds the summary files.
std::vector<SummaryRow> summarize_directory(const std::filesystem::path& dir,
                                            std::string_view reference_algorithm = "iepsilon");

}  // namespace cmoead
