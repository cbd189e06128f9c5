#include "cmoead/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cmoead/metrics.hpp"
#include "cmoead/problems.hpp"

namespace cmoead {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text) {
  // from_chars for doubles is fine on GCC 11+, and handles inf/nan.
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{}) throw std::invalid_argument("bad number: " + std::string(text));
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Records and files
// ---------------------------------------------------------------------------

std::string format_run_record(const RunRecord& r) {
  std::ostringstream out;
  out << "problem " << r.problem << '\n'
      << "algorithm " << r.algorithm << '\n'
      << "run " << r.run_index << '\n'
      << "seed " << r.seed << '\n'
      << "evaluations " << r.evaluations << '\n'
      << "archive_size " << r.archive_size << '\n';
  for (const auto& [name, value] : r.metrics) out << name << ' ' << format_double(value) << '\n';
  return out.str();
}

RunRecord parse_run_record(std::string_view text) {
  RunRecord r;
  std::istringstream in{std::string(text)};
  std::string key, value;
  while (in >> key >> value) {
    if (key == "problem") r.problem = value;
    else if (key == "algorithm") r.algorithm = value;
    else if (key == "run") r.run_index = std::stoul(value);
    else if (key == "seed") r.seed = std::stoull(value);
    else if (key == "evaluations") r.evaluations = std::stoul(value);
    else if (key == "archive_size") r.archive_size = std::stoul(value);
    else r.metrics[key] = parse_double(value);
  }
  if (r.problem.empty() || r.algorithm.empty())
    throw std::invalid_argument("metrics record lacks problem/algorithm");
  return r;
}

std::string format_archive_csv(const std::vector<Solution>& archive, std::size_t dimension,
                               std::size_t num_objectives) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dimension; ++i) out << "x_" << i + 1 << ',';
  for (std::size_t i = 0; i < num_objectives; ++i) out << "f_" << i + 1 << ',';
  out << "phi\n";
  for (const auto& s : archive) {
    for (double v : s.x) out << format_double(v) << ',';
    for (double v : s.objectives) out << format_double(v) << ',';
    out << format_double(s.violation) << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

Orientation metric_orientation(std::string_view metric) {
  return metric == "hv" ? Orientation::kHigherIsBetter : Orientation::kLowerIsBetter;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records,
                                  std::string_view reference_algorithm,
                                  std::size_t expected_runs,
                                  const std::vector<std::string>& algorithm_order,
                                  double significance) {
  std::vector<std::string> problems;
  std::set<std::string> algo_set;
  std::set<std::string> metric_set;
  // (problem, algorithm, metric) -> values ordered by run index
  std::map<std::tuple<std::string, std::string, std::string>, std::map<std::size_t, double>> cells;
  for (const auto& r : records) {
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end())
      problems.push_back(r.problem);
    algo_set.insert(r.algorithm);
    for (const auto& [metric, value] : r.metrics) {
      metric_set.insert(metric);
      cells[{r.problem, r.algorithm, metric}][r.run_index] = value;
    }
  }

  std::vector<std::string> algorithms;
  for (const auto& a : algorithm_order)
    if (algo_set.count(a)) algorithms.push_back(a);
  for (const auto& a : algo_set)
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end())
      algorithms.push_back(a);

  const auto values_of = [&](const std::string& p, const std::string& a, const std::string& m) {
    std::vector<double> v;
    auto it = cells.find({p, a, m});
    if (it != cells.end())
      for (const auto& [run, value] : it->second) v.push_back(value);
    return v;
  };

  std::vector<SummaryRow> rows;
  for (const auto& metric : metric_set) {
    const Orientation orient = metric_orientation(metric);
    for (const auto& problem : problems) {
      const std::vector<double> reference = values_of(problem, std::string(reference_algorithm), metric);
      const std::size_t first = rows.size();
      for (const auto& algo : algorithms) {
        const std::vector<double> values = values_of(problem, algo, metric);
        if (values.empty()) continue;
        SummaryRow row;
        row.problem = problem;
        row.algorithm = algo;
        row.metric = metric;
        row.runs = values.size();
        row.mean = mean(values);
        row.std = sample_std(values);
        row.partial = values.size() < expected_runs;
        if (algo != reference_algorithm && !reference.empty()) {
          const RankSumResult test = wilcoxon_rank_sum(reference, values, significance, orient);
          row.verdict = test.verdict;
          row.p_value = test.p_value;
        }
        rows.push_back(std::move(row));
      }
      if (rows.size() == first) continue;
      std::size_t best = first;
      for (std::size_t i = first + 1; i < rows.size(); ++i) {
        const bool better = orient == Orientation::kLowerIsBetter ? rows[i].mean < rows[best].mean
                                                                  : rows[i].mean > rows[best].mean;
        if (better) best = i;
      }
      rows[best].best = true;
    }
  }
  return rows;
}

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "problem,algorithm,metric,runs,mean,std,verdict,p_value,best,partial\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.algorithm << ',' << r.metric << ',' << r.runs << ','
        << format_double(r.mean) << ',' << format_double(r.std) << ','
        << (r.verdict ? to_string(*r.verdict) : std::string_view("reference")) << ','
        << (r.p_value ? format_double(*r.p_value) : std::string()) << ',' << (r.best ? 1 : 0)
        << ',' << (r.partial ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-12s %-10s %5s %-13s %-11s %s\n", "", "problem",
                "algorithm", "runs", "mean", "std", "flags");
  out << line;
  std::string metric;
  for (const auto& r : rows) {
    if (r.metric != metric) {
      metric = r.metric;
      out << "# " << metric << (metric_orientation(metric) == Orientation::kLowerIsBetter
                                    ? " (lower is better)\n"
                                    : " (higher is better)\n");
    }
    std::string flags;
    if (r.best) flags += "*";
    if (r.verdict == Verdict::kWorse) flags += "†";
    if (r.verdict == Verdict::kBetter) flags += "‡";
    if (r.partial) flags += " partial";
    std::snprintf(line, sizeof line, "%-4s %-12s %-10s %5zu %-13.3E %-11.3E %s\n", "",
                  r.problem.c_str(), r.algorithm.c_str(), r.runs, r.mean, r.std, flags.c_str());
    out << line;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Experiment
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
  if (problems.empty()) throw std::invalid_argument("experiment: no problems selected");
  if (algorithms.empty()) throw std::invalid_argument("experiment: no algorithms selected");
  for (const auto& p : problems) (void)canonical_problem_name(p);
  if (parallel_runs < 1) throw std::invalid_argument("experiment: parallel_runs must be >= 1");
  engine.validate();
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) {
  return base_seed + run_index;
}

std::filesystem::path archive_path(const std::filesystem::path& out, std::string_view problem,
                                   std::string_view algorithm, std::size_t run_index) {
  return out / problem / algorithm / ("run_" + std::to_string(run_index) + "_archive.csv");
}

std::filesystem::path metrics_path(const std::filesystem::path& out, std::string_view problem,
                                   std::string_view algorithm, std::size_t run_index) {
  return out / problem / algorithm / ("run_" + std::to_string(run_index) + "_metrics.txt");
}

namespace {

std::filesystem::path front_dir(const ExperimentConfig& cfg) {
  return cfg.front_cache_dir.empty() ? cfg.output_dir / "fronts" : cfg.front_cache_dir;
}

// Serializes front generation so parallel cells share one cache file.
std::mutex& front_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::pair<RunRecord, std::vector<Solution>> run_cell(const ExperimentConfig& cfg,
                                                     std::string_view problem_name,
                                                     PolicyKind algorithm,
                                                     std::size_t run_index) {
  const std::string name = canonical_problem_name(problem_name);
  const bool is_gripper = name == "gripper";

  std::unique_ptr<Problem> problem;
  if (is_gripper) {
    GripperParams gp;
    gp.z_samples = cfg.gripper_z_samples;
    problem = std::make_unique<Gripper>(gp);
  } else {
    problem = make_problem(name);
  }

  EngineConfig ec = cfg.engine;
  ec.policy.kind = algorithm;
  ec.seed = run_seed(cfg.base_seed, run_index);
  if (is_gripper && cfg.gripper_max_evaluations) {
    ec.max_evaluations = *cfg.gripper_max_evaluations;
    ec.max_generations.reset();
  }
  ec.record_trace = false;

  const RunResult result = run(*problem, ec);

  RunRecord record;
  record.problem = name;
  record.algorithm = std::string(to_string(algorithm));
  record.run_index = run_index;
  record.seed = ec.seed;
  record.evaluations = result.evaluations_used;
  record.archive_size = result.archive.size();

  std::vector<Vector> approx;
  for (const auto& s : result.archive) approx.push_back(s.objectives);

  if (is_gripper) {
    if (cfg.compute_hv) record.metrics["hv"] = hypervolume(approx, gripper_reference_point());
  } else {
    const int id = std::stoi(name.substr(8));
    std::vector<Vector> front;
    {
      std::lock_guard lock(front_mutex());
      front = cached_reference_front(front_dir(cfg), id, default_front_size(id));
    }
    if (cfg.compute_igd) record.metrics["igd"] = igd(front, approx);
    if (cfg.compute_hv) record.metrics["hv"] = hypervolume(approx, reference_point(front));
  }
  return {std::move(record), result.archive};
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  struct Cell {
    std::string problem;
    PolicyKind algorithm;
    std::size_t run_index;
  };
  std::vector<Cell> cells;
  for (const auto& p : cfg.problems)
    for (PolicyKind a : cfg.algorithms)
      for (std::size_t r = 0; r < cfg.runs; ++r) cells.push_back({canonical_problem_name(p), a, r});

  std::vector<std::optional<RunRecord>> records(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      try {
        auto [record, archive] = run_cell(cfg, c.problem, c.algorithm, c.run_index);
        const auto problem = make_problem(c.problem);
        write_file_atomic(archive_path(cfg.output_dir, record.problem, record.algorithm, c.run_index),
                          format_archive_csv(archive, problem->dimension(), problem->num_objectives()));
        write_file_atomic(metrics_path(cfg.output_dir, record.problem, record.algorithm, c.run_index),
                          format_run_record(record));
        records[i] = std::move(record);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const std::size_t threads = std::min(cfg.parallel_runs, cells.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentOutcome outcome;
  std::ostringstream manifest;
  manifest << "cells " << cells.size() << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (records[i]) {
      outcome.records.push_back(*records[i]);
    } else {
      const std::string algo(to_string(cells[i].algorithm));
      outcome.failures.push_back({cells[i].problem, algo, cells[i].run_index, errors[i]});
      manifest << "failed " << cells[i].problem << ' ' << algo << ' ' << cells[i].run_index
               << ' ' << errors[i] << '\n';
    }
  }
  manifest << "failures " << outcome.failures.size() << '\n';

  std::vector<std::string> order;
  for (PolicyKind a : cfg.algorithms) order.emplace_back(to_string(a));
  outcome.summary = summarize(outcome.records, "iepsilon", cfg.runs, order);

  std::ostringstream experiment;
  experiment << "runs " << cfg.runs << '\n' << "base_seed " << cfg.base_seed << '\n';
  experiment << "algorithms";
  for (const auto& a : order) experiment << ' ' << a;
  experiment << '\n';

  write_file_atomic(cfg.output_dir / "experiment.txt", experiment.str());
  write_file_atomic(cfg.output_dir / "summary.csv", format_summary_csv(outcome.summary));
  write_file_atomic(cfg.output_dir / "summary.txt", format_summary_table(outcome.summary));
  write_file_atomic(cfg.output_dir / "manifest.txt", manifest.str());
  return outcome;
}

double FeasibleRatioSample::ratio() const {
  const std::size_t total = random_total + optimizer_total;
  return total ? static_cast<double>(random_feasible + optimizer_feasible) / static_cast<double>(total)
               : 0.0;
}

FeasibleRatioSample sample_feasible_ratio(const Problem& problem, std::size_t random_samples,
                                          std::size_t optimizer_samples,
                                          const EngineConfig& engine) {
  FeasibleRatioSample out;
  Rng rng(engine.seed);
  out.random_total = random_samples;
  if (random_samples > 0)
    out.random_feasible = static_cast<std::size_t>(
        std::llround(estimate_feasible_ratio(problem, random_samples, rng) *
                     static_cast<double>(random_samples)));

  EngineConfig cfg = engine;
  cfg.record_trace = false;
  cfg.max_generations.reset();
  while (out.optimizer_total < optimizer_samples) {
    const std::size_t remaining = optimizer_samples - out.optimizer_total;
    // The initial population counts toward the sample but not the budget.
    if (remaining <= cfg.population_size) break;
    cfg.max_evaluations = std::min(engine.max_evaluations, remaining - cfg.population_size);
    const RunResult r = run(problem, cfg);
    out.optimizer_total += r.evaluations_used;
    out.optimizer_feasible += r.feasible_evaluations;
    ++cfg.seed;
  }
  return out;
}

std::vector<SummaryRow> summarize_directory(const std::filesystem::path& dir,
                                            std::string_view reference_algorithm) {
  if (!std::filesystem::is_directory(dir))
    throw std::invalid_argument("not a directory: " + dir.string());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 12 &&
        name.compare(name.size() - 12, 12, "_metrics.txt") == 0)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<RunRecord> records;
  for (const auto& f : files) records.push_back(parse_run_record(read_file(f)));

  std::size_t expected = 0;
  std::vector<std::string> order;
  const auto exp_file = dir / "experiment.txt";
  if (std::filesystem::exists(exp_file)) {
    std::istringstream in(read_file(exp_file));
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string key;
      fields >> key;
      if (key == "runs") fields >> expected;
      if (key == "algorithms")
        for (std::string a; fields >> a;) order.push_back(a);
    }
  }
  if (expected == 0) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (const auto& r : records) expected = std::max(expected, ++counts[{r.problem, r.algorithm}]);
  }

  auto rows = summarize(records, reference_algorithm, expected, order);
  write_file_atomic(dir / "summary.csv", format_summary_csv(rows));
  write_file_atomic(dir / "summary.txt", format_summary_table(rows));
  return rows;
}

}  // namespace cmoead
