#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "cmoead/harness.hpp"
#include "cmoead/problems.hpp"

namespace cmoead {
namespace {

namespace fs = std::filesystem;

// Two-sided rank-sum p value by enumerating every assignment of pooled
// midranks to the first sample.
double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0, equal = 0;
    for (double v : pooled) {
      less += v < pooled[i];
      equal += v == pooled[i];
    }
    rank[i] = less + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) observed += rank[i];

  std::size_t total = 0, low = 0, high = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(a.size()), true);
  std::sort(pick.begin(), pick.end());
  do {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) w += rank[i];
    ++total;
    low += w <= observed + 1e-9;
    high += w >= observed - 1e-9;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return std::min(1.0, 2.0 * std::min(low, high) / double(total));
}

TEST(RankSum, IdenticalSamples) {
  const auto r = wilcoxon_rank_sum({1, 1, 1}, {1, 1, 1});
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.verdict, Verdict::kNotSignificant);
}

TEST(RankSum, SmallSeparatedSamples) {
  const auto r = wilcoxon_rank_sum({1, 2, 3}, {10, 11, 12});
  EXPECT_EQ(r.u_statistic, 0.0);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.p_value, 0.1, 1e-12);
  EXPECT_EQ(r.verdict, Verdict::kNotSignificant);
}

TEST(RankSum, LargeSeparatedSamples) {
  std::vector<double> a(30), b(30);
  std::iota(a.begin(), a.end(), 0.0);
  std::iota(b.begin(), b.end(), 100.0);
  const auto r = wilcoxon_rank_sum(a, b);
  EXPECT_FALSE(r.exact);
  EXPECT_LT(r.p_value, 1e-9);
  // b has the larger values, which is worse when lower is better.
  EXPECT_EQ(r.verdict, Verdict::kWorse);
  EXPECT_EQ(wilcoxon_rank_sum(a, b, 0.05, Orientation::kHigherIsBetter).verdict, Verdict::kBetter);
  EXPECT_EQ(wilcoxon_rank_sum(b, a).verdict, Verdict::kBetter);
}

TEST(RankSum, ExactPathMatchesEnumeration) {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<int> coarse(0, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = 2 + trial % 6, nb = 2 + (trial / 6) % 7;
    std::vector<double> a(na), b(nb);
    const bool ties = trial % 2 == 0;
    for (auto& v : a) v = ties ? coarse(gen) : u(gen);
    for (auto& v : b) v = ties ? coarse(gen) + 1 : u(gen) + 0.2;
    const auto r = wilcoxon_rank_sum(a, b);
    if (std::all_of(a.begin(), a.end(), [&](double v) { return v == a[0]; }) &&
        std::all_of(b.begin(), b.end(), [&](double v) { return v == a[0]; }))
      continue;
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.p_value, enumerated_p(a, b), 1e-12) << "trial " << trial;
  }
}

TEST(RankSum, NormalApproximationFormula) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(25), b(30);
  for (auto& v : a) v = u(gen);
  for (auto& v : b) v = u(gen) + 0.15;
  const auto r = wilcoxon_rank_sum(a, b);
  // No ties: U of a, mean na*nb/2, variance na*nb*(n+1)/12.
  double ua = 0;
  for (double x : a)
    for (double y : b) ua += x > y;
  const double z = (ua - 25.0 * 30 / 2) / std::sqrt(25.0 * 30 * 56 / 12);
  EXPECT_NEAR(r.u_statistic, ua, 1e-12);
  EXPECT_NEAR(r.p_value, std::erfc(std::abs(z) / std::sqrt(2.0)), 1e-12);
}

TEST(RankSum, RejectsEmptySamples) {
  EXPECT_THROW(wilcoxon_rank_sum({}, {1.0}), std::invalid_argument);
}

RunRecord record(std::string problem, std::string algo, std::size_t run, double igd, double hv) {
  RunRecord r;
  r.problem = std::move(problem);
  r.algorithm = std::move(algo);
  r.run_index = run;
  r.metrics = {{"igd", igd}, {"hv", hv}};
  return r;
}

const SummaryRow& find_row(const std::vector<SummaryRow>& rows, const std::string& algo,
                           const std::string& metric) {
  for (const auto& r : rows)
    if (r.algorithm == algo && r.metric == metric) return r;
  throw std::runtime_error("row not found");
}

TEST(Summarize, SingleRunHasZeroStd) {
  const auto rows = summarize({record("p", "iepsilon", 0, 0.5, 1.0)}, "iepsilon", 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_EQ(r.std, 0.0);
}

TEST(Summarize, BestMarkerRespectsOrientation) {
  const auto rows =
      summarize({record("p", "iepsilon", 0, 1.0, 1.0), record("p", "cdp", 0, 2.0, 2.0)}, "iepsilon", 1);
  EXPECT_TRUE(find_row(rows, "iepsilon", "igd").best);
  EXPECT_FALSE(find_row(rows, "cdp", "igd").best);
  EXPECT_TRUE(find_row(rows, "cdp", "hv").best);
  EXPECT_FALSE(find_row(rows, "iepsilon", "hv").best);
}

TEST(Summarize, MeanAndStdMatchIndependentRecomputation) {
  std::mt19937_64 gen(14);
  std::lognormal_distribution<double> d(-4.0, 1.0);
  std::vector<RunRecord> recs;
  std::vector<long double> values;
  for (std::size_t i = 0; i < 30; ++i) {
    const double v = d(gen);
    values.push_back(v);
    recs.push_back(record("p", "iepsilon", i, v, 1.0));
  }
  long double sum = 0;
  for (auto v : values) sum += v;
  const long double mu = sum / 30;
  long double ss = 0;
  for (auto v : values) ss += (v - mu) * (v - mu);
  const auto& row = find_row(summarize(recs, "iepsilon", 30), "iepsilon", "igd");
  EXPECT_NEAR(row.mean, double(mu), 1e-12);
  EXPECT_NEAR(row.std, double(std::sqrt(ss / 29)), 1e-12);
  EXPECT_FALSE(row.partial);
}

TEST(Summarize, FlagsPartialCellsAndVerdicts) {
  std::vector<RunRecord> recs;
  for (std::size_t i = 0; i < 30; ++i) {
    recs.push_back(record("p", "iepsilon", i, 0.01 + i * 1e-4, 2.0));
    recs.push_back(record("p", "cdp", i, 0.5 + i * 1e-4, 1.0));
  }
  recs.pop_back();
  const auto rows = summarize(recs, "iepsilon", 30);
  EXPECT_TRUE(find_row(rows, "cdp", "igd").partial);
  EXPECT_EQ(find_row(rows, "cdp", "igd").verdict, Verdict::kWorse);
  EXPECT_FALSE(find_row(rows, "iepsilon", "igd").verdict.has_value());
  const std::string table = format_summary_table(rows);
  EXPECT_NE(table.find("†"), std::string::npos);
  EXPECT_NE(table.find("partial"), std::string::npos);
}

TEST(Summarize, FullGridShape) {
  std::vector<RunRecord> recs;
  for (int p = 1; p <= 14; ++p)
    for (const char* a : {"iepsilon", "epsilon", "sr", "cdp", "cmoead"})
      for (std::size_t i = 0; i < 30; ++i) recs.push_back(record("lir-cmop" + std::to_string(p), a, i, i, i));
  const auto rows = summarize(recs, "iepsilon", 30);
  EXPECT_EQ(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.metric == "igd"; }), 70);
  EXPECT_EQ(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.metric == "hv"; }), 70);
}

TEST(Records, RoundTrip) {
  RunRecord r = record("lir-cmop3", "sr", 7, 0.1 / 3.0, std::nextafter(1.0, 2.0));
  r.seed = 8;
  r.evaluations = 300300;
  r.archive_size = 12;
  const RunRecord back = parse_run_record(format_run_record(r));
  EXPECT_EQ(back.problem, r.problem);
  EXPECT_EQ(back.algorithm, r.algorithm);
  EXPECT_EQ(back.run_index, r.run_index);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.evaluations, r.evaluations);
  EXPECT_EQ(back.archive_size, r.archive_size);
  EXPECT_EQ(back.metrics, r.metrics);
  EXPECT_THROW(parse_run_record("run 3\n"), std::invalid_argument);
}

TEST(Records, ArchiveCsvHeader) {
  Solution s;
  s.x = {0.25, 0.5};
  s.objectives = {1.0, 2.0};
  const std::string csv = format_archive_csv({s}, 2, 2);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x_1,x_2,f_1,f_2,phi");
}

TEST(Seeds, LadderFromBase) {
  EXPECT_EQ(run_seed(10, 0), 10u);
  EXPECT_EQ(run_seed(10, 4), 14u);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig tiny_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.problems = {"lir-cmop2"};
  cfg.algorithms = {PolicyKind::kIEpsilon};
  cfg.runs = 2;
  cfg.engine.population_size = 30;
  cfg.engine.neighborhood_size = 6;
  cfg.engine.max_evaluations = 3000;
  cfg.output_dir = out;
  cfg.front_cache_dir = out / "fronts";
  return cfg;
}

TEST(Experiment, FileContractAndDeterminism) {
  const fs::path out = fs::temp_directory_path() / "cmoead_harness_test";
  fs::remove_all(out);
  const auto cfg = tiny_config(out);
  const auto first = run_experiment(cfg);
  EXPECT_TRUE(first.failures.empty());
  ASSERT_EQ(first.records.size(), 2u);

  std::size_t archives = 0;
  for (const auto& e : fs::recursive_directory_iterator(out))
    archives += e.path().filename().string().ends_with("_archive.csv");
  EXPECT_EQ(archives, 2u);
  EXPECT_EQ(std::count_if(first.summary.begin(), first.summary.end(), [](auto& r) { return r.metric == "igd"; }), 1);
  EXPECT_EQ(std::count_if(first.summary.begin(), first.summary.end(), [](auto& r) { return r.metric == "hv"; }), 1);
  EXPECT_TRUE(fs::exists(out / "summary.csv"));
  EXPECT_TRUE(fs::exists(out / "summary.txt"));
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));

  const std::string m0 = slurp(metrics_path(out, "lir-cmop2", "iepsilon", 0));
  const std::string m1 = slurp(metrics_path(out, "lir-cmop2", "iepsilon", 1));
  const std::string summary = slurp(out / "summary.csv");
  run_experiment(cfg);
  EXPECT_EQ(slurp(metrics_path(out, "lir-cmop2", "iepsilon", 0)), m0);
  EXPECT_EQ(slurp(metrics_path(out, "lir-cmop2", "iepsilon", 1)), m1);

  // Summary means equal the mean of the persisted records.
  const RunRecord r0 = parse_run_record(m0), r1 = parse_run_record(m1);
  const auto& igd_row = find_row(summarize_directory(out), "iepsilon", "igd");
  EXPECT_EQ(igd_row.mean, (r0.metrics.at("igd") + r1.metrics.at("igd")) / 2.0);
  EXPECT_EQ(slurp(out / "summary.csv"), summary);
  fs::remove_all(out);
}

TEST(Experiment, WorkerCountDoesNotChangeResults) {
  const fs::path out = fs::temp_directory_path() / "cmoead_harness_workers";
  fs::remove_all(out);
  auto cfg = tiny_config(out / "serial");
  cfg.algorithms = {PolicyKind::kIEpsilon, PolicyKind::kCdp};
  const auto serial = run_experiment(cfg);
  cfg.output_dir = out / "parallel";
  cfg.parallel_runs = 3;
  const auto parallel = run_experiment(cfg);
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i)
    EXPECT_EQ(format_run_record(serial.records[i]), format_run_record(parallel.records[i]));
  fs::remove_all(out);
}

TEST(Experiment, FailingCellIsRecordedAndOthersRun) {
  const fs::path out = fs::temp_directory_path() / "cmoead_harness_failure";
  fs::remove_all(out);
  auto cfg = tiny_config(out);
  cfg.problems = {"lir-cmop2", "gripper"};
  cfg.gripper_max_evaluations = 600;
  // A regular file where the front cache directory should be.
  fs::create_directories(out);
  std::ofstream(out / "blocked") << "x";
  cfg.front_cache_dir = out / "blocked";
  const auto outcome = run_experiment(cfg);
  EXPECT_EQ(outcome.failures.size(), 2u);
  ASSERT_EQ(outcome.records.size(), 2u);
  for (const auto& r : outcome.records) {
    EXPECT_EQ(r.problem, "gripper");
    EXPECT_EQ(r.metrics.count("igd"), 0u);
    EXPECT_EQ(r.metrics.count("hv"), 1u);
  }
  EXPECT_NE(slurp(out / "manifest.txt").find("failures 2"), std::string::npos);
  fs::remove_all(out);
}

TEST(Experiment, ValidatesConfiguration) {
  ExperimentConfig cfg;
  cfg.algorithms = {PolicyKind::kCdp};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.problems = {"lir-cmop99"};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.problems = {"1"};
  cfg.runs = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(FeasibleRatioSample, PooledGripperSampleIsNearlyOneSeventh) {
  // Half uniform points, half points visited by the optimizer.
  EngineConfig engine;
  engine.max_evaluations = 600000;
  const auto s = sample_feasible_ratio(Gripper(), 1000000, 1000000, engine);
  EXPECT_EQ(s.random_total, 1000000u);
  // Runs stop on whole generations, so the pool may fall short by one.
  EXPECT_LE(s.optimizer_total, 1000000u);
  EXPECT_GE(s.optimizer_total, 1000000u - 2 * engine.population_size);
  EXPECT_NEAR(s.ratio(), 0.14, 0.05);
}

}  // namespace
}  // namespace cmoead
