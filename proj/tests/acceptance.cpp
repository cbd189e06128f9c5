// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. argv[1] is a scratch directory for
// reference fronts and experiment output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmoead/constraints.hpp"
#include "cmoead/engine.hpp"
#include "cmoead/harness.hpp"
#include "cmoead/metrics.hpp"
#include "cmoead/problems.hpp"
#include "lir_oracle.hpp"
#include "metric_oracles.hpp"

namespace fs = std::filesystem;
using namespace cmoead;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig base_config(const fs::path& work) {
  ExperimentConfig cfg;
  cfg.output_dir = work / "cells";
  cfg.front_cache_dir = work / "fronts";
  return cfg;
}

// Mean of one metric over seeds 1..5 of a cell at the full budget.
double cell_mean(const fs::path& work, const std::string& problem, PolicyKind algo,
                 const std::string& metric) {
  const ExperimentConfig cfg = base_config(work);
  double sum = 0;
  for (std::size_t run = 0; run < 5; ++run) sum += run_cell(cfg, problem, algo, run).first.metrics.at(metric);
  return sum / 5;
}

Outcome criterion1(const fs::path& work, double lir1_igd) {
  (void)work;
  return {lir1_igd <= 2e-2, "LIR-CMOP1 IEpsilon mean IGD " + fmt("%.4e", lir1_igd) + " <= 2e-2"};
}

Outcome criterion2(const fs::path& work) {
  bool pass = true;
  std::string detail;
  for (const char* p : {"lir-cmop5", "lir-cmop9"}) {
    const double ie = cell_mean(work, p, PolicyKind::kIEpsilon, "igd");
    const double cdp = cell_mean(work, p, PolicyKind::kCdp, "igd");
    pass = pass && cdp >= 10.0 * ie;
    detail += std::string(p) + " IEpsilon " + fmt("%.4e", ie) + " vs CDP " + fmt("%.4e", cdp) +
              " (x" + fmt("%.1f", cdp / ie) + "); ";
  }
  return {pass, detail + "need x10"};
}

Outcome criterion3(double lir1_hv) {
  return {lir1_hv >= 0.95, "LIR-CMOP1 IEpsilon mean HV " + fmt("%.4f", lir1_hv) + " >= 0.95"};
}

Outcome criterion4() {
  double worst = 0;
  // Sustained tightening: eps0 (1 - tau)^k.
  {
    IEpsilonState s;
    s.epsilon = 3.7;
    s.phi_max = 9.0;
    for (std::size_t k = 1; k < s.tc; ++k) {
      const double got = iepsilon_update(s, k, 0.2);
      worst = std::max(worst, std::abs(got - 3.7 * std::pow(0.9, double(k))));
    }
  }
  // Random traces against the piecewise definition.
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool zero_ok = true;
  for (int trace = 0; trace < 200; ++trace) {
    IEpsilonState s;
    s.tau = 0.05 + 0.2 * u(gen);
    s.alpha = 0.5 + 0.5 * u(gen);
    s.tc = 50 + trace;
    s.epsilon = 10.0 * u(gen);
    double expected = s.epsilon, phi_max = 0;
    for (std::size_t k = 1; k <= s.tc + 20; ++k) {
      const double violation = 20.0 * u(gen);
      const double r = u(gen);
      s.observe(violation);
      phi_max = std::max(phi_max, violation);
      if (k >= s.tc) {
        expected = 0.0;
      } else if (r < s.alpha) {
        expected = (1.0 - s.tau) * expected;
      } else {
        expected = (1.0 + s.tau) * phi_max;
      }
      const double got = iepsilon_update(s, k, r);
      worst = std::max(worst, std::abs(got - expected));
      if (k >= s.tc) zero_ok = zero_ok && got == 0.0;
    }
  }
  // Decaying schedule.
  LegacyEpsilonState legacy;
  legacy.epsilon0 = 4.2;
  for (std::size_t k = 0; k <= 900; ++k) {
    const double expected = k >= legacy.tc ? 0.0 : 4.2 * std::pow(1.0 - double(k) / 800.0, 2.0);
    worst = std::max(worst, std::abs(legacy_epsilon_update(legacy, k) - expected));
  }
  return {worst <= 1e-12 && zero_ok, "max deviation " + fmt("%.3e", worst) + " <= 1e-12, zero from Tc on"};
}

Solution random_solution(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  Solution s;
  s.objectives = {double(coarse(gen)), double(coarse(gen))};
  const int kind = coarse(gen);
  s.violation = kind == 0 ? 0.0 : kind == 1 ? double(coarse(gen)) : u(gen);
  return s;
}

bool dominates_vec(const Vector& a, const Vector& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    strict = strict || a[k] < b[k];
  }
  return strict;
}

Preference cdp_order(const Solution& a, const Solution& b) {
  const bool fa = a.violation == 0.0, fb = b.violation == 0.0;
  if ((fa && fb) || a.violation == b.violation) {
    if (dominates_vec(a.objectives, b.objectives)) return Preference::kFirst;
    if (dominates_vec(b.objectives, a.objectives)) return Preference::kSecond;
    return Preference::kIncomparable;
  }
  return a.violation < b.violation ? Preference::kFirst : Preference::kSecond;
}

Outcome criterion5() {
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t compare_bad = 0, update_bad = 0, sr_bad = 0;
  Rng rng_a(1), rng_b(1), rng_sr(2);
  const UpdatePolicy ie{PolicyKind::kIEpsilon, 0.05};
  const UpdatePolicy cdp{PolicyKind::kCdp, 0.05};
  const UpdatePolicy sr{PolicyKind::kSr, 0.0};
  for (int trial = 0; trial < 10000; ++trial) {
    const Solution a = random_solution(gen), b = random_solution(gen);
    compare_bad += epsilon_compare(a, b, 0.0) != cdp_order(a, b);
    const double ga = std::floor(4 * u(gen)), gb = std::floor(4 * u(gen));
    update_bad += update_subproblem(a, b, 0.0, ga, gb, ie, rng_a) !=
                  update_subproblem(a, b, 0.0, ga, gb, cdp, rng_b);
    sr_bad += update_subproblem(a, b, 0.0, ga, gb, sr, rng_sr) !=
              update_subproblem(a, b, 0.0, ga, gb, cdp, rng_b);
  }
  return {compare_bad + update_bad + sr_bad == 0,
          "mismatches over 1e4 pairs: compare " + std::to_string(compare_bad) + ", update " +
              std::to_string(update_bad) + ", SR(pf=0) " + std::to_string(sr_bad)};
}

Outcome criterion6() {
  std::mt19937_64 gen(606);
  double igd_worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 2 + i % 2;
    const auto ref = oracle::random_points(gen, 50 + i, m);
    const auto approx = oracle::random_points(gen, 10 + i % 30, m);
    igd_worst = std::max(igd_worst, std::abs(igd(ref, approx) - oracle::igd(ref, approx)));
  }
  double worst_z = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t m = 2 + i % 2;
    const auto pts = oracle::random_points(gen, 3 + i % 8, m);
    const Vector zr(m, 1.1);
    const auto [est, se] = oracle::hv_monte_carlo(pts, zr, 1000000, gen);
    worst_z = std::max(worst_z, std::abs(hypervolume(pts, zr) - est) / se);
  }
  const bool boxes = hypervolume({{0.5, 0.5}}, {1, 1}) == 0.25 &&
                     hypervolume({{0.5, 0.5, 0.5}}, {1, 1, 1}) == 0.125 &&
                     hypervolume({{0.25, 0.75}, {0.75, 0.25}}, {1, 1}) == 0.3125 &&
                     hypervolume({{2.0, 0.0}}, {1, 1}) == 0.0;
  return {igd_worst <= 1e-12 && worst_z <= 3.0 && boxes,
          "IGD max deviation " + fmt("%.2e", igd_worst) + ", HV worst |z| " + fmt("%.2f", worst_z) +
              " <= 3, analytic boxes " + (boxes ? "exact" : "WRONG")};
}

// Distance sums placed near the narrow band so both sides are exercised.
std::vector<double> near_band(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0), g(0.49, 0.52);
  std::vector<double> x(30);
  x[0] = u(gen);
  const double s = std::sin(0.5 * kPi * x[0]), c = std::cos(0.5 * kPi * x[0]);
  const double d1 = std::sqrt(g(gen) / 14.0), d2 = std::sqrt(g(gen) / 15.0);
  for (int j = 2; j <= 30; ++j) {
    const double centre = j % 2 ? s : c, d = j % 2 ? d1 : d2;
    x[j - 1] = centre + d <= 1.0 ? centre + d : centre - d;
  }
  return x;
}

Outcome criterion7() {
  std::mt19937_64 gen(707);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int id = 1; id <= 14; ++id) {
    const LirCmop p(id);
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> x(30);
      for (auto& v : x) v = u(gen);
      const Evaluation e = p.evaluate(x);
      const auto r = lir_oracle::evaluate(id, x);
      for (std::size_t k = 0; k < r.f.size(); ++k)
        worst = std::max(worst, std::abs(e.objectives[k] - r.f[k]) / std::max(1.0, std::abs(r.f[k])));
      for (std::size_t k = 0; k < r.c.size(); ++k)
        worst = std::max(worst, std::abs(e.ineq_values[k] - r.c[k]) / std::max(1.0, std::abs(r.c[k])));
    }
  }
  std::size_t misclassified = 0, feasible = 0;
  for (int id = 1; id <= 4; ++id) {
    const LirCmop p(id);
    for (int i = 0; i < 10000; ++i) {
      const auto x = near_band(gen);
      const double g1 = lir_oracle::sum_odd(x, false), g2 = lir_oracle::sum_even(x, false);
      bool expected = g1 >= 0.5 && g1 <= 0.51 && g2 >= 0.5 && g2 <= 0.51;
      if (id >= 3) expected = expected && std::sin(20.0 * kPi * x[0]) >= 0.5;
      misclassified += evaluate_solution(p, x).feasible() != expected;
      feasible += expected;
    }
  }
  return {worst <= 1e-12 && misclassified == 0 && feasible > 0,
          "max scaled deviation " + fmt("%.2e", worst) + " <= 1e-12; band predicate mismatches " +
              std::to_string(misclassified) + " (" + std::to_string(feasible) + " feasible of 40000)"};
}

// Checks every feasible evaluation the optimizer makes.
class AuditedGripper final : public Problem {
 public:
  std::string name() const override { return inner_.name(); }
  std::size_t dimension() const override { return inner_.dimension(); }
  std::size_t num_objectives() const override { return inner_.num_objectives(); }
  const Vector& lower_bounds() const override { return inner_.lower_bounds(); }
  const Vector& upper_bounds() const override { return inner_.upper_bounds(); }
  Evaluation evaluate(std::span<const double> x) const override {
    Evaluation e = inner_.evaluate(x);
    if (overall_violation(e.ineq_values, e.eq_values) == 0.0) {
      ++feasible;
      // f2 = a + b + c + e + l.
      const bool ok = e.objectives[0] <= 2.0 && e.objectives[1] >= 220.0 && e.objectives[1] <= 850.0;
      if (!ok) ++violations;
    }
    return e;
  }

  mutable std::size_t feasible = 0;
  mutable std::size_t violations = 0;

 private:
  Gripper inner_;
};

Outcome criterion8() {
  AuditedGripper problem;
  EngineConfig cfg;
  cfg.max_evaluations = 600000;
  cfg.record_trace = false;
  const RunResult r = run(problem, cfg);
  std::size_t archive_bad = 0;
  for (const auto& s : r.archive) archive_bad += !(s.objectives[0] <= 2.0);

  const auto k = gripper_kinematics({100, 100, 150, 0, 0, 200, 0}, 100.0);
  const double hand = 100.0 * 100.0 * std::sin(2 * kPi / 3) / (2.0 * 150.0 * std::cos(kPi / 3));
  const double gap = k ? std::abs(k->force - hand) : INFINITY;
  const bool pass = problem.violations == 0 && archive_bad == 0 && problem.feasible > 0 && gap <= 1e-9 &&
                    std::abs(hand - 57.735) < 1e-3;
  return {pass, std::to_string(problem.feasible) + " feasible evaluations, " +
                    std::to_string(problem.violations) + " outside f1 <= 2 or f2 in [220, 850]; archive " +
                    std::to_string(r.archive.size()) + "; F_k " + fmt("%.9f", k ? k->force : NAN) +
                    " (gap " + fmt("%.1e", gap) + ")"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9(const fs::path& work) {
  ExperimentConfig cfg = base_config(work);
  cfg.problems = {"lir-cmop1", "lir-cmop7", "gripper"};
  cfg.algorithms = {PolicyKind::kIEpsilon, PolicyKind::kSr, PolicyKind::kCmoead};
  cfg.runs = 1;
  cfg.base_seed = 11;
  cfg.gripper_max_evaluations = 60000;
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    cfg.output_dir = work / ("determinism_" + std::to_string(pass));
    fs::remove_all(cfg.output_dir);
    const auto outcome = run_experiment(cfg);
    if (!outcome.failures.empty()) return {false, "cell failed: " + outcome.failures.front().message};
    std::size_t i = 0;
    for (const auto& p : cfg.problems)
      for (PolicyKind a : cfg.algorithms) {
        const std::string text = slurp(metrics_path(cfg.output_dir, p, to_string(a), 0));
        if (pass == 0) {
          first.push_back(text);
        } else if (text != first[i]) {
          return {false, p + " " + std::string(to_string(a)) + " record differs between reruns"};
        }
        ++i;
      }
  }
  return {true, std::to_string(first.size()) + " cells rerun to byte-identical metric records"};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cmoead_acceptance";
  fs::create_directories(work);

  int failures = 0;
  const auto report = [&](int id, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
  };

  double lir1_igd = NAN, lir1_hv = NAN;
  try {
    const ExperimentConfig cfg = base_config(work);
    double igd_sum = 0, hv_sum = 0;
    for (std::size_t run = 0; run < 5; ++run) {
      const auto rec = run_cell(cfg, "lir-cmop1", PolicyKind::kIEpsilon, run).first;
      igd_sum += rec.metrics.at("igd");
      hv_sum += rec.metrics.at("hv");
    }
    lir1_igd = igd_sum / 5;
    lir1_hv = hv_sum / 5;
  } catch (const std::exception& e) {
    std::printf("LIR-CMOP1 runs failed: %s\n", e.what());
  }

  report(1, [&] { return criterion1(work, lir1_igd); });
  report(2, [&] { return criterion2(work); });
  report(3, [&] { return criterion3(lir1_hv); });
  report(4, criterion4);
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, [&] { return criterion9(work); });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
