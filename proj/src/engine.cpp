#include "cmoead/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cmoead {

std::size_t EngineConfig::generations() const {
  return max_generations.value_or(max_evaluations / population_size);
}

std::size_t EngineConfig::theta() const {
  if (theta_index) return *theta_index;
  return static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(population_size)));
}

void EngineConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("engine: population size must be >= 2");
  if (neighborhood_size < 2 || neighborhood_size > population_size)
    throw std::invalid_argument("engine: neighborhood size must be in [2, N]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("engine: delta outside [0,1]");
  if (max_replacements < 1) throw std::invalid_argument("engine: nr must be >= 1");
  if (!(policy.sr_pf >= 0.0 && policy.sr_pf <= 1.0))
    throw std::invalid_argument("engine: SR probability outside [0,1]");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("engine: tau outside (0,1)");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("engine: alpha outside [0,1]");
  if (!(cp > 0.0)) throw std::invalid_argument("engine: cp must be positive");
  if (!(pbi_theta >= 0.0)) throw std::invalid_argument("engine: PBI theta must be nonnegative");
  const std::size_t th = theta();
  if (th < 1 || th > population_size)
    throw std::invalid_argument("engine: theta index outside [1, N]");
  variation.validate();
}

std::vector<std::size_t> select_mating_pool(std::size_t j,
                                            const std::vector<std::vector<std::size_t>>& neighbors,
                                            double delta, std::size_t population_size, Rng& rng) {
  if (j >= neighbors.size()) throw std::out_of_range("select_mating_pool: bad subproblem index");
  if (rng.uniform() < delta) return neighbors[j];
  std::vector<std::size_t> all(population_size);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

// ---------------------------------------------------------------------------
// Archive
// ---------------------------------------------------------------------------

bool Archive::ObjectiveLess::operator()(const Solution& a, const Solution& b) const {
  if (a.objectives[0] != b.objectives[0]) return a.objectives[0] < b.objectives[0];
  return a.objectives[1] < b.objectives[1];
}

void Archive::insert(const Solution& s) {
  if (!s.feasible()) return;
  if (s.objectives.size() == 2)
    insert_biobjective(s);
  else
    insert_general(s);
  enforce_cap();
}

void Archive::insert_biobjective(const Solution& s) {
  auto pos = sorted_.lower_bound(s);
  // The predecessor is lexicographically smaller, so it dominates s exactly
  // when its f2 is not larger.
  if (pos != sorted_.begin() && std::prev(pos)->objectives[1] <= s.objectives[1]) return;

  if (pos != sorted_.end() && pos->objectives == s.objectives) return;

  auto dominated_end = pos;
  while (dominated_end != sorted_.end() && dominated_end->objectives[1] >= s.objectives[1])
    ++dominated_end;
  pos = sorted_.erase(pos, dominated_end);
  sorted_.insert(pos, s);
}

void Archive::insert_general(const Solution& s) {
  for (const auto& a : members_) {
    if (a.objectives == s.objectives || dominates(a.objectives, s.objectives)) return;
  }
  std::erase_if(members_, [&](const Solution& a) { return dominates(s.objectives, a.objectives); });
  members_.push_back(s);
}

// Drops the most crowded member until the cap holds: smallest distance to
// its nearest neighbour, ties broken by the second nearest. Members holding
// the minimum of some objective are kept.
void Archive::enforce_cap() {
  if (cap_ == 0 || size() <= cap_) return;
  std::vector<Solution> all = members();
  const std::size_t m = all.front().objectives.size();
  while (all.size() > cap_) {
    std::vector<bool> extreme(all.size(), false);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i].objectives[k] < all[best].objectives[k]) best = i;
      extreme[best] = true;
    }
    const bool protect = static_cast<std::size_t>(std::count(extreme.begin(), extreme.end(), true)) < all.size();

    std::size_t victim = 0;
    std::pair<double, double> most_crowded{std::numeric_limits<double>::infinity(),
                                           std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (protect && extreme[i]) continue;
      double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        double d = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double diff = all[i].objectives[k] - all[j].objectives[k];
          d += diff * diff;
        }
        if (d < d1) {
          d2 = d1;
          d1 = d;
        } else if (d < d2) {
          d2 = d;
        }
      }
      if (std::make_pair(d1, d2) < most_crowded) {
        most_crowded = {d1, d2};
        victim = i;
      }
    }
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  if (sorted_.empty()) {
    members_ = std::move(all);
  } else {
    sorted_.clear();
    sorted_.insert(all.begin(), all.end());
  }
}

void Archive::update(const std::vector<Solution>& population) {
  for (const auto& s : population) insert(s);
}

std::vector<Solution> Archive::members() const {
  if (sorted_.empty()) return members_;
  return {sorted_.begin(), sorted_.end()};
}

std::vector<Vector> Archive::objectives() const {
  std::vector<Vector> out;
  out.reserve(size());
  for (const auto& s : sorted_) out.push_back(s.objectives);
  for (const auto& s : members_) out.push_back(s.objectives);
  return out;
}

std::vector<Solution> archive_update(const std::vector<Solution>& archive,
                                     const std::vector<Solution>& population) {
  std::vector<Solution> pool;
  for (const auto& s : archive)
    if (s.feasible()) pool.push_back(s);
  for (const auto& s : population) {
    if (!s.feasible()) continue;
    const bool present =
        std::any_of(pool.begin(), pool.end(), [&](const Solution& a) { return a.x == s.x; });
    if (!present) pool.push_back(s);
  }
  return nondominated_filter(pool);
}

double feasible_ratio(const std::vector<Solution>& population) {
  if (population.empty()) return 0.0;
  const auto count = std::count_if(population.begin(), population.end(),
                                   [](const Solution& s) { return s.feasible(); });
  return static_cast<double>(count) / static_cast<double>(population.size());
}

// ---------------------------------------------------------------------------
// Main loop
// ---------------------------------------------------------------------------

namespace {

// Seeds the weight padding separately from the main stream.
constexpr std::uint64_t kWeightSeedSalt = 0x9e3779b97f4a7c15ULL;

double mean_finite_violation(const std::vector<Solution>& population) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& s : population) {
    if (std::isfinite(s.violation)) {
      sum += s.violation;
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

class Run {
 public:
  Run(const Problem& problem, const EngineConfig& cfg)
      : problem_(problem),
        cfg_(cfg),
        rng_(cfg.seed),
        bounds_{problem.lower_bounds(), problem.upper_bounds()},
        archive_(cfg.archive_cap) {}

  RunResult execute() {
    initialize();
    const std::size_t generations = cfg_.generations();
    bool budget_left = true;
    for (std::size_t k = 1; k <= generations && budget_left; ++k) {
      const double ratio = feasible_ratio(population_);
      const double eps = next_epsilon(k, ratio);
      std::fill(changed_.begin(), changed_.end(), false);
      budget_left = generation(eps);

      for (std::size_t i = 0; i < population_.size(); ++i)
        if (changed_[i]) archive_.insert(population_[i]);
      ++result_.generations_completed;
      if (cfg_.record_trace) result_.trace.push_back({k, eps, ratio, ieps_.phi_max});
    }

    result_.archive = archive_.members();
    result_.final_population = std::move(population_);
    result_.evaluations_used = evaluations_;
    result_.feasible_evaluations = feasible_evaluations_;
    return std::move(result_);
  }

 private:
  void initialize() {
    const std::size_t n = cfg_.population_size;
    const std::size_t m = problem_.num_objectives();
    weights_ = generate_weight_vectors(n, m, cfg_.seed ^ kWeightSeedSalt);
    neighbors_ = neighborhoods(weights_, cfg_.neighborhood_size);

    population_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vector x(problem_.dimension());
      for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng_.uniform(bounds_.lower[d], bounds_.upper[d]);
      population_.push_back(evaluate_solution(problem_, std::move(x)));
      ++evaluations_;
      if (population_.back().feasible()) ++feasible_evaluations_;
    }
    changed_.assign(n, false);

    ideal_.assign(m, std::numeric_limits<double>::infinity());
    std::vector<double> finite_violations;
    for (const auto& s : population_) {
      ideal_ = update_ideal(std::move(ideal_), s.objectives);
      if (std::isfinite(s.violation)) finite_violations.push_back(s.violation);
    }

    ieps_.tau = cfg_.tau;
    ieps_.alpha = cfg_.alpha;
    ieps_.tc = cfg_.tc;
    ieps_.theta_index = cfg_.theta();
    for (double v : finite_violations) ieps_.observe(v);
    double eps0 = 0.0;
    if (!finite_violations.empty())
      eps0 = initial_epsilon(finite_violations, std::min(cfg_.theta(), finite_violations.size()));
    ieps_.epsilon = eps0;
    legacy_ = {eps0, cfg_.cp, cfg_.tc, cfg_.theta()};
    result_.initial_epsilon = eps0;

    archive_.update(population_);
  }

  double next_epsilon(std::size_t k, double ratio) {
    switch (cfg_.policy.kind) {
      case PolicyKind::kIEpsilon: return iepsilon_update(ieps_, k, ratio);
      case PolicyKind::kEpsilon: return legacy_epsilon_update(legacy_, k);
      case PolicyKind::kCmoead: return cmoead_epsilon(mean_finite_violation(population_), ratio);
      case PolicyKind::kCdp:
      case PolicyKind::kSr: return 0.0;
    }
    return 0.0;
  }

  // One sweep over a random permutation of the subproblems. Returns false
  // once the evaluation budget is exhausted.
  bool generation(double eps) {
    const std::size_t n = population_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng_.below(i)]);

    for (std::size_t i = 0; i < n; ++i) {
      if (evaluations_ - cfg_.population_size >= cfg_.max_evaluations) return false;
      const std::size_t j = order[i];
      std::vector<std::size_t> pool =
          select_mating_pool(j, neighbors_, cfg_.delta, n, rng_);

      const std::size_t r1 = pool[rng_.below(pool.size())];
      std::size_t r2 = r1;
      while (r2 == r1) r2 = pool[rng_.below(pool.size())];

      Vector y = de_crossover(population_[j].x, population_[r1].x, population_[r2].x,
                              cfg_.variation, bounds_, rng_);
      y = polynomial_mutation(y, cfg_.variation, bounds_, rng_);
      const Solution child = evaluate_solution(problem_, std::move(y));
      ++evaluations_;
      if (child.feasible()) ++feasible_evaluations_;
      ieps_.observe(child.violation);
      ideal_ = update_ideal(std::move(ideal_), child.objectives);

      std::size_t replaced = 0;
      while (replaced < cfg_.max_replacements && !pool.empty()) {
        const std::size_t pick = rng_.below(pool.size());
        const std::size_t idx = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();

        const double agg_current = scalarize(population_[idx].objectives, weights_[idx], ideal_,
                                             cfg_.scalarization, cfg_.pbi_theta);
        const double agg_child = scalarize(child.objectives, weights_[idx], ideal_,
                                           cfg_.scalarization, cfg_.pbi_theta);
        if (update_subproblem(population_[idx], child, eps, agg_current, agg_child, cfg_.policy,
                              rng_)) {
          population_[idx] = child;
          changed_[idx] = true;
          ++replaced;
        }
      }
    }
    return evaluations_ - cfg_.population_size < cfg_.max_evaluations;
  }

  const Problem& problem_;
  const EngineConfig& cfg_;
  Rng rng_;
  Bounds bounds_;
  Archive archive_;

  std::vector<Vector> weights_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<Solution> population_;
  std::vector<bool> changed_;
  Vector ideal_;
  IEpsilonState ieps_;
  LegacyEpsilonState legacy_;
  std::size_t evaluations_ = 0;
  std::size_t feasible_evaluations_ = 0;
  RunResult result_;
};

}  // namespace

RunResult run(const Problem& problem, const EngineConfig& cfg) {
  cfg.validate();
  validate_problem(problem);
  if (problem.num_objectives() < 2)
    throw std::invalid_argument("engine: problem needs at least two objectives");
  if (cfg.population_size < problem.num_objectives())
    throw std::invalid_argument("engine: population smaller than objective count");
  return Run(problem, cfg).execute();
}

}  // namespace cmoead
