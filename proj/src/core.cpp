#include "cmoead/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cmoead {

bool Solution::feasible() const {
  if (!std::isfinite(violation)) return false;
  for (double g : ineq_values)
    if (!(g >= 0.0)) return false;
  for (double h : eq_values)
    if (!(std::abs(h) <= kEqualityTolerance)) return false;
  return true;
}

double overall_violation(std::span<const double> ineq_values,
                         std::span<const double> eq_values) {
  double sum = 0.0;
  for (double g : ineq_values) {
    if (std::isnan(g)) return g;
    if (g < 0.0) sum += -g;
  }
  for (double h : eq_values) sum += std::abs(h);
  return sum;
}

namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

Solution evaluate_solution(const Problem& problem, Vector x) {
  Evaluation eval = problem.evaluate(x);
  Solution s;
  s.x = std::move(x);
  s.objectives = std::move(eval.objectives);
  s.ineq_values = std::move(eval.ineq_values);
  s.eq_values = std::move(eval.eq_values);
  if (s.objectives.size() != problem.num_objectives())
    throw std::logic_error(problem.name() + ": objective count mismatch");

  if (all_finite(s.objectives) && all_finite(s.ineq_values) && all_finite(s.eq_values))
    s.violation = overall_violation(s.ineq_values, s.eq_values);
  else
    s.violation = std::numeric_limits<double>::infinity();
  return s;
}

bool dominates(std::span<const double> lhs, std::span<const double> rhs) {
  if (lhs.size() != rhs.size())
    throw std::invalid_argument("dominates: objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(lhs[i] <= rhs[i])) return false;
    if (lhs[i] < rhs[i]) strictly_better = true;
  }
  return strictly_better;
}

namespace {

std::vector<std::size_t> nondominated_quadratic(const std::vector<Vector>& points) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominates(points[j], points[i]);
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

// Sort by (f1, f2); a point survives iff its f2 is the minimum of its f1
// group and strictly below every f2 seen at a smaller f1.
std::vector<std::size_t> nondominated_biobjective(const std::vector<Vector>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    if (points[a][1] != points[b][1]) return points[a][1] < points[b][1];
    return a < b;
  });

  std::vector<std::size_t> kept;
  double best_previous = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    const double f1 = points[order[i]][0];
    const double group_min = points[order[i]][1];
    std::size_t j = i;
    for (; j < order.size() && points[order[j]][0] == f1; ++j) {
      const double f2 = points[order[j]][1];
      if (f2 == group_min && f2 < best_previous) kept.push_back(order[j]);
    }
    best_previous = std::min(best_previous, group_min);
    i = j;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<std::size_t> nondominated_indices(const std::vector<Vector>& points) {
  if (points.empty()) return {};
  const std::size_t m = points.front().size();
  bool finite = true;
  for (const auto& p : points) {
    if (p.size() != m)
      throw std::invalid_argument("nondominated_filter: mixed objective counts");
    finite = finite && all_finite(p);
  }
  if (m == 2 && finite) return nondominated_biobjective(points);
  return nondominated_quadratic(points);
}

std::vector<Solution> nondominated_filter(const std::vector<Solution>& solutions) {
  std::vector<Vector> points;
  points.reserve(solutions.size());
  for (const auto& s : solutions) points.push_back(s.objectives);
  std::vector<Solution> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(solutions[i]);
  return out;
}

void validate_problem(const Problem& problem) {
  const auto& lo = problem.lower_bounds();
  const auto& hi = problem.upper_bounds();
  if (lo.size() != problem.dimension() || hi.size() != problem.dimension())
    throw std::invalid_argument(problem.name() + ": bound vectors do not match dimension");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument(problem.name() + ": lower bound not below upper bound");
  if (problem.num_objectives() < 1)
    throw std::invalid_argument(problem.name() + ": no objectives");
}

}  // namespace cmoead
