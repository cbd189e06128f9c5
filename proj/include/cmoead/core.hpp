#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cmoead {

using Vector = std::vector<double>;

/// Equality residuals with |h| at or below this count as satisfied when
/// classifying feasibility. The violation itself keeps the raw |h|.
inline constexpr double kEqualityTolerance = 1e-6;

/// Raw output of a problem evaluation. Inequalities follow the g(x) >= 0
/// convention, equalities h(x) = 0.
struct Evaluation {
  Vector objectives;
  Vector ineq_values;
  Vector eq_values;
};

struct Solution {
  Vector x;
  Vector objectives;
  Vector ineq_values;
  Vector eq_values;
  double violation = 0.0;

  bool feasible() const;
};

/// Interface every benchmark/design problem implements. evaluate() must be
/// deterministic and free of side effects.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::size_t num_objectives() const = 0;
  virtual const Vector& lower_bounds() const = 0;
  virtual const Vector& upper_bounds() const = 0;
  virtual Evaluation evaluate(std::span<const double> x) const = 0;
};

// Sum of |min(g_i, 0)| plus sum of |h_j|. NaN inputs propagate.
double overall_violation(std::span<const double> ineq_values,
                         std::span<const double> eq_values);

/// Evaluates x on the problem and packages the result. A NaN or infinite
/// objective/constraint value yields violation = +inf so the point loses
/// every constraint-aware comparison.
Solution evaluate_solution(const Problem& problem, Vector x);

/// Pareto dominance for minimization. Throws std::invalid_argument on a
/// length mismatch.
bool dominates(std::span<const double> lhs, std::span<const double> rhs);

/// Members not dominated by any other member, in input order. Objective-space
/// duplicates are all kept. O(n log n) for two objectives, O(n^2) otherwise.
std::vector<Solution> nondominated_filter(const std::vector<Solution>& solutions);

/// Index form of nondominated_filter over raw objective vectors.
std::vector<std::size_t> nondominated_indices(const std::vector<Vector>& points);

/// Throws std::invalid_argument if bounds are malformed for the problem.
void validate_problem(const Problem& problem);

}  // namespace cmoead
