#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "cmoead/core.hpp"
#include "cmoead/rng.hpp"

namespace cmoead {

/// State of the improved epsilon schedule.
///
/// Each generation k >= 1 the level is set by
///   k >= tc             -> 0
///   r_k <  alpha        -> (1 - tau) * eps(k-1)    (tighten toward feasibility)
///   r_k >= alpha        -> (1 + tau) * phi_max     (widen into infeasible space)
/// where r_k is the feasible ratio of the population and phi_max the largest
/// finite violation observed during the run. eps(0) comes from
/// initial_epsilon().
struct IEpsilonState {
  double epsilon = 0.0;
  double phi_max = 0.0;
  double tau = 0.1;
  double alpha = 0.95;
  std::size_t tc = 800;
  std::size_t theta_index = 15;

  // Raises phi_max if `violation` is finite and larger.
  void observe(double violation);
};

/// Decaying epsilon level: eps(0) (1 - k/Tc)^cp, zero from Tc onward.
struct LegacyEpsilonState {
  double epsilon0 = 0.0;
  double cp = 2.0;
  std::size_t tc = 800;
  std::size_t theta_index = 15;
};

enum class PolicyKind { kIEpsilon, kEpsilon, kCdp, kSr, kCmoead };

struct UpdatePolicy {
  PolicyKind kind = PolicyKind::kIEpsilon;
  double sr_pf = 0.05;
};

PolicyKind parse_policy(std::string_view text);
std::string_view to_string(PolicyKind kind);

/// The theta_index-th largest violation (1-based). Throws
/// std::invalid_argument on an empty list or an index outside [1, size].
double initial_epsilon(std::span<const double> violations, std::size_t theta_index);

/// Advances the improved schedule to generation k (k >= 1), stores the new
/// level in state.epsilon and returns it. state.phi_max must already
/// include generation k's observations.
double iepsilon_update(IEpsilonState& state, std::size_t k, double feasible_ratio);

double legacy_epsilon_update(const LegacyEpsilonState& state, std::size_t k);

// cv_mean * feasible_ratio.
double cmoead_epsilon(double cv_mean, double feasible_ratio);

enum class Preference { kFirst, kSecond, kIncomparable };

/// Epsilon-level comparison: objective dominance when both violations are
/// within eps or the violations are equal, otherwise the smaller violation
/// wins.
Preference epsilon_compare(const Solution& first, const Solution& second, double eps);

/// Subproblem replacement test.
///
/// For the epsilon family (IEPSILON, EPSILON, CMOEAD) and for CDP (eps = 0):
///   both violations <= eps -> replace iff agg_child <= agg_current
///   else equal violations  -> replace iff agg_child <= agg_current
///   else                   -> replace iff child violation is smaller
/// SR draws u from rng; u < sr_pf compares aggregation only, otherwise the
/// CDP rules apply. Other policies never touch rng.
bool update_subproblem(double current_violation, double child_violation, double eps,
                       double agg_current, double agg_child, const UpdatePolicy& policy,
                       Rng& rng);

bool update_subproblem(const Solution& current, const Solution& child, double eps,
                       double agg_current, double agg_child, const UpdatePolicy& policy,
                       Rng& rng);

}  // namespace cmoead
