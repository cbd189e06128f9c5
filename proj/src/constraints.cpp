#include "cmoead/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmoead {

void IEpsilonState::observe(double violation) {
  if (std::isfinite(violation) && violation > phi_max) phi_max = violation;
}

PolicyKind parse_policy(std::string_view text) {
  if (text == "iepsilon") return PolicyKind::kIEpsilon;
  if (text == "epsilon") return PolicyKind::kEpsilon;
  if (text == "cdp") return PolicyKind::kCdp;
  if (text == "sr") return PolicyKind::kSr;
  if (text == "cmoead") return PolicyKind::kCmoead;
  throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kIEpsilon: return "iepsilon";
    case PolicyKind::kEpsilon: return "epsilon";
    case PolicyKind::kCdp: return "cdp";
    case PolicyKind::kSr: return "sr";
    case PolicyKind::kCmoead: return "cmoead";
  }
  return "?";
}

double initial_epsilon(std::span<const double> violations, std::size_t theta_index) {
  if (violations.empty()) throw std::invalid_argument("initial_epsilon: empty population");
  if (theta_index < 1 || theta_index > violations.size())
    throw std::invalid_argument("initial_epsilon: theta index outside [1, N]");
  std::vector<double> sorted(violations.begin(), violations.end());
  auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(theta_index - 1);
  std::nth_element(sorted.begin(), nth, sorted.end(), std::greater<>());
  return *nth;
}

double iepsilon_update(IEpsilonState& state, std::size_t k, double feasible_ratio) {
  if (k >= state.tc)
    state.epsilon = 0.0;
  else if (feasible_ratio < state.alpha)
    state.epsilon = (1.0 - state.tau) * state.epsilon;
  else
    state.epsilon = (1.0 + state.tau) * state.phi_max;
  return state.epsilon;
}

double legacy_epsilon_update(const LegacyEpsilonState& state, std::size_t k) {
  if (k >= state.tc) return 0.0;
  if (k == 0) return state.epsilon0;
  const double frac = 1.0 - static_cast<double>(k) / static_cast<double>(state.tc);
  return state.epsilon0 * std::pow(frac, state.cp);
}

double cmoead_epsilon(double cv_mean, double feasible_ratio) { return cv_mean * feasible_ratio; }

Preference epsilon_compare(const Solution& first, const Solution& second, double eps) {
  const double v1 = first.violation;
  const double v2 = second.violation;
  if ((v1 <= eps && v2 <= eps) || v1 == v2) {
    if (dominates(first.objectives, second.objectives)) return Preference::kFirst;
    if (dominates(second.objectives, first.objectives)) return Preference::kSecond;
    return Preference::kIncomparable;
  }
  return v1 < v2 ? Preference::kFirst : Preference::kSecond;
}

namespace {

bool epsilon_rules(double current, double child, double eps, double agg_current,
                   double agg_child) {
  if (child <= eps && current <= eps) return agg_child <= agg_current;
  if (child == current) return agg_child <= agg_current;
  return child < current;
}

}  // namespace

bool update_subproblem(double current_violation, double child_violation, double eps,
                       double agg_current, double agg_child, const UpdatePolicy& policy,
                       Rng& rng) {
  switch (policy.kind) {
    case PolicyKind::kIEpsilon:
    case PolicyKind::kEpsilon:
    case PolicyKind::kCmoead:
      return epsilon_rules(current_violation, child_violation, eps, agg_current, agg_child);
    case PolicyKind::kCdp:
      return epsilon_rules(current_violation, child_violation, 0.0, agg_current, agg_child);
    case PolicyKind::kSr:
      if (rng.uniform() < policy.sr_pf) return agg_child <= agg_current;
      return epsilon_rules(current_violation, child_violation, 0.0, agg_current, agg_child);
  }
  return false;
}

bool update_subproblem(const Solution& current, const Solution& child, double eps,
                       double agg_current, double agg_child, const UpdatePolicy& policy,
                       Rng& rng) {
  return update_subproblem(current.violation, child.violation, eps, agg_current, agg_child,
                           policy, rng);
}

}  // namespace cmoead
