#include "cmoead/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmoead {

void VariationConfig::validate() const {
  if (!(de_f > 0.0)) throw std::invalid_argument("variation: F must be positive");
  if (!(de_cr >= 0.0 && de_cr <= 1.0)) throw std::invalid_argument("variation: CR outside [0,1]");
  if (pm && !(*pm >= 0.0 && *pm <= 1.0))
    throw std::invalid_argument("variation: pm outside [0,1]");
  if (!(eta_m > 0.0)) throw std::invalid_argument("variation: eta_m must be positive");
}

namespace {

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

Vector de_crossover(std::span<const double> base, std::span<const double> r1,
                    std::span<const double> r2, const VariationConfig& cfg,
                    const Bounds& bounds, Rng& rng) {
  const std::size_t n = base.size();
  if (r1.size() != n || r2.size() != n || bounds.lower.size() != n || bounds.upper.size() != n)
    throw std::invalid_argument("de_crossover: dimension mismatch");

  Vector y(base.begin(), base.end());
  const std::size_t forced = rng.below(n);
  for (std::size_t d = 0; d < n; ++d) {
    if (rng.uniform() < cfg.de_cr || d == forced)
      y[d] = clip(base[d] + cfg.de_f * (r1[d] - r2[d]), bounds.lower[d], bounds.upper[d]);
  }
  return y;
}

double polynomial_perturbation(double u, double delta_lower, double delta_upper, double eta) {
  const double power = 1.0 / (eta + 1.0);
  if (u <= 0.5) {
    const double xy = 1.0 - delta_lower;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
    return std::pow(val, power) - 1.0;
  }
  const double xy = 1.0 - delta_upper;
  const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
  return 1.0 - std::pow(val, power);
}

Vector polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                           const Bounds& bounds, Rng& rng) {
  const std::size_t n = x.size();
  if (bounds.lower.size() != n || bounds.upper.size() != n)
    throw std::invalid_argument("polynomial_mutation: dimension mismatch");

  const double pm = cfg.mutation_probability(n);
  Vector y(x.begin(), x.end());
  for (std::size_t d = 0; d < n; ++d) {
    if (!(rng.uniform() < pm)) continue;
    const double lo = bounds.lower[d];
    const double hi = bounds.upper[d];
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    const double delta_lower = (y[d] - lo) / range;
    const double delta_upper = (hi - y[d]) / range;
    const double u = rng.uniform();
    y[d] = clip(y[d] + polynomial_perturbation(u, delta_lower, delta_upper, cfg.eta_m) * range,
                lo, hi);
  }
  return y;
}

}  // namespace cmoead
