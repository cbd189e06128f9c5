#pragma once

#include <optional>
#include <span>

#include "cmoead/core.hpp"
#include "cmoead/rng.hpp"

namespace cmoead {

struct VariationConfig {
  double de_f = 0.5;
  double de_cr = 1.0;
  // Per-coordinate mutation probability; unset means 1/n.
  std::optional<double> pm;
  double eta_m = 20.0;

  double mutation_probability(std::size_t dimension) const {
    return pm ? *pm : 1.0 / static_cast<double>(dimension);
  }
  void validate() const;
};

struct Bounds {
  std::span<const double> lower;
  std::span<const double> upper;
};

/// y_d = base_d + F (r1_d - r2_d) with probability CR per coordinate, one
/// uniformly chosen coordinate always taking the difference. Out-of-range
/// coordinates are truncated to the violated bound.
Vector de_crossover(std::span<const double> base, std::span<const double> r1,
                    std::span<const double> r2, const VariationConfig& cfg,
                    const Bounds& bounds, Rng& rng);

/// Bounded polynomial mutation (Deb-Goyal form) applied independently per
/// coordinate with probability pm.
Vector polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                           const Bounds& bounds, Rng& rng);

// Normalised perturbation deltaq in [-1, 1] for a single draw u in [0, 1).
// delta_lower/delta_upper are the distances to the bounds over the range.
double polynomial_perturbation(double u, double delta_lower, double delta_upper, double eta);

}  // namespace cmoead
