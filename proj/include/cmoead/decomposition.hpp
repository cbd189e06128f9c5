#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cmoead/core.hpp"

namespace cmoead {

enum class Scalarization { kWeightedSum, kTchebycheff, kPbi };

inline constexpr double kDefaultPbiTheta = 5.0;

/// Substitute for zero weight components inside the Tchebycheff max.
inline constexpr double kTchebycheffZeroWeight = 1e-6;

Scalarization parse_scalarization(std::string_view text);
std::string_view to_string(Scalarization s);

/// N weight vectors on the unit simplex.
///
/// m = 2 uses the evenly spaced pairs (i/(N-1), 1 - i/(N-1)). For m >= 3 the
/// largest simplex lattice with at most N points is taken and the remainder
/// is padded with random simplex samples drawn from `seed`. Throws
/// std::invalid_argument when N < m or m < 2.
std::vector<Vector> generate_weight_vectors(std::size_t count, std::size_t num_objectives,
                                            std::uint64_t seed = 0);

/// All compositions of `divisions` into m nonnegative parts, scaled by 1/H.
std::vector<Vector> simplex_lattice(std::size_t divisions, std::size_t num_objectives);

/// B(i): the T indices closest to weight i in Euclidean distance, nearest
/// first, ties broken toward the lower index. Always contains i itself.
std::vector<std::vector<std::size_t>> neighborhoods(const std::vector<Vector>& weights,
                                                    std::size_t size);

double scalarize(std::span<const double> objectives, std::span<const double> weight,
                 std::span<const double> ideal, Scalarization method,
                 double pbi_theta = kDefaultPbiTheta);

// Componentwise min; non-finite objective values are ignored.
Vector update_ideal(Vector ideal, std::span<const double> objectives);

}  // namespace cmoead
