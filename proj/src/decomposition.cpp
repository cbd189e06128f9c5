#include "cmoead/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cmoead/rng.hpp"

namespace cmoead {

Scalarization parse_scalarization(std::string_view text) {
  if (text == "tch" || text == "tchebycheff") return Scalarization::kTchebycheff;
  if (text == "ws" || text == "weighted-sum") return Scalarization::kWeightedSum;
  if (text == "pbi") return Scalarization::kPbi;
  throw std::invalid_argument("unknown scalarization: " + std::string(text));
}

std::string_view to_string(Scalarization s) {
  switch (s) {
    case Scalarization::kWeightedSum: return "ws";
    case Scalarization::kTchebycheff: return "tch";
    case Scalarization::kPbi: return "pbi";
  }
  return "?";
}

namespace {

void compositions(std::size_t remaining, std::size_t slot, std::size_t divisions,
                  std::vector<std::size_t>& parts, std::vector<Vector>& out) {
  if (slot + 1 == parts.size()) {
    parts[slot] = remaining;
    Vector w(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      w[i] = static_cast<double>(parts[i]) / static_cast<double>(divisions);
    out.push_back(std::move(w));
    return;
  }
  for (std::size_t k = remaining + 1; k-- > 0;) {
    parts[slot] = k;
    compositions(remaining - k, slot + 1, divisions, parts, out);
  }
}

// C(n, k) in floating point; only used for sizing comparisons.
double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

std::vector<Vector> simplex_lattice(std::size_t divisions, std::size_t num_objectives) {
  if (divisions == 0 || num_objectives < 2)
    throw std::invalid_argument("simplex_lattice: need H >= 1 and m >= 2");
  std::vector<Vector> out;
  std::vector<std::size_t> parts(num_objectives, 0);
  compositions(divisions, 0, divisions, parts, out);
  return out;
}

std::vector<Vector> generate_weight_vectors(std::size_t count, std::size_t num_objectives,
                                            std::uint64_t seed) {
  if (num_objectives < 2)
    throw std::invalid_argument("generate_weight_vectors: need at least two objectives");
  if (count < num_objectives)
    throw std::invalid_argument("generate_weight_vectors: N must be >= m");

  std::vector<Vector> weights;
  if (num_objectives == 2) {
    weights.reserve(count);
    const double span = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / span;
      weights.push_back({t, 1.0 - t});
    }
    return weights;
  }

  std::size_t divisions = 1;
  while (binomial(divisions + num_objectives, num_objectives - 1) <=
         static_cast<double>(count))
    ++divisions;
  weights = simplex_lattice(divisions, num_objectives);

  Rng rng(seed);
  while (weights.size() < count) {
    Vector w(num_objectives);
    double total = 0.0;
    for (double& v : w) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    for (double& v : w) v /= total;
    weights.push_back(std::move(w));
  }
  return weights;
}

std::vector<std::vector<std::size_t>> neighborhoods(const std::vector<Vector>& weights,
                                                    std::size_t size) {
  const std::size_t n = weights.size();
  if (size == 0 || size > n)
    throw std::invalid_argument("neighborhoods: T must be in [1, N]");

  std::vector<std::vector<std::size_t>> result(n);
  std::vector<double> dist(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < weights[i].size(); ++k) {
        const double diff = weights[i][k] - weights[j][k];
        d += diff * diff;
      }
      dist[j] = d;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    // i is at distance 0; keep it first even if another weight coincides.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist[a] != dist[b]) return dist[a] < dist[b];
      if ((a == i) != (b == i)) return a == i;
      return a < b;
    });
    result[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return result;
}

double scalarize(std::span<const double> objectives, std::span<const double> weight,
                 std::span<const double> ideal, Scalarization method, double pbi_theta) {
  const std::size_t m = objectives.size();
  if (weight.size() != m || ideal.size() != m)
    throw std::invalid_argument("scalarize: inconsistent vector lengths");

  switch (method) {
    case Scalarization::kWeightedSum: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += weight[i] * objectives[i];
      return sum;
    }
    case Scalarization::kTchebycheff: {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const double w = weight[i] == 0.0 ? kTchebycheffZeroWeight : weight[i];
        worst = std::max(worst, w * std::abs(objectives[i] - ideal[i]));
      }
      return worst;
    }
    case Scalarization::kPbi: {
      double norm = 0.0;
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        norm += weight[i] * weight[i];
        dot += (objectives[i] - ideal[i]) * weight[i];
      }
      norm = std::sqrt(norm);
      const double d1 = std::abs(dot) / norm;
      double d2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double r = objectives[i] - ideal[i] - d1 * weight[i] / norm;
        d2 += r * r;
      }
      return d1 + pbi_theta * std::sqrt(d2);
    }
  }
  throw std::invalid_argument("scalarize: unknown method");
}

Vector update_ideal(Vector ideal, std::span<const double> objectives) {
  if (ideal.size() != objectives.size())
    throw std::invalid_argument("update_ideal: length mismatch");
  for (std::size_t t = 0; t < ideal.size(); ++t)
    if (std::isfinite(objectives[t]) && objectives[t] < ideal[t]) ideal[t] = objectives[t];
  return ideal;
}

}  // namespace cmoead
