#pragma once

// Slow, obviously-correct metric implementations for cross-checking.

#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Point = std::vector<double>;

inline std::vector<Point> random_points(std::mt19937_64& gen, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out(n, Point(m));
  for (auto& p : out)
    for (auto& v : p) v = u(gen);
  return out;
}

inline double igd(const std::vector<Point>& ref, const std::vector<Point>& approx) {
  double total = 0.0;
  for (const auto& r : ref) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : approx) {
      double s = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) s += (r[k] - a[k]) * (r[k] - a[k]);
      best = std::min(best, std::sqrt(s));
    }
    total += best;
  }
  return total / static_cast<double>(ref.size());
}

// Union volume of boxes [p, zr] by inclusion-exclusion over all subsets.
inline double hv_inclusion_exclusion(const std::vector<Point>& pts, const Point& zr) {
  const std::size_t n = pts.size();
  double total = 0.0;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    Point corner(zr.size(), -std::numeric_limits<double>::infinity());
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1ul)) continue;
      ++bits;
      for (std::size_t k = 0; k < zr.size(); ++k) corner[k] = std::max(corner[k], pts[i][k]);
    }
    double vol = 1.0;
    for (std::size_t k = 0; k < zr.size(); ++k) vol *= std::max(0.0, zr[k] - corner[k]);
    total += bits % 2 ? vol : -vol;
  }
  return total;
}

// Uniform samples in [0, zr]; returns the estimate and its standard error.
inline std::pair<double, double> hv_monte_carlo(const std::vector<Point>& pts, const Point& zr,
                                                std::size_t samples, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double box = 1.0;
  for (double z : zr) box *= z;
  std::size_t hits = 0;
  Point s(zr.size());
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < zr.size(); ++k) s[k] = u(gen) * zr[k];
    for (const auto& p : pts) {
      bool dominated = true;
      for (std::size_t k = 0; k < zr.size() && dominated; ++k) dominated = p[k] <= s[k];
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  const double se = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return {box * frac, se};
}

}  // namespace oracle
