#include "cmoead/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmoead {

double igd(const std::vector<Vector>& reference, const std::vector<Vector>& approximation) {
  if (reference.empty()) throw std::invalid_argument("igd: empty reference front");
  if (approximation.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t m = reference.front().size();
  for (const auto& a : approximation)
    if (a.size() != m) throw std::invalid_argument("igd: dimension mismatch");

  double total = 0.0;
  for (const auto& r : reference) {
    if (r.size() != m) throw std::invalid_argument("igd: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : approximation) {
      double d = 0.0;
      for (std::size_t i = 0; i < m; ++i) d += (r[i] - a[i]) * (r[i] - a[i]);
      best = std::min(best, d);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

namespace {

using Point2 = std::pair<double, double>;

// Area dominated by 2-D points (already strictly inside the box) up to (r0, r1).
double area_2d(std::vector<Point2> pts, double r0, double r1) {
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double ceiling = r1;
  for (const auto& [x, y] : pts) {
    if (y < ceiling) {
      area += (r0 - x) * (ceiling - y);
      ceiling = y;
    }
  }
  return area;
}

}  // namespace

double hypervolume(const std::vector<Vector>& points, const Vector& reference_point) {
  const std::size_t m = reference_point.size();
  if (m < 2 || m > 3) throw std::domain_error("hypervolume: only 2 or 3 objectives supported");

  std::vector<Vector> inside;
  for (const auto& p : points) {
    if (p.size() != m) throw std::invalid_argument("hypervolume: dimension mismatch");
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) ok = ok && p[i] < reference_point[i];
    if (ok) inside.push_back(p);
  }
  if (inside.empty()) return 0.0;

  if (m == 2) {
    std::vector<Point2> pts;
    for (const auto& p : inside) pts.emplace_back(p[0], p[1]);
    return area_2d(std::move(pts), reference_point[0], reference_point[1]);
  }

  // Slice along f3: between consecutive f3 levels the cross-section is the
  // 2-D front of every point at or below the lower level.
  std::sort(inside.begin(), inside.end(),
            [](const Vector& a, const Vector& b) { return a[2] < b[2]; });
  double volume = 0.0;
  std::vector<Point2> active;
  for (std::size_t i = 0; i < inside.size(); ++i) {
    active.emplace_back(inside[i][0], inside[i][1]);
    const double next = i + 1 < inside.size() ? inside[i + 1][2] : reference_point[2];
    const double depth = next - inside[i][2];
    if (depth > 0.0) volume += depth * area_2d(active, reference_point[0], reference_point[1]);
  }
  return volume;
}

Vector reference_point(const std::vector<Vector>& front) {
  if (front.empty()) throw std::invalid_argument("reference_point: empty front");
  const std::size_t m = front.front().size();
  Vector ideal(m, std::numeric_limits<double>::infinity());
  Vector nadir(m, -std::numeric_limits<double>::infinity());
  for (const auto& p : front) {
    for (std::size_t i = 0; i < m; ++i) {
      ideal[i] = std::min(ideal[i], p[i]);
      nadir[i] = std::max(nadir[i], p[i]);
    }
  }
  Vector z(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (nadir[i] > 0.0) {
      z[i] = 1.2 * nadir[i];
    } else {
      const double spread = std::max(nadir[i] - ideal[i], 1e-6);
      z[i] = nadir[i] + 0.2 * spread;
    }
  }
  return z;
}

Vector gripper_reference_point() { return {5.0, 800.0}; }

}  // namespace cmoead
