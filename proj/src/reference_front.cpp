#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cmoead/problems.hpp"

namespace cmoead {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_nonnegative(const Vector& c) {
  return std::all_of(c.begin(), c.end(), [](double v) { return v >= 0.0; });
}

// Largest t in [0,1] with increasing(t) <= target, or -1 if none.
double sup_below(const std::function<double(double)>& increasing, double target) {
  if (increasing(0.0) > target) return -1.0;
  if (increasing(1.0) <= target) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (increasing(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

// Walks from `start` along +axis until the predicate holds, then bisects the
// last infeasible/feasible step. Returns the first feasible coordinate found.
std::optional<double> first_feasible(const std::function<bool(double)>& feasible, double start,
                                     double height, double step) {
  if (feasible(start)) return start;
  double prev = start;
  for (double v = start + step; v <= start + height; v += step) {
    if (feasible(v)) {
      double lo = prev;
      double hi = v;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    prev = v;
  }
  return std::nullopt;
}

// Dense front for ids 5-12. Constraints act on F only, and the attainable
// objective set is everything weakly above the distance-free curve s(t), so
// for every column f1 the lowest attainable f2 is s2(sup{t : s1(t) <= f1}).
// Each column (and, symmetrically, each row) is scanned upward to the first
// feasible point.
class ObjectiveSpaceScan {
 public:
  explicit ObjectiveSpaceScan(const LirCmop& problem) : problem_(problem) {}

  double s1(double t) const { return problem_.distance_free_objectives(t)[0]; }
  double s2(double t) const { return problem_.distance_free_objectives(t)[1]; }

  void columns(double from, double to, std::size_t lines, std::vector<Vector>& out) const {
    for (std::size_t i = 0; i <= lines; ++i) {
      const double f1 = from + (to - from) * static_cast<double>(i) / static_cast<double>(lines);
      const double t = sup_below([&](double u) { return s1(u); }, f1);
      if (t < 0.0) continue;
      const auto f2 = first_feasible([&](double v) { return feasible(f1, v); }, s2(t), kHeight, kStep);
      if (f2) out.push_back({f1, *f2});
    }
  }

  // s2 decreases in t, so the lowest attainable f1 at height f2 is s1 at the
  // smallest t with s2(t) <= f2.
  void rows(double from, double to, std::size_t lines, std::vector<Vector>& out) const {
    for (std::size_t i = 0; i <= lines; ++i) {
      const double f2 = from + (to - from) * static_cast<double>(i) / static_cast<double>(lines);
      if (f2 < s2(1.0)) continue;
      double t_min = 0.0;
      if (s2(0.0) > f2) {
        double lo = 0.0;  // s2(lo) > f2
        double hi = 1.0;  // s2(hi) <= f2
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          (s2(mid) <= f2 ? hi : lo) = mid;
        }
        t_min = hi;
      }
      const auto f1 = first_feasible([&](double v) { return feasible(v, f2); }, s1(t_min), kHeight, kStep);
      if (f1) out.push_back({*f1, f2});
    }
  }

 private:
  static constexpr double kHeight = 8.0;
  static constexpr double kStep = 1e-3;

  bool feasible(double f1, double f2) const {
    const double f[2] = {f1, f2};
    return all_nonnegative(problem_.objective_space_constraints(f));
  }

  const LirCmop& problem_;
};

std::vector<Vector> nondominated_subset(const std::vector<Vector>& points) {
  std::vector<Vector> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(points[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> objective_space_front(const LirCmop& problem, std::size_t size) {
  constexpr std::size_t kLines = 20000;
  constexpr std::size_t kRefineLines = 4000;
  constexpr double kMargin = 2.5;
  constexpr double kPieceGap = 1e-2;

  const ObjectiveSpaceScan scan(problem);
  std::vector<Vector> dense;
  scan.columns(scan.s1(0.0), scan.s1(1.0) + kMargin, kLines, dense);
  scan.rows(scan.s2(1.0), scan.s2(0.0) + kMargin, kLines, dense);
  std::vector<Vector> front = nondominated_subset(dense);
  if (front.size() >= 2 * size) return front;

  // Short disconnected pieces get few global scan lines; rescan each piece
  // over its own extent.
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= front.size(); ++i) {
    if (i < front.size() &&
        std::hypot(front[i][0] - front[i - 1][0], front[i][1] - front[i - 1][1]) <= kPieceGap)
      continue;
    const Vector& a = front[begin];
    const Vector& b = front[i - 1];
    if (i - begin > 1) {
      scan.columns(a[0], b[0], kRefineLines, dense);
      scan.rows(b[1], a[1], kRefineLines, dense);
    }
    begin = i;
  }
  return nondominated_subset(dense);
}

std::vector<Vector> narrow_distance_curve(const LirCmop& problem) {
  constexpr std::size_t kSamples = 200000;
  const bool sine_gate = problem.id() == 3 || problem.id() == 4;
  std::vector<Vector> dense;
  for (std::size_t i = 0; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    if (sine_gate && std::sin(20.0 * kPi * t) - 0.5 < 0.0) continue;
    dense.push_back(problem.distance_free_objectives(t));
  }
  return dense;
}

// Picks `size` points at equal arc-length spacing along a sorted 2-D front,
// skipping the gaps between disconnected pieces.
std::vector<Vector> resample_biobjective(std::vector<Vector> front, std::size_t size) {
  std::sort(front.begin(), front.end());
  if (front.size() <= size) return front;

  std::vector<double> seg(front.size() - 1);
  for (std::size_t i = 0; i + 1 < front.size(); ++i)
    seg[i] = std::hypot(front[i + 1][0] - front[i][0], front[i + 1][1] - front[i][1]);
  std::vector<double> sorted_seg = seg;
  std::nth_element(sorted_seg.begin(), sorted_seg.begin() + static_cast<std::ptrdiff_t>(seg.size() / 2),
                   sorted_seg.end());
  const double gap = std::max(50.0 * sorted_seg[seg.size() / 2], 1e-3);

  // A gap counts as one sample spacing so every piece, even a single
  // isolated point, receives a sample.
  double connected = 0.0;
  std::size_t gaps = 0;
  for (double d : seg) {
    if (d > gap)
      ++gaps;
    else
      connected += d;
  }
  const double spacing =
      size > gaps + 1 ? connected / static_cast<double>(size - 1 - gaps) : 0.0;
  std::vector<double> position(front.size(), 0.0);
  for (std::size_t i = 0; i + 1 < front.size(); ++i)
    position[i + 1] = position[i] + (seg[i] > gap ? spacing : seg[i]);
  const double total = position.back();

  std::vector<Vector> out;
  out.reserve(size);
  std::size_t last = front.size();
  for (std::size_t k = 0; k < size; ++k) {
    const double target = size == 1 ? 0.0 : total * static_cast<double>(k) / static_cast<double>(size - 1);
    auto it = std::lower_bound(position.begin(), position.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - position.begin());
    if (idx == front.size()) idx = front.size() - 1;
    if (idx > 0 && target - position[idx - 1] < position[idx] - target) --idx;
    if (idx == last && idx + 1 < front.size()) ++idx;
    out.push_back(front[idx]);
    last = idx;
  }
  return out;
}

// Smallest radius >= base whose squared value satisfies every constraint.
double feasible_sphere_radius(const LirCmop& problem, double base) {
  const auto ok = [&](double r) {
    const double f[3] = {r, 0.0, 0.0};
    return all_nonnegative(problem.objective_space_constraints(f));
  };
  const auto r = first_feasible(ok, base, 5.0, 1e-4);
  if (!r) throw std::logic_error(problem.name() + ": no feasible radius");
  return *r;
}

// Area-uniform grid on the positive octant of a sphere: the height is
// uniform in [0, R] and the azimuth uniform in [0, pi/2].
std::vector<Vector> octant_sphere(double radius, std::size_t size) {
  const std::size_t rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(size))));
  const std::size_t cols = (size + rows - 1) / rows;
  std::vector<Vector> out;
  out.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const double h = (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
    const double ring = std::sqrt(1.0 - h * h);
    for (std::size_t j = 0; j < cols && out.size() < size; ++j) {
      const double az = 0.5 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
      out.push_back({radius * ring * std::cos(az), radius * ring * std::sin(az), radius * h});
    }
  }
  return out;
}

}  // namespace

std::size_t default_front_size(int lir_id) { return lir_id >= 13 ? 10000 : 1000; }

std::vector<Vector> reference_front(int lir_id, std::size_t size) {
  if (lir_id < 1 || lir_id > 14)
    throw std::invalid_argument("reference_front: only LIR-CMOP1..14 have a known front");
  if (size == 0) throw std::invalid_argument("reference_front: size must be positive");
  const LirCmop problem(lir_id);

  if (lir_id >= 13) {
    constexpr double kBaseRadius = 1.7057;
    // A hair outside the boundary so rounding keeps every point feasible.
    return octant_sphere(feasible_sphere_radius(problem, kBaseRadius) * (1.0 + 1e-12), size);
  }

  std::vector<Vector> front = lir_id <= 4 ? nondominated_subset(narrow_distance_curve(problem))
                                           : objective_space_front(problem, size);
  return resample_biobjective(std::move(front), size);
}

std::vector<Vector> read_front(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open front file " + path.string());
  std::vector<Vector> front;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    Vector p;
    double v;
    while (fields >> v) p.push_back(v);
    if (!p.empty()) front.push_back(std::move(p));
  }
  return front;
}

void write_front(const std::filesystem::path& path, const std::vector<Vector>& front) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write front file " + path.string());
    out << std::setprecision(17);
    for (const auto& p : front) {
      for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Vector> cached_reference_front(const std::filesystem::path& dir, int lir_id,
                                           std::size_t size) {
  const auto path = dir / ("lir-cmop" + std::to_string(lir_id) + "_" + std::to_string(size) + ".pf");
  if (std::filesystem::exists(path)) return read_front(path);
  auto front = reference_front(lir_id, size);
  write_front(path, front);
  return front;
}

}  // namespace cmoead
