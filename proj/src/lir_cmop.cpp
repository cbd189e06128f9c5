#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cmoead/problems.hpp"

namespace cmoead {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Family { kNarrowDistance, kScaledAdditive, kScaledMultiplicative, kSpherical };
enum class Shape { kConcave, kConvex };  // 1 - t^2, 1 - sqrt(t)

struct Ellipse {
  double p, q, a, b;
};

struct Row {
  Family family;
  Shape shape;
  int num_ellipses;
  std::array<Ellipse, 3> ellipses;
  double wave_offset;  // ids 9-12
  bool sine_gate;      // ids 3-4
};

// Ellipse orientation and radius are shared by every row that uses them.
constexpr double kEllipseTheta = -0.25 * kPi;
constexpr double kEllipseRadius = 0.1;
constexpr double kWaveAngle = 0.25 * kPi;

constexpr double kBandUpper = 0.51;  // a
constexpr double kBandLower = 0.5;   // b
constexpr double kSineFrequency = 20.0;
constexpr double kOffset = 0.7057;
constexpr double kScale = 1.7057;

const Row& row(int id) {
  static const std::array<Row, 14> rows = {{
      {Family::kNarrowDistance, Shape::kConcave, 0, {}, 0.0, false},
      {Family::kNarrowDistance, Shape::kConvex, 0, {}, 0.0, false},
      {Family::kNarrowDistance, Shape::kConcave, 0, {}, 0.0, true},
      {Family::kNarrowDistance, Shape::kConvex, 0, {}, 0.0, true},
      {Family::kScaledAdditive, Shape::kConvex, 2,
       {{{1.6, 1.6, 2.0, 4.0}, {2.5, 2.5, 2.0, 8.0}, {}}}, 0.0, false},
      {Family::kScaledAdditive, Shape::kConcave, 2,
       {{{1.8, 1.8, 2.0, 8.0}, {2.8, 2.8, 2.0, 8.0}, {}}}, 0.0, false},
      {Family::kScaledAdditive, Shape::kConvex, 3,
       {{{1.2, 1.2, 2.0, 6.0}, {2.25, 2.25, 2.5, 12.0}, {3.5, 3.5, 2.5, 10.0}}}, 0.0, false},
      {Family::kScaledAdditive, Shape::kConcave, 3,
       {{{1.2, 1.2, 2.0, 6.0}, {2.25, 2.25, 2.5, 12.0}, {3.5, 3.5, 2.5, 10.0}}}, 0.0, false},
      {Family::kScaledMultiplicative, Shape::kConcave, 1, {{{1.4, 1.4, 1.5, 6.0}, {}, {}}}, 2.0,
       false},
      {Family::kScaledMultiplicative, Shape::kConvex, 1, {{{1.1, 1.2, 2.0, 4.0}, {}, {}}}, 1.0,
       false},
      {Family::kScaledMultiplicative, Shape::kConvex, 1, {{{1.2, 1.2, 1.5, 5.0}, {}, {}}}, 2.1,
       false},
      {Family::kScaledMultiplicative, Shape::kConcave, 1, {{{1.6, 1.6, 1.5, 6.0}, {}, {}}}, 2.5,
       false},
      {Family::kSpherical, Shape::kConcave, 0, {}, 0.0, false},
      {Family::kSpherical, Shape::kConcave, 0, {}, 0.0, false},
  }};
  return rows.at(static_cast<std::size_t>(id - 1));
}

double shape_value(Shape s, double t) { return s == Shape::kConcave ? 1.0 - t * t : 1.0 - std::sqrt(t); }

// Odd/even distance sums. x is 0-based, variable numbers are 1-based.
// `scaled_phase` selects sin(0.5 pi i/30 x1) over sin(0.5 pi x1).
void distance_sums(std::span<const double> x, bool scaled_phase, double& g1, double& g2) {
  g1 = 0.0;
  g2 = 0.0;
  const double x1 = x[0];
  for (std::size_t var = 2; var <= LirCmop::kDimension; ++var) {
    const double phase =
        scaled_phase ? 0.5 * static_cast<double>(var) / 30.0 * kPi * x1 : 0.5 * kPi * x1;
    const double xi = x[var - 1];
    if (var % 2 == 1) {
      const double d = xi - std::sin(phase);
      g1 += d * d;
    } else {
      const double d = xi - std::cos(phase);
      g2 += d * d;
    }
  }
}

double ellipse_constraint(const Ellipse& e, double f1, double f2) {
  const double c = std::cos(kEllipseTheta);
  const double s = std::sin(kEllipseTheta);
  const double u = (f1 - e.p) * c - (f2 - e.q) * s;
  const double v = (f1 - e.p) * s + (f2 - e.q) * c;
  return u * u / (e.a * e.a) + v * v / (e.b * e.b) - kEllipseRadius;
}

double wave_constraint(double offset, double f1, double f2) {
  const double sa = std::sin(kWaveAngle);
  const double ca = std::cos(kWaveAngle);
  return f1 * sa + f2 * ca - std::sin(4.0 * kPi * (f1 * ca - f2 * sa)) - offset;
}

Vector spherical_constraints(int id, double radius_sq) {
  const double g = radius_sq;
  Vector c{(g - 9.0) * (g - 4.0), (g - 3.61) * (g - 3.24)};
  if (id == 14) c.push_back((g - 3.0625) * (g - 2.56));
  return c;
}

}  // namespace

LirCmop::LirCmop(int id) : id_(id), lower_(kDimension, 0.0), upper_(kDimension, 1.0) {
  if (id < 1 || id > 14) throw std::invalid_argument("LIR-CMOP id must be in 1..14");
}

std::string LirCmop::name() const { return "lir-cmop" + std::to_string(id_); }

Evaluation LirCmop::evaluate(std::span<const double> x) const {
  if (x.size() != kDimension) throw std::invalid_argument(name() + ": expected 30 variables");
  const Row& r = row(id_);
  Evaluation out;

  if (r.family == Family::kSpherical) {
    double g1 = 0.0;
    for (std::size_t i = 2; i < kDimension; ++i) g1 += 10.0 * (x[i] - 0.5) * (x[i] - 0.5);
    const double radius = kScale + g1;
    const double a = 0.5 * kPi * x[0];
    const double b = 0.5 * kPi * x[1];
    out.objectives = {radius * std::cos(a) * std::cos(b), radius * std::cos(a) * std::sin(b),
                      radius * std::sin(a)};
    out.ineq_values = objective_space_constraints(out.objectives);
    return out;
  }

  double g1 = 0.0;
  double g2 = 0.0;
  distance_sums(x, r.family != Family::kNarrowDistance, g1, g2);
  const double t = x[0];
  const double shape = shape_value(r.shape, t);

  switch (r.family) {
    case Family::kNarrowDistance:
      out.objectives = {t + g1, shape + g2};
      out.ineq_values = {(kBandUpper - g1) * (g1 - kBandLower),
                         (kBandUpper - g2) * (g2 - kBandLower)};
      if (r.sine_gate) out.ineq_values.push_back(std::sin(kSineFrequency * kPi * t) - 0.5);
      return out;
    case Family::kScaledAdditive:
      out.objectives = {t + 10.0 * g1 + kOffset, shape + 10.0 * g2 + kOffset};
      break;
    case Family::kScaledMultiplicative:
      out.objectives = {kScale * t * (10.0 * g1 + 1.0), kScale * shape * (10.0 * g2 + 1.0)};
      break;
    case Family::kSpherical:
      break;
  }
  out.ineq_values = objective_space_constraints(out.objectives);
  return out;
}

Vector LirCmop::objective_space_constraints(std::span<const double> f) const {
  const Row& r = row(id_);
  if (r.family == Family::kNarrowDistance)
    throw std::logic_error(name() + ": constraints depend on decision variables");
  if (r.family == Family::kSpherical) {
    double g = 0.0;
    for (double v : f) g += v * v;
    return spherical_constraints(id_, g);
  }
  Vector c;
  for (int k = 0; k < r.num_ellipses; ++k)
    c.push_back(ellipse_constraint(r.ellipses[static_cast<std::size_t>(k)], f[0], f[1]));
  if (r.family == Family::kScaledMultiplicative)
    c.push_back(wave_constraint(r.wave_offset, f[0], f[1]));
  return c;
}

Vector LirCmop::distance_free_objectives(double t) const {
  const Row& r = row(id_);
  const double shape = shape_value(r.shape, t);
  switch (r.family) {
    case Family::kNarrowDistance: return {t + kBandLower, shape + kBandLower};
    case Family::kScaledAdditive: return {t + kOffset, shape + kOffset};
    case Family::kScaledMultiplicative: return {kScale * t, kScale * shape};
    case Family::kSpherical: break;
  }
  throw std::logic_error(name() + ": no one-parameter front curve");
}

std::vector<std::string> all_problem_names() {
  std::vector<std::string> names;
  for (int id = 1; id <= 14; ++id) names.push_back("lir-cmop" + std::to_string(id));
  names.push_back("gripper");
  return names;
}

std::string canonical_problem_name(std::string_view text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "gripper") return lower;
  std::string digits = lower;
  if (lower.rfind("lir-cmop", 0) == 0) digits = lower.substr(8);
  else if (lower.rfind("lircmop", 0) == 0) digits = lower.substr(7);
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
    const int id = std::stoi(digits);
    if (id >= 1 && id <= 14) return "lir-cmop" + std::to_string(id);
  }
  throw std::invalid_argument("unknown problem: " + std::string(text));
}

std::unique_ptr<Problem> make_problem(std::string_view name) {
  const std::string canonical = canonical_problem_name(name);
  if (canonical == "gripper") return std::make_unique<Gripper>();
  return std::make_unique<LirCmop>(std::stoi(canonical.substr(8)));
}

}  // namespace cmoead
