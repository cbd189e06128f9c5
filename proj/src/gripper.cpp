#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cmoead/problems.hpp"

namespace cmoead {

GripperDesign GripperDesign::from_vector(std::span<const double> x) {
  if (x.size() != 7) throw std::invalid_argument("gripper: expected 7 variables");
  return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
}

GripperDesign GripperDesign::with_f_rules() const {
  GripperDesign d = *this;
  if (a < 4.0 * b) {
    if (c < a + b)
      d.f = 2.0 * e + 10.0;
    else if (c > a + b)
      d.f = e + 50.0;
  }
  return d;
}

std::optional<GripperKinematics> gripper_kinematics(const GripperDesign& d, double z,
                                                    const GripperParams& params) {
  const double run = d.l - z;
  if (run == 0.0 && d.e == 0.0) return std::nullopt;
  // atan2 gives the pi/2 limit at l = z for e > 0.
  const double phi = std::atan2(d.e, run);
  double g = std::sqrt(run * run + d.e * d.e);
  if (params.literal_forms) g += phi;
  if (!(g > 0.0)) return std::nullopt;

  const double cos_alpha = (d.a * d.a + g * g - d.b * d.b) / (2.0 * d.a * g);
  const double cos_beta = (d.b * d.b + g * g - d.a * d.a) / (2.0 * d.b * g);
  if (!(std::abs(cos_alpha) <= 1.0) || !(std::abs(cos_beta) <= 1.0)) return std::nullopt;

  GripperKinematics k{};
  k.g = g;
  k.phi = phi;
  k.alpha = std::acos(cos_alpha);
  k.beta = std::acos(cos_beta) - phi;
  k.force = params.actuating_force * d.b * std::sin(k.alpha + k.beta) /
            (2.0 * d.c * std::cos(k.alpha));
  k.displacement = params.literal_forms ? 2.0 * (d.e + d.f + d.c + std::sin(k.beta + d.delta))
                                        : 2.0 * (d.e + d.f + d.c * std::sin(k.beta + d.delta));
  return k;
}

Gripper::Gripper(GripperParams params)
    : params_(params),
      lower_{10.0, 10.0, 100.0, 0.0, 10.0, 100.0, 1.0},
      upper_{150.0, 150.0, 200.0, 50.0, 150.0, 300.0, 3.14} {
  if (params_.z_samples < 2) throw std::invalid_argument("gripper: need at least 2 z samples");
}

Evaluation Gripper::evaluate(std::span<const double> x) const {
  const GripperDesign d = GripperDesign::from_vector(x).with_f_rules();
  const GripperParams& p = params_;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  bool assemblable = true;
  double min_force = kInf;
  const std::size_t steps = p.z_samples - 1;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double z = p.z_max * static_cast<double>(i) / static_cast<double>(steps);
    const auto k = gripper_kinematics(d, z, p);
    if (!k) {
      assemblable = false;
      break;
    }
    min_force = std::min(min_force, k->force);
  }

  Evaluation out;
  const double f2 = d.a + d.b + d.c + d.e + d.l;
  const double f1 =
      assemblable && min_force > 0.0 ? p.actuating_force / min_force : kGripperForceSentinel;
  out.objectives = {f1, f2};

  const auto at_zero = gripper_kinematics(d, 0.0, p);
  const auto at_max = gripper_kinematics(d, p.z_max, p);
  const double y0 = at_zero ? at_zero->displacement : -kInf;
  const double y_max = at_max ? at_max->displacement : -kInf;
  const double span_diag = d.l - p.z_max;

  out.ineq_values = {
      at_max ? p.y_min - y_max : -kInf,
      y_max,
      y0 - p.y_max,
      at_zero ? p.y_g - y0 : -kInf,
      (d.a + d.b) * (d.a + d.b) - d.l * d.l - d.e * d.e,
      span_diag * span_diag + (d.a - d.e) * (d.a - d.e) - d.b * d.b,
      span_diag,
      assemblable ? min_force - p.min_gripping_force : -kInf,
  };
  return out;
}

double estimate_feasible_ratio(const Problem& problem, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("estimate_feasible_ratio: samples must be >= 1");
  const auto& lo = problem.lower_bounds();
  const auto& hi = problem.upper_bounds();
  std::size_t feasible = 0;
  Vector x(problem.dimension());
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (evaluate_solution(problem, x).feasible()) ++feasible;
  }
  return static_cast<double>(feasible) / static_cast<double>(samples);
}

}  // namespace cmoead
