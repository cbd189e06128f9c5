#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmoead/core.hpp"
#include "cmoead/rng.hpp"

namespace cmoead {

// ---------------------------------------------------------------------------
// LIR-CMOP1..14: 30 variables in [0,1]; two objectives for ids 1-12, three
// for 13-14. Constraints are returned in the c(x) >= 0 convention.
// ---------------------------------------------------------------------------
class LirCmop final : public Problem {
 public:
  static constexpr std::size_t kDimension = 30;

  explicit LirCmop(int id);

  int id() const { return id_; }
  std::string name() const override;
  std::size_t dimension() const override { return kDimension; }
  std::size_t num_objectives() const override { return id_ >= 13 ? 3 : 2; }
  const Vector& lower_bounds() const override { return lower_; }
  const Vector& upper_bounds() const override { return upper_; }
  Evaluation evaluate(std::span<const double> x) const override;

  /// Ids 5-14 constrain only the objective vector; this evaluates those
  /// constraints directly on F. Throws std::logic_error for ids 1-4.
  Vector objective_space_constraints(std::span<const double> f) const;

  /// Image of the zero-distance manifold parameterised by x1 = t in [0,1]
  /// (ids 1-12). For ids 1-4 the distance terms are pinned at their least
  /// admissible value 0.5 instead of zero.
  Vector distance_free_objectives(double t) const;

 private:
  int id_;
  Vector lower_;
  Vector upper_;
};

std::unique_ptr<Problem> make_problem(std::string_view name);

/// Problem names accepted by make_problem: "lir-cmop1" ... "lir-cmop14",
/// plus "gripper".
std::vector<std::string> all_problem_names();

/// Accepts "1", "lir-cmop1", "LIR-CMOP1", "gripper". Returns the canonical name.
std::string canonical_problem_name(std::string_view text);

// ---------------------------------------------------------------------------
// Robot gripper linkage design.
// ---------------------------------------------------------------------------
struct GripperParams {
  double y_min = 50.0;
  double y_g = 150.0;
  double y_max = 100.0;
  double z_max = 100.0;
  double actuating_force = 100.0;  // P
  double min_gripping_force = 50.0;  // F_G
  std::size_t z_samples = 100;
  // Use g = sqrt(...) + phi and y = 2[e + f + c + sin(beta + delta)] verbatim.
  bool literal_forms = false;
};

struct GripperDesign {
  double a, b, c, e, f, l, delta;

  static GripperDesign from_vector(std::span<const double> x);
  /// Returns a copy with f fixed by the two link-length rules when their
  /// guards hold: (a < 4b, c < a+b) -> f = 2e + 10; (a < 4b, c > a+b) ->
  /// f = e + 50.
  GripperDesign with_f_rules() const;
};

struct GripperKinematics {
  double force;         // F_k, newtons
  double displacement;  // y, millimetres
  double g, phi, alpha, beta;
};

/// Linkage state at actuator displacement z. nullopt means the linkage cannot
/// be assembled (arccos argument outside [-1, 1] or a zero-length diagonal).
std::optional<GripperKinematics> gripper_kinematics(const GripperDesign& design, double z,
                                                    const GripperParams& params = {});

/// Large stand-in for f1 when the minimum gripping force is not positive.
inline constexpr double kGripperForceSentinel = 1e6;

class Gripper final : public Problem {
 public:
  explicit Gripper(GripperParams params = {});

  std::string name() const override { return "gripper"; }
  std::size_t dimension() const override { return 7; }
  std::size_t num_objectives() const override { return 2; }
  const Vector& lower_bounds() const override { return lower_; }
  const Vector& upper_bounds() const override { return upper_; }
  Evaluation evaluate(std::span<const double> x) const override;

  const GripperParams& params() const { return params_; }

 private:
  GripperParams params_;
  Vector lower_;
  Vector upper_;
};

// ---------------------------------------------------------------------------
// Reference fronts and feasible-ratio sampling.
// ---------------------------------------------------------------------------

/// Default front sizes: 1000 points for two objectives, 10000 for three.
std::size_t default_front_size(int lir_id);

/// Sampled true Pareto front of LIR-CMOP `lir_id`, `size` points spread
/// evenly along the front. Deterministic. Throws std::invalid_argument for
/// ids outside 1..14 (the gripper has no known front).
std::vector<Vector> reference_front(int lir_id, std::size_t size);

std::vector<Vector> read_front(const std::filesystem::path& path);
void write_front(const std::filesystem::path& path, const std::vector<Vector>& front);

/// Loads `<dir>/lir-cmop<id>_<size>.pf`, generating and caching it first if
/// the file is absent.
std::vector<Vector> cached_reference_front(const std::filesystem::path& dir, int lir_id,
                                           std::size_t size);

/// Fraction of uniform random points in the bound box that are feasible.
double estimate_feasible_ratio(const Problem& problem, std::size_t samples, Rng& rng);

}  // namespace cmoead
