#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cmoead/constraints.hpp"
#include "cmoead/core.hpp"
#include "cmoead/decomposition.hpp"
#include "cmoead/rng.hpp"
#include "cmoead/variation.hpp"

namespace cmoead {

struct EngineConfig {
  std::size_t population_size = 300;  // N
  std::size_t neighborhood_size = 30;  // T
  double delta = 0.9;
  std::size_t max_replacements = 2;  // nr
  // Generation cap; unset means max_evaluations / N.
  std::optional<std::size_t> max_generations;
  std::size_t max_evaluations = 300000;

  UpdatePolicy policy;
  VariationConfig variation;
  Scalarization scalarization = Scalarization::kTchebycheff;
  double pbi_theta = kDefaultPbiTheta;

  // Epsilon schedules. theta_index unset means ceil(0.05 N).
  double tau = 0.1;
  double alpha = 0.95;
  std::size_t tc = 800;
  double cp = 2.0;
  std::optional<std::size_t> theta_index;

  // 0 keeps the archive unbounded.
  std::size_t archive_cap = 0;
  bool record_trace = true;
  std::uint64_t seed = 1;

  std::size_t generations() const;
  std::size_t theta() const;
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct GenerationRecord {
  std::size_t generation;
  double epsilon;
  double feasible_ratio;
  double phi_max;
};

struct RunResult {
  std::vector<Solution> archive;
  std::vector<Solution> final_population;
  std::size_t evaluations_used = 0;
  // How many of those evaluations were feasible.
  std::size_t feasible_evaluations = 0;
  std::size_t generations_completed = 0;
  double initial_epsilon = 0.0;
  std::vector<GenerationRecord> trace;
};

/// Mating pool for subproblem j: B(j) with probability delta, otherwise every
/// index 0..N-1.
std::vector<std::size_t> select_mating_pool(std::size_t j,
                                            const std::vector<std::vector<std::size_t>>& neighbors,
                                            double delta, std::size_t population_size, Rng& rng);

/// Feasible nondominated set maintained across generations. Keeps one member
/// per objective vector: a solution whose objectives are already present is
/// not added. Some designs have variables that never reach the objectives,
/// and keeping every such copy would grow the archive without bound.
class Archive {
 public:
  explicit Archive(std::size_t cap = 0) : cap_(cap) {}

  void insert(const Solution& s);
  void update(const std::vector<Solution>& population);

  // Two-objective archives come back sorted by (f1, f2).
  std::vector<Solution> members() const;
  std::vector<Vector> objectives() const;
  std::size_t size() const { return sorted_.size() + members_.size(); }

 private:
  struct ObjectiveLess {
    bool operator()(const Solution& a, const Solution& b) const;
  };

  void insert_biobjective(const Solution& s);
  void insert_general(const Solution& s);
  void enforce_cap();

  std::size_t cap_;
  std::set<Solution, ObjectiveLess> sorted_;  // two objectives
  std::vector<Solution> members_;                  // three or more
};

/// NondominatedSelect(archive ∪ feasible(population)).
std::vector<Solution> archive_update(const std::vector<Solution>& archive,
                                     const std::vector<Solution>& population);

// Fraction of feasible members.
double feasible_ratio(const std::vector<Solution>& population);

/// Runs MOEA/D with the configured constraint-handling policy. Deterministic
/// for a fixed seed.
RunResult run(const Problem& problem, const EngineConfig& cfg);

}  // namespace cmoead
