#pragma once

/// @file moga.hpp
/// Constrained multiobjective genetic algorithm (minimize mass in motion,
/// maximize regular workspace radius) over the mixed design space.
///
/// Generation 0 is the DOE. Every later generation fills `population`
/// offspring slots; each slot picks an operator by roulette:
/// directional crossover, selection (copy), DNA mutation, and classical
/// one-point crossover with the remaining probability. Parents come from
/// binary tournaments ordered by feasibility, Pareto rank and crowding.
/// The next population keeps the best `population` individuals of parents
/// plus offspring, and a feasible non-dominated archive is kept across the
/// whole run.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ppm/doe.hpp"
#include "ppm/genome.hpp"
#include "ppm/performance.hpp"
#include "ppm/workspace.hpp"

namespace ppm {

struct MogaConfig {
  int population = 30;
  int generations = 200;
  double p_directional_crossover = 0.5;
  double p_selection = 0.05;
  double p_mutation = 0.1;
  double dna_mutation_ratio = 0.05;
  std::uint64_t seed = 1;
  DoeKind doe = DoeKind::Sobol;
  int threads = 0;  // 0 = hardware concurrency

  /// Probability of one-point crossover, the remainder of the roulette.
  double p_one_point_crossover() const {
    return 1.0 - p_directional_crossover - p_selection - p_mutation;
  }
  void check() const;
};

/// What one design evaluation needs besides the genome.
struct EvaluationContext {
  Bounds bounds{};
  PerformanceConfig performance{};
  WorkspaceSearch workspace{};
};

struct Evaluation {
  Genome genome{};
  DesignVector design{};
  double mass = 0.0;
  double workspace_radius = 0.0;
  double characteristic_length = 0.0;
  bool feasible = false;
  /// Constraint shortfall at the workspace center; 0 for feasible designs.
  double violation = 0.0;
  /// Report at the first failing grid pose just beyond the radius found.
  std::optional<Pose> limiting_pose;
  ConstraintReport limiting_report{};
  int generation = 0;
};

/// Decodes, validates and evaluates both objectives. Never throws: failures
/// make the design infeasible with R_w = 0.
Evaluation evaluate(const Genome& genome, const EvaluationContext& ctx);
Evaluation evaluate(const DesignVector& design, const EvaluationContext& ctx);

/// q dominates p: no worse in both objectives and strictly better in one.
bool dominates(const Evaluation& q, const Evaluation& p) noexcept;

struct ParetoArchive {
  std::vector<Evaluation> entries;  // sorted by R_w ascending
};

/// Non-dominated subset, sorted by R_w ascending. Of several points with
/// identical objectives only the first one in input order is kept.
/// Infeasible points are dropped.
ParetoArchive pareto_filter(const std::vector<Evaluation>& points);

/// 2-D hypervolume dominated by the archive with respect to
/// (mass = reference_mass, R_w = 0).
double hypervolume(const ParetoArchive& archive, double reference_mass = 5000.0);

/// Feasible evaluations partitioned by architecture, each Pareto-filtered;
/// index 0 is PRR.
std::array<ParetoArchive, 3> per_architecture_fronts(const std::vector<Evaluation>& history);

struct GenerationRecord {
  int generation = 0;
  double hypervolume = 0.0;
  int n_feasible = 0;      // feasible designs evaluated in this generation
  int archive_size = 0;
};

struct MogaResult {
  ParetoArchive archive;
  std::vector<Evaluation> evaluations;  // every evaluation in order, tagged by generation
  std::vector<GenerationRecord> generations;
  bool no_feasible_design() const { return archive.entries.empty(); }
};

using GenerationCallback = std::function<void(const GenerationRecord&, const ParetoArchive&)>;

/// Runs the full budget of population x generations evaluations.
/// Deterministic for a fixed configuration and seed, independent of the
/// number of threads.
MogaResult evolve(const MogaConfig& cfg, const EvaluationContext& ctx, const GenerationCallback& on_generation = {});

}  // namespace ppm
