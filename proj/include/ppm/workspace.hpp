#pragma once

/// @file workspace.hpp
/// Regular cylindrical workspace: grid sampling, feasibility and the largest
/// feasible radius (objective f2).

#include <optional>
#include <vector>

#include "ppm/performance.hpp"

namespace ppm {

struct WorkspaceSpec {
  Pose center = default_workspace_center();
  double rotation_range = 20.0 * std::numbers::pi / 180.0;  // total band, centered on center.phi
  double radius = 0.0;

  void check() const;
};

struct GridSpec {
  int n_radial = 5;
  int n_angular = 12;
  int n_orientation = 5;

  void check() const;
  std::size_t size() const {
    return static_cast<std::size_t>(n_radial) * n_angular * n_orientation + n_orientation;
  }
};

/// Center at every orientation first, then rings k = 1..n_radial; within a
/// ring angular-major, then orientation.
std::vector<Pose> grid_points(const WorkspaceSpec& spec, const GridSpec& grid);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<Pose> first_failure;
  ConstraintReport failure_report{};
};

FeasibilityResult workspace_feasible(const ConstraintEvaluator& evaluator, const WorkspaceSpec& spec,
                                     const GridSpec& grid);
FeasibilityResult workspace_feasible(const ValidatedDesign& design, const WorkspaceSpec& spec,
                                     const GridSpec& grid, const PerformanceConfig& cfg);

/// Upper end of the bisection bracket: R + r + the longest leg extension.
double workspace_radius_upper_bound(const DesignVector& design);

struct WorkspaceSearch {
  Pose center = default_workspace_center();
  double rotation_range = 20.0 * std::numbers::pi / 180.0;
  GridSpec grid{};
  double tolerance = 1e-3;  // m
};

/// Bisection on the cylinder radius. Returns 0 when the center already fails.
double max_regular_workspace(const ConstraintEvaluator& evaluator, const WorkspaceSearch& search);
double max_regular_workspace(const ValidatedDesign& design, const WorkspaceSearch& search,
                             const PerformanceConfig& cfg);

}  // namespace ppm
