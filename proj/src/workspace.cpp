#include "ppm/workspace.hpp"

#include <cmath>
#include <numbers>

namespace ppm {

void WorkspaceSpec::check() const {
  if (!(radius >= 0.0)) throw Error(ErrorCode::Config, "workspace radius must be >= 0", "workspace.radius");
  if (!(rotation_range > 0.0))
    throw Error(ErrorCode::Config, "rotation range must be positive", "workspace.rotation_range_deg");
}

void GridSpec::check() const {
  if (n_radial < 1) throw Error(ErrorCode::Config, "n_radial must be >= 1", "workspace.n_radial");
  if (n_angular < 2) throw Error(ErrorCode::Config, "n_angular must be >= 2", "workspace.n_angular");
  if (n_orientation < 2) throw Error(ErrorCode::Config, "n_orientation must be >= 2", "workspace.n_orientation");
}

std::vector<Pose> grid_points(const WorkspaceSpec& spec, const GridSpec& grid) {
  std::vector<double> orientations(grid.n_orientation);
  const double phi0 = spec.center.phi - 0.5 * spec.rotation_range;
  for (int k = 0; k < grid.n_orientation; ++k)
    orientations[k] = phi0 + spec.rotation_range * k / (grid.n_orientation - 1);

  std::vector<Pose> poses;
  poses.reserve(grid.size());
  for (double phi : orientations) poses.emplace_back(spec.center.x, spec.center.y, phi);
  if (spec.radius == 0.0) return poses;
  for (int k = 1; k <= grid.n_radial; ++k) {
    const double rho = spec.radius * k / grid.n_radial;
    for (int a = 0; a < grid.n_angular; ++a) {
      const double angle = 2.0 * std::numbers::pi * a / grid.n_angular;
      const double x = spec.center.x + rho * std::cos(angle);
      const double y = spec.center.y + rho * std::sin(angle);
      for (double phi : orientations) poses.emplace_back(x, y, phi);
    }
  }
  return poses;
}

FeasibilityResult workspace_feasible(const ConstraintEvaluator& evaluator, const WorkspaceSpec& spec,
                                     const GridSpec& grid) {
  FeasibilityResult out;
  for (const Pose& pose : grid_points(spec, grid)) {
    const ConstraintReport rep = evaluator.evaluate(pose, true);
    if (!rep.overall) {
      out.first_failure = pose;
      out.failure_report = rep;
      return out;
    }
  }
  out.feasible = true;
  return out;
}

FeasibilityResult workspace_feasible(const ValidatedDesign& design, const WorkspaceSpec& spec,
                                     const GridSpec& grid, const PerformanceConfig& cfg) {
  try {
    return workspace_feasible(ConstraintEvaluator(design, cfg), spec, grid);
  } catch (const Error&) {
    FeasibilityResult out;
    out.first_failure = spec.center;
    return out;
  }
}

double workspace_radius_upper_bound(const DesignVector& d) {
  double extension = d.link_length;
  switch (d.architecture) {
    case Architecture::PRR: extension = std::sqrt(3.0) * d.base_radius + d.link_length; break;
    case Architecture::RPR: extension = d.link_length; break;
    case Architecture::RRR: extension = 2.0 * d.link_length; break;
  }
  return d.base_radius + d.platform_radius + extension;
}

double max_regular_workspace(const ConstraintEvaluator& evaluator, const WorkspaceSearch& search) {
  auto feasible = [&](double radius) {
    const WorkspaceSpec spec{search.center, search.rotation_range, radius};
    return workspace_feasible(evaluator, spec, search.grid).feasible;
  };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = workspace_radius_upper_bound(evaluator.design().value());
  if (feasible(hi)) return hi;
  while (hi - lo > search.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

double max_regular_workspace(const ValidatedDesign& design, const WorkspaceSearch& search,
                             const PerformanceConfig& cfg) {
  try {
    return max_regular_workspace(ConstraintEvaluator(design, cfg), search);
  } catch (const Error&) {
    return 0.0;
  }
}

}  // namespace ppm
