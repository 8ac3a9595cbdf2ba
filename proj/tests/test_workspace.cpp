#include <doctest.h>

#include "ppm/workspace.hpp"

using namespace ppm;

namespace {

const DesignVector kDesignOne{Architecture::PRR, 1.412, 0.319, 0.620, 0.026, 0.023};

}  // namespace

TEST_CASE("grid covers the cylinder, center first") {
  const GridSpec grid{};
  const WorkspaceSpec spec{Pose{0.1, -0.2, 0.3}, 0.4, 0.5};
  const std::vector<Pose> pts = grid_points(spec, grid);
  REQUIRE(pts.size() == grid.size());
  CHECK(pts.size() == 305);
  double max_r = 0.0, min_phi = 10.0, max_phi = -10.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = std::hypot(pts[i].x - 0.1, pts[i].y + 0.2);
    if (i < static_cast<std::size_t>(grid.n_orientation)) CHECK(r == doctest::Approx(0.0));
    max_r = std::max(max_r, r);
    min_phi = std::min(min_phi, pts[i].phi);
    max_phi = std::max(max_phi, pts[i].phi);
  }
  CHECK(max_r == doctest::Approx(0.5));
  CHECK(min_phi == doctest::Approx(0.1));
  CHECK(max_phi == doctest::Approx(0.5));

  const WorkspaceSpec point{Pose{}, 0.4, 0.0};
  CHECK(grid_points(point, grid).size() == static_cast<std::size_t>(grid.n_orientation));
}

TEST_CASE("grid and workspace specs are validated") {
  CHECK_THROWS_AS((GridSpec{0, 12, 5}.check()), Error);
  CHECK_THROWS_AS((WorkspaceSpec{Pose{}, 0.1, -1.0}.check()), Error);
}

TEST_CASE("maximal regular workspace is feasible and tight") {
  const ValidatedDesign v = validate(kDesignOne, Bounds{});
  const PerformanceConfig cfg{};
  const WorkspaceSearch search{};
  const ConstraintEvaluator ev(v, cfg);
  const double rw = max_regular_workspace(ev, search);
  REQUIRE(rw > 0.0);
  CHECK(workspace_feasible(ev, WorkspaceSpec{search.center, search.rotation_range, rw}, search.grid).feasible);
  const FeasibilityResult beyond =
      workspace_feasible(ev, WorkspaceSpec{search.center, search.rotation_range, rw + search.tolerance}, search.grid);
  CHECK_FALSE(beyond.feasible);
  REQUIRE(beyond.first_failure);
  CHECK_FALSE(beyond.failure_report.overall);
  CHECK(rw < workspace_radius_upper_bound(kDesignOne));
}

TEST_CASE("regular workspace shrinks when constraints tighten") {
  const ValidatedDesign v = validate(kDesignOne, Bounds{});
  PerformanceConfig cfg{};
  const double base = max_regular_workspace(v, WorkspaceSearch{}, cfg);
  cfg.dexterity.threshold = 0.3;
  const double stricter = max_regular_workspace(v, WorkspaceSearch{}, cfg);
  CHECK(stricter <= base);
  cfg = PerformanceConfig{};
  cfg.thresholds.k_xy *= 5.0;
  CHECK(max_regular_workspace(v, WorkspaceSearch{}, cfg) <= base);
}

TEST_CASE("an unreachable center gives a zero radius") {
  const DesignVector d{Architecture::RPR, 3.0, 0.5, 0.6, 0.03, 0.03};
  const ValidatedDesign v = validate(d, Bounds{});
  CHECK(max_regular_workspace(v, WorkspaceSearch{}, PerformanceConfig{}) == 0.0);
}

TEST_CASE("radius upper bound by architecture") {
  DesignVector d{Architecture::PRR, 2.0, 0.5, 1.0, 0.02, 0.02};
  CHECK(workspace_radius_upper_bound(d) == doctest::Approx(2.5 + std::sqrt(3.0) * 2.0 + 1.0));
  d.architecture = Architecture::RPR;
  CHECK(workspace_radius_upper_bound(d) == doctest::Approx(3.5));
  d.architecture = Architecture::RRR;
  CHECK(workspace_radius_upper_bound(d) == doctest::Approx(4.5));
}
