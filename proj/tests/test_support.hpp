#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "ppm/performance.hpp"
#include "ppm/stiffness.hpp"

namespace ppm::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// A reachable, well-conditioned configuration of a random design.
struct Sample {
  DesignVector design;
  AnchorLayout layout;
  Pose pose;
  LegSolutions legs;
};

inline DesignVector random_design(std::mt19937_64& rng, Architecture arch) {
  DesignVector d;
  d.architecture = arch;
  d.base_radius = uniform(rng, 0.8, 4.0);
  d.platform_radius = std::max(0.3, uniform(rng, 0.3, 0.6) * d.base_radius);
  d.link_length = std::clamp(uniform(rng, 0.4, 1.2) * d.base_radius, 0.5, 4.0);
  d.leg_section_radius = uniform(rng, 0.01, 0.1);
  d.platform_section_radius = uniform(rng, 0.01, 0.1);
  return d;
}

/// Rejection sampling until IK succeeds and both Jacobians are safely
/// invertible.
inline Sample random_sample(std::mt19937_64& rng, Architecture arch, double min_inverse_condition = 0.05) {
  while (true) {
    Sample s;
    s.design = random_design(rng, arch);
    s.layout = anchor_layout(s.design);
    const double reach = 0.3 * s.design.base_radius;
    s.pose = Pose{uniform(rng, -reach, reach), uniform(rng, -reach, reach), uniform(rng, -0.8, 0.8)};
    WorkingMode mode{};
    for (auto& b : mode) b = uniform(rng, 0.0, 1.0) < 0.5 ? Branch::Plus : Branch::Minus;
    const IkOutcome ik = try_inverse_kinematics(s.design, s.layout, s.pose, mode);
    if (!ik.ok) continue;
    s.legs = ik.legs;
    const JacobianPair jp = jacobian(s.design, s.layout, s.pose, s.legs);
    if (inverse_condition(jp, s.design.base_radius) < min_inverse_condition) continue;
    if (std::abs(jp.serial.determinant()) < 1e-3) continue;
    return s;
  }
}

/// Twist at the frame origin, base axes, of the motion T0 -> T.
inline Eigen::Matrix<double, 6, 1> displacement(const Eigen::Isometry3d& from, const Eigen::Isometry3d& to) {
  Eigen::Matrix<double, 6, 1> t;
  t.head<3>() = to.translation() - from.translation();
  const Eigen::AngleAxisd aa(to.linear() * from.linear().transpose());
  t.tail<3>() = aa.angle() * aa.axis();
  return t;
}

inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

}  // namespace ppm::testing
