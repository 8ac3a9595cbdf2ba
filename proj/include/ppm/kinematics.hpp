#pragma once

/// @file kinematics.hpp
/// Geometry, inverse kinematics and velocity Jacobians of the three planar
/// architectures.
///
/// Conventions used throughout the project:
///  - base vertices A_i and platform vertices C_i sit at polar angles
///    210, 330 and 90 degrees, so A_1A_2 is parallel to the base x-axis and
///    C_1C_2 to the platform X-axis;
///  - the PRR rail of leg i runs from A_i towards A_{i+1 mod 3};
///  - platform twists are ordered (pdot_x, pdot_y, phidot);
///  - the velocity equation reads A * twist = B * qdot.

#include <array>
#include <numbers>
#include <Eigen/Dense>

#include "ppm/core_model.hpp"

namespace ppm {

using Vec2 = Eigen::Vector2d;

/// Normalizes an angle to (-pi, pi].
double wrap_angle(double angle) noexcept;

/// 2-D cross product a x b (z component).
inline double cross2(const Vec2& a, const Vec2& b) noexcept { return a.x() * b.y() - a.y() * b.x(); }

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;  // rad, kept in (-pi, pi]

  Pose() = default;
  Pose(double px, double py, double angle) : x(px), y(py), phi(wrap_angle(angle)) {}

  Vec2 position() const { return {x, y}; }
};

struct AnchorLayout {
  std::array<Vec2, 3> base;      // A_i in the base frame
  std::array<Vec2, 3> platform;  // C_i in the platform frame
  std::array<Vec2, 3> rail;      // unit rail directions (PRR)
  double rail_length = 0.0;      // sqrt(3) R

  /// C_i expressed in the base frame for a given pose.
  Vec2 platform_point(const Pose& pose, int leg) const;
};

AnchorLayout anchor_layout(const DesignVector& design);

/// Inverse kinematics branch of one leg. PRR: PLUS takes the larger rail
/// coordinate. RRR: PLUS puts the elbow B_i on the left of A_i->C_i. RPR has a
/// single solution and ignores the branch.
enum class Branch { Plus, Minus };
using WorkingMode = std::array<Branch, 3>;
inline constexpr WorkingMode kDefaultWorkingMode{Branch::Plus, Branch::Plus, Branch::Plus};

/// One leg's joint state. The actuated coordinate is rho_i (m) for PRR/RPR and
/// the base joint angle (rad) for RRR. Passive angles are relative joint
/// angles of the two passive revolute joints. Joint centers are kept in base
/// coordinates: a = A_i, b = B_i (equal to c for RPR), c = C_i.
struct LegSolution {
  double actuated = 0.0;
  std::array<double, 2> passive{};
  Branch branch = Branch::Plus;
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
  Vec2 c = Vec2::Zero();
};

using LegSolutions = std::array<LegSolution, 3>;

/// Non-throwing IK result used in hot loops.
struct IkOutcome {
  bool ok = false;
  ErrorCode error = ErrorCode::Unreachable;
  int failed_leg = -1;
  LegSolutions legs{};
};

IkOutcome try_inverse_kinematics(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                 const WorkingMode& mode = kDefaultWorkingMode);

/// Throws Error(Unreachable, leg) or Error(ModeViolation, leg).
LegSolutions inverse_kinematics(const ValidatedDesign& design, const Pose& pose,
                                const WorkingMode& mode = kDefaultWorkingMode);

/// Loop-closure residuals (m) of the three legs for given actuated
/// coordinates; zero when the pose is an assembly of q.
Eigen::Vector3d closure_residuals(const DesignVector& design, const AnchorLayout& layout,
                                  const Eigen::Vector3d& actuated, const Pose& pose);

/// Newton refinement of the direct kinematics from a nearby guess. Throws
/// Error(NoConvergence) after 50 iterations or on a singular step.
Pose forward_refine(const ValidatedDesign& design, const Eigen::Vector3d& actuated, const Pose& guess);

Eigen::Vector3d actuated_coordinates(const LegSolutions& legs);

/// A * [pdot_x, pdot_y, phidot]^T = B * qdot, one row per leg with unit leg
/// directions. `parallel` is singular at Type-2 singularities, `serial` at
/// Type-1 ones.
struct JacobianPair {
  Eigen::Matrix3d parallel;
  Eigen::Matrix3d serial;
};

JacobianPair jacobian(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                      const LegSolutions& legs);
JacobianPair jacobian(const ValidatedDesign& design, const Pose& pose, const LegSolutions& legs);

/// Pose with centers coincident and zero orientation.
inline Pose home_pose() { return Pose{0.0, 0.0, 0.0}; }

/// Default workspace center: centers coincident, platform turned by 20 deg.
/// At zero orientation all RPR legs meet at the platform center.
inline Pose default_workspace_center() { return Pose{0.0, 0.0, 20.0 * std::numbers::pi / 180.0}; }

}  // namespace ppm
