#pragma once

/// @file stiffness.hpp
/// Lumped virtual-spring stiffness model.
///
/// Every leg is a serial chain: rigid transforms, locked actuated joints,
/// passive revolute joints about z, a 1-dof actuator spring and one 6-dof
/// spring per link. Spring deflections are expressed in the spring frame
/// (x along the link), screws and wrenches at the platform center P in base
/// axes with ordering (dx, dy, dz, dphi_x, dphi_y, dphi_z) and
/// (F_x, F_y, F_z, tau_x, tau_y, tau_z).

#include <array>
#include <vector>
#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "ppm/core_model.hpp"
#include "ppm/kinematics.hpp"

namespace ppm {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Motion-per-unit-load 6x6 operator.
struct Compliance6 {
  Matrix6 matrix = Matrix6::Zero();
};

/// Load-per-unit-motion 6x6 operator.
struct StiffnessMatrix6 {
  Matrix6 matrix = Matrix6::Zero();
};

struct StiffnessParams {
  Material material{};
  ActuatorStiffness actuator{};
};

/// Tip compliance of a clamped circular beam of length `length` in its own
/// frame (x along the axis). Throws Error(DegenerateBeam) when length or
/// radius is not positive.
Compliance6 beam_compliance(double length, double section_radius, const Material& material);

/// One element of a leg chain. Coordinates of springs and passive joints are
/// perturbations around the nominal configuration stored in the element.
struct ChainElement {
  enum class Kind {
    Fixed,              // constant transform
    PassiveRevolute,    // rotation about local z by `angle` + q
    ActuatorTranslation,  // 1-dof spring along local x
    ActuatorRotation,     // 1-dof spring about local z
    Spring6,            // translation then rotation vector, local frame
  };
  Kind kind = Kind::Fixed;
  Eigen::Isometry3d transform = Eigen::Isometry3d::Identity();  // Fixed only
  double angle = 0.0;                                            // PassiveRevolute only
};

/// Serial chain of one leg from the base frame to the platform frame at P.
struct LegChain {
  std::vector<ChainElement> elements;

  int spring_coordinates() const;
  int passive_coordinates() const;

  /// End-effector transform with spring deflections `theta` and passive joint
  /// offsets `dq` applied (sizes spring_coordinates(), passive_coordinates()).
  Eigen::Isometry3d end_transform(const Eigen::VectorXd& theta, const Eigen::VectorXd& dq) const;
};

/// Everything the kinetostatic reduction of one leg needs.
struct LegSpringModel {
  LegChain chain;
  std::vector<int> block_sizes;     // compliance blocks along the chain
  Eigen::MatrixXd spring_compliance;  // K_theta^{-1}, block diagonal
  Eigen::MatrixXd spring_jacobian;    // J_theta, 6 x n_theta
  Eigen::Matrix<double, 6, 2> passive_jacobian;  // J_q
};

/// Builds the chain of leg `leg` in its current configuration.
LegChain leg_chain(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                   const LegSolution& leg, int leg_index);

LegSpringModel leg_spring_model(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                const LegSolution& leg, int leg_index, const StiffnessParams& params);

/// Cartesian stiffness of one leg at P from the reduced block system
/// [[S, J_q], [J_q^T, 0]] [f; dq] = [dt; 0]. Throws
/// Error(SingularKinetostatics) when the block system is rank deficient.
StiffnessMatrix6 leg_cartesian_stiffness(const LegSpringModel& model);

/// Sum of the three leg stiffness matrices. Throws the IK error of the first
/// failing leg, or the leg's stiffness error with its index.
StiffnessMatrix6 platform_stiffness(const ValidatedDesign& design, const Pose& pose,
                                    const StiffnessParams& params = {},
                                    const WorkingMode& mode = kDefaultWorkingMode);
StiffnessMatrix6 platform_stiffness(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                    const LegSolutions& legs, const StiffnessParams& params);

struct StiffnessIndices {
  double k_xy_min = 0.0;    // N/m, worst planar force direction
  double k_z_min = 0.0;     // N/m
  double k_phiz_min = 0.0;  // N m/rad
};

/// Throws Error(SingularStiffness) when K is not invertible.
StiffnessIndices stiffness_indices(const StiffnessMatrix6& stiffness);

}  // namespace ppm
