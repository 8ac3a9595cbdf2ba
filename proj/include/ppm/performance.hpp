#pragma once

/// @file performance.hpp
/// Dexterity (Frobenius condition number of the normalized kinematic
/// Jacobian) and the g1..g6 constraint stack evaluated at one pose.

#include <limits>
#include <numbers>
#include <Eigen/Dense>

#include "ppm/core_model.hpp"
#include "ppm/kinematics.hpp"
#include "ppm/stiffness.hpp"

namespace ppm {

/// kappa_F(M) = (1/m) sqrt(tr(M^T M) tr((M^T M)^{-1})) for square M; +inf
/// when M is singular.
double frobenius_condition(const Eigen::MatrixXd& m);

inline constexpr double kInfiniteCondition = std::numeric_limits<double>::infinity();

struct DexterityConfig {
  enum class LengthPolicy { HomeOptimal, Fixed };
  double threshold = 0.1;
  LengthPolicy policy = LengthPolicy::HomeOptimal;
  double fixed_length = 1.0;  // m, used by LengthPolicy::Fixed

  void check() const;
};

/// Lower stiffness limits of g4..g6.
struct StiffnessThresholds {
  double k_xy = 1e6;                                // N/m
  double k_z = 1e5;                                 // N/m
  double k_phiz = 10.0 / (std::numbers::pi / 180);  // N m/rad
};

/// Everything needed to evaluate constraints at a pose.
struct PerformanceConfig {
  StiffnessParams stiffness{};
  DexterityConfig dexterity{};
  StiffnessThresholds thresholds{};
  Wrench wrench{};
  WorkingMode mode = kDefaultWorkingMode;
  Pose home = default_workspace_center();  // reference pose of the characteristic length
};

/// Kinematic Jacobian A^{-1} B with the rotational twist component scaled by
/// the characteristic length. Returns a zero matrix when A is singular.
Eigen::Matrix3d normalized_jacobian(const JacobianPair& jp, double characteristic_length, bool* singular = nullptr);

/// 1/kappa_F of the normalized Jacobian; 0 at singularities.
double inverse_condition(const JacobianPair& jp, double characteristic_length);
double inverse_condition(const ValidatedDesign& design, const Pose& pose, const DexterityConfig& cfg,
                         const WorkingMode& mode = kDefaultWorkingMode, const Pose& home = default_workspace_center());

/// HomeOptimal: golden-section minimizer over [1e-3, 10] m of kappa_F at the
/// home pose. Fixed: the configured value. Throws Error(HomeUnreachable).
double characteristic_length(const ValidatedDesign& design, const DexterityConfig& cfg,
                             const WorkingMode& mode = kDefaultWorkingMode, const Pose& home = default_workspace_center());

struct ConstraintReport {
  bool g1_geometry = false;
  bool g2_stroke = false;
  bool ik_reachable = false;
  bool g3_dexterity = false;
  double inverse_condition = 0.0;
  bool g4_kxy = false;
  bool g5_kz = false;
  bool g6_kphiz = false;
  StiffnessIndices stiffness{};
  bool stiffness_evaluated = false;
  bool overall = false;
};

/// Per-design evaluator that caches the layout and characteristic length.
class ConstraintEvaluator {
 public:
  /// Throws Error(HomeUnreachable) when the characteristic length cannot be
  /// computed.
  ConstraintEvaluator(const ValidatedDesign& design, const PerformanceConfig& cfg);
  /// Uses a precomputed characteristic length.
  ConstraintEvaluator(const ValidatedDesign& design, const PerformanceConfig& cfg, double characteristic_length);

  /// With `short_circuit`, evaluation stops at the first failed check and the
  /// remaining flags stay false.
  ConstraintReport evaluate(const Pose& pose, bool short_circuit = false) const;

  double characteristic_length() const noexcept { return length_; }
  const PerformanceConfig& config() const noexcept { return cfg_; }
  const ValidatedDesign& design() const noexcept { return design_; }

 private:
  ValidatedDesign design_;
  PerformanceConfig cfg_;
  AnchorLayout layout_;
  double length_;
};

ConstraintReport evaluate_constraints(const ValidatedDesign& design, const Pose& pose, const PerformanceConfig& cfg);

}  // namespace ppm
