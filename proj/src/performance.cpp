#include "ppm/performance.hpp"

#include <cmath>

namespace ppm {

double frobenius_condition(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("frobenius_condition expects a non-empty square matrix");
  if (!m.allFinite()) return kInfiniteCondition;
  const Eigen::MatrixXd gram = m.transpose() * m;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible()) return kInfiniteCondition;
  const double t = gram.trace() * lu.inverse().trace();
  if (!std::isfinite(t) || t <= 0.0) return kInfiniteCondition;
  return std::sqrt(t) / static_cast<double>(m.rows());
}

void DexterityConfig::check() const {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw Error(ErrorCode::Config, "dexterity threshold must lie in (0, 1]", "dexterity.threshold");
  if (policy == LengthPolicy::Fixed && !(fixed_length > 0.0))
    throw Error(ErrorCode::Config, "characteristic length must be positive", "dexterity.characteristic_length");
}

Eigen::Matrix3d normalized_jacobian(const JacobianPair& jp, double characteristic_length, bool* singular) {
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jp.parallel);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    if (singular) *singular = true;
    return Eigen::Matrix3d::Zero();
  }
  if (singular) *singular = false;
  Eigen::Matrix3d j = lu.solve(jp.serial);
  j.row(2) *= characteristic_length;
  return j;
}

double inverse_condition(const JacobianPair& jp, double characteristic_length) {
  bool singular = false;
  const Eigen::Matrix3d j = normalized_jacobian(jp, characteristic_length, &singular);
  if (singular) return 0.0;
  const double kappa = frobenius_condition(j);
  return std::isfinite(kappa) ? 1.0 / kappa : 0.0;
}

double inverse_condition(const ValidatedDesign& design, const Pose& pose, const DexterityConfig& cfg,
                         const WorkingMode& mode, const Pose& home) {
  const LegSolutions legs = inverse_kinematics(design, pose, mode);
  const double length = characteristic_length(design, cfg, mode, home);
  return inverse_condition(jacobian(design, pose, legs), length);
}

double characteristic_length(const ValidatedDesign& design, const DexterityConfig& cfg, const WorkingMode& mode,
                             const Pose& home) {
  if (cfg.policy == DexterityConfig::LengthPolicy::Fixed) return cfg.fixed_length;

  const AnchorLayout layout = anchor_layout(design.value());
  const IkOutcome ik = try_inverse_kinematics(design.value(), layout, home, mode);
  if (!ik.ok) throw Error(ErrorCode::HomeUnreachable, "home pose is not reachable", {}, ik.failed_leg);
  const JacobianPair jp = jacobian(design.value(), layout, home, ik.legs);

  auto cost = [&](double log_length) {
    bool singular = false;
    const Eigen::Matrix3d j = normalized_jacobian(jp, std::exp(log_length), &singular);
    return singular ? kInfiniteCondition : frobenius_condition(j);
  };
  if (!std::isfinite(cost(0.0)))
    throw Error(ErrorCode::HomeUnreachable, "home pose is singular; characteristic length undefined");

  // Golden-section search in log(L), which keeps the relative tolerance uniform.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(1e-3);
  double hi = std::log(10.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = cost(x1);
  double f2 = cost(x2);
  while (hi - lo > 1e-5) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = cost(x2);
    }
  }
  return std::exp(0.5 * (lo + hi));
}

ConstraintEvaluator::ConstraintEvaluator(const ValidatedDesign& design, const PerformanceConfig& cfg)
    : ConstraintEvaluator(design, cfg, ppm::characteristic_length(design, cfg.dexterity, cfg.mode, cfg.home)) {}

ConstraintEvaluator::ConstraintEvaluator(const ValidatedDesign& design, const PerformanceConfig& cfg,
                                         double characteristic_length)
    : design_(design), cfg_(cfg), layout_(anchor_layout(design.value())), length_(characteristic_length) {}

ConstraintReport ConstraintEvaluator::evaluate(const Pose& pose, bool short_circuit) const {
  const DesignVector& d = design_.value();
  ConstraintReport rep;
  rep.g1_geometry = d.link_length + d.platform_radius >= 0.5 * d.base_radius;
  if (short_circuit && !rep.g1_geometry) return rep;

  const IkOutcome ik = try_inverse_kinematics(d, layout_, pose, cfg_.mode);
  rep.ik_reachable = ik.ok;
  rep.g2_stroke = ik.ok;
  if (!ik.ok) return rep;

  const JacobianPair jp = jacobian(d, layout_, pose, ik.legs);
  rep.inverse_condition = inverse_condition(jp, length_);
  rep.g3_dexterity = rep.inverse_condition >= cfg_.dexterity.threshold;
  if (short_circuit && !rep.g3_dexterity) return rep;

  try {
    const StiffnessMatrix6 k = platform_stiffness(d, layout_, pose, ik.legs, cfg_.stiffness);
    rep.stiffness = stiffness_indices(k);
    rep.stiffness_evaluated = true;
    rep.g4_kxy = rep.stiffness.k_xy_min >= cfg_.thresholds.k_xy;
    rep.g5_kz = rep.stiffness.k_z_min >= cfg_.thresholds.k_z;
    rep.g6_kphiz = rep.stiffness.k_phiz_min >= cfg_.thresholds.k_phiz;
  } catch (const Error&) {
    // Singular kinetostatics: no stiffness at this pose.
  }
  rep.overall = rep.g1_geometry && rep.g2_stroke && rep.ik_reachable && rep.g3_dexterity && rep.g4_kxy &&
                rep.g5_kz && rep.g6_kphiz;
  return rep;
}

ConstraintReport evaluate_constraints(const ValidatedDesign& design, const Pose& pose, const PerformanceConfig& cfg) {
  double length = cfg.dexterity.fixed_length;
  if (cfg.dexterity.policy == DexterityConfig::LengthPolicy::HomeOptimal) {
    try {
      length = characteristic_length(design, cfg.dexterity, cfg.mode, cfg.home);
    } catch (const Error&) {
      // Without a reachable home pose there is no normalization; report the
      // pose as non-dexterous.
      ConstraintEvaluator ev(design, cfg, 1.0);
      ConstraintReport rep = ev.evaluate(pose);
      rep.g3_dexterity = false;
      rep.overall = false;
      return rep;
    }
  }
  return ConstraintEvaluator(design, cfg, length).evaluate(pose);
}

}  // namespace ppm
