#include "ppm/stiffness.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ppm {

namespace {

using Eigen::Isometry3d;
using Eigen::Vector3d;

Isometry3d translation(double x, double y, double z = 0.0) {
  Isometry3d t = Isometry3d::Identity();
  t.translation() = Vector3d(x, y, z);
  return t;
}

Isometry3d rot_z(double angle) {
  Isometry3d t = Isometry3d::Identity();
  t.linear() = Eigen::AngleAxisd(angle, Vector3d::UnitZ()).toRotationMatrix();
  return t;
}

Isometry3d rotation_vector(const Vector3d& v) {
  Isometry3d t = Isometry3d::Identity();
  const double angle = v.norm();
  if (angle > 0.0) t.linear() = Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
  return t;
}

ChainElement fixed(const Isometry3d& t) { return {ChainElement::Kind::Fixed, t, 0.0}; }
ChainElement passive(double angle) {
  return {ChainElement::Kind::PassiveRevolute, Isometry3d::Identity(), angle};
}
ChainElement element(ChainElement::Kind kind) { return {kind, Isometry3d::Identity(), 0.0}; }

double heading(const Vec2& v) { return std::atan2(v.y(), v.x()); }

// Unit screw of a rotation about `axis` through `origin`, seen at `point`.
Vector6 rotation_screw(const Vector3d& axis, const Vector3d& origin, const Vector3d& point) {
  Vector6 s;
  s << axis.cross(point - origin), axis;
  return s;
}

Vector6 translation_screw(const Vector3d& axis) {
  Vector6 s;
  s << axis, Vector3d::Zero();
  return s;
}

}  // namespace

Compliance6 beam_compliance(double length, double section_radius, const Material& material) {
  if (!(length > 0.0) || !(section_radius > 0.0))
    throw Error(ErrorCode::DegenerateBeam, "beam length and section radius must be positive");
  const double r2 = section_radius * section_radius;
  const double area = std::numbers::pi * r2;
  const double iy = std::numbers::pi * r2 * r2 / 4.0;
  const double iz = iy;
  const double ix = iy + iz;
  const double e = material.young_modulus;
  const double g = material.shear_modulus;
  const double l = length;

  Compliance6 c;
  Matrix6& m = c.matrix;
  m(0, 0) = l / (e * area);
  m(1, 1) = l * l * l / (3.0 * e * iz);
  m(2, 2) = l * l * l / (3.0 * e * iy);
  m(3, 3) = l / (g * ix);
  m(4, 4) = l / (e * iy);
  m(5, 5) = l / (e * iz);
  m(1, 5) = m(5, 1) = l * l / (2.0 * e * iz);
  m(2, 4) = m(4, 2) = -l * l / (2.0 * e * iy);
  return c;
}

int LegChain::spring_coordinates() const {
  int n = 0;
  for (const auto& e : elements) {
    if (e.kind == ChainElement::Kind::Spring6) n += 6;
    if (e.kind == ChainElement::Kind::ActuatorTranslation || e.kind == ChainElement::Kind::ActuatorRotation)
      n += 1;
  }
  return n;
}

int LegChain::passive_coordinates() const {
  int n = 0;
  for (const auto& e : elements)
    if (e.kind == ChainElement::Kind::PassiveRevolute) ++n;
  return n;
}

Isometry3d LegChain::end_transform(const Eigen::VectorXd& theta, const Eigen::VectorXd& dq) const {
  Isometry3d t = Isometry3d::Identity();
  int s = 0;
  int p = 0;
  for (const auto& e : elements) {
    switch (e.kind) {
      case ChainElement::Kind::Fixed: t = t * e.transform; break;
      case ChainElement::Kind::PassiveRevolute: t = t * rot_z(e.angle + dq[p++]); break;
      case ChainElement::Kind::ActuatorTranslation: t = t * translation(theta[s++], 0.0); break;
      case ChainElement::Kind::ActuatorRotation: t = t * rot_z(theta[s++]); break;
      case ChainElement::Kind::Spring6:
        t = t * translation(theta[s], theta[s + 1], theta[s + 2]) *
            rotation_vector(Vector3d(theta[s + 3], theta[s + 4], theta[s + 5]));
        s += 6;
        break;
    }
  }
  return t;
}

LegChain leg_chain(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                   const LegSolution& leg, int leg_index) {
  using Kind = ChainElement::Kind;
  const Vec2 p = pose.position();
  const double arm_heading = heading(p - leg.c);
  const Isometry3d end = rot_z(pose.phi - arm_heading);
  const double r = design.platform_radius;

  LegChain chain;
  auto& e = chain.elements;
  switch (design.architecture) {
    case Architecture::PRR:
      e.push_back(fixed(translation(leg.a.x(), leg.a.y()) * rot_z(heading(layout.rail[leg_index]))));
      e.push_back(fixed(translation(leg.actuated, 0.0)));
      e.push_back(element(Kind::ActuatorTranslation));
      e.push_back(passive(leg.passive[0]));
      e.push_back(fixed(translation(design.link_length, 0.0)));
      e.push_back(element(Kind::Spring6));
      break;
    case Architecture::RPR:
      e.push_back(fixed(translation(leg.a.x(), leg.a.y())));
      e.push_back(passive(leg.passive[0]));
      e.push_back(fixed(translation(leg.actuated, 0.0)));
      e.push_back(element(Kind::Spring6));
      e.push_back(element(Kind::ActuatorTranslation));
      break;
    case Architecture::RRR:
      e.push_back(fixed(translation(leg.a.x(), leg.a.y()) * rot_z(leg.actuated)));
      e.push_back(element(Kind::ActuatorRotation));
      e.push_back(fixed(translation(design.link_length, 0.0)));
      e.push_back(element(Kind::Spring6));
      e.push_back(passive(leg.passive[0]));
      e.push_back(fixed(translation(design.link_length, 0.0)));
      e.push_back(element(Kind::Spring6));
      break;
  }
  e.push_back(passive(leg.passive[1]));
  e.push_back(fixed(translation(r, 0.0)));
  e.push_back(element(Kind::Spring6));
  e.push_back(fixed(end));
  return chain;
}

LegSpringModel leg_spring_model(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                const LegSolution& leg, int leg_index, const StiffnessParams& params) {
  using Kind = ChainElement::Kind;
  LegSpringModel model;
  model.chain = leg_chain(design, layout, pose, leg, leg_index);

  // Link compliances in chain order; the platform bar is always last.
  std::vector<Compliance6> links;
  switch (design.architecture) {
    case Architecture::PRR:
      links.push_back(beam_compliance(design.link_length, design.leg_section_radius, params.material));
      break;
    case Architecture::RPR:
      links.push_back(beam_compliance(leg.actuated, design.leg_section_radius, params.material));
      break;
    case Architecture::RRR:
      links.push_back(beam_compliance(design.link_length, design.leg_section_radius, params.material));
      links.push_back(links.back());
      break;
  }
  links.push_back(beam_compliance(design.platform_radius, design.platform_section_radius, params.material));

  const int n_theta = model.chain.spring_coordinates();
  model.spring_compliance = Eigen::MatrixXd::Zero(n_theta, n_theta);
  model.spring_jacobian.resize(6, n_theta);

  const Isometry3d end = model.chain.end_transform(Eigen::VectorXd::Zero(n_theta), Eigen::VectorXd::Zero(2));
  const Vector3d p = end.translation();

  Isometry3d t = Isometry3d::Identity();
  int s = 0;
  int q = 0;
  std::size_t link = 0;
  for (const auto& el : model.chain.elements) {
    const Vector3d origin = t.translation();
    const Eigen::Matrix3d axes = t.linear();
    switch (el.kind) {
      case Kind::Fixed: t = t * el.transform; break;
      case Kind::PassiveRevolute:
        model.passive_jacobian.col(q++) = rotation_screw(axes.col(2), origin, p);
        t = t * rot_z(el.angle);
        break;
      case Kind::ActuatorTranslation:
        model.spring_jacobian.col(s) = translation_screw(axes.col(0));
        model.spring_compliance(s, s) = 1.0 / params.actuator.prismatic;
        model.block_sizes.push_back(1);
        ++s;
        break;
      case Kind::ActuatorRotation:
        model.spring_jacobian.col(s) = rotation_screw(axes.col(2), origin, p);
        model.spring_compliance(s, s) = 1.0 / params.actuator.revolute;
        model.block_sizes.push_back(1);
        ++s;
        break;
      case Kind::Spring6:
        for (int k = 0; k < 3; ++k) {
          model.spring_jacobian.col(s + k) = translation_screw(axes.col(k));
          model.spring_jacobian.col(s + 3 + k) = rotation_screw(axes.col(k), origin, p);
        }
        model.spring_compliance.block<6, 6>(s, s) = links[link++].matrix;
        model.block_sizes.push_back(6);
        s += 6;
        break;
    }
  }
  return model;
}

StiffnessMatrix6 leg_cartesian_stiffness(const LegSpringModel& model) {
  const Matrix6 s_theta =
      model.spring_jacobian * model.spring_compliance * model.spring_jacobian.transpose();
  const double scale = s_theta.norm();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorCode::SingularKinetostatics, "spring compliance vanishes");

  // Equilibrated block system: (S/scale)(scale f) + J_q dq = dt.
  Eigen::Matrix<double, 8, 8> block = Eigen::Matrix<double, 8, 8>::Zero();
  block.topLeftCorner<6, 6>() = s_theta / scale;
  block.topRightCorner<6, 2>() = model.passive_jacobian;
  block.bottomLeftCorner<2, 6>() = model.passive_jacobian.transpose();
  Eigen::Matrix<double, 8, 6> rhs = Eigen::Matrix<double, 8, 6>::Zero();
  rhs.topRows<6>().setIdentity();

  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(block);
  lu.setThreshold(1e-12);
  if (lu.rank() < 8) throw Error(ErrorCode::SingularKinetostatics, "kinetostatic block system is singular");
  const Eigen::Matrix<double, 8, 6> sol = lu.solve(rhs);

  StiffnessMatrix6 k;
  k.matrix = sol.topRows<6>() / scale;
  return k;
}

StiffnessMatrix6 platform_stiffness(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                    const LegSolutions& legs, const StiffnessParams& params) {
  StiffnessMatrix6 total;
  for (int i = 0; i < 3; ++i) {
    try {
      total.matrix += leg_cartesian_stiffness(leg_spring_model(design, layout, pose, legs[i], i, params)).matrix;
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " (leg " + std::to_string(i + 1) + ")", err.field(), i);
    }
  }
  return total;
}

StiffnessMatrix6 platform_stiffness(const ValidatedDesign& design, const Pose& pose, const StiffnessParams& params,
                                    const WorkingMode& mode) {
  const LegSolutions legs = inverse_kinematics(design, pose, mode);
  return platform_stiffness(design.value(), anchor_layout(design.value()), pose, legs, params);
}

StiffnessIndices stiffness_indices(const StiffnessMatrix6& stiffness) {
  const Matrix6& k = stiffness.matrix;
  Eigen::FullPivLU<Matrix6> lu(k);
  lu.setThreshold(1e-14);
  if (!k.allFinite() || lu.rank() < 6) throw Error(ErrorCode::SingularStiffness, "stiffness matrix is singular");
  const Matrix6 c = lu.inverse();

  const Eigen::Matrix2d cxy = 0.5 * (c.topLeftCorner<2, 2>() + c.topLeftCorner<2, 2>().transpose());
  const Eigen::Vector2d eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(cxy, Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .cwiseAbs();
  StiffnessIndices out;
  out.k_xy_min = 1.0 / eig.maxCoeff();
  out.k_z_min = 1.0 / c(2, 2);
  out.k_phiz_min = 1.0 / c(5, 5);
  return out;
}

}  // namespace ppm
