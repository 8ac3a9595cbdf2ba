#include "ppm/kinematics.hpp"

#include <cmath>
#include <numbers>

namespace ppm {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr std::array<double, 3> kVertexAngles{210.0 * kDeg, 330.0 * kDeg, 90.0 * kDeg};

Vec2 polar(double radius, double angle) { return {radius * std::cos(angle), radius * std::sin(angle)}; }

double heading(const Vec2& v) { return std::atan2(v.y(), v.x()); }

// Rotates a vector by +90 degrees.
Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

}  // namespace

double wrap_angle(double angle) noexcept {
  if (!std::isfinite(angle)) return angle;
  double a = std::remainder(angle, 2.0 * std::numbers::pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

Vec2 AnchorLayout::platform_point(const Pose& pose, int leg) const {
  const double c = std::cos(pose.phi);
  const double s = std::sin(pose.phi);
  const Vec2& local = platform[leg];
  return {pose.x + c * local.x() - s * local.y(), pose.y + s * local.x() + c * local.y()};
}

AnchorLayout anchor_layout(const DesignVector& design) {
  AnchorLayout layout;
  for (int i = 0; i < 3; ++i) {
    layout.base[i] = polar(design.base_radius, kVertexAngles[i]);
    layout.platform[i] = polar(design.platform_radius, kVertexAngles[i]);
  }
  for (int i = 0; i < 3; ++i) {
    const Vec2 side = layout.base[(i + 1) % 3] - layout.base[i];
    layout.rail[i] = side.normalized();
  }
  layout.rail_length = std::sqrt(3.0) * design.base_radius;
  return layout;
}

IkOutcome try_inverse_kinematics(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                                 const WorkingMode& mode) {
  IkOutcome out;
  const Vec2 p = pose.position();
  const double len = design.link_length;
  auto fail = [&](ErrorCode code, int leg) {
    out.ok = false;
    out.error = code;
    out.failed_leg = leg;
    return out;
  };

  for (int i = 0; i < 3; ++i) {
    LegSolution& leg = out.legs[i];
    leg.branch = mode[i];
    leg.a = layout.base[i];
    leg.c = layout.platform_point(pose, i);
    const Vec2 arm = p - leg.c;  // C_i -> P

    switch (design.architecture) {
      case Architecture::PRR: {
        const Vec2& u = layout.rail[i];
        const Vec2 w = leg.c - leg.a;
        const double uw = u.dot(w);
        const double disc = uw * uw - w.squaredNorm() + len * len;
        if (disc < 0.0) return fail(ErrorCode::Unreachable, i);
        const double root = std::sqrt(disc);
        const double rho = mode[i] == Branch::Plus ? uw + root : uw - root;
        leg.actuated = rho;
        leg.b = leg.a + rho * u;
        const double link_heading = heading(leg.c - leg.b);
        leg.passive = {wrap_angle(link_heading - heading(u)), wrap_angle(heading(arm) - link_heading)};
        if (!(rho > 0.0 && rho < layout.rail_length)) return fail(ErrorCode::ModeViolation, i);
        break;
      }
      case Architecture::RPR: {
        const Vec2 w = leg.c - leg.a;
        const double rho = w.norm();
        leg.actuated = rho;
        leg.b = leg.c;
        const double leg_heading = heading(w);
        leg.passive = {wrap_angle(leg_heading), wrap_angle(heading(arm) - leg_heading)};
        if (rho < 0.5 * len || rho > len) return fail(ErrorCode::Unreachable, i);
        break;
      }
      case Architecture::RRR: {
        const Vec2 w = leg.c - leg.a;
        const double dist = w.norm();
        if (dist <= 0.0 || dist > 2.0 * len * (1.0 + 1e-12)) return fail(ErrorCode::Unreachable, i);
        const double h = std::sqrt(std::max(0.0, len * len - 0.25 * dist * dist));
        const double side = mode[i] == Branch::Plus ? 1.0 : -1.0;
        leg.b = leg.a + 0.5 * w + side * h * perp(w / dist);
        const double proximal = heading(leg.b - leg.a);
        const double distal = heading(leg.c - leg.b);
        leg.actuated = proximal;
        leg.passive = {wrap_angle(distal - proximal), wrap_angle(heading(arm) - distal)};
        break;
      }
    }
  }
  out.ok = true;
  return out;
}

LegSolutions inverse_kinematics(const ValidatedDesign& design, const Pose& pose, const WorkingMode& mode) {
  const AnchorLayout layout = anchor_layout(design.value());
  IkOutcome out = try_inverse_kinematics(design.value(), layout, pose, mode);
  if (!out.ok) {
    const char* what = out.error == ErrorCode::ModeViolation ? "branch root outside joint limits"
                                                             : "pose unreachable";
    throw Error(out.error, std::string(what) + " (leg " + std::to_string(out.failed_leg + 1) + ")", {},
                out.failed_leg);
  }
  return out.legs;
}

Eigen::Vector3d actuated_coordinates(const LegSolutions& legs) {
  return {legs[0].actuated, legs[1].actuated, legs[2].actuated};
}

Eigen::Vector3d closure_residuals(const DesignVector& design, const AnchorLayout& layout,
                                  const Eigen::Vector3d& actuated, const Pose& pose) {
  Eigen::Vector3d res;
  for (int i = 0; i < 3; ++i) {
    const Vec2 c = layout.platform_point(pose, i);
    const Vec2& a = layout.base[i];
    switch (design.architecture) {
      case Architecture::PRR:
        res[i] = (c - (a + actuated[i] * layout.rail[i])).norm() - design.link_length;
        break;
      case Architecture::RPR:
        res[i] = (c - a).norm() - actuated[i];
        break;
      case Architecture::RRR: {
        const Vec2 b = a + polar(design.link_length, actuated[i]);
        res[i] = (c - b).norm() - design.link_length;
        break;
      }
    }
  }
  return res;
}

Pose forward_refine(const ValidatedDesign& design, const Eigen::Vector3d& actuated, const Pose& guess) {
  const DesignVector& d = design.value();
  const AnchorLayout layout = anchor_layout(d);
  const double scale = d.base_radius + d.platform_radius + d.link_length;
  Eigen::Vector3d x(guess.x, guess.y, guess.phi);

  for (int iter = 0; iter < 50; ++iter) {
    const Pose pose(x[0], x[1], x[2]);
    const Eigen::Vector3d res = closure_residuals(d, layout, actuated, pose);
    if (res.cwiseAbs().maxCoeff() <= 1e-10) return pose;

    // d(residual_i)/d(pose) = [n_i^T, c_i x n_i], n_i the unit leg direction.
    Eigen::Matrix3d grad;
    const Vec2 p = pose.position();
    for (int i = 0; i < 3; ++i) {
      const Vec2 c = layout.platform_point(pose, i);
      const Vec2& a = layout.base[i];
      Vec2 from;
      switch (d.architecture) {
        case Architecture::PRR: from = a + actuated[i] * layout.rail[i]; break;
        case Architecture::RPR: from = a; break;
        case Architecture::RRR: from = a + polar(d.link_length, actuated[i]); break;
      }
      const Vec2 diff = c - from;
      const double norm = diff.norm();
      if (norm <= 0.0) throw Error(ErrorCode::NoConvergence, "degenerate leg during refinement", {}, i);
      const Vec2 n = diff / norm;
      grad.row(i) << n.x(), n.y(), cross2(c - p, n);
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(grad);
    if (std::abs(grad.determinant()) < 1e-12 * scale * scale || lu.rank() < 3)
      throw Error(ErrorCode::NoConvergence, "singular closure Jacobian during refinement");
    x -= lu.solve(res);
    if (!x.allFinite()) throw Error(ErrorCode::NoConvergence, "refinement diverged");
  }
  throw Error(ErrorCode::NoConvergence, "forward refinement did not converge in 50 iterations");
}

JacobianPair jacobian(const DesignVector& design, const AnchorLayout& layout, const Pose& pose,
                      const LegSolutions& legs) {
  JacobianPair jp;
  jp.parallel.setZero();
  jp.serial.setZero();
  const Vec2 p = pose.position();
  for (int i = 0; i < 3; ++i) {
    const LegSolution& leg = legs[i];
    const Vec2 arm = leg.c - p;
    Vec2 n;
    double serial = 1.0;
    switch (design.architecture) {
      case Architecture::PRR:
        n = (leg.c - leg.b) / design.link_length;
        serial = n.dot(layout.rail[i]);
        break;
      case Architecture::RPR:
        n = (leg.c - leg.a) / leg.actuated;
        break;
      case Architecture::RRR:
        n = (leg.c - leg.b) / design.link_length;
        serial = cross2(leg.b - leg.a, n);
        break;
    }
    jp.parallel.row(i) << n.x(), n.y(), cross2(arm, n);
    jp.serial(i, i) = serial;
  }
  return jp;
}

JacobianPair jacobian(const ValidatedDesign& design, const Pose& pose, const LegSolutions& legs) {
  return jacobian(design.value(), anchor_layout(design.value()), pose, legs);
}

}  // namespace ppm
