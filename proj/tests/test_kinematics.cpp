#include <doctest.h>

#include "ppm/kinematics.hpp"
#include "test_support.hpp"

using namespace ppm;
using ppm::testing::random_sample;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(0.25 + 4 * pi) == doctest::Approx(0.25));
}

TEST_CASE("anchor layout is an equilateral pair of triangles") {
  const DesignVector d{Architecture::PRR, 2.0, 0.7, 1.0, 0.02, 0.02};
  const AnchorLayout l = anchor_layout(d);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    CHECK(l.base[i].norm() == doctest::Approx(2.0));
    CHECK(l.platform[i].norm() == doctest::Approx(0.7));
    CHECK((l.base[j] - l.base[i]).norm() == doctest::Approx(std::sqrt(3.0) * 2.0));
    CHECK(l.rail[i].norm() == doctest::Approx(1.0));
    CHECK(l.rail[i].dot((l.base[j] - l.base[i]).normalized()) == doctest::Approx(1.0));
  }
  CHECK(l.rail_length == doctest::Approx(std::sqrt(3.0) * 2.0));
}

TEST_CASE("inverse kinematics closes every loop") {
  std::mt19937_64 rng(11);
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 200; ++n) {
      const auto s = random_sample(rng, arch, 0.0);
      const Eigen::Vector3d q = actuated_coordinates(s.legs);
      CHECK(closure_residuals(s.design, s.layout, q, s.pose).norm() < 1e-9);
      for (int i = 0; i < 3; ++i) {
        const LegSolution& leg = s.legs[i];
        CHECK((leg.c - s.layout.platform_point(s.pose, i)).norm() < 1e-12);
        if (arch == Architecture::RRR) {
          CHECK((leg.b - leg.a).norm() == doctest::Approx(s.design.link_length));
          CHECK((leg.c - leg.b).norm() == doctest::Approx(s.design.link_length));
        }
        if (arch == Architecture::PRR) CHECK((leg.c - leg.b).norm() == doctest::Approx(s.design.link_length));
      }
    }
  }
}

TEST_CASE("PRR and RRR branches give distinct solutions") {
  const DesignVector d{Architecture::RRR, 2.0, 0.7, 1.0, 0.02, 0.02};
  const AnchorLayout l = anchor_layout(d);
  const Pose p{0.1, -0.05, 0.2};
  const IkOutcome plus = try_inverse_kinematics(d, l, p, {Branch::Plus, Branch::Plus, Branch::Plus});
  const IkOutcome minus = try_inverse_kinematics(d, l, p, {Branch::Minus, Branch::Minus, Branch::Minus});
  REQUIRE(plus.ok);
  REQUIRE(minus.ok);
  for (int i = 0; i < 3; ++i) {
    const Vec2 ac = plus.legs[i].c - plus.legs[i].a;
    CHECK(cross2(ac, plus.legs[i].b - plus.legs[i].a) > 0.0);
    CHECK(cross2(ac, minus.legs[i].b - minus.legs[i].a) < 0.0);
  }
}

TEST_CASE("unreachable poses are reported per leg") {
  const DesignVector d{Architecture::RRR, 2.0, 0.7, 0.5, 0.02, 0.02};
  const ValidatedDesign v = validate(d, Bounds{});
  try {
    inverse_kinematics(v, Pose{0.0, 0.0, 0.0});
    FAIL("expected Unreachable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unreachable);
    CHECK(e.leg() >= 0);
  }
  const DesignVector rpr{Architecture::RPR, 2.0, 0.7, 0.5, 0.02, 0.02};
  const IkOutcome out = try_inverse_kinematics(rpr, anchor_layout(rpr), Pose{0.0, 0.0, 0.0});
  CHECK_FALSE(out.ok);
  CHECK(out.error == ErrorCode::Unreachable);
}

TEST_CASE("forward refinement recovers the pose") {
  std::mt19937_64 rng(5);
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 100; ++n) {
      const auto s = random_sample(rng, arch);
      const ValidatedDesign v = validate(s.design, Bounds{});
      const Pose guess{s.pose.x + 1e-3, s.pose.y - 1e-3, s.pose.phi + 1e-3};
      const Pose fk = forward_refine(v, actuated_coordinates(s.legs), guess);
      CHECK(std::abs(fk.x - s.pose.x) < 1e-8);
      CHECK(std::abs(fk.y - s.pose.y) < 1e-8);
      CHECK(std::abs(wrap_angle(fk.phi - s.pose.phi)) < 1e-8);
    }
  }
}

TEST_CASE("velocity equation matches finite differences of the inverse kinematics") {
  std::mt19937_64 rng(17);
  const double h = 1e-6;
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 50; ++n) {
      const auto s = random_sample(rng, arch);
      WorkingMode mode{};
      for (int i = 0; i < 3; ++i) mode[i] = s.legs[i].branch;
      Eigen::Matrix3d fd;
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d dp = Eigen::Vector3d::Zero();
        dp[k] = h;
        const Pose up{s.pose.x + dp[0], s.pose.y + dp[1], s.pose.phi + dp[2]};
        const Pose down{s.pose.x - dp[0], s.pose.y - dp[1], s.pose.phi - dp[2]};
        const IkOutcome a = try_inverse_kinematics(s.design, s.layout, up, mode);
        const IkOutcome b = try_inverse_kinematics(s.design, s.layout, down, mode);
        REQUIRE(a.ok);
        REQUIRE(b.ok);
        Eigen::Vector3d dq = actuated_coordinates(a.legs) - actuated_coordinates(b.legs);
        if (arch == Architecture::RRR)
          for (int i = 0; i < 3; ++i) dq[i] = wrap_angle(dq[i]);
        fd.col(k) = dq / (2 * h);
      }
      const JacobianPair jp = jacobian(s.design, s.layout, s.pose, s.legs);
      const Eigen::Matrix3d analytic = jp.serial.inverse() * jp.parallel;
      CHECK(ppm::testing::relative_error(fd, analytic) < 1e-6);
    }
  }
}
