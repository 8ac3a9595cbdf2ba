#include <doctest.h>

#include "ppm/stiffness.hpp"
#include "test_support.hpp"

using namespace ppm;
using ppm::testing::displacement;
using ppm::testing::random_sample;
using ppm::testing::relative_error;

namespace {

LegSpringModel model_of(const ppm::testing::Sample& s, int leg) {
  return leg_spring_model(s.design, s.layout, s.pose, s.legs[leg], leg, StiffnessParams{});
}

}  // namespace

TEST_CASE("cantilever tip compliance") {
  const Material m{};
  for (double length : {0.1, 1.0, 4.0}) {
    for (double radius : {0.01, 0.05, 0.1}) {
      const double pi = std::numbers::pi;
      const double area = pi * radius * radius;
      const double inertia = pi * std::pow(radius, 4) / 4.0;
      const Matrix6 c = beam_compliance(length, radius, m).matrix;
      const double bend = std::pow(length, 3) / (3.0 * m.young_modulus * inertia);
      CHECK(c(0, 0) == doctest::Approx(length / (m.young_modulus * area)).epsilon(1e-12));
      CHECK(c(1, 1) == doctest::Approx(bend).epsilon(1e-12));
      CHECK(c(2, 2) == doctest::Approx(bend).epsilon(1e-12));
      CHECK(c(3, 3) == doctest::Approx(length / (m.shear_modulus * 2.0 * inertia)).epsilon(1e-12));
      CHECK(c(4, 4) == doctest::Approx(length / (m.young_modulus * inertia)).epsilon(1e-12));
      CHECK((c - c.transpose()).norm() == 0.0);
      // Tip force along y bends the tip about +z, force along z about -y.
      CHECK(c(5, 1) > 0.0);
      CHECK(c(4, 2) < 0.0);
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix6>(c).eigenvalues().minCoeff() > 0.0);
    }
  }
  CHECK_THROWS_AS(beam_compliance(0.0, 0.01, m), Error);
  CHECK_THROWS_AS(beam_compliance(1.0, -0.01, m), Error);
}

TEST_CASE("spring and passive Jacobians match finite differences of the chain") {
  std::mt19937_64 rng(23);
  const double h = 1e-6;
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 30; ++n) {
      const auto s = random_sample(rng, arch);
      const int leg = n % 3;
      const LegSpringModel model = model_of(s, leg);
      const LegChain& chain = model.chain;
      const int nt = chain.spring_coordinates();
      const int nq = chain.passive_coordinates();
      REQUIRE(nq == 2);
      REQUIRE(model.spring_jacobian.cols() == nt);
      const Eigen::VectorXd t0 = Eigen::VectorXd::Zero(nt);
      const Eigen::VectorXd q0 = Eigen::VectorXd::Zero(nq);

      Eigen::MatrixXd fd_theta(6, nt);
      for (int j = 0; j < nt; ++j) {
        Eigen::VectorXd up = t0, down = t0;
        up[j] += h;
        down[j] -= h;
        fd_theta.col(j) = displacement(chain.end_transform(down, q0), chain.end_transform(up, q0)) / (2 * h);
      }
      Eigen::MatrixXd fd_q(6, nq);
      for (int j = 0; j < nq; ++j) {
        Eigen::VectorXd up = q0, down = q0;
        up[j] += h;
        down[j] -= h;
        fd_q.col(j) = displacement(chain.end_transform(t0, down), chain.end_transform(t0, up)) / (2 * h);
      }
      CHECK(relative_error(fd_theta, model.spring_jacobian) < 1e-6);
      CHECK(relative_error(fd_q, model.passive_jacobian) < 1e-6);

      // The undeflected chain ends at the platform center.
      const Eigen::Isometry3d end = chain.end_transform(t0, q0);
      CHECK(std::abs(end.translation().x() - s.pose.x) < 1e-10);
      CHECK(std::abs(end.translation().y() - s.pose.y) < 1e-10);
    }
  }
}

TEST_CASE("leg stiffness is symmetric, rank four and blind to passive motion") {
  std::mt19937_64 rng(29);
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 30; ++n) {
      const auto s = random_sample(rng, arch);
      const LegSpringModel model = model_of(s, n % 3);
      const Matrix6 k = leg_cartesian_stiffness(model).matrix;
      CHECK((k - k.transpose()).norm() <= 1e-10 * k.norm());
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix6>(0.5 * (k + k.transpose())).eigenvalues();
      CHECK(ev.minCoeff() >= -1e-9 * ev.maxCoeff());
      int rank = 0;
      for (int i = 0; i < 6; ++i) rank += ev[i] > 1e-9 * ev.maxCoeff();
      CHECK(rank <= 4);
      CHECK((k * model.passive_jacobian).norm() <= 1e-8 * k.norm());
    }
  }
}

TEST_CASE("with rigid links an RPR leg is as stiff as its actuator along the leg") {
  std::mt19937_64 rng(31);
  const auto s = random_sample(rng, Architecture::RPR);
  LegSpringModel model = model_of(s, 0);
  int offset = 0;
  for (std::size_t b = 0; b < model.block_sizes.size(); ++b) {
    if (model.block_sizes[b] == 6) model.spring_compliance.block(offset, offset, 6, 6) *= 1e-9;
    offset += model.block_sizes[b];
  }
  const Matrix6 k = leg_cartesian_stiffness(model).matrix;
  const Vec2 n = (s.legs[0].c - s.legs[0].a).normalized();
  Vector6 dir = Vector6::Zero();
  dir[0] = n.x();
  dir[1] = n.y();
  CHECK(dir.dot(k * dir) == doctest::Approx(ActuatorStiffness{}.prismatic).epsilon(1e-5));
}

TEST_CASE("platform stiffness is positive definite and three-fold symmetric") {
  std::mt19937_64 rng(37);
  for (Architecture arch : kAllArchitectures) {
    for (int n = 0; n < 20; ++n) {
      const auto s = random_sample(rng, arch);
      WorkingMode mode{};
      for (int i = 0; i < 3; ++i) mode[i] = s.legs[i].branch;
      if (!(mode[0] == mode[1] && mode[1] == mode[2])) continue;
      const ValidatedDesign v = validate(s.design, Bounds{});
      const Matrix6 k = platform_stiffness(v, s.pose, StiffnessParams{}, mode).matrix;
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix6>(k).eigenvalues().minCoeff() > 0.0);

      // Turning the whole mechanism by 120 deg about O relabels the legs and the
      // platform anchors, so the platform angle is unchanged.
      const double a = 2.0 * std::numbers::pi / 3.0;
      const Pose turned{std::cos(a) * s.pose.x - std::sin(a) * s.pose.y,
                        std::sin(a) * s.pose.x + std::cos(a) * s.pose.y, s.pose.phi};
      const StiffnessIndices i0 = stiffness_indices(StiffnessMatrix6{k});
      const StiffnessIndices i1 = stiffness_indices(platform_stiffness(v, turned, StiffnessParams{}, mode));
      CHECK(i1.k_xy_min == doctest::Approx(i0.k_xy_min).epsilon(1e-8));
      CHECK(i1.k_z_min == doctest::Approx(i0.k_z_min).epsilon(1e-8));
      CHECK(i1.k_phiz_min == doctest::Approx(i0.k_phiz_min).epsilon(1e-8));
    }
  }
}

TEST_CASE("stiffness indices of a diagonal matrix") {
  StiffnessMatrix6 k;
  k.matrix.diagonal() << 3.0, 5.0, 7.0, 11.0, 13.0, 17.0;
  const StiffnessIndices idx = stiffness_indices(k);
  CHECK(idx.k_xy_min == doctest::Approx(3.0));
  CHECK(idx.k_z_min == doctest::Approx(7.0));
  CHECK(idx.k_phiz_min == doctest::Approx(17.0));
  CHECK_THROWS_AS(stiffness_indices(StiffnessMatrix6{}), Error);
}
