#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covbvp/model.hpp"
#include "covbvp/oracles.hpp"

#include <cmath>

using namespace covbvp;
using Eigen::Matrix2d;
using Eigen::Vector2d;

namespace {
// Symmetric finite difference in t with step 1e-6.
template <typename Fn>
auto fd(Fn&& fn, double t) {
  const double h = 1e-6;
  return ((fn(t + h) - fn(t - h)) / (2.0 * h)).eval();
}
} // namespace

TEST_CASE("hopf reference frozen values") {
  auto r0 = oracles::hopf_reference(0.0);
  CHECK(r0.eig == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(r0.lambda[0] == doctest::Approx(0.0));
  CHECK(r0.lambda[1] == doctest::Approx(1.0));
  auto rq = oracles::hopf_reference(0.25);
  CHECK(rq.eig == doctest::Approx(0.225).epsilon(1e-14));
  CHECK(rq.lambda[0] == doctest::Approx(-1.0));
  CHECK(rq.lambda[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hopf reference satisfies its defining equations") {
  Problem p = build_problem(builtin("hopf"));
  const double T = 2.0 * M_PI;
  for (double t : {0.05, 0.3, 0.62, 0.9}) {
    auto r = oracles::hopf_reference(t);
    // dgamma/dt = T f(gamma)
    Vector2d dg = fd([](double s) { return oracles::hopf_reference(s).gamma; }, t);
    CHECK((dg - T * p.f(t, r.gamma)).norm() < 1e-6);
    // dX/dt = T Df(gamma) X
    Matrix2d dX = fd([](double s) { return oracles::hopf_reference(s).X; }, t);
    CHECK((dX - T * p.Df(t, r.gamma) * r.X).norm() < 1e-5);
    // X(0) = I
    CHECK((oracles::hopf_reference(0.0).X - Matrix2d::Identity()).norm() < 1e-14);
    // lambda = X^{-T} w with w = (0,1)
    Vector2d w(0.0, 1.0);
    CHECK((r.X.transpose() * r.lambda - w).norm() < 1e-12);
    // C = eig * Q and lambda^T C lambda = 0
    CHECK(std::abs(r.lambda.dot(r.C * r.lambda)) < 1e-12);
  }
}

TEST_CASE("linosc reference frozen values") {
  auto r0 = oracles::linosc_reference(0.0);
  Matrix2d C0;
  C0 << 5.0, -1.0, -1.0, 1.0;
  C0 /= 32.0;
  CHECK((r0.C - C0).norm() < 1e-14);
  CHECK(r0.eig_hi == doctest::Approx((3.0 + std::sqrt(5.0)) / 32.0).epsilon(1e-12));
  CHECK(r0.eig_lo == doctest::Approx((3.0 - std::sqrt(5.0)) / 32.0).epsilon(1e-12));
  CHECK(r0.eig_hi == doctest::Approx(0.163634).epsilon(1e-5));
  CHECK(r0.eig_lo == doctest::Approx(0.023866).epsilon(1e-4));
  // trace at t = 1/8
  auto r8 = oracles::linosc_reference(0.125);
  CHECK(r8.C.trace() == doctest::Approx(0.1875).epsilon(1e-12));
}

TEST_CASE("linosc reference satisfies its defining equations") {
  Problem p = build_problem(builtin("linosc"));
  const double T = 2.0 * M_PI;
  for (double t : {0.1, 0.47, 0.83}) {
    auto r = oracles::linosc_reference(t);
    Vector2d dg = fd([](double s) { return oracles::linosc_reference(s).gamma; }, t);
    CHECK((dg - T * p.f(t, r.gamma)).norm() < 1e-6);
    Matrix2d dX = fd([](double s) { return oracles::linosc_reference(s).X; }, t);
    CHECK((dX - T * p.Df(t, r.gamma) * r.X).norm() < 1e-5);
    // eigenvalue curves match C(t)
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(r.C);
    CHECK(es.eigenvalues()[1] == doctest::Approx(r.eig_hi).epsilon(1e-12));
    CHECK(es.eigenvalues()[0] == doctest::Approx(r.eig_lo).epsilon(1e-12));
  }
}

TEST_CASE("qp1 reference frozen values") {
  const double Omega = M_PI, omega = 1.0;
  auto r = oracles::qp1_reference(0.0, 0.0, Omega, omega);
  CHECK(r.gamma[0] == doctest::Approx(2.0));
  CHECK(r.gamma[1] == doctest::Approx(0.0));
  CHECK(r.C0(0, 0) == doctest::Approx(4.0 * M_PI * M_PI / (1.0 + M_PI * M_PI)).epsilon(1e-12));
  CHECK(std::abs(r.C0(0, 1)) < 1e-14);
  CHECK(std::abs(r.C0(1, 1)) < 1e-14);
  CHECK(r.Q(0, 0) == doctest::Approx(1.0));
  CHECK(r.Q(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("qp1 reference satisfies its defining equations") {
  Problem p = build_problem(builtin("qp_radial"));
  const double Omega = M_PI, omega = 1.0;
  const double T = 2.0 * M_PI / omega;
  for (double phi : {0.0, 0.21, 0.64}) {
    for (double t : {0.13, 0.55, 0.92}) {
      auto r = oracles::qp1_reference(phi, t, Omega, omega);
      Vector2d dg = fd(
          [&](double s) { return oracles::qp1_reference(phi, s, Omega, omega).gamma; }, t);
      CHECK((dg - T * p.f(t, r.gamma)).norm() < 2e-5);
      Matrix2d dX = fd(
          [&](double s) { return oracles::qp1_reference(phi, s, Omega, omega).X; }, t);
      CHECK((dX - T * p.Df(t, r.gamma) * r.X).norm() < 2e-5);
      // X(phi, 0) = I
      CHECK((oracles::qp1_reference(phi, 0.0, Omega, omega).X - Matrix2d::Identity())
                .norm() < 1e-13);
    }
    // w_phi^T dgamma/dphi (phi, 0) = 1
    auto r0 = oracles::qp1_reference(phi, 0.0, Omega, omega);
    Vector2d dgphi = fd(
        [&](double s) { return oracles::qp1_reference(s, 0.0, Omega, omega).gamma; }, phi);
    CHECK(r0.w_phi.dot(dgphi) == doctest::Approx(1.0).epsilon(1e-8));
    // quasiperiodic boundary relation for w_phi
    double rho = Omega / omega;
    auto r1 = oracles::qp1_reference(phi, 1.0, Omega, omega);
    auto rs = oracles::qp1_reference(phi + rho, 0.0, Omega, omega);
    CHECK((r1.X.transpose().inverse() * r0.w_phi - rs.w_phi).norm() < 1e-10);
  }
}
