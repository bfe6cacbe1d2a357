#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covbvp/flow.hpp"
#include "covbvp/oracles.hpp"

#include <cmath>

using namespace covbvp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {
Problem zero_field(int n) {
  ProblemSpec s;
  s.name = "zero";
  s.dim_state = n;
  s.dim_noise = 1;
  s.autonomous = true;
  s.drift = [](double, const VectorXd& x, const Params&) {
    return VectorXd::Zero(x.size()).eval();
  };
  s.diffusion = [](double, const VectorXd& x, const Params&) {
    return MatrixXd::Zero(x.size(), 1).eval();
  };
  return build_problem(s);
}
} // namespace

TEST_CASE("hopf orbit closes after one period") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 1.0, 0.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 1000);
  CHECK((traj.back() - x0).norm() < 1e-8);
  CHECK(traj.junction_defect() == 0.0);
}

TEST_CASE("zero field keeps the state constant") {
  Problem p = zero_field(3);
  VectorXd x0(3);
  x0 << 1.0, -2.0, 0.5;
  Trajectory traj = integrate_orbit(p, x0, 1.0, 1.0, 10);
  for (double t : {0.0, 0.3, 0.99}) CHECK((traj.value(t) - x0).norm() == 0.0);
}

TEST_CASE("hopf transient is attracted to the unit circle") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 2.0, 0.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 5.0, 5000);
  CHECK(traj.back().norm() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rk4 is fourth order on the hopf endpoint") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 1.0, 0.0;
  double e1 = (integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 100).back() - x0).norm();
  double e2 = (integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 200).back() - x0).norm();
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("hopf fundamental solution matches the closed form") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 1.0, 0.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 2000);
  FundamentalSolution X = fundamental_solution(p, traj, 2.0 * M_PI);
  CHECK((X.value(0.0) - MatrixXd::Identity(2, 2)).norm() == 0.0);
  for (double t : {0.2, 0.5, 0.85, 1.0}) {
    CHECK((X.value(t) - oracles::hopf_reference(t).X).norm() < 1e-8);
  }
  MonodromyInfo mono = monodromy(X, p, traj);
  CHECK(std::abs(mono.eigenvalues[0] - std::complex<double>(1.0, 0.0)) < 1e-8);
  CHECK(std::abs(std::abs(mono.eigenvalues[1]) - std::exp(-4.0 * M_PI)) < 1e-8);
  CHECK(mono.trivial_index == 0);
  CHECK(mono.transversally_stable);
  CHECK(mono.contraction_rate == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-6));
}

TEST_CASE("linosc fundamental solution and monodromy") {
  Problem p = build_problem(builtin("linosc"));
  VectorXd x0(2);
  x0 << 0.0, 1.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 2000);
  FundamentalSolution X = fundamental_solution(p, traj, 2.0 * M_PI);
  for (double t : {0.3, 0.75, 1.0})
    CHECK((X.value(t) - oracles::linosc_reference(t).X).norm() < 1e-8);
  MonodromyInfo mono = monodromy(X, p, traj);
  CHECK(mono.trivial_index == -1);
  CHECK(mono.spectral_radius_transversal ==
        doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-5));
}

TEST_CASE("zero jacobian gives identity fundamental solution") {
  Problem p = zero_field(2);
  VectorXd x0 = VectorXd::Zero(2);
  Trajectory traj = integrate_orbit(p, x0, 1.0, 1.0, 10);
  FundamentalSolution X = fundamental_solution(p, traj, 1.0);
  CHECK((X.value(0.77) - MatrixXd::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("identity monodromy is flagged as not transversally stable") {
  Problem p = zero_field(2);
  VectorXd x0 = VectorXd::Zero(2);
  Trajectory traj = integrate_orbit(p, x0, 1.0, 1.0, 10);
  FundamentalSolution X = fundamental_solution(p, traj, 1.0);
  MonodromyInfo mono = monodromy(X, p, traj);
  CHECK_FALSE(mono.transversally_stable);
}

TEST_CASE("cocycle property X(t+1) = X(t) X(1) for hopf") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 1.0, 0.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 2.0, 4000);
  FundamentalSolution X = fundamental_solution(p, traj, 2.0 * M_PI);
  MatrixXd X1 = X.value(1.0);
  for (double t : {0.25, 0.5, 0.9})
    CHECK((X.value(t + 1.0) - X.value(t) * X1).norm() < 1e-6);
}

TEST_CASE("tangent invariance X^{-1}(t) f(gamma(t)) = f(gamma(0)) for hopf") {
  Problem p = build_problem(builtin("hopf"));
  VectorXd x0(2);
  x0 << 1.0, 0.0;
  Trajectory traj = integrate_orbit(p, x0, 2.0 * M_PI, 1.0, 4000);
  FundamentalSolution X = fundamental_solution(p, traj, 2.0 * M_PI);
  VectorXd f0 = p.f(0.0, x0);
  for (double t : {0.3, 0.6, 0.95}) {
    VectorXd v = X.value(t).partialPivLu().solve(p.f(t, traj.value(t)));
    CHECK((v - f0).norm() < 1e-6);
  }
}

TEST_CASE("blow-up reports a non-finite state") {
  ProblemSpec s;
  s.name = "explode";
  s.dim_state = 1;
  s.dim_noise = 1;
  s.autonomous = true;
  s.drift = [](double, const VectorXd& x, const Params&) {
    return (x.array() * x.array()).matrix().eval();
  };
  s.diffusion = [](double, const VectorXd&, const Params&) {
    return MatrixXd::Zero(1, 1).eval();
  };
  Problem p = build_problem(s);
  VectorXd x0(1);
  x0 << 1.0;
  CHECK_THROWS_AS(integrate_orbit(p, x0, 1.0, 10.0, 50), NonFiniteState);
}
