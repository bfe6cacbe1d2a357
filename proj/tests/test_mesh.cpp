#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covbvp/mesh.hpp"

#include <cmath>

using namespace covbvp;

TEST_CASE("gauss legendre integrates polynomials exactly") {
  for (int npts : {1, 2, 3, 4, 5, 7}) {
    auto r = gauss_legendre(npts);
    for (int p = 0; p <= 2 * npts - 1; ++p) {
      double s = 0.0;
      for (int q = 0; q < npts; ++q) s += r.weights[q] * std::pow(r.nodes[q], p);
      CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lagrange basis reproduces nodes and derivatives") {
  LagrangeBasis basis(4);
  for (int j = 0; j <= 4; ++j) {
    auto row = basis.eval_row(basis.nodes[j]);
    for (int k = 0; k <= 4; ++k) CHECK(row[k] == doctest::Approx(j == k ? 1.0 : 0.0));
  }
  Eigen::VectorXd vals(5);
  for (int j = 0; j <= 4; ++j) vals[j] = std::pow(basis.nodes[j], 3);
  double d = basis.deriv_row(0.3).dot(vals);
  CHECK(d == doctest::Approx(3.0 * 0.09).epsilon(1e-12));
}

TEST_CASE("piecewise poly evaluates smooth samples") {
  int M = 32, d = 4;
  PiecewisePoly p(1, M, d, 2.0);
  for (int i = 0; i < M; ++i)
    for (int q = 0; q <= d; ++q) {
      double t = 2.0 * (i + double(q) / d) / M;
      p.block(i)(0, q) = std::sin(t);
    }
  CHECK(p.junction_defect() == 0.0);
  for (double t : {0.0, 0.123, 0.77, 1.5, 2.0}) {
    CHECK(p.value(t)[0] == doctest::Approx(std::sin(t)).epsilon(1e-9));
    CHECK(p.derivative(t)[0] == doctest::Approx(std::cos(t)).epsilon(1e-6));
  }
}

TEST_CASE("matrix trajectory round trip") {
  MatTrajectory m(2, 2, 4, 3, 1.0);
  Eigen::Matrix2d a;
  a << 1, 2, 3, 4;
  m.set_node(1, 2, a);
  CHECK((m.node(1, 2) - a).norm() == 0.0);
}
