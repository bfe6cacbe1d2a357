#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covbvp/fourier.hpp"

#include <cmath>

using namespace covbvp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("nodes and first interpolation row at N=1") {
  FourierOps ops = fourier_ops(1);
  CHECK(ops.size == 3);
  CHECK(ops.nodes[0] == doctest::Approx(0.0));
  CHECK(ops.nodes[1] == doctest::Approx(1.0 / 3.0));
  CHECK(ops.nodes[2] == doctest::Approx(2.0 / 3.0));
  // F_inv row 1 = B(0) = (1, 1, 0)
  CHECK(ops.F_inv(0, 0) == doctest::Approx(1.0));
  CHECK(ops.F_inv(0, 1) == doctest::Approx(1.0));
  CHECK(ops.F_inv(0, 2) == doctest::Approx(0.0));
}

TEST_CASE("rotation matrix blocks") {
  FourierOps ops = fourier_ops(1);
  MatrixXd R = ops.R(0.25);
  CHECK(R(0, 0) == doctest::Approx(1.0));
  CHECK(R(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(R(1, 2) == doctest::Approx(1.0));
  CHECK(R(2, 1) == doctest::Approx(-1.0));
  CHECK(R(2, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK((ops.R(0.0) - MatrixXd::Identity(3, 3)).norm() < 1e-14);
  CHECK((ops.R(0.31) * ops.R(-0.31) - MatrixXd::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("transform identities") {
  for (int N : {1, 2, 5}) {
    FourierOps ops = fourier_ops(N);
    int m = ops.size;
    CHECK((ops.F_mat * ops.F_inv - MatrixXd::Identity(m, m)).norm() < 1e-12);
    VectorXd diag(m);
    diag[0] = 1.0;
    for (int k = 1; k < m; ++k) diag[k] = 0.5;
    MatrixXd lhs = ops.F_mat.transpose() * diag.asDiagonal() * ops.F_mat;
    CHECK((lhs - MatrixXd::Identity(m, m) / m).norm() < 1e-13);
  }
}

TEST_CASE("spectral derivative across nodes") {
  FourierOps ops = fourier_ops(4);
  MatrixXd field(ops.size, 1), expect(ops.size, 1);
  for (int j = 0; j < ops.size; ++j) {
    field(j, 0) = std::sin(2.0 * M_PI * ops.nodes[j]);
    expect(j, 0) = 2.0 * M_PI * std::cos(2.0 * M_PI * ops.nodes[j]);
  }
  CHECK((derivative_along_phi(ops, field) - expect).norm() < 1e-12);

  // constant field
  MatrixXd ones = MatrixXd::Ones(ops.size, 1);
  CHECK(derivative_along_phi(ops, ones).norm() < 1e-12);

  // highest mode cos(2 pi N phi)
  int N = 4;
  for (int j = 0; j < ops.size; ++j) {
    field(j, 0) = std::cos(2.0 * M_PI * N * ops.nodes[j]);
    expect(j, 0) = -2.0 * M_PI * N * std::sin(2.0 * M_PI * N * ops.nodes[j]);
  }
  CHECK((derivative_along_phi(ops, field) - expect).norm() < 1e-10);
}

TEST_CASE("node shift resamples band-limited fields exactly") {
  FourierOps ops = fourier_ops(3);
  double rho = 0.137;
  MatrixXd field(ops.size, 2), expect(ops.size, 2);
  auto fn = [](double phi, int c) {
    return c == 0 ? std::sin(2.0 * M_PI * phi) + 0.3
                  : std::cos(4.0 * M_PI * phi) - std::sin(6.0 * M_PI * phi);
  };
  for (int j = 0; j < ops.size; ++j)
    for (int c = 0; c < 2; ++c) {
      field(j, c) = fn(ops.nodes[j], c);
      expect(j, c) = fn(ops.nodes[j] + rho, c);
    }
  CHECK((shift_along_phi(ops, field, rho) - expect).norm() < 1e-12);
  // interp_row reproduces node values
  for (int j = 0; j < ops.size; ++j) {
    Eigen::RowVectorXd r = ops.interp_row(ops.nodes[j]);
    CHECK((r * field - field.row(j)).norm() < 1e-12);
  }
}
