#include "covbvp/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace covbvp {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

FourierOps fourier_ops(int N) {
  if (N < 1) throw std::invalid_argument("fourier_ops: N must be >= 1");
  FourierOps ops;
  ops.N = N;
  ops.size = 2 * N + 1;
  ops.nodes.resize(ops.size);
  for (int j = 0; j < ops.size; ++j) ops.nodes[j] = double(j) / ops.size;

  ops.F_inv.resize(ops.size, ops.size);
  for (int j = 0; j < ops.size; ++j) ops.F_inv.row(j) = ops.B(ops.nodes[j]);
  ops.F_mat = ops.F_inv.inverse();

  ops.D = MatrixXd::Zero(ops.size, ops.size);
  for (int k = 1; k <= N; ++k) {
    ops.D(2 * k - 1, 2 * k) = 2.0 * M_PI * k;
    ops.D(2 * k, 2 * k - 1) = -2.0 * M_PI * k;
  }
  return ops;
}

RowVectorXd FourierOps::B(double phi) const {
  RowVectorXd row(size);
  row[0] = 1.0;
  for (int k = 1; k <= N; ++k) {
    row[2 * k - 1] = std::cos(2.0 * M_PI * k * phi);
    row[2 * k] = std::sin(2.0 * M_PI * k * phi);
  }
  return row;
}

MatrixXd FourierOps::R(double rho) const {
  MatrixXd out = MatrixXd::Zero(size, size);
  out(0, 0) = 1.0;
  for (int k = 1; k <= N; ++k) {
    double c = std::cos(2.0 * M_PI * k * rho), s = std::sin(2.0 * M_PI * k * rho);
    out(2 * k - 1, 2 * k - 1) = c;
    out(2 * k - 1, 2 * k) = s;
    out(2 * k, 2 * k - 1) = -s;
    out(2 * k, 2 * k) = c;
  }
  return out;
}

MatrixXd derivative_along_phi(const FourierOps& ops, const MatrixXd& field) {
  if (field.rows() != ops.size)
    throw std::invalid_argument("derivative_along_phi: field must have 2N+1 rows");
  return ops.Dphi() * field;
}

MatrixXd shift_along_phi(const FourierOps& ops, const MatrixXd& field, double rho) {
  if (field.rows() != ops.size)
    throw std::invalid_argument("shift_along_phi: field must have 2N+1 rows");
  return ops.shift(rho) * field;
}

} // namespace covbvp
