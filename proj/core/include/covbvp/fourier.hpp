#pragma once

#include <Eigen/Dense>

namespace covbvp {

/// Fourier machinery on the 2N+1 nodes phi_j = (j-1)/(2N+1): transform
/// matrix F (node values -> coefficients of the basis
/// B(phi) = (1, cos 2*pi*phi, sin 2*pi*phi, ..., cos 2N*pi*phi, sin 2N*pi*phi)),
/// its inverse with rows B(phi_j), rotation R(rho) and differentiation D.
struct FourierOps {
  int N = 0;
  int size = 0; // 2N+1
  Eigen::VectorXd nodes;
  Eigen::MatrixXd F_mat;
  Eigen::MatrixXd F_inv;
  Eigen::MatrixXd D;

  /// Coefficient-space rotation by rho (block-diagonal plane rotations).
  Eigen::MatrixXd R(double rho) const;
  /// Basis row B(phi).
  Eigen::RowVectorXd B(double phi) const;
  /// Node-interpolation weights B(phi) * F_mat.
  Eigen::RowVectorXd interp_row(double phi) const { return B(phi) * F_mat; }
  /// Node-space shift: (S_rho v)_j = v interpolated at phi_j + rho.
  Eigen::MatrixXd shift(double rho) const { return F_inv * R(rho) * F_mat; }
  /// Node-space spectral derivative F^{-1} D F.
  Eigen::MatrixXd Dphi() const { return F_inv * D * F_mat; }
};

FourierOps fourier_ops(int N);

/// Spectral differentiation across nodes: rows of `field` hold per-node
/// values (any number of columns); returns the phi-derivative rows.
Eigen::MatrixXd derivative_along_phi(const FourierOps& ops, const Eigen::MatrixXd& field);

/// Resample per-node rows at shifted angles phi_j + rho.
Eigen::MatrixXd shift_along_phi(const FourierOps& ops, const Eigen::MatrixXd& field,
                                double rho);

} // namespace covbvp
