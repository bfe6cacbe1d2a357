#pragma once

#include <Eigen/Dense>

namespace covbvp::oracles {

/// Closed forms for the planar Hopf normal-form limit cycle.
struct HopfRef {
  Eigen::Vector2d gamma;
  Eigen::Vector2d f_gamma;
  Eigen::Matrix2d X;
  Eigen::Vector2d lambda;
  Eigen::Matrix2d Q;
  Eigen::Matrix2d C;
  double eig;            // nonzero covariance eigenvalue
  Eigen::Vector2d evec;  // its eigenvector
};
HopfRef hopf_reference(double t);

/// Closed forms for the harmonically excited damped linear oscillator.
struct LinoscRef {
  Eigen::Vector2d gamma;
  Eigen::Vector2d f_gamma;
  Eigen::Matrix2d X;
  Eigen::Matrix2d C;
  double eig_hi, eig_lo;
};
LinoscRef linosc_reference(double t);

/// Closed forms for the non-autonomous quasiperiodic torus example.
struct Qp1Ref {
  Eigen::Vector2d gamma;
  Eigen::Matrix2d X;
  Eigen::Vector2d w_phi;
  Eigen::Matrix2d Q;
  Eigen::Matrix2d C0; // C(phi, 0)
};
Qp1Ref qp1_reference(double phi, double t, double Omega, double omega);

} // namespace covbvp::oracles
