#pragma once

#include "covbvp/mesh.hpp"
#include "covbvp/model.hpp"

#include <complex>
#include <stdexcept>

namespace covbvp {

struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fundamental solution X of the variational problem dX/dt = T Df(gamma) X,
/// X(0) = I, stored on the same mesh layout as the orbit.
struct FundamentalSolution {
  MatTrajectory X;
  int n() const { return X.rows(); }
  Eigen::MatrixXd value(double t) const { return X.value(t); }
  Eigen::MatrixXd inverse(double t) const {
    return X.value(t).partialPivLu().inverse();
  }
  /// lambda(t) = X^{-T}(t) w without forming the inverse.
  Eigen::VectorXd inv_transpose_apply(double t, const Eigen::VectorXd& w) const {
    return X.value(t).transpose().partialPivLu().solve(w);
  }
};

/// Spectrum of the monodromy matrix X(1) and derived stability data.
struct MonodromyInfo {
  Eigen::MatrixXd matrix;
  Eigen::VectorXcd eigenvalues;  // sorted by descending modulus
  Eigen::MatrixXcd eigenvectors; // columns matching eigenvalues
  int trivial_index = -1;        // autonomous only, else -1
  double contraction_rate = 0.0; // -1/ln(second-largest modulus)
  double spectral_radius_transversal = 0.0;
  bool transversally_stable = false;
};

/// Fixed-step classical RK4 with cubic-Hermite dense output per step.
Trajectory integrate_orbit(const Problem& problem, const Eigen::VectorXd& x0,
                           double T, double t_end, int steps);

/// Matrix variational equation along an orbit, same RK4 stepper; the orbit
/// is evaluated from its stored interpolant at the RK4 stage points.
FundamentalSolution fundamental_solution(const Problem& problem,
                                         const Trajectory& orbit, double T,
                                         int steps = 0);

/// Eigen-decomposition of X(1). For autonomous problems verifies that
/// f(gamma(0)) is a right nullvector of X(1) - I and selects the trivial
/// Floquet multiplier nearest 1.
MonodromyInfo monodromy(const FundamentalSolution& X, const Problem& problem,
                        const Trajectory& orbit);

} // namespace covbvp
