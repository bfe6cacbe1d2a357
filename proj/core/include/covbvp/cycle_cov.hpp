#pragma once

#include "covbvp/flow.hpp"
#include "covbvp/mesh.hpp"
#include "covbvp/model.hpp"

#include <optional>

namespace covbvp {

struct CycleOptions {
  int mesh_intervals = 20;
  int degree = 4;
  double newton_tol = 1e-10;
  int newton_max_iter = 20;
  int fine_steps = 4000; // RK4 steps for the stored orbit and X
  // Custom linear phase anchor h(x) = phase_normal . (x - phase_point);
  // empty vectors select the default hyperplane through the guess point
  // orthogonal to the guess vector field.
  Eigen::VectorXd phase_point;
  Eigen::VectorXd phase_normal;
};

/// Converged periodic orbit of dx/dt = T f(x) on [0, 1] together with its
/// fundamental solution and monodromy data. The phase anchor is the linear
/// condition h(x) = phase_normal . (x - phase_point) (autonomous only).
struct PeriodicOrbit {
  Trajectory orbit;
  double T = 0.0;
  bool autonomous = true;
  Eigen::VectorXd phase_point;
  Eigen::VectorXd phase_normal;
  FundamentalSolution X;
  MonodromyInfo mono;

  double phase_value(const Eigen::VectorXd& x) const {
    return phase_normal.dot(x - phase_point);
  }
};

/// Left adjoint data: w solves w^T (X(1) - I) = 0 with w^T f(gamma(0)) = 1;
/// lambda(t) = X^{-T}(t) w. For non-autonomous problems both are absent and
/// the projection family is the identity.
struct AdjointCycle {
  Eigen::VectorXd w;
  Trajectory lambda;
  bool identity = false;
};

struct ProjectionFamily {
  MatTrajectory Q;
  bool identity = false;
  Eigen::MatrixXd value(double t) const { return Q.value(t); }
};

/// Accumulated noise quadratures J(t) = int_0^t G G^T ds with
/// G(s) = X^{-1}(s) F(gamma(s)); I_total = J(1).
struct NoiseQuadrature {
  Eigen::MatrixXd I_total;
  MatTrajectory J; // cumulative integral sampled on the orbit mesh
  Eigen::MatrixXd partial(double t) const { return J.value(t); }
};

struct CovarianceCycle {
  MatTrajectory C; // empty until propagate_covariance
  Eigen::MatrixXd C0;
  double b = 0.0;            // w^T C(0) w level (autonomous)
  double a = 0.0;            // periodicity defect / T diagnostic
  int series_terms_used = 0;
  Eigen::MatrixXd I_cal;
  double lyapunov_discrepancy = 0.0;
  double periodicity_defect = 0.0;
};

/// Per-mesh-point symmetric eigen-decomposition of C(t), eigenvalues
/// descending and eigenvector signs fixed by continuity in t.
struct EigenCurves {
  Trajectory eigenvalues;  // n components
  MatTrajectory eigenvectors; // columns are eigenvectors
};

/// Newton on a Gauss-Legendre collocation discretization of the periodic
/// BVP, followed by a single-shooting polish with the fine RK4 integrator.
PeriodicOrbit solve_periodic_orbit(const Problem& problem, const Trajectory& guess,
                                   double T_guess, const CycleOptions& opts = {});

/// Left nullvector data of X(1) - I, normalized against f(gamma(0)).
Eigen::VectorXd adjoint_left_vector(const PeriodicOrbit& po, const Problem& problem);

/// lambda(t) = X^{-T}(t) w on the orbit mesh, with the three conditions of
/// the adjoint boundary-value problem verified to 1e-8.
AdjointCycle adjoint_function(const PeriodicOrbit& po, const Problem& problem,
                              const Eigen::VectorXd& w);
AdjointCycle identity_adjoint(const PeriodicOrbit& po);

/// Q(t) = I - f(gamma(t)) lambda^T(t), or the identity family.
ProjectionFamily projection_family(const PeriodicOrbit& po, const Problem& problem,
                                   const AdjointCycle& adj);

NoiseQuadrature noise_quadrature(const PeriodicOrbit& po, const Problem& problem);

/// Same quadrature along an arbitrary orbit/fundamental-solution pair
/// (used per torus segment as well).
NoiseQuadrature noise_quadrature_for(const Trajectory& orbit,
                                     const FundamentalSolution& X,
                                     const Problem& problem);

/// C(0) = T sum_{k>=1} Q(0) X(1)^k I X(1)^{k,T} Q(0)^T, truncated when the
/// added term drops below tol relative to the partial sum.
CovarianceCycle covariance_series(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                  const NoiseQuadrature& quad, const Problem& problem,
                                  double tol = 1e-12, int K_max = 0);

/// Bordered Kronecker/vectorization solve for C(0).
CovarianceCycle covariance_kronecker(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                     const NoiseQuadrature& quad, const Problem& problem,
                                     const AdjointCycle& adj);

/// Evaluates C(t) = X C0 X^T + T Q X J(t) X^T Q^T on the mesh and
/// cross-checks it against an RK4 integration of the Lyapunov ODE.
CovarianceCycle propagate_covariance(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                     const Eigen::MatrixXd& C0, const Problem& problem,
                                     const NoiseQuadrature& quad,
                                     const AdjointCycle& adj);

EigenCurves covariance_eigens(const CovarianceCycle& cov);

/// Circle of radius r in the (i, j) plane as an initial guess.
Trajectory circle_guess(int n, double radius, int intervals = 64, int i = 0, int j = 1,
                        double phase = 0.0);

} // namespace covbvp
