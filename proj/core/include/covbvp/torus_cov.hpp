#pragma once

#include "covbvp/cycle_cov.hpp"
#include "covbvp/fourier.hpp"

#include <string>
#include <vector>

namespace covbvp {

struct TorusOptions {
  int mesh_intervals = 20;
  int degree = 4;
  double newton_tol = 1e-10;
  int newton_max_iter = 20;
  int fine_steps = 2000; // per-segment RK4 steps for X
  /// Autonomous problems need one released system parameter to balance the
  /// fixed-rho boundary-value problem (the second frequency relation).
  std::string released_param;
  /// Anchor for the phase hyperplanes (segment 1 at t = 0). Empty selects
  /// the guess point and the guess tangents.
  Eigen::VectorXd phase_point;
  Eigen::VectorXd phase_tangent_t;   // ignored for non-autonomous problems
  Eigen::VectorXd phase_tangent_phi;
};

/// Invariant 2-torus as 2N+1 coupled trajectory segments gamma(phi_j, t),
/// t in [0, 1], with all-to-all Fourier boundary conditions in terms of the
/// fixed rotation number rho.
struct TorusSolution {
  FourierOps ops;
  std::vector<Trajectory> segments;
  double T = 0.0;
  double rho = 0.0;
  bool autonomous = true;
  std::string released_param;
  double released_value = 0.0;  // converged parameter (autonomous)
  double rotation_defect = 0.0; // scalar unknown s (non-autonomous), ~0
  std::vector<FundamentalSolution> X;
  std::vector<Trajectory> dt_gamma;
  std::vector<Trajectory> dphi_gamma;
  double boundary_defect = 0.0;
  double collocation_residual = 0.0;

  int n_seg() const { return ops.size; }
  int dim() const { return segments.empty() ? 0 : segments.front().dim(); }
  /// Node values of a per-segment field at time t: rows = segments.
  Eigen::MatrixXd node_values(const std::vector<Trajectory>& field, double t) const;
  /// Trigonometric interpolation in phi composed with per-segment t-evaluation.
  Eigen::VectorXd evaluate(const std::vector<Trajectory>& field, double phi,
                           double t) const;
};

/// Adjoint fields: lambda_t (absent for non-autonomous problems) and
/// lambda_phi per segment, plus their t = 0 values w_t, w_phi (Omega columns).
struct TorusAdjoints {
  std::vector<Trajectory> lambda_t;
  std::vector<Trajectory> lambda_phi;
  Eigen::MatrixXd w_t;   // n_seg x n node rows (empty when non-autonomous)
  Eigen::MatrixXd w_phi; // n_seg x n
  bool has_time_adjoint = false;
  double boundary_defect = 0.0;

  int n_adj() const { return has_time_adjoint ? 2 : 1; }
  /// Omega(phi_j): n x n_adj matrix of adjoint boundary values.
  Eigen::MatrixXd omega(int j) const;
  /// Lambda(phi_j, t): n x n_adj.
  Eigen::MatrixXd lambda(int j, double t) const;
};

struct TorusProjection {
  std::vector<MatTrajectory> Q;
  Eigen::MatrixXd value(int j, double t) const { return Q[j].value(t); }
};

struct CovarianceTorus {
  std::vector<MatTrajectory> C;
  Eigen::MatrixXd A;       // (m+1) x (m+1) symmetry-breaking unknown (direct)
  Eigen::MatrixXd B_level; // achieved Omega^T C(phi_1, 0) Omega
  double residual_norm = 0.0; // 2-norm of A (direct) / final step (fixed_point)
  std::string method;
  double quasiperiodicity_defect = 0.0;
  int iterations = 0;
};

enum class TorusCovMethod { fixed_point, direct };

/// Newton on the coupled collocation system of the 2N+1 segments with the
/// Fourier-rotated boundary condition (F x I) Xi(1) = (R(rho) F x I) Xi(0),
/// phase conditions, and rho held fixed. Autonomous problems release the
/// parameter named in opts (plus the unknown T); non-autonomous problems
/// carry a scalar rotation-defect unknown instead.
TorusSolution solve_torus(const Problem& problem, const FourierOps& ops, double rho,
                          double T_guess, const std::vector<Trajectory>& guess,
                          const TorusOptions& opts = {});

/// Adjoint fields solving the discretized adjoint boundary-value problem:
/// per-segment adjoint ODE, Fourier-rotated boundary conditions, and the
/// discrete integral normalizations.
TorusAdjoints torus_adjoints(const TorusSolution& torus, const Problem& problem);

/// Q(phi_j, t) = I - dt_gamma lambda_t^T - dphi_gamma lambda_phi^T.
TorusProjection torus_projection(const TorusSolution& torus, const TorusAdjoints& adj);

CovarianceTorus torus_covariance(const TorusSolution& torus, const TorusAdjoints& adj,
                                 const TorusProjection& proj, const Problem& problem,
                                 TorusCovMethod method);

/// Trigonometric interpolation across the node family for a plain node field.
Eigen::VectorXd evaluate_node_field(const FourierOps& ops,
                                    const Eigen::MatrixXd& node_values, double phi);

/// Ansatz segments from a closed-form surface gamma(phi, t).
std::vector<Trajectory> torus_guess(const FourierOps& ops, int n, int intervals,
                                    int degree,
                                    const std::function<Eigen::VectorXd(double, double)>& gamma);

/// Serialization of a solved torus (optionally with adjoints and covariance)
/// to the documented JSON layout, and back.
std::string torus_to_json(const TorusSolution& torus, const TorusAdjoints* adj = nullptr,
                          const CovarianceTorus* cov = nullptr);
struct TorusBundle {
  TorusSolution torus;
  TorusAdjoints adj;
  CovarianceTorus cov;
  bool has_adjoints = false;
  bool has_covariance = false;
};
TorusBundle torus_from_json(const std::string& text);

} // namespace covbvp
