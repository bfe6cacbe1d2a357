#include "covbvp/cycle_cov.hpp"

#include "covbvp/errors.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace covbvp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Shared-node collocation layout: component c at global node k maps to
// k * n + c, global nodes k = 0..M*d on the uniform mesh of [0, 1].
struct CollocationGrid {
  int n, M, d;
  LagrangeBasis basis;
  GaussRule gauss;
  double h;

  CollocationGrid(int n_, int M_, int d_)
      : n(n_), M(M_), d(d_), basis(d_), gauss(gauss_legendre(d_)), h(1.0 / M_) {}

  int n_nodes() const { return M * d + 1; }
  int n_coeff() const { return n * n_nodes(); }
  int idx(int node, int comp) const { return node * n + comp; }
  double node_time(int node) const { return h * double(node) / d; }

  VectorXd eval(const VectorXd& z, int interval, double s) const {
    Eigen::RowVectorXd b = basis.eval_row(s);
    VectorXd x = VectorXd::Zero(n);
    for (int j = 0; j <= d; ++j)
      for (int c = 0; c < n; ++c) x[c] += b[j] * z[idx(interval * d + j, c)];
    return x;
  }
};

} // namespace

Trajectory circle_guess(int n, double radius, int intervals, int i, int j,
                        double phase) {
  Trajectory traj(n, intervals, 3, 1.0);
  for (int k = 0; k < intervals; ++k) {
    auto blk = traj.block(k);
    for (int q = 0; q <= 3; ++q) {
      double t = (k + q / 3.0) / intervals;
      blk.col(q).setZero();
      blk(i, q) = radius * std::cos(2.0 * M_PI * (t + phase));
      blk(j, q) = radius * std::sin(2.0 * M_PI * (t + phase));
    }
  }
  return traj;
}

PeriodicOrbit solve_periodic_orbit(const Problem& problem, const Trajectory& guess,
                                   double T_guess, const CycleOptions& opts) {
  const int n = problem.n();
  const bool autonomous = problem.autonomous();
  CollocationGrid grid(n, opts.mesh_intervals, opts.degree);

  const VectorXd guess0 = guess.value(0.0);
  const VectorXd g0 = opts.phase_point.size() ? opts.phase_point : guess0;
  const VectorXd phase_normal =
      opts.phase_normal.size() ? opts.phase_normal : problem.f(0.0, g0);
  if (autonomous && phase_normal.norm() < 1e-12)
    throw SingularSystem("solve_periodic_orbit: phase condition degenerate "
                         "(vanishing vector field at guess)");

  const int nc = grid.n_coeff();
  const int nu = nc + (autonomous ? 1 : 0);
  const int ne = n * grid.M * grid.d + n + (autonomous ? 1 : 0);
  if (nu != ne)
    throw std::logic_error("solve_periodic_orbit: unbalanced system");

  VectorXd z(nu);
  for (int k = 0; k < grid.n_nodes(); ++k) {
    VectorXd x = guess.value(std::min(grid.node_time(k), guess.t_end()));
    for (int c = 0; c < n; ++c) z[grid.idx(k, c)] = x[c];
  }
  if (autonomous) z[nc] = T_guess;
  double T = T_guess;

  MatrixXd J(ne, nu);
  VectorXd r(ne);
  bool converged = false;
  for (int iter = 0; iter < opts.newton_max_iter; ++iter) {
    T = autonomous ? z[nc] : T_guess;
    J.setZero();
    r.setZero();
    int row = 0;
    for (int i = 0; i < grid.M; ++i) {
      for (int q = 0; q < grid.d; ++q) {
        double s = grid.gauss.nodes[q];
        double t = (i + s) * grid.h;
        Eigen::RowVectorXd b = grid.basis.eval_row(s);
        Eigen::RowVectorXd db = grid.basis.deriv_row(s) / grid.h;
        VectorXd x = grid.eval(z, i, s);
        VectorXd fx = problem.f(t, x);
        MatrixXd Dfx = problem.Df(t, x);
        VectorXd dx = VectorXd::Zero(n);
        for (int j = 0; j <= grid.d; ++j)
          for (int c = 0; c < n; ++c) dx[c] += db[j] * z[grid.idx(i * grid.d + j, c)];
        r.segment(row, n) = dx - T * fx;
        for (int j = 0; j <= grid.d; ++j) {
          int node = i * grid.d + j;
          for (int c2 = 0; c2 < n; ++c2) {
            for (int c = 0; c < n; ++c)
              J(row + c, grid.idx(node, c2)) -= T * b[j] * Dfx(c, c2);
            J(row + c2, grid.idx(node, c2)) += db[j];
          }
        }
        if (autonomous) J.block(row, nc, n, 1) = -fx;
        row += n;
      }
    }
    // periodicity x(0) = x(1)
    for (int c = 0; c < n; ++c) {
      r[row] = z[grid.idx(0, c)] - z[grid.idx(grid.M * grid.d, c)];
      J(row, grid.idx(0, c)) = 1.0;
      J(row, grid.idx(grid.M * grid.d, c)) = -1.0;
      ++row;
    }
    if (autonomous) {
      VectorXd x0 = VectorXd::Zero(n);
      for (int c = 0; c < n; ++c) x0[c] = z[grid.idx(0, c)];
      r[row] = phase_normal.dot(x0 - g0);
      for (int c = 0; c < n; ++c) J(row, grid.idx(0, c)) = phase_normal[c];
      ++row;
    }

    double rn = r.lpNorm<Eigen::Infinity>();
    if (rn < opts.newton_tol) {
      converged = true;
      break;
    }
    Eigen::FullPivLU<MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw SingularSystem("solve_periodic_orbit: singular collocation Jacobian");
    VectorXd dz = lu.solve(r);
    if (!dz.allFinite()) throw NewtonFailure("solve_periodic_orbit: non-finite step");
    z -= dz;
    if (z.lpNorm<Eigen::Infinity>() > 1e6)
      throw NewtonFailure("solve_periodic_orbit: Newton iterates diverged");
  }
  if (!converged)
    throw NewtonFailure("solve_periodic_orbit: no convergence in " +
                        std::to_string(opts.newton_max_iter) + " iterations");

  VectorXd x0(n);
  for (int c = 0; c < n; ++c) x0[c] = z[grid.idx(0, c)];
  if (autonomous) T = z[nc];

  // Single-shooting polish drives the period-map defect to roundoff so the
  // stored fine-mesh orbit is periodic well below the 1e-10 invariant.
  Trajectory orbit;
  FundamentalSolution X;
  for (int polish = 0; polish < 4; ++polish) {
    orbit = integrate_orbit(problem, x0, T, 1.0, opts.fine_steps);
    X = fundamental_solution(problem, orbit, T);
    VectorXd defect = orbit.back() - x0;
    if (autonomous) {
      VectorXd rr(n + 1);
      rr.head(n) = defect;
      rr[n] = phase_normal.dot(x0 - g0);
      if (rr.lpNorm<Eigen::Infinity>() < 1e-13) break;
      MatrixXd Js(n + 1, n + 1);
      Js.topLeftCorner(n, n) = X.value(1.0) - MatrixXd::Identity(n, n);
      Js.topRightCorner(n, 1) = problem.f(0.0, x0);
      Js.bottomLeftCorner(1, n) = phase_normal.transpose();
      Js(n, n) = 0.0;
      VectorXd du = Js.partialPivLu().solve(rr);
      x0 -= du.head(n);
      T -= du[n];
    } else {
      if (defect.lpNorm<Eigen::Infinity>() < 1e-13) break;
      MatrixXd Js = X.value(1.0) - MatrixXd::Identity(n, n);
      x0 -= Js.partialPivLu().solve(defect);
    }
  }

  if (autonomous && std::abs(phase_normal.dot(problem.f(0.0, x0))) < 1e-10)
    throw SingularSystem("solve_periodic_orbit: phase condition tangent to the flow");

  PeriodicOrbit po;
  po.orbit = orbit;
  po.T = T;
  po.autonomous = autonomous;
  po.phase_point = g0;
  po.phase_normal = phase_normal;
  po.X = X;
  po.mono = monodromy(X, problem, orbit);
  return po;
}

VectorXd adjoint_left_vector(const PeriodicOrbit& po, const Problem& problem) {
  if (!po.autonomous)
    throw std::invalid_argument("adjoint_left_vector: autonomous problems only");
  const MatrixXd& M = po.mono.matrix;
  const int n = int(M.rows());

  Eigen::EigenSolver<MatrixXd> es(M.transpose());
  int best = -1, second = -1;
  double best_d = std::numeric_limits<double>::infinity(), second_d = best_d;
  for (int i = 0; i < n; ++i) {
    double d = std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
    if (d < best_d) {
      second_d = best_d;
      second = best;
      best_d = d;
      best = i;
    } else if (d < second_d) {
      second_d = d;
      second = i;
    }
  }
  (void)second;
  if (best_d > 1e-6)
    throw std::runtime_error("adjoint_left_vector: trivial multiplier missing");
  if (n > 1 && second_d < 1e-6)
    throw std::runtime_error("adjoint_left_vector: trivial multiplier not simple");

  VectorXd w = es.eigenvectors().col(best).real();
  double denom = w.dot(problem.f(0.0, po.orbit.value(0.0)));
  if (std::abs(denom) < 1e-12)
    throw std::runtime_error("adjoint_left_vector: normalization denominator "
                             "|w^T f(gamma(0))| below 1e-12");
  return w / denom;
}

AdjointCycle identity_adjoint(const PeriodicOrbit& po) {
  AdjointCycle adj;
  adj.identity = true;
  (void)po;
  return adj;
}

AdjointCycle adjoint_function(const PeriodicOrbit& po, const Problem& problem,
                              const VectorXd& w) {
  const int n = problem.n();
  const Trajectory& orbit = po.orbit;
  const int M = orbit.intervals(), d = orbit.degree();

  AdjointCycle adj;
  adj.w = w;
  adj.lambda = Trajectory(n, M, d, 1.0);
  for (int i = 0; i < M; ++i) {
    auto src = po.X.X.flat().block(i);
    auto dst = adj.lambda.block(i);
    for (int q = 0; q <= d; ++q) {
      Eigen::Map<const MatrixXd> Xq(src.col(q).data(), n, n);
      dst.col(q) = Xq.transpose().partialPivLu().solve(w);
    }
  }

  // Verify the adjoint BVP: ODE residual, periodicity, integral condition.
  double defect = (adj.lambda.value(0.0) - adj.lambda.value(1.0)).norm();
  if (defect > 1e-8)
    throw std::runtime_error("adjoint_function: periodicity defect " +
                             std::to_string(defect));

  GaussRule gq = gauss_legendre(4);
  double integral = 0.0;
  double ode_res = 0.0;
  const double h = 1.0 / M;
  for (int i = 0; i < M; ++i) {
    for (int q = 0; q < gq.nodes.size(); ++q) {
      double t = (i + gq.nodes[q]) * h;
      VectorXd lam = adj.lambda.value(t);
      VectorXd g = orbit.value(t);
      integral += gq.weights[q] * h * lam.dot(problem.f(t, g));
      VectorXd res = adj.lambda.derivative(t) +
                     po.T * problem.Df(t, g).transpose() * lam;
      ode_res = std::max(ode_res, res.lpNorm<Eigen::Infinity>());
    }
  }
  if (std::abs(integral - 1.0) > 1e-8)
    throw std::runtime_error("adjoint_function: integral condition defect " +
                             std::to_string(integral - 1.0));
  if (ode_res > 1e-8)
    throw std::runtime_error("adjoint_function: ODE residual " +
                             std::to_string(ode_res));
  return adj;
}

ProjectionFamily projection_family(const PeriodicOrbit& po, const Problem& problem,
                                   const AdjointCycle& adj) {
  const int n = problem.n();
  const Trajectory& orbit = po.orbit;
  const int M = orbit.intervals(), d = orbit.degree();
  ProjectionFamily proj;
  proj.identity = adj.identity;
  proj.Q = MatTrajectory(n, n, M, d, 1.0);
  const MatrixXd I = MatrixXd::Identity(n, n);
  for (int i = 0; i < M; ++i) {
    for (int q = 0; q <= d; ++q) {
      if (adj.identity) {
        proj.Q.set_node(i, q, I);
      } else {
        double t = (i + double(q) / d) / M;
        VectorXd g = orbit.block(i).col(q);
        VectorXd lam = adj.lambda.block(i).col(q);
        proj.Q.set_node(i, q, I - problem.f(t, g) * lam.transpose());
      }
    }
  }
  return proj;
}

NoiseQuadrature noise_quadrature(const PeriodicOrbit& po, const Problem& problem) {
  return noise_quadrature_for(po.orbit, po.X, problem);
}

NoiseQuadrature noise_quadrature_for(const Trajectory& orbit,
                                     const FundamentalSolution& X,
                                     const Problem& problem) {
  const int n = problem.n();
  const int M = orbit.intervals(), d = orbit.degree();
  const double h = orbit.t_end() / M;
  GaussRule gq = gauss_legendre(4);

  auto integrand = [&](double t) -> MatrixXd {
    MatrixXd G = X.value(t).partialPivLu().solve(problem.F(t, orbit.value(t)));
    return G * G.transpose();
  };

  NoiseQuadrature quad;
  quad.J = MatTrajectory(n, n, M, d, orbit.t_end());
  MatrixXd acc = MatrixXd::Zero(n, n);
  quad.J.set_node(0, 0, acc);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < d; ++j) {
      double ta = (i + double(j) / d) * h;
      double tb = (i + double(j + 1) / d) * h;
      MatrixXd seg = MatrixXd::Zero(n, n);
      for (int q = 0; q < int(gq.nodes.size()); ++q)
        seg += gq.weights[q] * (tb - ta) * integrand(ta + gq.nodes[q] * (tb - ta));
      acc += seg;
      quad.J.set_node(i, j + 1, acc);
    }
    if (i + 1 < M) quad.J.set_node(i + 1, 0, acc);
  }
  quad.I_total = acc;
  return quad;
}

static int default_series_cap(const MonodromyInfo& mono) {
  double rad = mono.spectral_radius_transversal;
  if (!(rad > 0.0) || rad >= 1.0) return 10000;
  return int(std::ceil(-28.0 * std::log(10.0) / std::log(rad)));
}

CovarianceCycle covariance_series(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                  const NoiseQuadrature& quad, const Problem& problem,
                                  double tol, int K_max) {
  (void)problem;
  if (!po.mono.transversally_stable)
    throw std::runtime_error("covariance_series: orbit not transversally stable");
  if (K_max <= 0) K_max = default_series_cap(po.mono);

  const MatrixXd M1 = po.mono.matrix;
  const MatrixXd Q0 = proj.value(0.0);
  const int n = int(M1.rows());

  CovarianceCycle cov;
  cov.I_cal = quad.I_total;
  MatrixXd Y = M1 * quad.I_total * M1.transpose();
  MatrixXd sum = MatrixXd::Zero(n, n);
  int k = 0;
  for (k = 1; k <= K_max; ++k) {
    MatrixXd term = po.T * Q0 * Y * Q0.transpose();
    sum += term;
    double tn = term.norm(), sn = sum.norm();
    if (tn <= tol * std::max(sn, 1e-300) || tn == 0.0) break;
    if (k == K_max)
      throw std::runtime_error("covariance_series: no convergence within K_max");
    Y = M1 * Y * M1.transpose();
  }
  cov.series_terms_used = k;
  cov.C0 = 0.5 * (sum + sum.transpose());
  return cov;
}

CovarianceCycle covariance_kronecker(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                     const NoiseQuadrature& quad, const Problem& problem,
                                     const AdjointCycle& adj) {
  const MatrixXd M1 = po.mono.matrix;
  const int n = int(M1.rows());
  const int n2 = n * n;

  // Reciprocal-eigenvalue check, excluding the trivial pair.
  const auto& mu = po.mono.eigenvalues;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == po.mono.trivial_index && j == po.mono.trivial_index) continue;
      if (std::abs(mu[i] * mu[j] - std::complex<double>(1.0, 0.0)) <= 1e-8)
        throw SingularSystem("covariance_kronecker: reciprocal Floquet multipliers");
    }
  }

  const MatrixXd Q0 = proj.value(0.0);
  MatrixXd rhs_mat = po.T * Q0 * (M1 * quad.I_total * M1.transpose()) * Q0.transpose();
  Eigen::Map<const VectorXd> rhs_vec(rhs_mat.data(), n2);
  MatrixXd K = MatrixXd::Identity(n2, n2) - Eigen::kroneckerProduct(M1, M1);

  CovarianceCycle cov;
  cov.I_cal = quad.I_total;
  VectorXd c0;
  if (po.autonomous && !adj.identity) {
    VectorXd fg0 = problem.f(0.0, po.orbit.value(0.0));
    MatrixXd ff = fg0 * fg0.transpose();
    MatrixXd ww = adj.w * adj.w.transpose();
    MatrixXd B(n2 + 1, n2 + 1);
    B.setZero();
    B.topLeftCorner(n2, n2) = K;
    B.topRightCorner(n2, 1) = Eigen::Map<const VectorXd>(ff.data(), n2);
    B.bottomLeftCorner(1, n2) = Eigen::Map<const VectorXd>(ww.data(), n2).transpose();
    VectorXd rhs(n2 + 1);
    rhs.head(n2) = rhs_vec;
    rhs[n2] = 0.0;
    Eigen::FullPivLU<MatrixXd> lu(B);
    if (!lu.isInvertible())
      throw SingularSystem("covariance_kronecker: singular bordered matrix");
    VectorXd sol = lu.solve(rhs);
    c0 = sol.head(n2);
  } else {
    Eigen::FullPivLU<MatrixXd> lu(K);
    if (!lu.isInvertible())
      throw SingularSystem("covariance_kronecker: singular Kronecker matrix");
    c0 = lu.solve(rhs_vec);
  }
  MatrixXd C0 = Eigen::Map<const MatrixXd>(c0.data(), n, n);
  cov.C0 = 0.5 * (C0 + C0.transpose());
  return cov;
}

CovarianceCycle propagate_covariance(const PeriodicOrbit& po, const ProjectionFamily& proj,
                                     const MatrixXd& C0, const Problem& problem,
                                     const NoiseQuadrature& quad,
                                     const AdjointCycle& adj) {
  const int n = problem.n();
  const Trajectory& orbit = po.orbit;
  const int M = orbit.intervals(), d = orbit.degree();
  const double h = 1.0 / M;

  CovarianceCycle cov;
  cov.C0 = C0;
  cov.I_cal = quad.I_total;
  if (po.autonomous && !adj.identity) {
    cov.b = adj.w.dot(C0 * adj.w);
    if (std::abs(cov.b) > 1e-8)
      throw std::invalid_argument("propagate_covariance: w^T C(0) w = " +
                                  std::to_string(cov.b) + " is not ~0");
  }

  auto closed_form = [&](double t) -> MatrixXd {
    MatrixXd Xt = po.X.value(t);
    MatrixXd Qt = proj.value(t);
    MatrixXd C = Xt * C0 * Xt.transpose() +
                 po.T * Qt * Xt * quad.partial(t) * Xt.transpose() * Qt.transpose();
    return 0.5 * (C + C.transpose());
  };

  cov.C = MatTrajectory(n, n, M, d, 1.0);
  for (int i = 0; i < M; ++i)
    for (int q = 0; q <= d; ++q)
      cov.C.set_node(i, q, closed_form((i + double(q) / d) * h));

  cov.periodicity_defect = (cov.C.value(1.0) - cov.C.value(0.0)).norm();
  cov.a = cov.periodicity_defect / po.T;
  if (cov.periodicity_defect > 1e-6)
    throw std::runtime_error("propagate_covariance: periodicity defect " +
                             std::to_string(cov.periodicity_defect));

  // Independent check: RK4 on the Lyapunov ODE from the same C(0).
  auto lyap_rhs = [&](double t, const MatrixXd& C) -> MatrixXd {
    VectorXd g = orbit.value(t);
    MatrixXd Df = problem.Df(t, g);
    MatrixXd QF = proj.value(t) * problem.F(t, g);
    return po.T * (Df * C + C * Df.transpose() + QF * QF.transpose());
  };
  MatrixXd C = C0;
  double disc = 0.0;
  const int steps = M;
  const double hs = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    double t = k * hs;
    MatrixXd k1 = lyap_rhs(t, C);
    MatrixXd k2 = lyap_rhs(t + 0.5 * hs, C + 0.5 * hs * k1);
    MatrixXd k3 = lyap_rhs(t + 0.5 * hs, C + 0.5 * hs * k2);
    MatrixXd k4 = lyap_rhs(t + hs, C + hs * k3);
    C += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    disc = std::max(disc, (C - closed_form((k + 1) * hs)).norm());
  }
  cov.lyapunov_discrepancy = disc;
  return cov;
}

EigenCurves covariance_eigens(const CovarianceCycle& cov) {
  const int n = cov.C.rows();
  const Trajectory& flat = cov.C.flat();
  const int M = flat.intervals(), d = flat.degree();

  EigenCurves out;
  out.eigenvalues = Trajectory(n, M, d, flat.t_end());
  out.eigenvectors = MatTrajectory(n, n, M, d, flat.t_end());

  MatrixXd prev;
  for (int i = 0; i < M; ++i) {
    for (int q = 0; q <= d; ++q) {
      MatrixXd C = cov.C.node(i, q);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (C + C.transpose()));
      // descending order
      VectorXd vals(n);
      MatrixXd vecs(n, n);
      for (int k = 0; k < n; ++k) {
        vals[k] = es.eigenvalues()[n - 1 - k];
        vecs.col(k) = es.eigenvectors().col(n - 1 - k);
      }
      for (int k = 0; k < n; ++k) {
        if (prev.size() == 0) {
          int arg;
          vecs.col(k).cwiseAbs().maxCoeff(&arg);
          if (vecs(arg, k) < 0.0) vecs.col(k) = -vecs.col(k);
        } else if (prev.col(k).dot(vecs.col(k)) < 0.0) {
          vecs.col(k) = -vecs.col(k);
        }
      }
      prev = vecs;
      out.eigenvalues.block(i).col(q) = vals;
      out.eigenvectors.set_node(i, q, vecs);
    }
  }
  return out;
}

} // namespace covbvp
