#include "covbvp/flow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace covbvp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Store one RK4 step [t0, t0+h] as a cubic from endpoint values/slopes,
// sampled at the 4 equispaced Lagrange nodes (exact for the Hermite cubic).
void store_hermite(Trajectory& traj, int interval, const VectorXd& x0,
                   const VectorXd& x1, const VectorXd& d0, const VectorXd& d1,
                   double h) {
  auto blk = traj.block(interval);
  blk.col(0) = x0;
  blk.col(3) = x1;
  for (int j = 1; j <= 2; ++j) {
    double s = double(j) / 3.0;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    blk.col(j) = h00 * x0 + (h10 * h) * d0 + h01 * x1 + (h11 * h) * d1;
  }
}

} // namespace

Trajectory integrate_orbit(const Problem& problem, const VectorXd& x0, double T,
                           double t_end, int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_orbit: steps must be >= 1");
  const double h = t_end / steps;
  Trajectory traj(problem.n(), steps, 3, t_end);
  VectorXd x = x0;
  for (int k = 0; k < steps; ++k) {
    double t = k * h;
    VectorXd k1 = T * problem.f(t, x);
    VectorXd k2 = T * problem.f(t + 0.5 * h, x + 0.5 * h * k1);
    VectorXd k3 = T * problem.f(t + 0.5 * h, x + 0.5 * h * k2);
    VectorXd k4 = T * problem.f(t + h, x + h * k3);
    VectorXd xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!xn.allFinite())
      throw NonFiniteState("integrate_orbit: non-finite state at step " +
                           std::to_string(k));
    VectorXd d1 = T * problem.f(t + h, xn);
    store_hermite(traj, k, x, xn, k1, d1, h);
    x = xn;
  }
  return traj;
}

FundamentalSolution fundamental_solution(const Problem& problem,
                                         const Trajectory& orbit, double T,
                                         int steps) {
  const int n = problem.n();
  if (steps <= 0) steps = orbit.intervals();
  const double t_end = orbit.t_end();
  const double h = t_end / steps;

  FundamentalSolution fs;
  fs.X = MatTrajectory(n, n, steps, 3, t_end);
  Trajectory& flat = fs.X.flat();

  auto rhs = [&](double t, const MatrixXd& X) -> MatrixXd {
    return T * problem.Df(t, orbit.value(t)) * X;
  };

  MatrixXd X = MatrixXd::Identity(n, n);
  for (int k = 0; k < steps; ++k) {
    double t = k * h;
    MatrixXd k1 = rhs(t, X);
    MatrixXd k2 = rhs(t + 0.5 * h, X + 0.5 * h * k1);
    MatrixXd k3 = rhs(t + 0.5 * h, X + 0.5 * h * k2);
    MatrixXd k4 = rhs(t + h, X + h * k3);
    MatrixXd Xn = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!Xn.allFinite())
      throw NonFiniteState("fundamental_solution: non-finite state at step " +
                           std::to_string(k));
    MatrixXd d1 = rhs(t + h, Xn);
    const auto vec = [n](const MatrixXd& m) {
      return Eigen::Map<const VectorXd>(m.data(), n * n);
    };
    VectorXd x0v = vec(X), x1v = vec(Xn), d0v = vec(k1), d1v = vec(d1);
    store_hermite(flat, k, x0v, x1v, d0v, d1v, h);
    X = Xn;
  }
  return fs;
}

MonodromyInfo monodromy(const FundamentalSolution& X, const Problem& problem,
                        const Trajectory& orbit) {
  const int n = X.n();
  const VectorXd g0 = orbit.value(0.0);
  const VectorXd g1 = orbit.value(orbit.t_end());
  if ((g1 - g0).norm() >= 1e-8)
    throw std::invalid_argument("monodromy: orbit is not periodic to 1e-8");

  MonodromyInfo info;
  info.matrix = X.value(orbit.t_end());

  Eigen::EigenSolver<MatrixXd> es(info.matrix);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
  });
  info.eigenvalues.resize(n);
  info.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    info.eigenvalues[i] = es.eigenvalues()[order[i]];
    info.eigenvectors.col(i) = es.eigenvectors().col(order[i]);
  }

  if (problem.autonomous()) {
    // Trivial multiplier nearest 1; ties broken by largest real part.
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double d = std::abs(info.eigenvalues[i] - std::complex<double>(1.0, 0.0));
      if (d < best_d - 1e-15 ||
          (std::abs(d - best_d) <= 1e-15 &&
           info.eigenvalues[i].real() > info.eigenvalues[best].real())) {
        best_d = d;
        best = i;
      }
    }
    if (best_d >= 1e-6)
      throw std::runtime_error("monodromy: no Floquet multiplier within 1e-6 of 1 "
                               "(orbit not converged)");
    info.trivial_index = best;

    VectorXd fg0 = problem.f(0.0, g0);
    double rel = std::max(1.0, fg0.norm());
    if (((info.matrix - MatrixXd::Identity(n, n)) * fg0).norm() > 1e-6 * rel)
      throw std::runtime_error("monodromy: f(gamma(0)) is not a right nullvector "
                               "of X(1) - I");
  }

  double rad = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == info.trivial_index) continue;
    rad = std::max(rad, std::abs(info.eigenvalues[i]));
  }
  info.spectral_radius_transversal = rad;
  info.transversally_stable = rad < 1.0;

  // Second-largest modulus overall drives the contraction-time estimate.
  double second = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == info.trivial_index) {
      continue;
    }
    second = std::max(second, std::abs(info.eigenvalues[i]));
  }
  if (!problem.autonomous()) second = rad;
  if (second > 0.0 && second < 1.0) info.contraction_rate = -1.0 / std::log(second);

  return info;
}

} // namespace covbvp
