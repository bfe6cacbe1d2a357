#pragma once

#include <Eigen/Dense>
#include <vector>

namespace covbvp {

/// Gauss-Legendre quadrature rule mapped to [0, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Nodes and weights for an npts-point Gauss-Legendre rule on [0, 1].
GaussRule gauss_legendre(int npts);

/// Lagrange basis helpers for degree-d interpolation at the equispaced
/// local nodes j/d, j = 0..d, on the reference interval [0, 1].
struct LagrangeBasis {
  int degree;
  Eigen::VectorXd nodes;        // j/d
  Eigen::VectorXd bary_weights; // barycentric weights
  Eigen::MatrixXd diff;         // diff(k,j) = L_j'(node_k)

  explicit LagrangeBasis(int degree);

  /// Row of basis values L_j(s), s in [0, 1].
  Eigen::RowVectorXd eval_row(double s) const;
  /// Row of basis derivatives L_j'(s) (w.r.t. the reference coordinate).
  Eigen::RowVectorXd deriv_row(double s) const;
};

/// Vector-valued continuous piecewise-polynomial function on a uniform
/// mesh of [0, t_end]: per interval, values at degree+1 equispaced nodes.
class PiecewisePoly {
public:
  PiecewisePoly() = default;
  PiecewisePoly(int dim, int intervals, int degree, double t_end);

  int dim() const { return dim_; }
  int intervals() const { return intervals_; }
  int degree() const { return degree_; }
  double t_end() const { return t_end_; }
  bool empty() const { return intervals_ == 0; }

  /// Values of interval i: dim x (degree+1) block, columns at local nodes.
  Eigen::Block<Eigen::MatrixXd> block(int i);
  Eigen::Block<const Eigen::MatrixXd> block(int i) const;

  Eigen::VectorXd value(double t) const;
  Eigen::VectorXd derivative(double t) const;
  Eigen::VectorXd front() const { return values_.col(0); }
  Eigen::VectorXd back() const { return values_.col(values_.cols() - 1); }

  /// Max-norm mismatch across interior breakpoints.
  double junction_defect() const;

  /// Breakpoint t_i, i = 0..intervals.
  double breakpoint(int i) const { return t_end_ * double(i) / double(intervals_); }

  const Eigen::MatrixXd& raw() const { return values_; }
  Eigen::MatrixXd& raw() { return values_; }
  const LagrangeBasis& basis() const;

private:
  int dim_ = 0;
  int intervals_ = 0;
  int degree_ = 0;
  double t_end_ = 0.0;
  Eigen::MatrixXd values_; // dim x intervals*(degree+1)
  int locate(double t, double& s) const;
};

using Trajectory = PiecewisePoly;

/// Matrix-valued trajectory stored column-major in a PiecewisePoly.
class MatTrajectory {
public:
  MatTrajectory() = default;
  MatTrajectory(int rows, int cols, int intervals, int degree, double t_end)
      : rows_(rows), cols_(cols), flat_(rows * cols, intervals, degree, t_end) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  PiecewisePoly& flat() { return flat_; }
  const PiecewisePoly& flat() const { return flat_; }

  Eigen::MatrixXd value(double t) const {
    Eigen::VectorXd v = flat_.value(t);
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows_, cols_);
  }
  void set_node(int interval, int node, const Eigen::MatrixXd& m) {
    flat_.block(interval).col(node) =
        Eigen::Map<const Eigen::VectorXd>(m.data(), rows_ * cols_);
  }
  Eigen::MatrixXd node(int interval, int node_idx) const {
    Eigen::VectorXd v = flat_.block(interval).col(node_idx);
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows_, cols_);
  }

private:
  int rows_ = 0, cols_ = 0;
  PiecewisePoly flat_;
};

} // namespace covbvp
