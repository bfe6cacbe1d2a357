#include "covbvp/mesh.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace covbvp {

GaussRule gauss_legendre(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts must be >= 1");
  GaussRule rule;
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  // Newton iteration on Legendre P_n over [-1, 1], then map to [0, 1].
  for (int i = 0; i < npts; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (npts == 1) { p1 = x; }
      for (int k = 2; k <= npts; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (npts == 1) ? x : p1;
      double pm = (npts == 1) ? 1.0 : p0;
      pp = npts * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[npts - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[npts - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

LagrangeBasis::LagrangeBasis(int deg) : degree(deg) {
  if (deg < 1) throw std::invalid_argument("LagrangeBasis: degree must be >= 1");
  const int m = deg + 1;
  nodes.resize(m);
  for (int j = 0; j < m; ++j) nodes[j] = double(j) / deg;
  bary_weights.resize(m);
  for (int j = 0; j < m; ++j) {
    double w = 1.0;
    for (int k = 0; k < m; ++k)
      if (k != j) w *= (nodes[j] - nodes[k]);
    bary_weights[j] = 1.0 / w;
  }
  diff.resize(m, m);
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      diff(k, j) = (bary_weights[j] / bary_weights[k]) / (nodes[k] - nodes[j]);
      s += diff(k, j);
    }
    diff(k, k) = -s;
  }
}

Eigen::RowVectorXd LagrangeBasis::eval_row(double s) const {
  const int m = degree + 1;
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
  for (int j = 0; j < m; ++j) {
    if (std::abs(s - nodes[j]) < 1e-14) {
      row[j] = 1.0;
      return row;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < m; ++j) {
    row[j] = bary_weights[j] / (s - nodes[j]);
    denom += row[j];
  }
  row /= denom;
  return row;
}

Eigen::RowVectorXd LagrangeBasis::deriv_row(double s) const {
  // p'(s) interpolates (D v) exactly since deg p' < degree.
  return eval_row(s) * diff;
}

namespace {
const LagrangeBasis& cached_basis(int degree) {
  static std::map<int, LagrangeBasis> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, LagrangeBasis(degree)).first;
  return it->second;
}
} // namespace

PiecewisePoly::PiecewisePoly(int dim, int intervals, int degree, double t_end)
    : dim_(dim), intervals_(intervals), degree_(degree), t_end_(t_end) {
  if (dim < 1 || intervals < 1 || degree < 1 || t_end <= 0.0)
    throw std::invalid_argument("PiecewisePoly: invalid dimensions");
  values_.setZero(dim, intervals * (degree + 1));
}

Eigen::Block<Eigen::MatrixXd> PiecewisePoly::block(int i) {
  return values_.block(0, i * (degree_ + 1), dim_, degree_ + 1);
}

Eigen::Block<const Eigen::MatrixXd> PiecewisePoly::block(int i) const {
  return values_.block(0, i * (degree_ + 1), dim_, degree_ + 1);
}

const LagrangeBasis& PiecewisePoly::basis() const { return cached_basis(degree_); }

int PiecewisePoly::locate(double t, double& s) const {
  double u = t / t_end_ * intervals_;
  int i = int(std::floor(u));
  if (i < 0) i = 0;
  if (i >= intervals_) i = intervals_ - 1;
  s = u - i;
  return i;
}

Eigen::VectorXd PiecewisePoly::value(double t) const {
  double s;
  int i = locate(t, s);
  return block(i) * basis().eval_row(s).transpose();
}

Eigen::VectorXd PiecewisePoly::derivative(double t) const {
  double s;
  int i = locate(t, s);
  double h = t_end_ / intervals_;
  return block(i) * basis().deriv_row(s).transpose() / h;
}

double PiecewisePoly::junction_defect() const {
  double d = 0.0;
  for (int i = 0; i + 1 < intervals_; ++i) {
    Eigen::VectorXd left = block(i).col(degree_);
    Eigen::VectorXd right = block(i + 1).col(0);
    d = std::max(d, (left - right).lpNorm<Eigen::Infinity>());
  }
  return d;
}

} // namespace covbvp
