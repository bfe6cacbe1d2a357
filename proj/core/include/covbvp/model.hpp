#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>

namespace covbvp {

using Params = std::map<std::string, double>;

using DriftFn = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& x,
                                              const Params& p)>;
using MatrixFn = std::function<Eigen::MatrixXd(double t, const Eigen::VectorXd& x,
                                               const Params& p)>;

/// Definition of a dynamical system dx/dt = T f(t, x) perturbed by
/// sigma sqrt(T) F(t, x) dW. Phase t lives on [0, 1).
struct ProblemSpec {
  std::string name;
  int dim_state = 0;
  int dim_noise = 0;
  bool autonomous = true;
  DriftFn drift;
  MatrixFn diffusion;
  MatrixFn drift_jacobian; // optional; filled by finite differences if absent
  Params params;
  double period_scale_hint = 0.0; // optional T guess / fixed forcing scale
};

/// Validated, immutable problem handle. Safe to share across threads.
class Problem {
public:
  int n() const { return spec_.dim_state; }
  int noise_dim() const { return spec_.dim_noise; }
  bool autonomous() const { return spec_.autonomous; }
  const std::string& name() const { return spec_.name; }
  double period_scale_hint() const { return spec_.period_scale_hint; }
  const Params& params() const { return spec_.params; }
  double param(const std::string& key) const;

  Eigen::VectorXd f(double t, const Eigen::VectorXd& x) const {
    return spec_.drift(t, x, spec_.params);
  }
  Eigen::MatrixXd F(double t, const Eigen::VectorXd& x) const {
    return spec_.diffusion(t, x, spec_.params);
  }
  Eigen::MatrixXd Df(double t, const Eigen::VectorXd& x) const {
    return spec_.drift_jacobian(t, x, spec_.params);
  }

  /// Copy with one parameter overridden (for released-parameter solves).
  Problem with_param(const std::string& key, double value) const;

  const ProblemSpec& spec() const { return spec_; }

  friend Problem build_problem(const ProblemSpec& spec);

private:
  explicit Problem(ProblemSpec spec) : spec_(std::move(spec)) {}
  ProblemSpec spec_;
};

/// Validates the spec, fills a central finite-difference Jacobian when none
/// is supplied, and spot-checks dimensions, autonomy and a supplied Jacobian.
Problem build_problem(const ProblemSpec& spec);

/// Built-in example systems: hopf, linosc, qp_radial, vdp_coupled.
ProblemSpec builtin(const std::string& name);

/// Central-difference Jacobian of a drift, step 1e-6 * (1 + |x_i|).
Eigen::MatrixXd finite_difference_jacobian(const DriftFn& drift, double t,
                                           const Eigen::VectorXd& x, const Params& p);

} // namespace covbvp
