#include "covbvp/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace covbvp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double Problem::param(const std::string& key) const {
  auto it = spec_.params.find(key);
  if (it == spec_.params.end())
    throw std::invalid_argument("Problem: unknown parameter '" + key + "'");
  return it->second;
}

Problem Problem::with_param(const std::string& key, double value) const {
  ProblemSpec s = spec_;
  auto it = s.params.find(key);
  if (it == s.params.end())
    throw std::invalid_argument("Problem: unknown parameter '" + key + "'");
  it->second = value;
  return Problem(std::move(s));
}

MatrixXd finite_difference_jacobian(const DriftFn& drift, double t,
                                    const VectorXd& x, const Params& p) {
  const int n = int(x.size());
  MatrixXd J(n, n);
  VectorXd xp = x, xm = x;
  for (int i = 0; i < n; ++i) {
    double h = 1e-6 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    J.col(i) = (drift(t, xp, p) - drift(t, xm, p)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return J;
}

Problem build_problem(const ProblemSpec& spec_in) {
  ProblemSpec spec = spec_in;
  if (spec.dim_state < 1 || spec.dim_noise < 1)
    throw std::invalid_argument("build_problem: dim_state and dim_noise must be >= 1");
  if (!spec.drift || !spec.diffusion)
    throw std::invalid_argument("build_problem: drift and diffusion are required");

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VectorXd x0(spec.dim_state);
  for (int i = 0; i < spec.dim_state; ++i) x0[i] = 0.5 + 0.25 * unif(rng);

  VectorXd fx = spec.drift(0.1, x0, spec.params);
  if (int(fx.size()) != spec.dim_state)
    throw std::invalid_argument("build_problem: drift output length " +
                                std::to_string(fx.size()) + " != dim_state " +
                                std::to_string(spec.dim_state));
  MatrixXd Fx = spec.diffusion(0.1, x0, spec.params);
  if (int(Fx.rows()) != spec.dim_state || int(Fx.cols()) != spec.dim_noise)
    throw std::invalid_argument("build_problem: diffusion must be dim_state x dim_noise");

  if (spec.autonomous) {
    VectorXd fa = spec.drift(0.0, x0, spec.params);
    VectorXd fb = spec.drift(0.37, x0, spec.params);
    if ((fa - fb).lpNorm<Eigen::Infinity>() > 1e-12)
      throw std::invalid_argument("build_problem: autonomous drift depends on t");
    MatrixXd Fa = spec.diffusion(0.0, x0, spec.params);
    MatrixXd Fb = spec.diffusion(0.37, x0, spec.params);
    if ((Fa - Fb).lpNorm<Eigen::Infinity>() > 1e-12)
      throw std::invalid_argument("build_problem: autonomous diffusion depends on t");
  }

  if (spec.drift_jacobian) {
    for (int trial = 0; trial < 5; ++trial) {
      VectorXd x(spec.dim_state);
      for (int i = 0; i < spec.dim_state; ++i) x[i] = 2.0 * unif(rng);
      double t = 0.5 * (unif(rng) + 1.0);
      MatrixXd Ja = spec.drift_jacobian(t, x, spec.params);
      MatrixXd Jn = finite_difference_jacobian(spec.drift, t, x, spec.params);
      double scale = std::max(1.0, Jn.lpNorm<Eigen::Infinity>());
      if ((Ja - Jn).lpNorm<Eigen::Infinity>() > 1e-5 * scale)
        throw std::invalid_argument("build_problem: supplied Jacobian disagrees with "
                                    "finite differences");
    }
  } else {
    DriftFn drift = spec.drift;
    spec.drift_jacobian = [drift](double t, const VectorXd& x, const Params& p) {
      return finite_difference_jacobian(drift, t, x, p);
    };
  }

  return Problem(std::move(spec));
}

namespace {

ProblemSpec make_hopf() {
  ProblemSpec s;
  s.name = "hopf";
  s.dim_state = 2;
  s.dim_noise = 1;
  s.autonomous = true;
  s.period_scale_hint = 2.0 * M_PI;
  s.drift = [](double, const VectorXd& x, const Params&) {
    double r2 = x[0] * x[0] + x[1] * x[1];
    VectorXd f(2);
    f[0] = x[0] - x[1] - x[0] * r2;
    f[1] = x[0] + x[1] - x[1] * r2;
    return f;
  };
  s.drift_jacobian = [](double, const VectorXd& x, const Params&) {
    MatrixXd J(2, 2);
    J(0, 0) = 1.0 - 3.0 * x[0] * x[0] - x[1] * x[1];
    J(0, 1) = -1.0 - 2.0 * x[0] * x[1];
    J(1, 0) = 1.0 - 2.0 * x[0] * x[1];
    J(1, 1) = 1.0 - x[0] * x[0] - 3.0 * x[1] * x[1];
    return J;
  };
  s.diffusion = [](double, const VectorXd& x, const Params&) {
    MatrixXd F(2, 1);
    F(0, 0) = x[0] * x[1];
    F(1, 0) = x[1] * x[1];
    return F;
  };
  return s;
}

ProblemSpec make_linosc() {
  ProblemSpec s;
  s.name = "linosc";
  s.dim_state = 2;
  s.dim_noise = 1;
  s.autonomous = false;
  s.period_scale_hint = 2.0 * M_PI;
  s.drift = [](double t, const VectorXd& x, const Params&) {
    VectorXd f(2);
    f[0] = x[1];
    f[1] = -2.0 * x[1] - x[0] + 2.0 * std::cos(2.0 * M_PI * t);
    return f;
  };
  s.drift_jacobian = [](double, const VectorXd&, const Params&) {
    MatrixXd J(2, 2);
    J << 0.0, 1.0, -1.0, -2.0;
    return J;
  };
  s.diffusion = [](double, const VectorXd& x, const Params&) {
    MatrixXd F(2, 1);
    F(0, 0) = 0.0;
    F(1, 0) = x[0];
    return F;
  };
  return s;
}

ProblemSpec make_qp_radial() {
  ProblemSpec s;
  s.name = "qp_radial";
  s.dim_state = 2;
  s.dim_noise = 1;
  s.autonomous = false;
  s.params = {{"Omega", M_PI}, {"omega", 1.0}};
  s.period_scale_hint = 2.0 * M_PI; // T = 2*pi/omega at the default omega
  s.drift = [](double t, const VectorXd& x, const Params& p) {
    double Omega = p.at("Omega");
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    double c = std::cos(2.0 * M_PI * t) - 1.0;
    VectorXd f(2);
    f[0] = -Omega * x[1] + x[0] * (1.0 + r * c);
    f[1] = Omega * x[0] + x[1] * (1.0 + r * c);
    return f;
  };
  s.drift_jacobian = [](double t, const VectorXd& x, const Params& p) {
    double Omega = p.at("Omega");
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    double c = std::cos(2.0 * M_PI * t) - 1.0;
    MatrixXd J(2, 2);
    J(0, 0) = 1.0 + c * (r + x[0] * x[0] / r);
    J(0, 1) = -Omega + c * x[0] * x[1] / r;
    J(1, 0) = Omega + c * x[0] * x[1] / r;
    J(1, 1) = 1.0 + c * (r + x[1] * x[1] / r);
    return J;
  };
  s.diffusion = [](double, const VectorXd& x, const Params&) {
    MatrixXd F(2, 1);
    F(0, 0) = x[0] * x[1];
    F(1, 0) = x[1] * x[1];
    return F;
  };
  return s;
}

ProblemSpec make_vdp_coupled() {
  ProblemSpec s;
  s.name = "vdp_coupled";
  s.dim_state = 4;
  s.dim_noise = 2;
  s.autonomous = true;
  s.params = {{"epsilon", 0.5}, {"beta", 0.5}, {"delta", 1.9422}};
  s.period_scale_hint = 2.0 * M_PI;
  s.drift = [](double, const VectorXd& y, const Params& p) {
    double eps = p.at("epsilon"), beta = p.at("beta"), delta = p.at("delta");
    VectorXd f(4);
    f[0] = y[1];
    f[1] = -eps * (y[0] * y[0] - 1.0) * y[1] - y[0] + beta * (y[2] - y[0]);
    f[2] = y[3];
    f[3] = -eps * (y[2] * y[2] - 1.0) * y[3] - (1.0 + delta) * y[2] + beta * (y[0] - y[2]);
    return f;
  };
  s.drift_jacobian = [](double, const VectorXd& y, const Params& p) {
    double eps = p.at("epsilon"), beta = p.at("beta"), delta = p.at("delta");
    MatrixXd J = MatrixXd::Zero(4, 4);
    J(0, 1) = 1.0;
    J(1, 0) = -2.0 * eps * y[0] * y[1] - 1.0 - beta;
    J(1, 1) = -eps * (y[0] * y[0] - 1.0);
    J(1, 2) = beta;
    J(2, 3) = 1.0;
    J(3, 0) = beta;
    J(3, 2) = -2.0 * eps * y[2] * y[3] - (1.0 + delta) - beta;
    J(3, 3) = -eps * (y[2] * y[2] - 1.0);
    return J;
  };
  s.diffusion = [](double, const VectorXd&, const Params&) {
    MatrixXd F = MatrixXd::Zero(4, 2);
    F(1, 0) = 1.0;
    F(3, 1) = 1.0;
    return F;
  };
  return s;
}

} // namespace

ProblemSpec builtin(const std::string& name) {
  if (name == "hopf") return make_hopf();
  if (name == "linosc") return make_linosc();
  if (name == "qp_radial") return make_qp_radial();
  if (name == "vdp_coupled") return make_vdp_coupled();
  throw std::invalid_argument("builtin: unknown problem '" + name + "'");
}

} // namespace covbvp
