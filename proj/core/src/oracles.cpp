#include "covbvp/oracles.hpp"

#include <cmath>

namespace covbvp::oracles {

using Eigen::Matrix2d;
using Eigen::Vector2d;

HopfRef hopf_reference(double t) {
  HopfRef r;
  const double c = std::cos(2.0 * M_PI * t), s = std::sin(2.0 * M_PI * t);
  const double e4 = std::exp(-4.0 * M_PI * t);
  r.gamma << c, s;
  r.f_gamma << -s, c;
  r.X << e4 * c, -s, e4 * s, c;
  r.lambda << -s, c;
  r.Q << c * c, c * s, c * s, s * s;
  r.eig = (5.0 - 4.0 * std::cos(4.0 * M_PI * t) - 2.0 * std::sin(4.0 * M_PI * t)) / 40.0;
  r.evec << c, s;
  r.C = r.eig * r.Q;
  return r;
}

LinoscRef linosc_reference(double t) {
  LinoscRef r;
  const double c = std::cos(2.0 * M_PI * t), s = std::sin(2.0 * M_PI * t);
  const double p = 2.0 * M_PI * t, e2 = std::exp(-2.0 * M_PI * t);
  r.gamma << s, c;
  r.f_gamma << c, -s;
  r.X << e2 * (1.0 + p), e2 * p, -e2 * p, e2 * (1.0 - p);
  const double c4 = std::cos(4.0 * M_PI * t), s4 = std::sin(4.0 * M_PI * t);
  r.C << 4.0 + c4 - s4, -c4 - s4, -c4 - s4, 4.0 - 3.0 * c4 - s4;
  r.C /= 32.0;
  const double c8 = std::cos(8.0 * M_PI * t), s8 = std::sin(8.0 * M_PI * t);
  const double root = std::sqrt(3.0 + 2.0 * c8 + s8);
  r.eig_hi = (4.0 - c4 - s4 + root) / 32.0;
  r.eig_lo = (4.0 - c4 - s4 - root) / 32.0;
  return r;
}

Qp1Ref qp1_reference(double phi, double t, double Omega, double omega) {
  Qp1Ref r;
  const double rho = Omega / omega;
  const double b = 1.0 + omega * omega - std::cos(2.0 * M_PI * t) -
                   omega * std::sin(2.0 * M_PI * t);
  const double b0 = omega * omega;
  const double ct = std::cos(2.0 * M_PI * (phi + rho * t));
  const double st = std::sin(2.0 * M_PI * (phi + rho * t));
  const double c0 = std::cos(2.0 * M_PI * phi);
  const double s0 = std::sin(2.0 * M_PI * phi);
  const double e = std::exp(-2.0 * M_PI * t / omega);

  r.gamma << (1.0 + omega * omega) / b * ct, (1.0 + omega * omega) / b * st;

  const double w2 = omega * omega;
  r.X << (w2 / (b * b)) * (e * w2 * c0 * ct + b * s0 * st),
      (w2 / (b * b)) * (e * w2 * s0 * ct - b * c0 * st),
      (w2 / (b * b)) * (e * w2 * c0 * st - b * s0 * ct),
      (w2 / (b * b)) * (e * w2 * s0 * st + b * c0 * ct);

  r.w_phi << -s0, c0;
  r.w_phi *= w2 / (2.0 * M_PI * (1.0 + w2));

  r.Q << ct * ct, st * ct, st * ct, st * st;

  const double c2p = std::cos(4.0 * M_PI * phi), s2p = std::sin(4.0 * M_PI * phi);
  const double amp4 = std::pow(1.0 + w2, 4) * (1.0 + Omega * Omega - c2p - Omega * s2p) /
                      (4.0 * std::pow(omega, 8) * (1.0 + Omega * Omega));
  Matrix2d Q0;
  Q0 << c0 * c0, s0 * c0, s0 * c0, s0 * s0;
  r.C0 = amp4 * Q0;
  (void)b0;
  return r;
}

} // namespace covbvp::oracles
