#include "quench/cho2.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quench::cho2 {

double ChoQuench::omega_i_mode(Mode nu) const {
  return nu == Mode::plus ? omega_i : std::sqrt(omega_i * omega_i + 2.0 * kappa);
}

double ChoQuench::omega_f_mode(Mode nu) const {
  return nu == Mode::plus ? omega_f : std::sqrt(omega_f * omega_f + 2.0 * kappa);
}

Scaling scaling_function(const ChoQuench& q, Mode nu, double t) {
  if (t < 0.0) throw std::invalid_argument("scaling_function: t < 0");
  const double wi = q.omega_i_mode(nu);
  const double wf = q.omega_f_mode(nu);
  if (wf == 0.0) {
    const double b = std::sqrt(1.0 + wi * wi * t * t);
    return {b, wi * wi * t / b};
  }
  const double r = wi / wf;
  const double c = std::cos(wf * t);
  const double s = std::sin(wf * t);
  const double b = std::sqrt(c * c + r * r * s * s);
  const double bdot = wf * (r * r - 1.0) * s * c / b;
  return {b, bdot};
}

ModeCoefficients mode_coefficients(const ChoQuench& q, double t) {
  ModeCoefficients m{};
  const auto sp = scaling_function(q, Mode::plus, t);
  const auto sm = scaling_function(q, Mode::minus, t);
  m.a_plus = q.omega_i_mode(Mode::plus) / (sp.b * sp.b);
  m.b_plus = sp.bdot / sp.b;
  m.a_minus = q.omega_i_mode(Mode::minus) / (sm.b * sm.b);
  m.b_minus = sm.bdot / sm.b;
  return m;
}

ModeCoefficients momentum_coefficients(const ModeCoefficients& m) {
  ModeCoefficients out{};
  const double dp = m.a_plus * m.a_plus + m.b_plus * m.b_plus;
  const double dm = m.a_minus * m.a_minus + m.b_minus * m.b_minus;
  out.a_plus = m.a_plus / dp;
  out.b_plus = -m.b_plus / dp;
  out.a_minus = m.a_minus / dm;
  out.b_minus = -m.b_minus / dm;
  return out;
}

KernelCoefficients kernel_coefficients(const ModeCoefficients& m) {
  if (m.a_plus <= 0.0 || m.a_minus <= 0.0)
    throw std::invalid_argument("kernel_coefficients: A_nu must be positive");
  const double sum_a = m.a_plus + m.a_minus;
  const double da = m.a_plus - m.a_minus;
  const double db = m.b_plus - m.b_minus;
  KernelCoefficients k{};
  k.b = (da * da + db * db) / (4.0 * sum_a);
  k.a = (2.0 * sum_a * sum_a - (da * da - db * db)) / (4.0 * sum_a);
  k.phi = (m.b_plus + m.b_minus) / 4.0 - da * db / (4.0 * sum_a);
  return k;
}

double xi_from_chi(double chi) {
  if (chi <= 0.0) return 0.0;
  if (chi >= 1.0) return 1.0;
  return chi / (1.0 + std::sqrt((1.0 - chi) * (1.0 + chi)));
}

double entropy_from_xi(double xi) {
  if (xi <= 0.0) return 0.0;
  const double one_minus = 1.0 - xi;
  if (one_minus <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-xi) - xi / one_minus * std::log(xi);
}

CoherenceLengths coherence_lengths(const KernelCoefficients& k) {
  if (!(k.a > k.b) || k.b < 0.0)
    throw std::invalid_argument("coherence_lengths: kernel requires A > B >= 0");
  return {1.0 / std::sqrt(k.a - k.b), 1.0 / std::sqrt(k.a + k.b)};
}

EntanglementPoint entanglement_point(const ChoQuench& q, double t) {
  const auto m = mode_coefficients(q, t);
  const auto kx = kernel_coefficients(m);
  const auto kp = kernel_coefficients(momentum_coefficients(m));
  const auto lx = coherence_lengths(kx);
  const auto lp = coherence_lengths(kp);

  EntanglementPoint pt{};
  pt.t = t;
  pt.chi = kx.b / kx.a;
  pt.xi = xi_from_chi(pt.chi);
  pt.saturated = (1.0 - pt.xi) < 1e-15;
  pt.entropy = pt.saturated ? entropy_from_xi(1.0 - 1e-15)
                            : entropy_from_xi(pt.xi);
  pt.l_xs = lx.sym;
  pt.l_xa = lx.anti;
  pt.l_ps = lp.sym;
  pt.l_pa = lp.anti;
  return pt;
}

std::vector<EntanglementPoint> entanglement_entropy_series(
    const ChoQuench& q, const std::vector<double>& ts) {
  std::vector<EntanglementPoint> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(entanglement_point(q, t));
  return out;
}

ModeVariances mode_variances(const ChoQuench& q, double t) {
  const auto m = mode_coefficients(q, t);
  ModeVariances v{};
  v.sigma_x_plus = 1.0 / std::sqrt(2.0 * m.a_plus);
  v.sigma_x_minus = 1.0 / std::sqrt(2.0 * m.a_minus);
  v.sigma_p_plus =
      std::sqrt((m.a_plus * m.a_plus + m.b_plus * m.b_plus) / (2.0 * m.a_plus));
  v.sigma_p_minus = std::sqrt((m.a_minus * m.a_minus + m.b_minus * m.b_minus) /
                              (2.0 * m.a_minus));
  return v;
}

Sector classify_sector(double omega_f_sq) {
  if (omega_f_sq > 0.0) return Sector::stable;
  if (omega_f_sq == 0.0) return Sector::metastable;
  return Sector::unstable;
}

std::array<Sector, 2> classify_sector(const ChoQuench& q) {
  const double wf_plus_sq = q.omega_f * q.omega_f;
  const double wf_minus_sq = wf_plus_sq + 2.0 * q.kappa;
  return {classify_sector(wf_plus_sq), classify_sector(wf_minus_sq)};
}

}  // namespace quench::cho2
