#include "quench/fieldtheory.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace quench::fieldtheory {

namespace {

const double kPi = std::acos(-1.0);

void validate(const CondensateParams& p) {
  if (p.length <= 0.0 || p.density_1d <= 0.0 || p.g_1d <= 0.0 ||
      p.mass <= 0.0 || p.tunnel_rate < 0.0 || p.temperature <= 0.0)
    throw std::invalid_argument("fieldtheory: non-positive parameter");
}

double gradient_coefficient(const CondensateParams& p) {
  const double hbar = p.constants.hbar;
  return hbar * hbar * p.density_1d / (4.0 * p.mass * p.g_1d);
}

}  // namespace

ModeSpectrum mode_frequencies(const CondensateParams& p, int k) {
  validate(p);
  if (k < 0) throw std::invalid_argument("mode_frequencies: k < 0");
  const double mass_term =
      p.constants.hbar * p.tunnel_rate * p.density_1d / p.g_1d;
  const double kk = kPi * k / p.length;
  const double grad = gradient_coefficient(p) * kk * kk;
  return {k, std::sqrt(mass_term + grad), std::sqrt(grad)};
}

ZeroModeVariances thermal_zero_mode_variances(const CondensateParams& p) {
  const double omega0 = mode_frequencies(p, 0).omega_pre;
  const double arg = p.g_1d * omega0 / (p.constants.k_boltzmann * p.temperature);
  const double coth = 1.0 / std::tanh(arg);
  return {coth / (2.0 * omega0), 0.5 * omega0 * coth};
}

double zero_mode_variance(const CondensateParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("zero_mode_variance: t < 0");
  const auto v0 = thermal_zero_mode_variances(p);
  const double t_rescaled = 2.0 * p.g_1d * t;
  const double rate = t_rescaled / p.constants.hbar;
  return v0.phase + rate * rate * v0.density;
}

TimescaleResult compactness_timescale(const CondensateParams& p) {
  validate(p);
  const double hbar = p.constants.hbar;
  const auto v0 = thermal_zero_mode_variances(p);
  const double target = kPi * kPi * p.length / 3.0;  // R_0 = sqrt(L)

  TimescaleResult r{};
  r.sigma_phase_sq = v0.phase;
  r.sigma_density_sq = v0.density;
  r.deep_quench = v0.phase < 0.1 * target;

  // simplified deep-quench closed form
  const double jn = hbar * p.tunnel_rate * p.density_1d;
  r.t_c = hbar * kPi / (p.g_1d * std::sqrt(6.0)) * std::sqrt(p.length) *
          std::pow(p.g_1d / jn, 0.25) *
          std::sqrt(std::tanh(std::sqrt(p.g_1d * jn) /
                              (p.constants.k_boltzmann * p.temperature)));

  // exact root of sigma^2(t) = pi^2 L / 3
  if (target > v0.phase) {
    const double t_rescaled = hbar * std::sqrt((target - v0.phase) / v0.density);
    r.t_c_exact = t_rescaled / (2.0 * p.g_1d);
  } else {
    r.t_c_exact = 0.0;  // already uniform at t = 0
  }
  return r;
}

FreezingRatio freezing_ratio(const CondensateParams& p, int k,
                             double threshold) {
  validate(p);
  if (k < 1) throw std::invalid_argument("freezing_ratio: k must be >= 1");
  const double kk = kPi * k / p.length;
  const double r =
      std::sqrt(1.0 + 4.0 * p.mass * p.tunnel_rate / (p.constants.hbar * kk * kk));
  return {r, r - 1.0 < threshold};
}

LatticeMap lattice_map(const CondensateParams& p, int sites) {
  validate(p);
  if (sites < 2) throw std::invalid_argument("lattice_map: N < 2");
  const double hbar = p.constants.hbar;
  const double a = p.length / sites;
  LatticeMap map{};
  map.spacing = a;
  map.omega_sq = a * a * hbar * p.tunnel_rate * p.density_1d / p.g_1d;
  map.kappa = hbar * hbar * p.density_1d / (4.0 * p.mass * p.g_1d);
  map.time_unit = hbar * a / (2.0 * p.g_1d);
  return map;
}

double wrap_phase(double x) {
  const double two_pi = 2.0 * kPi;
  double w = x - two_pi * std::floor((x + kPi) / two_pi);
  if (w >= kPi) w -= two_pi;  // guard against rounding at the branch cut
  return w;
}

double wrapped_variance(const std::vector<double>& samples) {
  if (samples.empty())
    throw std::invalid_argument("wrapped_variance: empty sample set");
  double c = 0.0, s = 0.0;
  for (double x : samples) {
    c += std::cos(x);
    s += std::sin(x);
  }
  const double mean = std::atan2(s, c);
  double var = 0.0;
  for (double x : samples) {
    const double d = wrap_phase(x - mean);
    var += d * d;
  }
  return var / static_cast<double>(samples.size());
}

std::vector<double> sample_wrapped_gaussian(double sigma, std::size_t n,
                                            std::uint64_t seed) {
  if (sigma < 0.0 || n < 1)
    throw std::invalid_argument("sample_wrapped_gaussian: bad arguments");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = wrap_phase(sigma * dist(gen));
  return out;
}

}  // namespace quench::fieldtheory
