#pragma once

#include <cstdint>
#include <vector>

// Continuum Tomonaga-Luttinger / Klein-Gordon calculator for a pair of
// tunnel-coupled 1d quasi-condensates: mode frequencies of the rescaled
// Hamiltonian, thermal zero-mode variances, the compactness timescale,
// freezing ratios, the compactness-preserving lattice map to rotor chains,
// and wrapped-phase statistics.
//
// All quantities carry SI units unless stated otherwise; the rescaled-mode
// frequencies Omega_k are dimensionless.
namespace quench::fieldtheory {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s (CODATA)
  double k_boltzmann = 1.380649e-23;  // J/K
};

struct CondensateParams {
  double length;          // L, m
  double density_1d;      // n_1D, 1/m
  double g_1d;            // interaction strength, kg m^3 / s^2
  double mass;            // atomic mass, kg
  double tunnel_rate;     // J, angular, 1/s
  double temperature;     // K
  PhysicalConstants constants{};
};

struct ModeSpectrum {
  int k;
  double omega_pre;   // Omega_{i,k}, dimensionless
  double omega_post;  // Omega_{f,k}; zero for k = 0
};
ModeSpectrum mode_frequencies(const CondensateParams& p, int k);

// Thermal variances of the pre-quench zero mode (coth form).
struct ZeroModeVariances {
  double phase;    // sigma^2_{phi_0}(0)
  double density;  // sigma^2_{delta rho_0}(0)
};
ZeroModeVariances thermal_zero_mode_variances(const CondensateParams& p);

// Ballistic zero-mode variance at physical time t (seconds); evaluated in
// rescaled time t~ = 2 g_1d t.
double zero_mode_variance(const CondensateParams& p, double t);

struct TimescaleResult {
  double t_c;             // simplified closed form, seconds
  double t_c_exact;       // root of sigma^2(t) = pi^2 R_0^2 / 3
  double sigma_phase_sq;  // initial variances
  double sigma_density_sq;
  bool deep_quench;       // sigma^2(0) << pi^2 R_0^2 / 3 satisfied
};
// Time at which the zero-mode variance reaches the uniform-circle value
// pi^2 R_0^2 / 3 with R_0 = sqrt(L).
TimescaleResult compactness_timescale(const CondensateParams& p);

struct FreezingRatio {
  double r_k;
  bool frozen;
};
// r_k = sqrt(1 + 4 m J / (hbar (pi k / L)^2)); k >= 1.
FreezingRatio freezing_ratio(const CondensateParams& p, int k,
                             double threshold = 0.05);

struct LatticeMap {
  double omega_sq;   // a^2 hbar J n / g, dimensionless
  double kappa;      // hbar^2 n / (4 m g), dimensionless, independent of N
  double spacing;    // a = L / N, m
  double time_unit;  // seconds per dimensionless lattice time unit
};
// Rotor-chain parameters whose small-angle normal modes reproduce the
// continuum Omega_{i,k} for k << N.
LatticeMap lattice_map(const CondensateParams& p, int sites);

// Wrapped-phase utilities.
double wrap_phase(double x);  // maps R -> [-pi, pi)
// Sample variance of wrapped values about their circular mean.
double wrapped_variance(const std::vector<double>& samples);
std::vector<double> sample_wrapped_gaussian(double sigma, std::size_t n,
                                            std::uint64_t seed);

}  // namespace quench::fieldtheory
