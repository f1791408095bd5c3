#pragma once

#include <array>
#include <vector>

// Closed-form engine for two coupled harmonic oscillators after a global
// frequency quench: Gaussian width scaling, reduced-density-matrix kernel,
// entanglement entropy and coherence lengths.
//
// Conventions: hbar = 1, entropies in nats (natural log) throughout.
namespace quench::cho2 {

enum class Mode { plus, minus };
enum class Sector { stable, metastable, unstable };

struct ChoQuench {
  double omega_i;       // pre-quench on-site frequency, > 0
  double kappa;         // coupling, >= 0
  double omega_f = 0.0; // post-quench on-site frequency, >= 0

  double omega_i_mode(Mode nu) const;  // omega_i or sqrt(omega_i^2 + 2 kappa)
  double omega_f_mode(Mode nu) const;
};

// Ermakov scaling function and its derivative for one normal mode.
// b(0) = 1, bdot(0) = 0.
struct Scaling {
  double b;
  double bdot;
};
Scaling scaling_function(const ChoQuench& q, Mode nu, double t);

// Per-mode Gaussian wave-function coefficients A_nu = omega_i_nu / b^2,
// B_nu = bdot / b, plus the momentum-space counterparts.
struct ModeCoefficients {
  double a_plus, b_plus;    // A_+, B_+
  double a_minus, b_minus;  // A_-, B_-
};
ModeCoefficients mode_coefficients(const ChoQuench& q, double t);

// Momentum-space coefficients: At = A/(A^2+B^2), Bt = -B/(A^2+B^2).
ModeCoefficients momentum_coefficients(const ModeCoefficients& m);

// Composite reduced-density-matrix kernel rho_1 ~ exp[-A(x^2+x'^2)/2 + B x x'
// + i Phi (x^2 - x'^2)].  The same combination formulas apply to the
// momentum-space coefficients.
struct KernelCoefficients {
  double a;    // A > 0
  double b;    // B, with A > B >= 0
  double phi;  // local phase; does not affect the entropy
};
KernelCoefficients kernel_coefficients(const ModeCoefficients& m);

// Mehler-kernel entanglement parameter and entropy.
double xi_from_chi(double chi);
double entropy_from_xi(double xi);

struct CoherenceLengths {
  double sym;   // (A - B)^{-1/2}
  double anti;  // (A + B)^{-1/2}
};
CoherenceLengths coherence_lengths(const KernelCoefficients& k);

struct EntanglementPoint {
  double t;
  double chi;
  double xi;
  double entropy;   // nats
  double l_xs, l_xa;  // position-space coherence lengths
  double l_ps, l_pa;  // momentum-space coherence lengths
  bool saturated;   // 1 - xi below machine resolution; entropy capped
};
EntanglementPoint entanglement_point(const ChoQuench& q, double t);
std::vector<EntanglementPoint> entanglement_entropy_series(
    const ChoQuench& q, const std::vector<double>& ts);

// Per-mode position/momentum widths sigma_x = 1/sqrt(2 A_nu),
// sigma_p = sqrt((A_nu^2 + B_nu^2) / (2 A_nu)).
struct ModeVariances {
  double sigma_x_plus, sigma_x_minus;
  double sigma_p_plus, sigma_p_minus;
};
ModeVariances mode_variances(const ChoQuench& q, double t);

// Dynamical sector per mode from the post-quench frequency:
// > 0 stable, = 0 metastable, imaginary (omega_f^2 < 0) unstable.
std::array<Sector, 2> classify_sector(const ChoQuench& q);
Sector classify_sector(double omega_f_sq);

}  // namespace quench::cho2
