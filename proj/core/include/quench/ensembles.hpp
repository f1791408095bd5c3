#pragma once

#include <Eigen/Dense>

#include "quench/numerics.hpp"
#include "quench/rotor2.hpp"

// Stationary ensembles and bounds for the two-rotor quench: diagonal and
// block-diagonal ensembles, the parity-constrained GGE, the analytic ceiling
// estimate and the uniform-in-time Gibbs-variational bound.
namespace quench::ensembles {

// rho_DE = sum_n |<n|psi0>|^2 |n><n| in the full two-rotor basis.
Eigen::MatrixXd diagonal_ensemble(const numerics::SpectralDecomposition& spec,
                                  const Eigen::VectorXd& psi0);

// Keeps coherences between eigenstates with |E_m - E_n| <= deg_tol * scale.
Eigen::MatrixXd block_diagonal_ensemble(
    const numerics::SpectralDecomposition& spec, const Eigen::VectorXd& psi0,
    double deg_tol = 1e-9);

// Partial trace of a full-basis density matrix over site 2.
Eigen::MatrixXd reduce_site_mixed(const Eigen::MatrixXd& rho, int cutoff);

// Entropy of a real symmetric density matrix (nats).
double entropy(const Eigen::MatrixXd& rho);

// Conserved sector energies of the post-quench Hamiltonian:
// E_+ = <(p1+p2)^2>/4, E_- = <(p1-p2)^2>/4 + kappa (1 - <cos(x1-x2)>).
std::pair<double, double> conserved_energies(const Eigen::VectorXcd& psi0,
                                             int cutoff, double kappa);

struct GgeSolution {
  double lambda_plus;
  double lambda_minus;
  double energy_plus;      // matched E_+
  double energy_minus;     // matched E_-
  double residual_plus;    // energy-matching errors
  double residual_minus;
};

// Lagrange multipliers of the parity-constrained GGE matching (E_+, E_-).
GgeSolution gge_solve(double kappa, int cutoff, double e_plus, double e_minus,
                      double tol = 1e-10);

// Single-site entropy of the GGE state; the reduced matrix is diagonal in the
// single-rotor momentum basis because every GGE eigenstate has definite total
// momentum.
double gge_reduced_entropy(const GgeSolution& g, double kappa, int cutoff);

// Closed-form ceiling estimate 1/2 ln[(pi e / 2)(omega + sqrt(omega^2+2kappa))].
double analytic_gge_estimate(double omega, double kappa);

struct BoundResult {
  double beta_star;  // inverse temperature matching E_1(beta*) = E_tot
  double bound;      // beta* E_tot + ln Z_1(beta*), nats
  double e_tot;
};

// Uniform-in-time entropy bound from the Gibbs variational principle with
// h_1 = p_1^2 / 2, Z_1(beta) = sum_p exp(-beta p^2 / 2).
BoundResult uniform_bound(double e_tot);

// Theta-sum helpers (truncated with tail below 1e-14).
double theta_partition(double beta);       // sum_p e^{-beta p^2 / 2}
double theta_mean_energy(double beta);     // <p^2/2> under the theta weight

}  // namespace quench::ensembles
