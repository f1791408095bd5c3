#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "quench/numerics.hpp"

// N-site chains with Neumann boundary conditions: harmonic chains via the
// Gaussian covariance-matrix formalism and rotor chains (N <= 4) via sparse
// exact diagonalization.
namespace quench::chains {

struct ChainParams {
  int sites;        // N, even and >= 2
  double omega_sq;  // pre-quench on-site strength
  double kappa;     // nearest-neighbour coupling
  double omega_f = 0.0;  // post-quench on-site frequency
};

// Normal modes of the Neumann-coupled chain: frequencies
// omega_k = sqrt(omega^2 + 4 kappa sin^2(k pi / 2N)) and an orthonormal
// cosine basis, k = 0 the uniform mode.
struct NormalModes {
  Eigen::VectorXd frequencies_pre;   // omega_{i,k}, ascending in k
  Eigen::VectorXd frequencies_post;  // omega_{f,k}
  Eigen::MatrixXd basis;             // columns f_k(n)
};
NormalModes neumann_modes(const ChainParams& params);

// 2N x 2N second-moment matrix in (x_1..x_N, p_1..p_N) ordering.
using Covariance = Eigen::MatrixXd;

// Ground-state covariance of the pre-quench chain; requires omega > 0.
Covariance ground_covariance(const ChainParams& params);

// Post-quench Gaussian evolution of the pre-quench ground state, using the
// per-mode closed forms <X^2> = b^2/(2 w_i), <P^2> = (w_i^2/b^2 + bdot^2)/(2 w_i),
// <{X,P}>/2 = b bdot / (2 w_i).
Covariance evolve_covariance(const ChainParams& params, double t);

// Symplectic eigenvalues of the reduced covariance of sites [0, n_a).
Eigen::VectorXd symplectic_eigenvalues(const Covariance& gamma);
double half_chain_entropy(const Covariance& gamma, int n_a);

// Rotor chain over {-M..M}^N, open ends:
// H = 1/2 sum p_n^2 + omega_sq sum (1 - cos x_n) + kappa sum (1 - cos(x_n - x_{n+1})).
Eigen::SparseMatrix<double> rotor_chain_hamiltonian(int sites, int cutoff,
                                                    double omega_sq,
                                                    double kappa);

struct RotorChainResult {
  std::vector<double> times;
  std::vector<double> entropies;  // half-chain, nats
  double ground_energy;
  double boundary_weight;
};

// Ground state of the pre-quench rotor chain evolved under the quenched
// Hamiltonian (omega_sq -> 0); half-chain entropy via Schmidt decomposition.
// Dense spectral evolution below ~4096 states, Krylov propagation above.
RotorChainResult rotor_chain_dynamics(int sites, int cutoff, double omega_sq,
                                      double kappa,
                                      const std::vector<double>& ts,
                                      double krylov_tol = 1e-10);

// Half-chain entropy of an amplitude vector over {-M..M}^N.
double schmidt_entropy(const Eigen::VectorXcd& psi, int sites, int cutoff);

}  // namespace quench::chains
