#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <vector>

#include "quench/numerics.hpp"

// Two coupled quantum rotors in a truncated angular-momentum basis
// p_n in {-M..M}: Hamiltonian assembly, ground state, spectral time
// evolution, reduced density matrices and observables.
//
// Basis ordering: index = (p1 + M) * (2M+1) + (p2 + M).
namespace quench::rotor2 {

using Complex = std::complex<double>;

struct RotorParams {
  double omega_sq;  // pre-quench on-site strength omega^2, >= 0
  double kappa;     // coupling, >= 0
  int cutoff;       // momentum cutoff M >= 1
};

inline int basis_dim(int cutoff) { return (2 * cutoff + 1) * (2 * cutoff + 1); }
inline int index_of(int p1, int p2, int cutoff) {
  return (p1 + cutoff) * (2 * cutoff + 1) + (p2 + cutoff);
}

// H = 1/2 (p1^2+p2^2) + omega_sq (2 - cos x1 - cos x2) + kappa (1 - cos(x1-x2))
// with cos terms acting as half-shifts in momentum space.
Eigen::SparseMatrix<double> build_hamiltonian(int cutoff, double omega_sq,
                                              double kappa);

struct GroundState {
  double energy;
  Eigen::VectorXd amplitudes;     // real, unit norm
  double boundary_weight;         // total weight on |p1|=M or |p2|=M
};
// Lowest eigenpair; dense below ~4096 states, Lanczos above.  Throws if the
// boundary weight exceeds truncation_tol (enlarge M).
GroundState ground_state(const Eigen::SparseMatrix<double>& h, int cutoff,
                         double truncation_tol = 1e-8);

// Smallest cutoff whose pre-quench ground state has boundary weight below tol.
int auto_cutoff(double omega_sq, double kappa, double tol = 1e-10);

// Spectral evolution c(t) = sum_n e^{-i E_n t} <n|psi0> |n>.
Eigen::VectorXcd evolve(const numerics::SpectralDecomposition& spec,
                        const Eigen::VectorXcd& psi0, double t);

double boundary_weight(const Eigen::VectorXcd& psi, int cutoff);

// rho_1(p1, p1') = sum_{p2} c(p1,p2) conj(c(p1',p2))
Eigen::MatrixXcd reduce_site(const Eigen::VectorXcd& psi, int cutoff);

// von Neumann entropy in nats; tolerates eigenvalues down to -1e-10.
double entanglement_entropy(const Eigen::MatrixXcd& rho);

enum class CosObservable { sum, diff, site1 };  // cos(x1+x2), cos(x1-x2), cos x1
double expectation_cos(const Eigen::VectorXcd& psi, int cutoff,
                       CosObservable which);

// f(p; t) = sum over the other site of |c|^2.  site is 1 or 2.
Eigen::VectorXd momentum_marginal(const Eigen::VectorXcd& psi, int cutoff,
                                  int site);

// Position-space kernel rho_1(x, x') on a uniform angle grid of n_x points in
// [-pi, pi); requires n_x >= 2M+1.
Eigen::MatrixXcd position_kernel(const Eigen::MatrixXcd& rho, int n_x);

// Post-quench spectra: exact zero-mode levels p^2/4 and the relative-sector
// levels computed in the truncated relative-momentum basis d in {-2M..2M},
// split by parity of d (equal to the parity of the total momentum p).
struct RelativeSector {
  std::vector<int> d_values;   // relative momenta, one per basis column
  Eigen::VectorXd levels;      // ascending
  Eigen::MatrixXd vectors;     // eigenvectors over d_values
};
struct PostQuenchSpectra {
  std::vector<int> zero_mode_p;       // -2M..2M
  Eigen::VectorXd zero_mode_levels;   // p^2/4 in the same order
  RelativeSector relative_even;       // d even
  RelativeSector relative_odd;        // d odd
};
PostQuenchSpectra post_quench_spectra(double kappa, int cutoff);

}  // namespace quench::rotor2
