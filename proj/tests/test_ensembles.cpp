#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "quench/ensembles.hpp"
#include "quench/numerics.hpp"
#include "quench/rotor2.hpp"

using namespace quench;
using Complex = std::complex<double>;

TEST_CASE("diagonal_ensemble: eigenstates and two-term superpositions") {
  const int m = 3;
  const auto h = rotor2::build_hamiltonian(m, 0.0, 5.0);
  const auto spec = numerics::eig_sym(Eigen::MatrixXd(h));

  // an eigenstate maps to a pure projector
  const Eigen::VectorXd v0 = spec.eigenvectors.col(4);
  const auto rho = ensembles::diagonal_ensemble(spec, v0);
  CHECK((rho - v0 * v0.transpose()).norm() < 1e-10);

  // equal superposition of two eigenstates
  const Eigen::VectorXd v =
      (spec.eigenvectors.col(0) + spec.eigenvectors.col(7)) / std::sqrt(2.0);
  const auto rho2 = ensembles::diagonal_ensemble(spec, v);
  const Eigen::MatrixXd expected =
      0.5 * spec.eigenvectors.col(0) * spec.eigenvectors.col(0).transpose() +
      0.5 * spec.eigenvectors.col(7) * spec.eigenvectors.col(7).transpose();
  CHECK((rho2 - expected).norm() < 1e-10);
  CHECK(std::abs(rho2.trace() - 1.0) < 1e-12);
}

TEST_CASE("block_diagonal_ensemble: reduces to DE without degeneracies") {
  // strictly non-degenerate spectrum: perturbed diagonal matrix
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) h(i, i) = i * 1.37;
  const auto spec = numerics::eig_sym(h);
  Eigen::VectorXd psi = Eigen::VectorXd::LinSpaced(6, 0.3, 1.0);
  psi /= psi.norm();
  const auto de = ensembles::diagonal_ensemble(spec, psi);
  const auto bde = ensembles::block_diagonal_ensemble(spec, psi);
  CHECK((de - bde).norm() < 1e-12);
}

TEST_CASE("ensemble entropies at a strongly coupled point") {
  const double omega_sq = 10.0, kappa = 100.0;
  const int m = rotor2::auto_cutoff(omega_sq, kappa);
  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, omega_sq, kappa), m);
  const auto spec =
      numerics::eig_sym(Eigen::MatrixXd(rotor2::build_hamiltonian(m, 0.0, kappa)));

  const auto de = ensembles::diagonal_ensemble(spec, g.amplitudes);
  const auto bde = ensembles::block_diagonal_ensemble(spec, g.amplitudes);
  const double s_de =
      ensembles::entropy(ensembles::reduce_site_mixed(de, m));
  const double s_bde =
      ensembles::entropy(ensembles::reduce_site_mixed(bde, m));
  // retaining degenerate coherences can only lower the single-site entropy here
  CHECK(s_bde <= s_de + 1e-10);
  CHECK(s_de > 0.0);

  // the BDE keeps strictly more information at this point
  CHECK(s_de - s_bde > 1e-3);
}

TEST_CASE("conserved_energies: momentum eigenstate and sum rule") {
  const int m = 6;
  const int dim = rotor2::basis_dim(m);
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(dim);
  delta[rotor2::index_of(0, 0, m)] = 1.0;
  const double kappa = 13.0;
  const auto [ep0, em0] = ensembles::conserved_energies(delta, m, kappa);
  CHECK(ep0 == doctest::Approx(0.0));
  CHECK(em0 == doctest::Approx(kappa));

  // E_+ + E_- equals the full post-quench energy expectation
  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, 3.0, kappa), m, 1e-3);
  const Eigen::VectorXcd psi = g.amplitudes.cast<Complex>();
  const auto [ep, em] = ensembles::conserved_energies(psi, m, kappa);
  const Eigen::MatrixXd h_post =
      Eigen::MatrixXd(rotor2::build_hamiltonian(m, 0.0, kappa));
  const double direct =
      (psi.adjoint() * (h_post * psi))(0, 0).real();
  CHECK(std::abs(ep + em - direct) < 1e-12);
}

TEST_CASE("gge_solve: residuals and the Gaussian-sum regime") {
  const double omega_sq = 10.0, kappa = 100.0;
  const int m = rotor2::auto_cutoff(omega_sq, kappa);
  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, omega_sq, kappa), m);
  const auto [ep, em] = ensembles::conserved_energies(
      g.amplitudes.cast<Complex>(), m, kappa);
  const auto gge = ensembles::gge_solve(kappa, m, ep, em);
  CHECK(std::abs(gge.residual_plus) < 1e-8 * std::max(1.0, ep));
  CHECK(std::abs(gge.residual_minus) < 1e-8 * std::max(1.0, em));
  // deep harmonic regime: E_+ ~ omega/4 and E_+ ~ 1/(2 lambda_+)
  CHECK(ep == doctest::Approx(std::sqrt(omega_sq) / 4.0).epsilon(0.05));
  CHECK(ep == doctest::Approx(1.0 / (2.0 * gge.lambda_plus)).epsilon(0.1));
}

TEST_CASE("gge_reduced_entropy vs the analytic ceiling estimate") {
  const double omega_sq = 10.0, kappa = 100.0;
  const int m = rotor2::auto_cutoff(omega_sq, kappa);
  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, omega_sq, kappa), m);
  const auto [ep, em] = ensembles::conserved_energies(
      g.amplitudes.cast<Complex>(), m, kappa);
  const auto gge = ensembles::gge_solve(kappa, m, ep, em);
  const double s_gge = ensembles::gge_reduced_entropy(gge, kappa, m);
  const double s_est =
      ensembles::analytic_gge_estimate(std::sqrt(omega_sq), kappa);
  CHECK(s_gge > 0.0);
  CHECK(std::abs(s_gge - s_est) / s_gge < 0.05);
}

TEST_CASE("analytic_gge_estimate: closed-form values and monotonicity") {
  const double pi = std::acos(-1.0);
  const double s = ensembles::analytic_gge_estimate(std::sqrt(10.0), 100.0);
  const double expected =
      0.5 * std::log(0.5 * pi * std::exp(1.0) *
                     (std::sqrt(10.0) + std::sqrt(210.0)));
  CHECK(s == doctest::Approx(expected).epsilon(1e-14));
  CHECK(s == doctest::Approx(2.161).epsilon(1e-3));
  // kappa = 0 limit
  CHECK(ensembles::analytic_gge_estimate(2.0, 0.0) ==
        doctest::Approx(0.5 * std::log(pi * std::exp(1.0) * 2.0)));
  // monotone in both arguments
  CHECK(ensembles::analytic_gge_estimate(2.0, 5.0) >
        ensembles::analytic_gge_estimate(1.0, 5.0));
  CHECK(ensembles::analytic_gge_estimate(2.0, 6.0) >
        ensembles::analytic_gge_estimate(2.0, 5.0));
}

TEST_CASE("theta sums: truncation against a brute-force oracle") {
  for (double beta : {0.01, 0.1, 1.0, 10.0}) {
    double z = 0.0, e = 0.0;
    for (int p = -4000; p <= 4000; ++p) {
      const double w = std::exp(-0.5 * beta * p * p);
      z += w;
      e += 0.5 * p * p * w;
    }
    CHECK(ensembles::theta_partition(beta) ==
          doctest::Approx(z).epsilon(1e-13));
    CHECK(ensembles::theta_mean_energy(beta) ==
          doctest::Approx(e / z).epsilon(1e-12));
  }
}

TEST_CASE("uniform_bound: limits and the Gaussian-integral regime") {
  // E_tot -> 0 gives a vanishing bound
  const auto small = ensembles::uniform_bound(1e-8);
  CHECK(small.bound >= 0.0);
  CHECK(small.bound < 1e-6);
  CHECK(ensembles::uniform_bound(0.0).bound == 0.0);

  // bound is consistent: E_1(beta*) = E_tot
  const auto b = ensembles::uniform_bound(5.0);
  CHECK(ensembles::theta_mean_energy(b.beta_star) ==
        doctest::Approx(5.0).epsilon(1e-10));
  CHECK(b.bound ==
        doctest::Approx(b.beta_star * 5.0 +
                        std::log(ensembles::theta_partition(b.beta_star))));

  // large E_tot: matches the Gaussian entropy 1/2 ln(2 pi e sigma^2) with
  // momentum variance sigma^2 = 2 E_tot
  const double pi = std::acos(-1.0);
  const auto big = ensembles::uniform_bound(500.0);
  const double gauss =
      0.5 * std::log(2.0 * pi * std::exp(1.0) * 2.0 * 500.0);
  CHECK(std::abs(big.bound - gauss) / gauss < 0.01);

  // monotone increasing in E_tot
  CHECK(ensembles::uniform_bound(2.0).bound < ensembles::uniform_bound(4.0).bound);
}
