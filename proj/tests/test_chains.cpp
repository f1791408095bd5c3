#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "quench/chains.hpp"
#include "quench/cho2.hpp"
#include "quench/numerics.hpp"
#include "quench/rotor2.hpp"

using namespace quench;
using Complex = std::complex<double>;

namespace {

// Explicit Neumann coupling matrix: omega^2 on the diagonal plus kappa times
// the graph Laplacian of the open path.
Eigen::MatrixXd coupling_matrix(int n, double omega_sq, double kappa) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = omega_sq;
    if (i > 0) {
      k(i, i) += kappa;
      k(i, i - 1) -= kappa;
    }
    if (i + 1 < n) {
      k(i, i) += kappa;
      k(i, i + 1) -= kappa;
    }
  }
  return k;
}

// RK4 integration of the Heisenberg covariance flow
// gamma' = A gamma + gamma A^T with A = [[0, I], [-K, 0]].
chains::Covariance covariance_rk4(const chains::Covariance& gamma0,
                                  const Eigen::MatrixXd& k, double t_end,
                                  int steps) {
  const int n = static_cast<int>(k.rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  a.bottomLeftCorner(n, n) = -k;
  auto flow = [&](const Eigen::MatrixXd& g) {
    return Eigen::MatrixXd(a * g + g * a.transpose());
  };
  Eigen::MatrixXd g = gamma0;
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::MatrixXd k1 = flow(g);
    const Eigen::MatrixXd k2 = flow(g + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = flow(g + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = flow(g + h * k3);
    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return g;
}

}  // namespace

TEST_CASE("neumann_modes: N=2 frequencies and uncoupled limit") {
  chains::ChainParams p{2, 3.0, 5.0};
  const auto modes = chains::neumann_modes(p);
  CHECK(modes.frequencies_pre[0] == doctest::Approx(std::sqrt(3.0)));
  CHECK(modes.frequencies_pre[1] == doctest::Approx(std::sqrt(3.0 + 10.0)));

  chains::ChainParams free_p{6, 2.0, 0.0};
  const auto free_modes = chains::neumann_modes(free_p);
  for (int k = 0; k < 6; ++k)
    CHECK(free_modes.frequencies_pre[k] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("neumann_modes: basis diagonalizes the coupling matrix") {
  chains::ChainParams p{8, 1.7, 2.9};
  const auto modes = chains::neumann_modes(p);
  const Eigen::MatrixXd k = coupling_matrix(8, 1.7, 2.9);
  const Eigen::MatrixXd d =
      modes.basis.transpose() * k * modes.basis;
  for (int i = 0; i < 8; ++i) {
    CHECK(d(i, i) == doctest::Approx(modes.frequencies_pre[i] *
                                     modes.frequencies_pre[i])
                         .epsilon(1e-10));
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(d(i, j)) < 1e-10);
  }
  // orthonormal basis
  CHECK((modes.basis.transpose() * modes.basis -
         Eigen::MatrixXd::Identity(8, 8))
            .norm() < 1e-12);
}

TEST_CASE("ground_covariance: purity and uncoupled limit") {
  chains::ChainParams p{4, 2.0, 0.0};
  const auto gamma = chains::ground_covariance(p);
  const double w = std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(gamma(i, i) == doctest::Approx(0.5 / w));
    CHECK(gamma(4 + i, 4 + i) == doctest::Approx(0.5 * w));
  }

  chains::ChainParams p2{6, 1.5, 0.5};
  const auto nus = chains::symplectic_eigenvalues(chains::ground_covariance(p2));
  for (double nu : nus) CHECK(nu == doctest::Approx(0.5).epsilon(1e-12));

  chains::ChainParams bad{4, 0.0, 1.0};
  CHECK_THROWS_AS(chains::ground_covariance(bad), std::invalid_argument);
}

TEST_CASE("evolve_covariance: t=0, zero mode, purity, ODE oracle") {
  chains::ChainParams p{4, 1.5, 0.5};
  const auto g0 = chains::ground_covariance(p);
  CHECK((chains::evolve_covariance(p, 0.0) - g0).norm() < 1e-12);

  // uniform-mode variance grows as (1 + omega^2 t^2) / (2 omega)
  const auto modes = chains::neumann_modes(p);
  const double omega = modes.frequencies_pre[0];
  for (double t : {0.5, 3.0, 10.0}) {
    const auto g = chains::evolve_covariance(p, t);
    const Eigen::VectorXd f0 = modes.basis.col(0);
    const double x0_var = f0.dot(g.topLeftCorner(4, 4) * f0);
    CHECK(x0_var ==
          doctest::Approx((1.0 + omega * omega * t * t) / (2.0 * omega))
              .epsilon(1e-10));
    // global purity preserved
    const auto nus = chains::symplectic_eigenvalues(g);
    for (double nu : nus) CHECK(std::abs(nu - 0.5) < 1e-9);
  }

  // independent symplectic-ODE oracle for the quenched flow
  const Eigen::MatrixXd k_post = coupling_matrix(4, 0.0, 0.5);
  const auto g_ode = covariance_rk4(g0, k_post, 2.0, 20000);
  CHECK((chains::evolve_covariance(p, 2.0) - g_ode).cwiseAbs().maxCoeff() <
        1e-7);
}

TEST_CASE("half_chain_entropy: closed-form values and complementarity") {
  // single mode nu = 1: S = (3/2) ln(3/2) - (1/2) ln(1/2)
  chains::Covariance g1 = chains::Covariance::Zero(4, 4);
  g1(0, 0) = 1.0;
  g1(2, 2) = 1.0;  // nu_1 = 1 on site 1
  g1(1, 1) = 0.5;
  g1(3, 3) = 0.5;  // nu_2 = 1/2 on site 2
  const double expected =
      1.5 * std::log(1.5) - 0.5 * std::log(0.5);
  CHECK(chains::half_chain_entropy(g1, 1) ==
        doctest::Approx(expected).epsilon(1e-12));

  // pure uncoupled chain: zero across any cut
  chains::ChainParams p{6, 2.0, 0.0};
  const auto g = chains::ground_covariance(p);
  for (int cut : {1, 2, 3}) CHECK(chains::half_chain_entropy(g, cut) < 1e-10);

  // complementarity S_A = S_B for the evolved pure state
  chains::ChainParams p2{6, 1.5, 0.5};
  const auto gt = chains::evolve_covariance(p2, 4.0);
  // reflect the chain to compare the [0,2) cut with the [0,4) cut
  const double s_left = chains::half_chain_entropy(gt, 2);
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(12, 12);
  for (int i = 0; i < 6; ++i) {
    perm(i, 5 - i) = 1.0;
    perm(6 + i, 11 - i) = 1.0;
  }
  const chains::Covariance mirrored = perm * gt * perm.transpose();
  const double s_right = chains::half_chain_entropy(mirrored, 4);
  CHECK(std::abs(s_left - s_right) < 1e-9);
}

TEST_CASE("N=2 covariance entropy equals the Mehler closed form") {
  chains::ChainParams p{2, 10.0, 100.0};
  cho2::ChoQuench q{std::sqrt(10.0), 100.0, 0.0};
  for (double t : {0.0, 0.5, 2.0, 9.0, 30.0}) {
    const auto g = chains::evolve_covariance(p, t);
    const double s_cov = chains::half_chain_entropy(g, 1);
    const double s_mehler = cho2::entanglement_point(q, t).entropy;
    CHECK(std::abs(s_cov - s_mehler) < 1e-9);
  }
}

TEST_CASE("rotor_chain_hamiltonian: N=2 matches the two-rotor engine") {
  const int m = 3;
  const Eigen::MatrixXd h_chain =
      Eigen::MatrixXd(chains::rotor_chain_hamiltonian(2, m, 5.0, 10.0));
  const Eigen::MatrixXd h_rotor =
      Eigen::MatrixXd(rotor2::build_hamiltonian(m, 5.0, 10.0));
  CHECK((h_chain - h_rotor).norm() < 1e-13);

  // free case is diagonal
  const Eigen::MatrixXd h_free =
      Eigen::MatrixXd(chains::rotor_chain_hamiltonian(3, 2, 0.0, 0.0));
  CHECK((h_free - Eigen::MatrixXd(h_free.diagonal().asDiagonal())).norm() <
        1e-14);

  // total momentum conserved post-quench (omega^2 = 0)
  const int mc = 2, sites = 3;
  const auto h_post = chains::rotor_chain_hamiltonian(sites, mc, 0.0, 4.0);
  const int n = 2 * mc + 1, dim = n * n * n;
  Eigen::VectorXd ptot(dim);
  for (int i = 0; i < dim; ++i) {
    int rem = i, sum = 0;
    for (int s = 0; s < sites; ++s) {
      sum += rem % n - mc;
      rem /= n;
    }
    ptot[i] = sum;
  }
  const Eigen::MatrixXd hp = Eigen::MatrixXd(h_post);
  const Eigen::MatrixXd comm =
      hp * Eigen::MatrixXd(ptot.asDiagonal()) -
      Eigen::MatrixXd(ptot.asDiagonal()) * hp;
  CHECK(comm.norm() < 1e-13);
}

TEST_CASE("schmidt_entropy: Bell state across the half cut") {
  const int m = 1, n = 2 * m + 1;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
  psi[(0 + m) * n + (0 + m)] = 1.0 / std::sqrt(2.0);
  psi[(1 + m) * n + (1 + m)] = 1.0 / std::sqrt(2.0);
  CHECK(chains::schmidt_entropy(psi, 2, m) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("rotor_chain_dynamics: N=2 cross-validates against rotor2") {
  const int m = 6;
  const double omega_sq = 1.5, kappa = 0.5;
  std::vector<double> ts;
  for (int i = 0; i <= 20; ++i) ts.push_back(0.5 * i);

  const auto chain = chains::rotor_chain_dynamics(2, m, omega_sq, kappa, ts);

  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, omega_sq, kappa), m);
  const auto spec =
      numerics::eig_sym(Eigen::MatrixXd(rotor2::build_hamiltonian(m, 0.0, kappa)));
  const Eigen::VectorXcd psi0 = g.amplitudes.cast<Complex>();
  for (size_t i = 0; i < ts.size(); ++i) {
    const auto psi = rotor2::evolve(spec, psi0, ts[i]);
    const double s =
        rotor2::entanglement_entropy(rotor2::reduce_site(psi, m));
    CHECK(std::abs(chain.entropies[i] - s) < 1e-8);
  }
  CHECK(chain.ground_energy == doctest::Approx(g.energy).epsilon(1e-10));
}

TEST_CASE("krylov propagation agrees with dense spectral evolution (N=3)") {
  const int m = 2, sites = 3;
  const double kappa = 2.0;
  const auto h_pre = chains::rotor_chain_hamiltonian(sites, m, 1.5, kappa);
  const auto h_post = chains::rotor_chain_hamiltonian(sites, m, 0.0, kappa);
  const int dim = static_cast<int>(h_pre.rows());

  const auto spec_pre = numerics::eig_sym(Eigen::MatrixXd(h_pre));
  const auto spec_post = numerics::eig_sym(Eigen::MatrixXd(h_post));
  const Eigen::VectorXcd psi0 =
      spec_pre.eigenvectors.col(0).cast<Complex>();

  const double t = 3.7;
  const auto dense = rotor2::evolve(spec_post, psi0, t);
  auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out = h_post * in;
  };
  const auto krylov = numerics::krylov_propagate(apply, psi0, t, 1e-12);
  CHECK((dense - krylov).norm() < 1e-9);
  (void)dim;
}
