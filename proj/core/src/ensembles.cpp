#include "quench/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace quench::ensembles {

Eigen::MatrixXd diagonal_ensemble(const numerics::SpectralDecomposition& spec,
                                  const Eigen::VectorXd& psi0) {
  const Eigen::VectorXd c = spec.eigenvectors.transpose() * psi0;
  return spec.eigenvectors * c.cwiseAbs2().asDiagonal() *
         spec.eigenvectors.transpose();
}

Eigen::MatrixXd block_diagonal_ensemble(
    const numerics::SpectralDecomposition& spec, const Eigen::VectorXd& psi0,
    double deg_tol) {
  const int dim = static_cast<int>(psi0.size());
  const Eigen::VectorXd c = spec.eigenvectors.transpose() * psi0;
  const double scale =
      std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  int start = 0;
  while (start < dim) {
    int end = start + 1;
    while (end < dim && spec.eigenvalues[end] - spec.eigenvalues[end - 1] <=
                            deg_tol * scale)
      ++end;
    // project |psi0> onto the degenerate block and keep its coherences
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (int n = start; n < end; ++n) v += c[n] * spec.eigenvectors.col(n);
    rho.noalias() += v * v.transpose();
    start = end;
  }
  return rho;
}

Eigen::MatrixXd reduce_site_mixed(const Eigen::MatrixXd& rho, int cutoff) {
  const int n = 2 * cutoff + 1;
  Eigen::MatrixXd r1 = Eigen::MatrixXd::Zero(n, n);
  for (int p1 = 0; p1 < n; ++p1)
    for (int q1 = 0; q1 < n; ++q1)
      for (int p2 = 0; p2 < n; ++p2)
        r1(p1, q1) += rho(p1 * n + p2, q1 * n + p2);
  return r1;
}

double entropy(const Eigen::MatrixXd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
  double s = 0.0;
  for (double lam : solver.eigenvalues())
    if (lam > 0.0) s -= lam * std::log(lam);
  return std::max(0.0, s);
}

std::pair<double, double> conserved_energies(const Eigen::VectorXcd& psi0,
                                             int cutoff, double kappa) {
  using rotor2::index_of;
  double e_plus = 0.0, e_kin_minus = 0.0;
  for (int p1 = -cutoff; p1 <= cutoff; ++p1)
    for (int p2 = -cutoff; p2 <= cutoff; ++p2) {
      const double w = std::norm(psi0[index_of(p1, p2, cutoff)]);
      e_plus += 0.25 * (p1 + p2) * (p1 + p2) * w;
      e_kin_minus += 0.25 * (p1 - p2) * (p1 - p2) * w;
    }
  const double cos_rel =
      rotor2::expectation_cos(psi0, cutoff, rotor2::CosObservable::diff);
  return {e_plus, e_kin_minus + kappa * (1.0 - cos_rel)};
}

namespace {

struct SectorSums {
  double z;  // partition sum (possibly shifted by a common factor)
  double e;  // energy-weighted sum, same shift
};

// Zero-mode sums over p of a given parity with exact levels p^2/4.
SectorSums zero_mode_sums(double lambda, int parity) {
  const int pmax =
      std::max(4, static_cast<int>(std::ceil(std::sqrt(160.0 / lambda))) + 2);
  SectorSums s{0.0, 0.0};
  for (int p = -pmax; p <= pmax; ++p) {
    if (((p % 2) + 2) % 2 != parity) continue;
    const double e = 0.25 * p * p;
    const double w = std::exp(-lambda * e);
    s.z += w;
    s.e += e * w;
  }
  return s;
}

// Relative-sector sums over the numerically computed levels, shifted by
// e_shift to avoid underflow at large lambda.
SectorSums relative_sums(const Eigen::VectorXd& levels, double lambda,
                         double e_shift) {
  SectorSums s{0.0, 0.0};
  for (double e : levels) {
    const double w = std::exp(-lambda * (e - e_shift));
    s.z += w;
    s.e += e * w;
  }
  return s;
}

struct GgeModel {
  rotor2::PostQuenchSpectra spectra;
  double e_shift;  // min relative level across parities

  std::pair<double, double> energies(double lp, double lm) const {
    const auto zp_e = zero_mode_sums(lp, 0);
    const auto zp_o = zero_mode_sums(lp, 1);
    const auto zm_e = relative_sums(spectra.relative_even.levels, lm, e_shift);
    const auto zm_o = relative_sums(spectra.relative_odd.levels, lm, e_shift);
    const double z = zp_e.z * zm_e.z + zp_o.z * zm_o.z;
    const double e_plus = (zp_e.e * zm_e.z + zp_o.e * zm_o.z) / z;
    const double e_minus = (zp_e.z * zm_e.e + zp_o.z * zm_o.e) / z;
    return {e_plus, e_minus};
  }
};

}  // namespace

GgeSolution gge_solve(double kappa, int cutoff, double e_plus, double e_minus,
                      double tol) {
  if (e_plus <= 0.0)
    throw std::invalid_argument("gge_solve: E_+ must be positive");

  GgeModel model{rotor2::post_quench_spectra(kappa, cutoff), 0.0};
  model.e_shift = std::min(model.spectra.relative_even.levels[0],
                           model.spectra.relative_odd.levels[0]);
  if (e_minus <= model.e_shift)
    throw std::invalid_argument(
        "gge_solve: E_- below the relative-sector ground energy");

  // Initial guesses: Gaussian-sum estimate for lambda_+, a one-dimensional
  // relative-only match for lambda_-.
  double lp0 = 1.0 / (2.0 * e_plus);
  auto rel_energy = [&](double lm) {
    const auto se = relative_sums(model.spectra.relative_even.levels, lm,
                                  model.e_shift);
    const auto so = relative_sums(model.spectra.relative_odd.levels, lm,
                                  model.e_shift);
    return (se.e + so.e) / (se.z + so.z) - e_minus;
  };
  double lo = 1e-8, hi = 1.0;
  while (rel_energy(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  double lm0 = (rel_energy(lo) * rel_energy(hi) <= 0.0)
                   ? numerics::find_root_1d(rel_energy, {lo, hi}, 1e-12)
                   : 1.0;

  const double scale_p = std::max(1.0, e_plus);
  const double scale_m = std::max(1.0, std::abs(e_minus));
  auto residual = [&](double u, double v) {
    const auto [ep, em] = model.energies(std::exp(u), std::exp(v));
    return std::make_pair((ep - e_plus) / scale_p, (em - e_minus) / scale_m);
  };
  auto [u, v] = numerics::find_root_2d(residual, {std::log(lp0), std::log(lm0)},
                                       tol);

  GgeSolution g{};
  g.lambda_plus = std::exp(u);
  g.lambda_minus = std::exp(v);
  const auto [ep, em] = model.energies(g.lambda_plus, g.lambda_minus);
  g.energy_plus = ep;
  g.energy_minus = em;
  g.residual_plus = ep - e_plus;
  g.residual_minus = em - e_minus;
  return g;
}

double gge_reduced_entropy(const GgeSolution& g, double kappa, int cutoff) {
  const auto spectra = rotor2::post_quench_spectra(kappa, cutoff);
  const double e_shift = std::min(spectra.relative_even.levels[0],
                                  spectra.relative_odd.levels[0]);
  const int pmax = std::max(
      2 * cutoff,
      static_cast<int>(std::ceil(std::sqrt(160.0 / g.lambda_plus))) + 2);

  // Eigenstates |p> x |rel_n> with parity(p) = parity(d).  Every such state
  // has definite total momentum, so the reduced matrix is diagonal in p1 and
  // lambda(p1) accumulates w(p, n) |psi_n(2 p1 - p)|^2.
  const int dmax = 2 * cutoff;
  const int p1_half = (pmax + dmax) / 2 + 1;
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(2 * p1_half + 1);

  double z = 0.0;
  for (int parity = 0; parity < 2; ++parity) {
    const auto& rel =
        parity == 0 ? spectra.relative_even : spectra.relative_odd;
    for (int p = -pmax; p <= pmax; ++p) {
      if (((p % 2) + 2) % 2 != parity) continue;
      const double wp = std::exp(-g.lambda_plus * 0.25 * p * p);
      for (int n = 0; n < rel.levels.size(); ++n) {
        const double w =
            wp * std::exp(-g.lambda_minus * (rel.levels[n] - e_shift));
        if (w < 1e-18) continue;
        z += w;
        for (int i = 0; i < static_cast<int>(rel.d_values.size()); ++i) {
          const int d = rel.d_values[i];
          const int p1 = (p + d) / 2;  // same parity by construction
          if (std::abs(p1) > p1_half) continue;
          const double amp = rel.vectors(i, n);
          lam[p1 + p1_half] += w * amp * amp;
        }
      }
    }
  }
  lam /= z;
  double s = 0.0;
  for (double l : lam)
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

double analytic_gge_estimate(double omega, double kappa) {
  if (omega <= 0.0 || kappa < 0.0)
    throw std::invalid_argument("analytic_gge_estimate: invalid parameters");
  const double pi = std::acos(-1.0);
  return 0.5 * std::log(0.5 * pi * std::exp(1.0) *
                        (omega + std::sqrt(omega * omega + 2.0 * kappa)));
}

double theta_partition(double beta) {
  const int pmax = static_cast<int>(std::ceil(std::sqrt(80.0 / beta))) + 2;
  double z = 1.0;
  for (int p = 1; p <= pmax; ++p) z += 2.0 * std::exp(-0.5 * beta * p * p);
  return z;
}

double theta_mean_energy(double beta) {
  const int pmax = static_cast<int>(std::ceil(std::sqrt(80.0 / beta))) + 2;
  double z = 1.0, e = 0.0;
  for (int p = 1; p <= pmax; ++p) {
    const double w = 2.0 * std::exp(-0.5 * beta * p * p);
    z += w;
    e += 0.5 * p * p * w;
  }
  return e / z;
}

BoundResult uniform_bound(double e_tot) {
  if (e_tot < 0.0) throw std::invalid_argument("uniform_bound: E_tot < 0");
  if (e_tot == 0.0) return {std::numeric_limits<double>::infinity(), 0.0, 0.0};

  auto f = [&](double beta) { return theta_mean_energy(beta) - e_tot; };
  double lo = 1e-12, hi = 1.0;
  while (f(lo) < 0.0 && lo > 1e-300) lo *= 1e-2;   // E_1 grows as beta -> 0
  while (f(hi) > 0.0 && hi < 1e4) hi *= 2.0;
  const double beta_star = numerics::find_root_1d(f, {lo, hi}, 1e-14);
  const double bound = beta_star * e_tot + std::log(theta_partition(beta_star));
  return {beta_star, bound, e_tot};
}

}  // namespace quench::ensembles
