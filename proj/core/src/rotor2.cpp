#include "quench/rotor2.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace quench::rotor2 {

Eigen::SparseMatrix<double> build_hamiltonian(int cutoff, double omega_sq,
                                              double kappa) {
  if (cutoff < 1) throw std::invalid_argument("build_hamiltonian: M < 1");
  const int n = 2 * cutoff + 1;
  const int dim = n * n;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(dim) * 6);

  for (int p1 = -cutoff; p1 <= cutoff; ++p1) {
    for (int p2 = -cutoff; p2 <= cutoff; ++p2) {
      const int row = index_of(p1, p2, cutoff);
      trip.emplace_back(row, row,
                        0.5 * (p1 * p1 + p2 * p2) + 2.0 * omega_sq + kappa);
      // on-site cos terms: single-momentum shifts
      if (p1 + 1 <= cutoff)
        trip.emplace_back(row, index_of(p1 + 1, p2, cutoff), -0.5 * omega_sq);
      if (p1 - 1 >= -cutoff)
        trip.emplace_back(row, index_of(p1 - 1, p2, cutoff), -0.5 * omega_sq);
      if (p2 + 1 <= cutoff)
        trip.emplace_back(row, index_of(p1, p2 + 1, cutoff), -0.5 * omega_sq);
      if (p2 - 1 >= -cutoff)
        trip.emplace_back(row, index_of(p1, p2 - 1, cutoff), -0.5 * omega_sq);
      // coupling cos(x1-x2): counter-shifts
      if (p1 + 1 <= cutoff && p2 - 1 >= -cutoff)
        trip.emplace_back(row, index_of(p1 + 1, p2 - 1, cutoff), -0.5 * kappa);
      if (p1 - 1 >= -cutoff && p2 + 1 <= cutoff)
        trip.emplace_back(row, index_of(p1 - 1, p2 + 1, cutoff), -0.5 * kappa);
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

namespace {

double boundary_weight_impl(const Eigen::VectorXd& abs2, int cutoff) {
  double w = 0.0;
  for (int p1 = -cutoff; p1 <= cutoff; ++p1)
    for (int p2 = -cutoff; p2 <= cutoff; ++p2)
      if (std::abs(p1) == cutoff || std::abs(p2) == cutoff)
        w += abs2[index_of(p1, p2, cutoff)];
  return w;
}

}  // namespace

double boundary_weight(const Eigen::VectorXcd& psi, int cutoff) {
  return boundary_weight_impl(psi.cwiseAbs2(), cutoff);
}

GroundState ground_state(const Eigen::SparseMatrix<double>& h, int cutoff,
                         double truncation_tol) {
  const int dim = static_cast<int>(h.rows());
  GroundState gs{};
  if (dim <= 4096) {
    auto spec = numerics::eig_sym(Eigen::MatrixXd(h));
    gs.energy = spec.eigenvalues[0];
    gs.amplitudes = spec.eigenvectors.col(0);
  } else {
    auto [e, v] = numerics::lanczos_ground(
        [&h](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = h * in; },
        dim);
    gs.energy = e;
    gs.amplitudes = v;
  }
  if (gs.amplitudes.sum() < 0.0) gs.amplitudes = -gs.amplitudes;  // sign gauge
  gs.boundary_weight = boundary_weight_impl(gs.amplitudes.cwiseAbs2(), cutoff);
  if (gs.boundary_weight > truncation_tol)
    throw std::runtime_error(
        "ground_state: truncation boundary weight " +
        std::to_string(gs.boundary_weight) + " above tolerance; increase M");
  return gs;
}

int auto_cutoff(double omega_sq, double kappa, double tol) {
  int m = static_cast<int>(
      std::ceil(4.0 + 2.0 * std::pow(omega_sq + 2.0 * kappa, 0.25)));
  for (int attempt = 0; attempt < 12; ++attempt) {
    auto h = build_hamiltonian(m, omega_sq, kappa);
    auto gs = ground_state(h, m, 1.0);  // no throw, inspect weight directly
    if (gs.boundary_weight < tol) return m;
    m += 4;
  }
  throw std::runtime_error("auto_cutoff: boundary weight did not converge");
}

Eigen::VectorXcd evolve(const numerics::SpectralDecomposition& spec,
                        const Eigen::VectorXcd& psi0, double t) {
  if (spec.eigenvectors.rows() != psi0.size())
    throw std::invalid_argument("evolve: dimension mismatch");
  Eigen::VectorXcd coeff = spec.eigenvectors.transpose() * psi0;
  for (int i = 0; i < coeff.size(); ++i)
    coeff[i] *= std::exp(Complex(0.0, -spec.eigenvalues[i] * t));
  return spec.eigenvectors * coeff;
}

Eigen::MatrixXcd reduce_site(const Eigen::VectorXcd& psi, int cutoff) {
  const int n = 2 * cutoff + 1;
  // rows of the reshaped amplitude matrix are p1, columns p2
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      c(psi.data(), n, n);
  return c * c.adjoint();
}

double entanglement_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("entanglement_entropy: diagonalization failed");
  double s = 0.0;
  for (double lam : solver.eigenvalues()) {
    if (lam < -1e-10)
      throw std::runtime_error("entanglement_entropy: negative eigenvalue");
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return std::max(0.0, s);
}

double expectation_cos(const Eigen::VectorXcd& psi, int cutoff,
                       CosObservable which) {
  int d1 = 0, d2 = 0;
  switch (which) {
    case CosObservable::sum: d1 = 1; d2 = 1; break;
    case CosObservable::diff: d1 = 1; d2 = -1; break;
    case CosObservable::site1: d1 = 1; d2 = 0; break;
  }
  Complex acc = 0.0;
  for (int p1 = -cutoff; p1 <= cutoff; ++p1) {
    for (int p2 = -cutoff; p2 <= cutoff; ++p2) {
      const int q1 = p1 + d1, q2 = p2 + d2;
      if (q1 < -cutoff || q1 > cutoff || q2 < -cutoff || q2 > cutoff) continue;
      acc += std::conj(psi[index_of(q1, q2, cutoff)]) *
             psi[index_of(p1, p2, cutoff)];
    }
  }
  return std::real(acc);
}

Eigen::VectorXd momentum_marginal(const Eigen::VectorXcd& psi, int cutoff,
                                  int site) {
  if (site != 1 && site != 2)
    throw std::invalid_argument("momentum_marginal: site must be 1 or 2");
  const int n = 2 * cutoff + 1;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int p1 = -cutoff; p1 <= cutoff; ++p1)
    for (int p2 = -cutoff; p2 <= cutoff; ++p2) {
      const double w = std::norm(psi[index_of(p1, p2, cutoff)]);
      f[(site == 1 ? p1 : p2) + cutoff] += w;
    }
  return f;
}

Eigen::MatrixXcd position_kernel(const Eigen::MatrixXcd& rho, int n_x) {
  const int n = static_cast<int>(rho.rows());
  const int cutoff = (n - 1) / 2;
  if (n_x < n)
    throw std::invalid_argument("position_kernel: grid coarser than 2M+1");
  // rho_1(x,x') = (1/2pi) sum_{p,p'} rho(p,p') e^{i(p x - p' x')}
  Eigen::MatrixXcd fourier(n_x, n);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < n_x; ++j) {
    const double x = -pi + 2.0 * pi * j / n_x;
    for (int p = -cutoff; p <= cutoff; ++p)
      fourier(j, p + cutoff) = std::exp(Complex(0.0, p * x));
  }
  return (fourier * rho * fourier.adjoint()) / (2.0 * pi);
}

namespace {

RelativeSector relative_sector(double kappa, int cutoff, int parity) {
  // H_rel in the d basis: diag d^2/4 + kappa, off-diagonal -kappa/2 at d+-2
  std::vector<int> ds;
  for (int d = -2 * cutoff; d <= 2 * cutoff; ++d)
    if (((d % 2) + 2) % 2 == parity) ds.push_back(d);
  const int m = static_cast<int>(ds.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    h(i, i) = 0.25 * ds[i] * ds[i] + kappa;
    if (i + 1 < m && ds[i + 1] == ds[i] + 2) h(i, i + 1) = h(i + 1, i) = -0.5 * kappa;
  }
  auto spec = numerics::eig_sym(h);
  return {std::move(ds), spec.eigenvalues, spec.eigenvectors};
}

}  // namespace

PostQuenchSpectra post_quench_spectra(double kappa, int cutoff) {
  PostQuenchSpectra out;
  for (int p = -2 * cutoff; p <= 2 * cutoff; ++p) out.zero_mode_p.push_back(p);
  out.zero_mode_levels.resize(static_cast<int>(out.zero_mode_p.size()));
  for (size_t i = 0; i < out.zero_mode_p.size(); ++i)
    out.zero_mode_levels[static_cast<int>(i)] =
        0.25 * out.zero_mode_p[i] * out.zero_mode_p[i];
  out.relative_even = relative_sector(kappa, cutoff, 0);
  out.relative_odd = relative_sector(kappa, cutoff, 1);
  return out;
}

}  // namespace quench::rotor2
