#include "quench/chains.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quench/rotor2.hpp"

namespace quench::chains {

namespace {

void validate(const ChainParams& p) {
  if (p.sites < 2 || p.sites % 2 != 0)
    throw std::invalid_argument("chain: N must be even and >= 2");
  if (p.kappa < 0.0 || p.omega_sq < 0.0)
    throw std::invalid_argument("chain: negative parameters");
}

}  // namespace

NormalModes neumann_modes(const ChainParams& params) {
  validate(params);
  const int n = params.sites;
  const double pi = std::acos(-1.0);
  NormalModes modes;
  modes.frequencies_pre.resize(n);
  modes.frequencies_post.resize(n);
  modes.basis.resize(n, n);
  const double wf_sq = params.omega_f * params.omega_f;
  for (int k = 0; k < n; ++k) {
    const double s = std::sin(0.5 * k * pi / n);
    const double lap = 4.0 * params.kappa * s * s;
    modes.frequencies_pre[k] = std::sqrt(params.omega_sq + lap);
    modes.frequencies_post[k] = std::sqrt(wf_sq + lap);
    const double norm = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int site = 0; site < n; ++site)
      modes.basis(site, k) = norm * std::cos((site + 0.5) * k * pi / n);
  }
  return modes;
}

Covariance ground_covariance(const ChainParams& params) {
  if (params.omega_sq <= 0.0)
    throw std::invalid_argument(
        "ground_covariance: pre-quench omega must be positive (gapped)");
  const auto modes = neumann_modes(params);
  const int n = params.sites;
  Eigen::VectorXd xvar(n), pvar(n);
  for (int k = 0; k < n; ++k) {
    xvar[k] = 0.5 / modes.frequencies_pre[k];
    pvar[k] = 0.5 * modes.frequencies_pre[k];
  }
  Covariance gamma = Covariance::Zero(2 * n, 2 * n);
  gamma.topLeftCorner(n, n) =
      modes.basis * xvar.asDiagonal() * modes.basis.transpose();
  gamma.bottomRightCorner(n, n) =
      modes.basis * pvar.asDiagonal() * modes.basis.transpose();
  return gamma;
}

Covariance evolve_covariance(const ChainParams& params, double t) {
  if (params.omega_sq <= 0.0)
    throw std::invalid_argument("evolve_covariance: gapped pre-quench required");
  const auto modes = neumann_modes(params);
  const int n = params.sites;
  Eigen::VectorXd xvar(n), pvar(n), xp(n);
  for (int k = 0; k < n; ++k) {
    const double wi = modes.frequencies_pre[k];
    const double wf = modes.frequencies_post[k];
    double b, bdot;
    if (wf == 0.0) {
      b = std::sqrt(1.0 + wi * wi * t * t);
      bdot = wi * wi * t / b;
    } else {
      const double r = wi / wf;
      const double c = std::cos(wf * t);
      const double s = std::sin(wf * t);
      b = std::sqrt(c * c + r * r * s * s);
      bdot = wf * (r * r - 1.0) * s * c / b;
    }
    xvar[k] = b * b / (2.0 * wi);
    pvar[k] = (wi * wi / (b * b) + bdot * bdot) / (2.0 * wi);
    xp[k] = b * bdot / (2.0 * wi);
  }
  Covariance gamma = Covariance::Zero(2 * n, 2 * n);
  gamma.topLeftCorner(n, n) =
      modes.basis * xvar.asDiagonal() * modes.basis.transpose();
  gamma.bottomRightCorner(n, n) =
      modes.basis * pvar.asDiagonal() * modes.basis.transpose();
  gamma.topRightCorner(n, n) =
      modes.basis * xp.asDiagonal() * modes.basis.transpose();
  gamma.bottomLeftCorner(n, n) = gamma.topRightCorner(n, n).transpose();
  return gamma;
}

Eigen::VectorXd symplectic_eigenvalues(const Covariance& gamma) {
  const int n2 = static_cast<int>(gamma.rows());
  if (n2 % 2 != 0 || gamma.cols() != n2)
    throw std::invalid_argument("symplectic_eigenvalues: 2N x 2N expected");
  const int n = n2 / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n2, n2);
  omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  // eigenvalues of (Omega gamma)^2 are -nu_j^2, each twice
  const Eigen::MatrixXd m = omega * gamma;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m * m);
  Eigen::VectorXd nus(n2);
  for (int i = 0; i < n2; ++i)
    nus[i] = std::sqrt(std::max(0.0, -solver.eigenvalues()[i].real()));
  std::sort(nus.data(), nus.data() + n2);
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (nus[2 * i] + nus[2 * i + 1]);
  return out;
}

double half_chain_entropy(const Covariance& gamma, int n_a) {
  const int n = static_cast<int>(gamma.rows()) / 2;
  if (n_a < 1 || n_a >= n)
    throw std::invalid_argument("half_chain_entropy: 1 <= N_A < N required");
  Covariance reduced(2 * n_a, 2 * n_a);
  reduced.topLeftCorner(n_a, n_a) = gamma.topLeftCorner(n_a, n_a);
  reduced.topRightCorner(n_a, n_a) = gamma.block(0, n, n_a, n_a);
  reduced.bottomLeftCorner(n_a, n_a) = gamma.block(n, 0, n_a, n_a);
  reduced.bottomRightCorner(n_a, n_a) = gamma.block(n, n, n_a, n_a);

  double s = 0.0;
  for (double nu : symplectic_eigenvalues(reduced)) {
    if (nu < 0.5 - 1e-8)
      throw std::runtime_error("half_chain_entropy: unphysical covariance");
    if (nu <= 0.5) continue;
    const double a = nu + 0.5, b = nu - 0.5;
    s += a * std::log(a) - b * std::log(b);
  }
  return s;
}

namespace {

int chain_dim(int sites, int cutoff) {
  int d = 1;
  for (int i = 0; i < sites; ++i) d *= 2 * cutoff + 1;
  return d;
}

}  // namespace

Eigen::SparseMatrix<double> rotor_chain_hamiltonian(int sites, int cutoff,
                                                    double omega_sq,
                                                    double kappa) {
  if (sites < 2 || sites > 4)
    throw std::invalid_argument("rotor_chain_hamiltonian: N must be 2..4");
  const int n = 2 * cutoff + 1;
  const int dim = chain_dim(sites, cutoff);

  std::vector<int> stride(sites);
  stride[sites - 1] = 1;
  for (int i = sites - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(dim) * (2 * sites + 1));
  std::vector<int> p(sites, -cutoff);

  auto index = [&](const std::vector<int>& pp) {
    int idx = 0;
    for (int i = 0; i < sites; ++i) idx += (pp[i] + cutoff) * stride[i];
    return idx;
  };

  bool done = false;
  while (!done) {
    const int row = index(p);
    double kinetic = 0.0;
    for (int i = 0; i < sites; ++i) kinetic += 0.5 * p[i] * p[i];
    trip.emplace_back(row, row,
                      kinetic + sites * omega_sq + (sites - 1) * kappa);
    for (int i = 0; i < sites; ++i) {
      for (int sgn : {+1, -1}) {
        if (p[i] + sgn >= -cutoff && p[i] + sgn <= cutoff)
          trip.emplace_back(row, row + sgn * stride[i], -0.5 * omega_sq);
      }
      if (i + 1 < sites) {
        for (int sgn : {+1, -1}) {
          if (p[i] + sgn >= -cutoff && p[i] + sgn <= cutoff &&
              p[i + 1] - sgn >= -cutoff && p[i + 1] - sgn <= cutoff)
            trip.emplace_back(row, row + sgn * stride[i] - sgn * stride[i + 1],
                              -0.5 * kappa);
        }
      }
    }
    // next multi-index
    int i = sites - 1;
    while (i >= 0 && p[i] == cutoff) p[i--] = -cutoff;
    if (i < 0)
      done = true;
    else
      ++p[i];
  }

  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

double schmidt_entropy(const Eigen::VectorXcd& psi, int sites, int cutoff) {
  const int half = sites / 2;
  const int left = chain_dim(half, cutoff);
  const int right = chain_dim(sites - half, cutoff);
  Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                 Eigen::Dynamic, Eigen::RowMajor>>
      m(psi.data(), left, right);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  double s = 0.0;
  for (double sigma : svd.singularValues()) {
    const double lam = sigma * sigma;
    if (lam > 1e-16) s -= lam * std::log(lam);
  }
  return std::max(0.0, s);
}

RotorChainResult rotor_chain_dynamics(int sites, int cutoff, double omega_sq,
                                      double kappa,
                                      const std::vector<double>& ts,
                                      double krylov_tol) {
  const int dim = chain_dim(sites, cutoff);
  const auto h_pre = rotor_chain_hamiltonian(sites, cutoff, omega_sq, kappa);
  const auto h_post = rotor_chain_hamiltonian(sites, cutoff, 0.0, kappa);

  RotorChainResult result;
  Eigen::VectorXd ground;
  if (dim <= 4096) {
    auto spec_pre = numerics::eig_sym(Eigen::MatrixXd(h_pre));
    result.ground_energy = spec_pre.eigenvalues[0];
    ground = spec_pre.eigenvectors.col(0);
  } else {
    auto [e, v] = numerics::lanczos_ground(
        [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
          out = h_pre * in;
        },
        dim, 1e-13);
    result.ground_energy = e;
    ground = v;
  }

  double bweight = 0.0;
  {
    const int n = 2 * cutoff + 1;
    for (int idx = 0; idx < dim; ++idx) {
      int rem = idx;
      bool edge = false;
      for (int i = 0; i < sites; ++i) {
        const int digit = rem % n;
        rem /= n;
        if (digit == 0 || digit == n - 1) edge = true;
      }
      if (edge) bweight += ground[idx] * ground[idx];
    }
  }
  result.boundary_weight = bweight;

  Eigen::VectorXcd psi0 = ground.cast<std::complex<double>>();
  result.times = ts;
  result.entropies.resize(ts.size());

  if (dim <= 4096) {
    auto spec_post = numerics::eig_sym(Eigen::MatrixXd(h_post));
    for (size_t i = 0; i < ts.size(); ++i) {
      Eigen::VectorXcd psi = rotor2::evolve(spec_post, psi0, ts[i]);
      result.entropies[i] = schmidt_entropy(psi, sites, cutoff);
    }
  } else {
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      out = h_post * in;
    };
    Eigen::VectorXcd psi = psi0;
    double t_now = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
      const double dt = ts[i] - t_now;
      if (dt < 0.0)
        throw std::invalid_argument("rotor_chain_dynamics: ts must ascend");
      if (dt > 0.0) psi = numerics::krylov_propagate(apply, psi, dt, krylov_tol);
      t_now = ts[i];
      result.entropies[i] = schmidt_entropy(psi, sites, cutoff);
    }
  }
  return result;
}

}  // namespace quench::chains
