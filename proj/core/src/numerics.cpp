#include "quench/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace quench::numerics {

SpectralDecomposition eig_sym(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("eig_sym: matrix must be square");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw std::invalid_argument("eig_sym: matrix not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_sym: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::pair<double, Eigen::VectorXd> lanczos_ground(const RealOp& apply_h, int dim,
                                                  double tol, int max_iter,
                                                  unsigned seed) {
  if (dim < 1) throw std::invalid_argument("lanczos_ground: dim < 1");
  max_iter = std::min(max_iter, dim);

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = dist(gen);
  v.normalize();

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v);

  Eigen::VectorXd w(dim);
  double prev_ritz = std::numeric_limits<double>::infinity();
  Eigen::VectorXd ritz_vec;
  double ritz_val = 0.0;

  for (int it = 0; it < max_iter; ++it) {
    apply_h(basis.back(), w);
    double a = basis.back().dot(w);
    alpha.push_back(a);
    w -= a * basis.back();
    if (it > 0) w -= beta.back() * basis[basis.size() - 2];
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;

    // tridiagonal Ritz problem
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolve(tri);
    ritz_val = tsolve.eigenvalues()(0);
    Eigen::VectorXd y = tsolve.eigenvectors().col(0);
    ritz_vec = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < m; ++i) ritz_vec += y[i] * basis[i];
    ritz_vec.normalize();

    double b = w.norm();
    const double resid = b * std::abs(y[m - 1]);
    if (resid < tol * std::max(1.0, std::abs(ritz_val)) &&
        std::abs(ritz_val - prev_ritz) < tol * std::max(1.0, std::abs(ritz_val)))
      return {ritz_val, ritz_vec};
    prev_ritz = ritz_val;

    if (b < 1e-14) {
      // Krylov breakdown: invariant subspace reached; restart from a random
      // vector orthogonal to the current basis
      for (int i = 0; i < dim; ++i) w[i] = dist(gen);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= q.dot(w) * q;
      b = w.norm();
      if (b < 1e-14) return {ritz_val, ritz_vec};  // full space exhausted
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw std::runtime_error("lanczos_ground: iteration cap exceeded");
}

namespace {

// Single Krylov step without substepping; returns the propagated state and an
// error estimate from the last subspace coefficient.
std::pair<Eigen::VectorXcd, double> krylov_step(const ComplexOp& apply_h,
                                                const Eigen::VectorXcd& state,
                                                double dt, int m) {
  const int dim = static_cast<int>(state.size());
  m = std::min(m, dim);

  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(state);

  Eigen::VectorXcd w(dim);
  int built = 0;
  bool invariant = false;  // breakdown: the subspace is exact
  for (int j = 0; j < m; ++j) {
    apply_h(basis[j], w);
    double a = std::real(basis[j].dot(w));
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta.back() * basis[j - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    built = j + 1;
    double b = w.norm();
    if (b < 1e-14) {
      invariant = true;
      break;
    }
    if (j + 1 == m) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (int i = 0; i < built; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < built) tri(i, i + 1) = tri(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolve(tri);
  const Eigen::VectorXd& theta = tsolve.eigenvalues();
  const Eigen::MatrixXd& u = tsolve.eigenvectors();

  Eigen::VectorXcd phase(built);
  for (int i = 0; i < built; ++i)
    phase[i] = std::exp(Complex(0.0, -theta[i] * dt));
  // coefficients in the Krylov basis: U exp(-i Theta dt) U^T e_1
  Eigen::VectorXcd coeff =
      u * (phase.array() * u.row(0).transpose().array().cast<Complex>()).matrix();

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int i = 0; i < built; ++i) out += coeff[i] * basis[i];
  const double err =
      (invariant || built == dim) ? 0.0 : std::abs(coeff[built - 1]);
  return {out, err};
}

}  // namespace

Eigen::VectorXcd krylov_propagate(const ComplexOp& apply_h,
                                  const Eigen::VectorXcd& state, double dt,
                                  double tol, int krylov_dim) {
  if (dt == 0.0) return state;
  int steps = 1;
  while (true) {
    Eigen::VectorXcd psi = state;
    const double h = dt / steps;
    double max_err = 0.0;
    for (int s = 0; s < steps; ++s) {
      auto [next, err] = krylov_step(apply_h, psi, h, krylov_dim);
      psi = std::move(next);
      psi.normalize();
      max_err = std::max(max_err, err);
    }
    if (max_err <= tol || steps >= (1 << 16)) {
      if (max_err > tol)
        throw std::runtime_error("krylov_propagate: tolerance unreachable");
      return psi;
    }
    steps *= 2;
  }
}

double find_root_1d(const std::function<double(double)>& f, RootBracket bracket,
                    double tol) {
  double lo = bracket.lo, hi = bracket.hi;
  if (!(lo < hi)) throw std::invalid_argument("find_root_1d: lo >= hi");
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw std::invalid_argument("find_root_1d: no sign change across bracket");

  for (int it = 0; it < 400; ++it) {
    // secant proposal, clamped into the bracket
    double x = hi - fhi * (hi - lo) / (fhi - flo);
    const double mid = 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) x = mid;
    const double fx = f(x);
    if (fx == 0.0 || hi - lo <= tol) return x;
    if (flo * fx < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    // guarantee progress: bisect if the interval shrank too slowly
    if (hi - lo > 0.9 * (bracket.hi - bracket.lo)) {
      const double fm = f(mid);
      if (flo * fm <= 0.0) {
        hi = mid;
        fhi = fm;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    bracket = {lo, hi};
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> find_root_2d(
    const std::function<std::pair<double, double>(double, double)>& f,
    std::pair<double, double> guess, double tol, int max_iter) {
  double x = guess.first, y = guess.second;
  auto norm2 = [](std::pair<double, double> v) {
    return std::hypot(v.first, v.second);
  };
  auto fv = f(x, y);

  for (int it = 0; it < max_iter; ++it) {
    if (norm2(fv) <= tol) return {x, y};
    const double hx = 1e-7 * std::max(1.0, std::abs(x));
    const double hy = 1e-7 * std::max(1.0, std::abs(y));
    auto fx = f(x + hx, y);
    auto fy = f(x, y + hy);
    Eigen::Matrix2d jac;
    jac << (fx.first - fv.first) / hx, (fy.first - fv.first) / hy,
        (fx.second - fv.second) / hx, (fy.second - fv.second) / hy;
    Eigen::Vector2d rhs(-fv.first, -fv.second);
    Eigen::Vector2d step = jac.fullPivLu().solve(rhs);
    if (!step.allFinite()) step = rhs;  // singular Jacobian: gradient-ish move

    double damp = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k) {
      auto trial = f(x + damp * step[0], y + damp * step[1]);
      if (std::isfinite(trial.first) && std::isfinite(trial.second) &&
          norm2(trial) < norm2(fv)) {
        x += damp * step[0];
        y += damp * step[1];
        fv = trial;
        accepted = true;
        break;
      }
      damp *= 0.5;
    }
    if (!accepted) {
      // alternating 1d solves as a fallback
      auto f1 = [&](double xx) { return f(xx, y).first; };
      auto f2 = [&](double yy) { return f(x, yy).second; };
      double lo = x, hi = x, w = std::max(1.0, std::abs(x));
      for (int k = 0; k < 60; ++k) {
        lo = x - w;
        hi = x + w;
        if (f1(lo) * f1(hi) <= 0.0) break;
        w *= 2.0;
      }
      if (f1(lo) * f1(hi) <= 0.0) x = find_root_1d(f1, {lo, hi}, tol * 1e-3);
      w = std::max(1.0, std::abs(y));
      for (int k = 0; k < 60; ++k) {
        lo = y - w;
        hi = y + w;
        if (f2(lo) * f2(hi) <= 0.0) break;
        w *= 2.0;
      }
      if (f2(lo) * f2(hi) <= 0.0) y = find_root_1d(f2, {lo, hi}, tol * 1e-3);
      fv = f(x, y);
    }
  }
  if (norm2(fv) <= tol) return {x, y};
  throw std::runtime_error("find_root_2d: no convergence after iteration cap");
}

PolyFit fit_polynomial(const std::vector<double>& ts,
                       const std::vector<double>& ys, int degree) {
  if (degree < 1 || degree > 2)
    throw std::invalid_argument("fit_polynomial: degree must be 1 or 2");
  const int n = static_cast<int>(ts.size());
  if (n != static_cast<int>(ys.size()) || n < degree + 2)
    throw std::invalid_argument("fit_polynomial: need >= degree+2 samples");

  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = degree; j >= 0; --j) {
      design(i, j) = p;
      p *= ts[i];
    }
    b[i] = ys[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < degree + 1)
    throw std::invalid_argument("fit_polynomial: degenerate design matrix");
  Eigen::VectorXd c = svd.solve(b);

  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  const double ss_res = (design * c - b).squaredNorm();
  double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);

  PolyFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.r_squared = r2;
  return fit;
}

}  // namespace quench::numerics
