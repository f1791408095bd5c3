#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

// Shared numerical kernels: symmetric eigendecomposition, Lanczos/Krylov
// iteration, root finding and least-squares fits.  Everything here is a pure
// function of its inputs and safe to call concurrently.
namespace quench::numerics {

using Complex = std::complex<double>;

// Action of a real symmetric operator on a real vector.
using RealOp = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
// Action of the same operator on a complex vector.
using ComplexOp = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // sorted non-decreasing
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, same order
};

struct RootBracket {
  double lo;
  double hi;
};

// Full eigendecomposition of a real symmetric matrix.  Throws
// std::invalid_argument if the matrix is not symmetric to 1e-12 relative,
// std::runtime_error on solver failure.
SpectralDecomposition eig_sym(const Eigen::MatrixXd& matrix);

// Lowest eigenpair of a symmetric operator given only its action.
// Lanczos with full reorthogonalization and random restarts.
std::pair<double, Eigen::VectorXd> lanczos_ground(const RealOp& apply_h, int dim,
                                                  double tol = 1e-12,
                                                  int max_iter = 500,
                                                  unsigned seed = 7);

// One step of e^{-iHt} on a unit-norm state via a Lanczos (Krylov) subspace.
// Subspace dimension defaults to 30; the step is split adaptively when the
// local error estimate exceeds tol.
Eigen::VectorXcd krylov_propagate(const ComplexOp& apply_h,
                                  const Eigen::VectorXcd& state, double dt,
                                  double tol = 1e-12, int krylov_dim = 30);

// Root of a sign-changing function on a bracket.  Secant steps with a
// bisection fallback; always converges for continuous f.
double find_root_1d(const std::function<double(double)>& f, RootBracket bracket,
                    double tol = 1e-12);

// Root of F: R^2 -> R^2 by damped Newton with finite-difference Jacobian,
// falling back to alternating 1d solves if Newton stalls.
std::pair<double, double> find_root_2d(
    const std::function<std::pair<double, double>(double, double)>& f,
    std::pair<double, double> guess, double tol = 1e-10, int max_iter = 200);

struct PolyFit {
  std::vector<double> coefficients;  // descending powers, degree+1 entries
  double r_squared;
};

// Least-squares polynomial fit of degree 1 or 2.
PolyFit fit_polynomial(const std::vector<double>& ts,
                       const std::vector<double>& ys, int degree);

}  // namespace quench::numerics
