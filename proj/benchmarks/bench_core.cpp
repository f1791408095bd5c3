#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "quench/chains.hpp"
#include "quench/cho2.hpp"
#include "quench/numerics.hpp"
#include "quench/rotor2.hpp"

using namespace quench;

static void BM_EigSym(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 gen(1);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = dist(gen);
  const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::eig_sym(h));
  }
}
BENCHMARK(BM_EigSym)->Arg(128)->Arg(512)->Arg(1089);

static void BM_MehlerPoint(benchmark::State& state) {
  cho2::ChoQuench q{std::sqrt(10.0), 100.0, 0.0};
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cho2::entanglement_point(q, t));
    t += 0.1;
  }
}
BENCHMARK(BM_MehlerPoint);

static void BM_RotorEvolveEntropy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto g =
      rotor2::ground_state(rotor2::build_hamiltonian(m, 10.0, 100.0), m, 1.0);
  const auto spec =
      numerics::eig_sym(Eigen::MatrixXd(rotor2::build_hamiltonian(m, 0.0, 100.0)));
  const Eigen::VectorXcd psi0 = g.amplitudes.cast<std::complex<double>>();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.25;
    const auto psi = rotor2::evolve(spec, psi0, t);
    benchmark::DoNotOptimize(
        rotor2::entanglement_entropy(rotor2::reduce_site(psi, m)));
  }
}
BENCHMARK(BM_RotorEvolveEntropy)->Arg(8)->Arg(16);

static void BM_ChainEntropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  chains::ChainParams p{n, 1.5, 0.5};
  double t = 0.0;
  for (auto _ : state) {
    t += 1.0;
    const auto gamma = chains::evolve_covariance(p, t);
    benchmark::DoNotOptimize(chains::half_chain_entropy(gamma, n / 2));
  }
}
BENCHMARK(BM_ChainEntropy)->Arg(32)->Arg(128);

static void BM_KrylovStep(benchmark::State& state) {
  const int m = 3, sites = 4;
  const auto h = chains::rotor_chain_hamiltonian(sites, m, 0.0, 0.5);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Random(h.rows());
  psi /= psi.norm();
  auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out = h * in;
  };
  for (auto _ : state) {
    psi = numerics::krylov_propagate(apply, psi, 0.5, 1e-10);
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_KrylovStep);

BENCHMARK_MAIN();
