#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ejcm/mixed.hpp"
#include "ejcm/sim.hpp"
#include "oracle.hpp"

using namespace ejcm;

namespace {

double dist(const DenseOperator& a, const DenseOperator& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Mixed, VectorizeRowStacked) {
  DenseOperator rho = DenseOperator::Zero(2, 2);
  rho(0, 0) = 1.0;
  auto v = vectorize(rho);
  EXPECT_EQ(v.n_qubits, 1);
  EXPECT_EQ(v.v[0], cplx(1.0));
  EXPECT_NEAR(v.v.tail(3).norm(), 0.0, 1e-15);
  DenseOperator mm = DenseOperator::Identity(2, 2) * 0.5;
  auto w = vectorize(mm);
  EXPECT_NEAR(w.v[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(w.v[3].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(w.frobenius, 1 / std::sqrt(2.0), 1e-15);
  DenseOperator off = DenseOperator::Zero(2, 2);
  off(0, 1) = cplx(0, 1);
  EXPECT_NEAR(std::abs(vectorize(off).v[1] - cplx(0, 1)), 0.0, 1e-15);
}

TEST(Mixed, RoundTrip) {
  std::mt19937_64 rng(3);
  DenseOperator rho = oracle::random_density(3, rng);
  auto v = vectorize(rho);
  EXPECT_NEAR(v.v.norm(), 1.0, 1e-12);
  EXPECT_LT(dist(unvectorize(v) * v.frobenius, rho), 1e-12);
  EXPECT_LT(dist(unvectorize_normalized(v), rho), 1e-12);
  EXPECT_THROW(vectorize(DenseOperator::Zero(3, 3)), std::invalid_argument);
}

TEST(Mixed, DenseLiouvillianMatchesConjugation) {
  auto p = oracle::params(1, 2, {1.3}, 0.8);
  auto h = oracle::hamiltonian(p);
  DenseOperator l = liouvillian_dense(total(build_schrodinger(p)));
  EXPECT_LT(dist(l, oracle::liouvillian(h)), 1e-12);
  DenseOperator u = exact_unitary(h, 0.7);
  EXPECT_LT(dist(exact_unitary(l, 0.7), oracle::kron(u, u.conjugate())), 1e-10);
}

TEST(Mixed, VectorizedEvolutionMatchesConjugation) {
  auto p = oracle::params(2, 1, {1.3, 0.6}, 1.0);
  std::mt19937_64 rng(11);
  DenseOperator rho = oracle::random_density(3, rng);
  DenseOperator u = exact_unitary(oracle::hamiltonian(p), 1.0);
  DenseOperator want = u * rho * u.adjoint();
  MixedConfig cfg;
  cfg.N_T = 64;
  auto out = evolve_vectorized(p, cfg, vectorize(rho));
  EXPECT_LT(dist(unvectorize(out) * out.frobenius, want), 1e-3);
  cfg.t = 0.0;
  EXPECT_EQ(evolve_vectorized(p, cfg, vectorize(rho)).v, vectorize(rho).v);
  cfg.t = 1.0;
  cfg.picture = Picture::interaction;
  cfg.L = 16;
  cfg.N_T = 4;
  auto oi = evolve_vectorized(p, cfg, vectorize(rho));
  EXPECT_LT(dist(unvectorize(oi) * oi.frobenius, want), 1e-3);
}

TEST(Mixed, RowAndColumnSchedulesAreConjugate) {
  auto p = oracle::params(1, 1, {1.4}, 0.9);
  auto parts = build_schrodinger(p);
  auto lp = liouvillian(parts, partition_structured(parts.h_int, p, Picture::schrodinger, 0.0));
  auto a = schedule_unitary(schedule_second_order(lp.row, 0.5, 2, Ordering::fixed));
  auto b = schedule_unitary(schedule_second_order(lp.column, 0.5, 2, Ordering::fixed));
  EXPECT_LT(dist(a.conjugate(), b), 1e-12);
}

TEST(Mixed, TraceViaBell) {
  auto t = trace_via_bell(vectorize(DenseOperator::Identity(2, 2) * 0.5), 1);
  EXPECT_NEAR(t.value, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(t.proxy, 1.0, 1e-12);
  EXPECT_FALSE(t.negative);
  DenseOperator e = DenseOperator::Zero(2, 2);
  e(0, 0) = 1.0;
  EXPECT_NEAR(trace_via_bell(vectorize(e), 1).value, 1.0, 1e-12);
  EXPECT_THROW(trace_via_bell(vectorize(e), 2), std::invalid_argument);
}

TEST(Mixed, ObservableOverlap) {
  auto p = oracle::params(1, 2, {1.0}, 1.0);
  std::mt19937_64 rng(5);
  DenseOperator rho = oracle::random_density(3, rng);
  auto v = vectorize(rho);
  auto id = vectorize(DenseOperator::Identity(8, 8));
  EXPECT_NEAR(std::abs(observable_overlap(id.v, v) * id.frobenius * v.frobenius - 1.0), 0.0, 1e-12);
  auto on = build_O_N_vector(p, true);
  DenseOperator n = oracle::on_mode(oracle::number(2), 0, p);
  double want = (n * rho).trace().real();
  double norm = std::sqrt(2.0 * (1 + 4 + 9));
  EXPECT_NEAR(observable_overlap(on, v).real() * norm * v.frobenius, want, 1e-12);
}

TEST(Mixed, ONVector) {
  auto p = oracle::params(1, 1, {1.0}, 1.0);
  auto v = build_O_N_vector(p);
  ASSERT_EQ(v.size(), 4);
  EXPECT_NEAR(v[3].real(), 1.0, 1e-15);
  EXPECT_NEAR(v.head(3).norm(), 0.0, 1e-15);
  auto p2 = oracle::params(2, 1, {1.0, 1.0}, 1.0);
  auto w = build_O_N_vector(p2);
  ASSERT_EQ(w.size(), 16);
  EXPECT_NEAR(w[5].real(), 1 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(w[10].real(), 1 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(w[15].real(), 2 / std::sqrt(6.0), 1e-15);
}

TEST(Mixed, DiagonalMixture) {
  auto p = oracle::params(1, 1, {1.0}, 1.0);
  auto rho = diagonal_mixture(p, {3.0, 1.0}, 1);
  EXPECT_NEAR(rho(1, 1).real(), 0.75, 1e-15);
  EXPECT_NEAR(rho(3, 3).real(), 0.25, 1e-15);
  EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(diagonal_mixture(p, {1.0}, 0), std::invalid_argument);
  EXPECT_THROW(diagonal_mixture(p, {-1.0, 2.0}, 0), std::invalid_argument);
  EXPECT_THROW(diagonal_mixture(p, {0.0, 0.0}, 0), std::invalid_argument);
}

TEST(Mixed, EnsembleAverageMatchesMixedEvolution) {
  auto p = jc_params(1.0, 0.0, 2);
  std::vector<double> w = {0.4, 0.3, 0.2, 0.1};
  auto rho = diagonal_mixture(p, w, 0);
  MixedConfig cfg;
  cfg.N_T = 256;
  cfg.t = 0.9;
  auto out = evolve_vectorized(p, cfg, vectorize(rho));
  DenseOperator r = unvectorize(out) * out.frobenius;
  DenseOperator u = exact_unitary(oracle::hamiltonian(p), 0.9);
  DenseOperator ens = DenseOperator::Zero(8, 8);
  for (std::size_t x = 0; x < w.size(); ++x) {
    StateVector psi = u.col(static_cast<Eigen::Index>(2 * x));
    ens += w[x] * psi * psi.adjoint();
  }
  EXPECT_LT(dist(r, ens), 1e-5);
  EXPECT_NEAR(trace_via_bell(out, 3).value * out.frobenius, 1.0, 1e-6);
}

TEST(Mixed, HadamardTestRecoversOverlap) {
  auto p = oracle::params(1, 1, {1.2}, 1.0);
  auto parts = build_schrodinger(p);
  auto prob = make_problem(parts, partition_structured(parts.h_int, p, Picture::schrodinger, 0.0));
  auto s = schedule_first_order(prob, 0.6, 1, Ordering::fixed);
  StateVector psi = basis_state(2, 1);
  DenseOperator u = gate_unitary(lower_to_gates(s));
  cplx want = psi.dot(u * psi);
  for (bool im : {false, true}) {
    StateVector in = oracle::kron(psi, basis_state(1, 0));
    auto outv = apply_gates(hadamard_test(s, im), in);
    double p0 = 0;
    for (Eigen::Index i = 0; i < outv.size(); i += 2) p0 += std::norm(outv[i]);
    EXPECT_NEAR(2 * p0 - 1, im ? want.imag() : want.real(), 1e-10);
  }
}

TEST(Mixed, Purification) {
  auto g = uniform_mixture_purification(2);
  auto out = apply_gates(g, basis_state(4, 0));
  auto v = vectorize(DenseOperator::Identity(4, 4) * 0.25);
  EXPECT_NEAR((out - v.v).norm(), 0.0, 1e-12);
}
