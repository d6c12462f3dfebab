#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ejcm/bounds.hpp"
#include "ejcm/partition.hpp"
#include "ejcm/sim.hpp"
#include "oracle.hpp"

using namespace ejcm;

namespace {

double dist(const DenseOperator& a, const DenseOperator& b) { return (a - b).cwiseAbs().maxCoeff(); }

TrotterProblem uniform_problem() {
  auto p = oracle::params(3, 2);
  auto parts = build_schrodinger(p);
  return make_problem(parts, partition_structured(parts.h_int, p, Picture::schrodinger, 0.0));
}

}  // namespace

TEST(Sim, ExactUnitaryBasics) {
  DenseOperator z = to_dense(PauliString::from_label("Z"));
  EXPECT_LT(dist(exact_unitary(z, 0.0), DenseOperator::Identity(2, 2)), 1e-15);
  DenseOperator want = DenseOperator::Zero(2, 2);
  want(0, 0) = std::polar(1.0, -std::numbers::pi / 2);
  want(1, 1) = std::polar(1.0, std::numbers::pi / 2);
  EXPECT_LT(dist(exact_unitary(z, std::numbers::pi / 2), want), 1e-12);
  DenseOperator bad = DenseOperator::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(exact_unitary(bad, 1.0), std::invalid_argument);
}

TEST(Sim, ExactUnitaryGroupProperty) {
  auto h = oracle::hamiltonian(oracle::params(2, 2, {1.3, 0.4}, 1.0));
  DenseOperator u = exact_unitary(h, 0.3) * exact_unitary(h, 0.5);
  EXPECT_LT(dist(u, exact_unitary(h, 0.8)), 1e-10);
  EXPECT_LT(dist(exact_unitary(h, 0.8), oracle::expm_minus_i(h, 0.8)), 1e-10);
  DenseOperator uu = exact_unitary(h, 2.0);
  EXPECT_LT(dist(uu * uu.adjoint(), DenseOperator::Identity(uu.rows(), uu.cols())), 1e-10);
}

TEST(Sim, SpectralNorm) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  DenseOperator m(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(m.adjoint() * m);
  EXPECT_NEAR(spectral_norm(m), std::sqrt(es.eigenvalues().maxCoeff()), 1e-10);
  DenseOperator big = DenseOperator::Zero(1024, 1024);
  for (Eigen::Index i = 0; i < 1024; ++i) big(i, i) = 1.0 + (i == 700 ? 2.0 : 0.0);
  EXPECT_NEAR(spectral_norm(big), 3.0, 1e-8);
}

TEST(Sim, ApplyScheduleMatchesUnitary) {
  auto s = schedule_second_order(uniform_problem(), 1.0, 3, Ordering::randomized, 9);
  std::mt19937_64 rng(2);
  auto psi = oracle::random_state(7, rng);
  EXPECT_LT((apply_schedule(s, psi) - schedule_unitary(s) * psi).norm(), 1e-12);
  EXPECT_THROW(apply_schedule(s, StateVector::Zero(4)), std::invalid_argument);
}

TEST(Sim, UniformCellBelowBound) {
  auto p = oracle::params(3, 2);
  auto exact = exact_unitary(oracle::hamiltonian(p), 1.0);
  auto m = error_metrics(schedule_first_order(uniform_problem(), 1.0, 16, Ordering::fixed), exact, basis_state(7, 0));
  EXPECT_GT(m.operator_error, 0.0);
  EXPECT_LE(m.operator_error, 3.971);
  EXPECT_EQ(error_metrics(exact, exact, basis_state(7, 0)).operator_error, 0.0);
}

TEST(Sim, StateErrorBelowOperatorError) {
  auto p = oracle::params(3, 2);
  auto exact = exact_unitary(oracle::hamiltonian(p), 1.0);
  auto prob = uniform_problem();
  std::mt19937_64 rng(50);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto m = error_metrics(schedule_first_order(prob, 1.0, 4, Ordering::randomized, seed), exact,
                           oracle::random_state(7, rng));
    EXPECT_LE(m.state_error, m.operator_error + 1e-9);
  }
}

TEST(Sim, ErrorRatiosTrackOrder) {
  auto p = oracle::params(3, 2);
  auto exact = exact_unitary(oracle::hamiltonian(p), 1.0);
  auto prob = uniform_problem();
  for (int order : {1, 2}) {
    double prev = 0;
    for (long long nt : {8, 16, 32, 64, 128}) {
      auto s = order == 1 ? schedule_first_order(prob, 1.0, nt, Ordering::fixed)
                          : schedule_second_order(prob, 1.0, nt, Ordering::fixed);
      double e = spectral_norm(schedule_unitary(s) - exact);
      if (prev > 0) EXPECT_NEAR(prev / e, order == 1 ? 2.0 : 4.0, order == 1 ? 0.3 : 0.6);
      prev = e;
    }
  }
}

TEST(Sim, RandomizedMedianBeatsFixed) {
  auto p = oracle::params(3, 2);
  auto exact = exact_unitary(oracle::hamiltonian(p), 1.0);
  auto prob = uniform_problem();
  double fixed = spectral_norm(schedule_unitary(schedule_first_order(prob, 1.0, 128, Ordering::fixed)) - exact);
  std::vector<double> errs;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    errs.push_back(spectral_norm(schedule_unitary(schedule_first_order(prob, 1.0, 128, Ordering::randomized, seed)) - exact));
  std::nth_element(errs.begin(), errs.begin() + 10, errs.end());
  EXPECT_LT(errs[10], fixed);
}

TEST(Sim, GatesMatchSchedule) {
  auto p = oracle::params(1, 2, {1.2}, 1.0);
  auto parts = build_schrodinger(p);
  auto prob = make_problem(parts, partition_structured(parts.h_int, p, Picture::schrodinger, 0.0));
  auto s = schedule_first_order(prob, 0.5, 2, Ordering::fixed);
  std::mt19937_64 rng(8);
  auto psi = oracle::random_state(3, rng);
  EXPECT_LT((apply_gates(lower_to_gates(s), psi) * std::polar(1.0, -s.global_phase) - apply_schedule(s, psi)).norm(), 1e-10);
}

TEST(Sim, ReferencePropagator) {
  auto res = oracle::params(1, 2);
  auto r0 = reference_propagator_interaction(res, 0.8, 1e-10);
  EXPECT_LT(dist(r0.U, exact_unitary(to_dense(build_interaction(res, 0.0).sum), 0.8)), 1e-10);
  auto p = oracle::params(2, 1, {1.6, 0.5}, 1.0);
  auto r = reference_propagator_interaction(p, 1.0, 1e-10);
  EXPECT_GT(r.L, 1);
  DenseOperator h0 = oracle::free_hamiltonian(p);
  DenseOperator us = exact_unitary(h0, 1.0) * r.U;
  EXPECT_LT(spectral_norm(us - exact_unitary(oracle::hamiltonian(p), 1.0)), 1e-9);
  EXPECT_THROW(reference_propagator_interaction(p, 1.0, 1e-14, 4), NumericError);
}

TEST(Sim, JcSurvival) {
  EXPECT_NEAR(jc_survival(1.0, 0.0, std::numbers::pi / 2), 0.0, 1e-15);
  EXPECT_EQ(jc_survival(1.0, 0.3, 0.0), 1.0);
  EXPECT_NEAR(jc_survival(1.0, 0.0, std::numbers::pi / 4), 0.5, 1e-15);
  for (double t : {0.1, 0.7, 2.0}) EXPECT_NEAR(jc_survival(0.8, 0.0, t), std::pow(std::cos(0.8 * t), 2), 1e-14);
}

TEST(Sim, JcSimulation) {
  std::vector<double> ts = {0.0, 0.5, 1.7, 3.0};
  auto a = jc_simulate(1.0, 0.0, ts, 8, 1);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(a[i], jc_survival(1.0, 0.0, ts[i]), 1e-12);
  auto b = jc_simulate(1.0, 1.0, ts, 512, 2);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(b[i], jc_survival(1.0, 1.0, ts[i]), 1e-5);
}

TEST(Sim, CoherentState) {
  auto z = coherent_state(0.0, 3);
  EXPECT_EQ(z[0], cplx(1.0));
  for (std::size_t b = 1; b < z.size(); ++b) EXPECT_EQ(z[b], cplx(0.0));
  auto c = coherent_state(1.0, 2);
  double n = std::sqrt(1 + 1 + 0.5 + 1.0 / 6);
  EXPECT_NEAR(c[0].real(), 1 / n, 1e-15);
  EXPECT_NEAR(c[2].real(), 1 / std::sqrt(2.0) / n, 1e-15);
  EXPECT_NEAR(c[3].real(), 1 / std::sqrt(6.0) / n, 1e-15);
  auto raw = coherent_state(1.0, 2, false);
  EXPECT_NEAR(raw[0].real(), std::exp(-0.5), 1e-15);
  auto big = coherent_state(cplx(0.6, 0.8), 4);
  double mean = 0;
  for (std::size_t b = 0; b < big.size(); ++b) mean += b * std::norm(big[b]);
  EXPECT_NEAR(mean, 1.0, 1e-3);
  EXPECT_THROW(coherent_state(1.0, 0), std::invalid_argument);
}

TEST(Sim, PhotonStatisticsFock) {
  auto p = oracle::params(1, 3);
  for (int b = 0; b < 8; ++b) {
    std::vector<cplx> fock(8, 0.0);
    fock[b] = 1.0;
    auto st = photon_statistics(product_state(p, {fock}, {0.0, 1.0}), p);
    EXPECT_NEAR(st.mean, b, 1e-12);
    EXPECT_NEAR(st.variance, 0.0, 1e-10);
  }
  EXPECT_THROW(photon_statistics(StateVector::Zero(4), p), std::invalid_argument);
}

TEST(Sim, PhotonStatisticsAgainstDense) {
  auto p = oracle::params(2, 2);
  std::mt19937_64 rng(21);
  auto psi = oracle::random_state(5, rng);
  DenseOperator n = oracle::on_mode(oracle::number(2), 0, p) + oracle::on_mode(oracle::number(2), 1, p);
  auto st = photon_statistics(psi, p);
  double mean = psi.dot(n * psi).real();
  double second = psi.dot(n * n * psi).real();
  EXPECT_NEAR(st.mean, mean, 1e-10);
  EXPECT_NEAR(st.second_moment, second, 1e-10);
  EXPECT_NEAR(st.variance, second - mean * mean, 1e-10);
  EXPECT_NEAR(st.mode_means[0] + st.mode_means[1], mean, 1e-10);
  DenseOperator n1 = oracle::on_mode(oracle::number(2), 0, p), n2 = oracle::on_mode(oracle::number(2), 1, p);
  DenseOperator v = n1 * n1 + n2 * n2 - 2.0 * n2 * n1;
  EXPECT_NEAR(st.variance_operator_value, psi.dot(v * psi).real(), 1e-10);
}

TEST(Sim, ShotEstimate) {
  EXPECT_EQ(shot_estimate(0.0, 0.1, 1, 1).shots, 1);
  EXPECT_EQ(shot_estimate(4.0, 0.1, 1, 1).shots, 400);
  EXPECT_NEAR(shot_estimate(0.0, 0.1, 2, 2).worst_case, 6400.0, 1e-9);
  EXPECT_THROW(shot_estimate(1.0, 0.0, 1, 1), std::invalid_argument);
}
