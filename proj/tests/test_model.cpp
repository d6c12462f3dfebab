#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ejcm/model.hpp"

using namespace ejcm;

namespace {

ModelParams raw(int nf, int k, std::vector<double> f, double w, std::vector<double> g) {
  ModelParams p;
  p.n_modes = nf;
  p.trunc_bits = k;
  p.mode_freqs = std::move(f);
  p.atom_freq = w;
  p.couplings = std::move(g);
  return p;
}

ValidationError::Kind kind_of(const ModelParams& p) {
  try {
    validate(p);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a validation error";
  return ValidationError::Kind::parse;
}

}  // namespace

TEST(Model, MinimalInstance) {
  auto p = validate(raw(1, 1, {1}, 1, {1}));
  EXPECT_EQ(p.n_qubits(), 2);
  EXPECT_EQ(p.atom_qubit(), 1);
}

TEST(Model, UniformInstance) {
  auto p = validate(raw(3, 2, {1, 1, 1}, 1, {1, 1, 1}));
  EXPECT_EQ(p.n_qubits(), 7);
  EXPECT_EQ(p.cutoff(), 3);
}

TEST(Model, Errors) {
  EXPECT_EQ(kind_of(raw(2, 2, {1, 1}, 1, {1})), ValidationError::Kind::length_mismatch);
  EXPECT_EQ(kind_of(raw(1, 0, {1}, 1, {1})), ValidationError::Kind::bad_trunc_bits);
  EXPECT_EQ(kind_of(raw(0, 1, {}, 1, {})), ValidationError::Kind::bad_mode_count);
  EXPECT_EQ(kind_of(raw(1, 1, {std::nan("")}, 1, {1})), ValidationError::Kind::non_finite);
  EXPECT_EQ(kind_of(raw(1, 1, {1}, std::numeric_limits<double>::infinity(), {1})), ValidationError::Kind::non_finite);
}

TEST(Model, Derived) {
  auto d = derive(validate(raw(2, 2, {1, 1}, 1, {0.5, -2})));
  EXPECT_NEAR(d.Lambda_k, std::pow(5.0, 1.5) - 1, 1e-12);
  EXPECT_NEAR(d.Lambda_k, 10.1803, 1e-4);
  EXPECT_EQ(d.M0, 2);
  EXPECT_EQ(d.delta_max, 0.0);
  EXPECT_EQ(d.gamma_max, 2.0);
  EXPECT_EQ(d.n, 3);
  EXPECT_EQ(derive(validate(raw(1, 3, {1}, 1, {1}))).n, 7);
}

TEST(Model, DerivedDetuned) {
  auto d = derive(validate(raw(3, 1, {0.5, 1.0, 3.0}, 1.0, {1, 1, 1})));
  EXPECT_EQ(d.M0, 1);
  EXPECT_DOUBLE_EQ(d.delta_max, 2.0);
  EXPECT_DOUBLE_EQ(d.omega_max, 3.0);
  ASSERT_EQ(d.delta.size(), 3u);
  EXPECT_DOUBLE_EQ(d.delta[0], -0.5);
}

TEST(Model, ResonanceTolerance) {
  auto p = raw(1, 1, {1.0 + 1e-9}, 1.0, {1});
  EXPECT_EQ(derive(validate(p)).M0, 0);
  p.resonance_tol = 1e-6;
  EXPECT_EQ(derive(validate(p)).M0, 1);
}

TEST(Model, LambdaMonotoneAndAsymptotic) {
  for (int k = 1; k < 20; ++k) EXPECT_LT(lambda_k(k), lambda_k(k + 1));
  double ratio = (lambda_k(30) / (3 * std::ldexp(1.0, 30))) / (std::sqrt(std::ldexp(1.0, 30)) / 3);
  EXPECT_NEAR(ratio, 1.0, 1e-4);
}

TEST(Model, DeriveIsPure) {
  auto p = validate(raw(2, 3, {0.3, 1.7}, 1.1, {0.2, 0.9}));
  auto a = derive(p), b = derive(p);
  EXPECT_EQ(a.Lambda_k, b.Lambda_k);
  EXPECT_EQ(a.delta, b.delta);
}

TEST(Model, JsonRoundTrip) {
  auto p = params_from_json(R"({"n_modes":2,"trunc_bits":3,"mode_freqs":[1,2],"atom_freq":0.5,"couplings":[0.1,0.2]})");
  EXPECT_EQ(p.n_qubits(), 7);
  auto q = params_from_json(params_to_json(p));
  EXPECT_EQ(q.mode_freqs, p.mode_freqs);
  EXPECT_EQ(q.couplings, p.couplings);
  EXPECT_EQ(q.atom_freq, p.atom_freq);
}

TEST(Model, JsonErrors) {
  EXPECT_THROW(params_from_json("{not json"), ValidationError);
  EXPECT_THROW(params_from_json(R"({"n_modes":2,"trunc_bits":2,"mode_freqs":[1,1],"atom_freq":1,"couplings":[1]})"),
               ValidationError);
  EXPECT_THROW(load_params("/nonexistent/params.json"), ValidationError);
}
