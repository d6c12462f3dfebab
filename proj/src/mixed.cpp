#include "ejcm/mixed.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ejcm/sim.hpp"

namespace ejcm {

namespace {

void check_dense(int n) {
  if (2 * n > dense_limit()) throw std::length_error("vectorized system exceeds dense limit");
}

int qubits_of(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

TrotterSchedule join(const TrotterSchedule& row, const TrotterSchedule& col, int n) {
  TrotterSchedule out = shift_schedule(row, 0, 2 * n);
  auto shifted = shift_schedule(col, n, 2 * n);
  out.steps.insert(out.steps.end(), shifted.steps.begin(), shifted.steps.end());
  out.global_phase = row.global_phase + col.global_phase;
  return out;
}

}  // namespace

VecDensity vectorize(const DenseOperator& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("vectorize: non-square");
  VecDensity out;
  out.n_qubits = qubits_of(rho.rows());
  out.frobenius = rho.norm();
  if (out.frobenius == 0.0) throw std::invalid_argument("vectorize: zero matrix");
  const Eigen::Index d = rho.rows();
  out.v.resize(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out.v[i * d + j] = rho(i, j) / out.frobenius;
  return out;
}

DenseOperator unvectorize(const VecDensity& v) {
  const Eigen::Index d = Eigen::Index{1} << v.n_qubits;
  if (v.v.size() != d * d) throw std::invalid_argument("unvectorize: length mismatch");
  DenseOperator rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v.v[i * d + j];
  return rho;
}

DenseOperator unvectorize_normalized(const VecDensity& v) {
  DenseOperator rho = unvectorize(v);
  cplx tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw std::invalid_argument("unvectorize_normalized: zero trace");
  return rho / tr;
}

LiouvillianPair liouvillian(const HamiltonianParts& parts, const CommutingPartition& partition) {
  LiouvillianPair p;
  p.row = make_problem(parts, partition);
  p.column = conjugate_problem(p.row);
  return p;
}

DenseOperator liouvillian_dense(const PauliSum& H) {
  DenseOperator h = to_dense(H);
  const Eigen::Index d = h.rows();
  DenseOperator I = DenseOperator::Identity(d, d);
  return Eigen::kroneckerProduct(h, I).eval() - Eigen::kroneckerProduct(I, h.transpose()).eval();
}

TrotterSchedule vectorized_schedule(const ModelParams& params, const MixedConfig& cfg) {
  const int n = params.n_qubits();
  check_dense(n);
  if (cfg.picture == Picture::schrodinger) {
    auto parts = build_schrodinger(params);
    auto part = partition_structured(parts.h_int, params, Picture::schrodinger, 0.0);
    auto lv = liouvillian(parts, part);
    auto sched = [&](const TrotterProblem& p) {
      if (cfg.order == 1) return schedule_first_order(p, cfg.t, cfg.N_T, cfg.ordering, cfg.seed);
      if (cfg.order == 2) return schedule_second_order(p, cfg.t, cfg.N_T, cfg.ordering, cfg.seed);
      if (cfg.order % 2 == 0) return schedule_higher_order(cfg.order / 2, p, cfg.t, cfg.N_T, cfg.ordering, cfg.seed);
      throw std::invalid_argument("order must be 1 or even");
    };
    return join(sched(lv.row), sched(lv.column), n);
  }
  InteractionConfig ic;
  ic.t = cfg.t;
  ic.L = cfg.L;
  ic.N_T = cfg.N_T;
  ic.order = cfg.order;
  ic.integrator = cfg.integrator;
  ic.ordering = cfg.ordering;
  ic.seed = cfg.seed;
  auto supplier = structured_supplier(params);
  auto row = schedule_interaction(params, supplier, ic);
  ic.conjugate = true;
  auto col = schedule_interaction(params, supplier, ic);
  return join(row, col, n);
}

VecDensity evolve_vectorized(const ModelParams& params, const MixedConfig& cfg, const VecDensity& rho0) {
  if (rho0.n_qubits != params.n_qubits()) throw std::invalid_argument("evolve_vectorized: qubit count mismatch");
  VecDensity out = rho0;
  if (cfg.t == 0.0) return out;
  out.v = apply_schedule(vectorized_schedule(params, cfg), rho0.v);
  return out;
}

TraceEstimate trace_via_bell(const VecDensity& v, int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (v.v.size() != d * d) throw std::invalid_argument("trace_via_bell: length mismatch");
  cplx overlap = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) overlap += v.v[i * d + i];
  overlap /= std::sqrt(static_cast<double>(d));
  TraceEstimate t;
  cplx val = overlap * std::sqrt(static_cast<double>(d));
  t.value = val.real();
  t.imag = val.imag();
  t.negative = t.value < 0.0;
  t.proxy = std::norm(overlap);
  return t;
}

cplx observable_overlap(const StateVector& o_vec, const VecDensity& rho_vec) {
  if (o_vec.size() != rho_vec.v.size()) throw std::invalid_argument("observable_overlap: length mismatch");
  return o_vec.dot(rho_vec.v);
}

GateList hadamard_test(const TrotterSchedule& s, bool imaginary) {
  const int anc = s.n_qubits;
  GateList body = controlled(s, anc);
  GateList g;
  g.n_qubits = anc + 1;
  g.gates.push_back({Gate::Kind::H, anc, -1, 0.0});
  if (imaginary) g.gates.push_back({Gate::Kind::RZ, anc, -1, -std::numbers::pi / 2});
  g.gates.insert(g.gates.end(), body.gates.begin(), body.gates.end());
  g.gates.push_back({Gate::Kind::H, anc, -1, 0.0});
  return g;
}

StateVector build_O_N_vector(const ModelParams& params, bool include_atom) {
  const int kf = params.n_modes * params.trunc_bits;
  const int n = include_atom ? kf + 1 : kf;
  check_dense(n);
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t mask = (std::uint64_t{1} << params.trunc_bits) - 1;
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(d * d));
  double norm2 = 0.0;
  for (std::uint64_t x = 0; x < d; ++x) {
    std::uint64_t photons = include_atom ? x >> 1 : x;
    double p = 0.0;
    for (int m = 0; m < params.n_modes; ++m) p += static_cast<double>((photons >> (params.trunc_bits * m)) & mask);
    v[static_cast<Eigen::Index>(x * d + x)] = p;
    norm2 += p * p;
  }
  if (norm2 > 0.0) v /= std::sqrt(norm2);
  return v;
}

DenseOperator diagonal_mixture(const ModelParams& params, const std::vector<double>& weights, int atom_state) {
  const int kf = params.n_modes * params.trunc_bits;
  const std::size_t dp = std::size_t{1} << kf;
  if (weights.size() != dp) throw std::invalid_argument("diagonal_mixture: need 2^(N_F k) weights");
  if (atom_state != 0 && atom_state != 1) throw std::invalid_argument("diagonal_mixture: atom state is 0 or 1");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("diagonal_mixture: weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("diagonal_mixture: weights sum to zero");
  const Eigen::Index d = Eigen::Index{1} << params.n_qubits();
  DenseOperator rho = DenseOperator::Zero(d, d);
  for (std::size_t x = 0; x < dp; ++x) {
    Eigen::Index i = static_cast<Eigen::Index>(2 * x + atom_state);
    rho(i, i) = weights[x] / total;
  }
  return rho;
}

GateList uniform_mixture_purification(int n_qubits) {
  GateList g;
  g.n_qubits = 2 * n_qubits;
  for (int q = 0; q < n_qubits; ++q) g.gates.push_back({Gate::Kind::H, q, -1, 0.0});
  for (int q = 0; q < n_qubits; ++q) g.gates.push_back({Gate::Kind::CX, q, n_qubits + q, 0.0});
  return g;
}

}  // namespace ejcm
