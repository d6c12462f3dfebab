#include "ejcm/sim.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <numbers>

#include "ejcm/partition.hpp"

namespace ejcm {

namespace {

const cplx kI(0.0, 1.0);

using Mat2 = std::array<cplx, 4>;

std::uint64_t bit_of(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

// applies m to qubit q of every column, restricted to indices with all control bits set
void apply_1q(cplx* data, std::uint64_t dim, std::uint64_t bit, const Mat2& m, std::uint64_t ctrl) {
  for (std::uint64_t r = 0; r < dim; ++r) {
    if ((r & bit) || (r & ctrl) != ctrl) continue;
    cplx a = data[r], b = data[r | bit];
    data[r] = m[0] * a + m[1] * b;
    data[r | bit] = m[2] * a + m[3] * b;
  }
}

void apply_gate(cplx* data, std::uint64_t dim, int n, const Gate& g) {
  const double s2 = 1.0 / std::numbers::sqrt2;
  switch (g.kind) {
    case Gate::Kind::H:
      apply_1q(data, dim, bit_of(n, g.q0), {s2, s2, s2, -s2}, 0);
      break;
    case Gate::Kind::RX: {
      double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      apply_1q(data, dim, bit_of(n, g.q0), {c, -kI * s, -kI * s, c}, 0);
      break;
    }
    case Gate::Kind::RZ:
      apply_1q(data, dim, bit_of(n, g.q0), {std::polar(1.0, -g.theta / 2), 0.0, 0.0, std::polar(1.0, g.theta / 2)}, 0);
      break;
    case Gate::Kind::CRZ:
      apply_1q(data, dim, bit_of(n, g.q1), {std::polar(1.0, -g.theta / 2), 0.0, 0.0, std::polar(1.0, g.theta / 2)},
               bit_of(n, g.q0));
      break;
    case Gate::Kind::CX:
      apply_1q(data, dim, bit_of(n, g.q1), {0.0, 1.0, 1.0, 0.0}, bit_of(n, g.q0));
      break;
  }
}

void rotate(cplx* data, std::uint64_t dim, const DenseAction& a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  if (a.flip == 0) {
    // diagonal: phase e^{-i theta (+-1)}
    const cplx plus(c, -s), minus(c, s);
    for (std::uint64_t r = 0; r < dim; ++r) {
      bool neg = std::popcount(r & a.sign) & 1;
      double re = a.base.real();
      data[r] *= ((re > 0) != neg) ? plus : minus;
    }
    return;
  }
  for (std::uint64_t r = 0; r < dim; ++r) {
    std::uint64_t t = r ^ a.flip;
    if (t < r) continue;
    cplx phr = a.base * ((std::popcount(r & a.sign) & 1) ? -1.0 : 1.0);
    cplx pht = a.base * ((std::popcount(t & a.sign) & 1) ? -1.0 : 1.0);
    cplx x = data[r], y = data[t];
    // (P psi)[t] = phr x, (P psi)[r] = pht y
    data[r] = c * x - kI * s * pht * y;
    data[t] = c * y - kI * s * phr * x;
  }
}

DenseOperator dense_interaction(const ModelParams& params, double t) {
  return to_dense(build_interaction(params, t).sum);
}

}  // namespace

DenseOperator exact_unitary(const DenseOperator& H, double t) {
  if (H.rows() != H.cols()) throw std::invalid_argument("exact_unitary: non-square");
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("exact_unitary: non-Hermitian input");
  if (t == 0.0) return DenseOperator::Identity(H.rows(), H.cols());
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(H);
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  Eigen::VectorXcd ph(H.rows());
  for (Eigen::Index i = 0; i < H.rows(); ++i) ph[i] = std::polar(1.0, -es.eigenvalues()[i] * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

void apply_rotation(StateVector& psi, const Rotation& r) {
  if (r.string.is_identity()) {
    psi *= std::polar(1.0, -r.angle);
    return;
  }
  rotate(psi.data(), psi.size(), dense_action(r.string), r.angle);
}

void apply_rotation(DenseOperator& U, const Rotation& r) {
  if (r.string.is_identity()) {
    U *= std::polar(1.0, -r.angle);
    return;
  }
  auto a = dense_action(r.string);
  for (Eigen::Index c = 0; c < U.cols(); ++c) rotate(U.col(c).data(), U.rows(), a, r.angle);
}

StateVector apply_schedule(const TrotterSchedule& s, const StateVector& psi0) {
  if (psi0.size() != (Eigen::Index{1} << s.n_qubits)) throw std::invalid_argument("apply_schedule: dimension mismatch");
  StateVector psi = psi0;
  for (const auto& st : s.steps)
    for (const auto& r : st.rotations) apply_rotation(psi, r);
  return psi * std::polar(1.0, -s.global_phase);
}

DenseOperator schedule_unitary(const TrotterSchedule& s) {
  if (s.n_qubits > dense_limit()) throw std::length_error("schedule exceeds dense limit");
  Eigen::Index dim = Eigen::Index{1} << s.n_qubits;
  DenseOperator U = DenseOperator::Identity(dim, dim);
  for (const auto& st : s.steps)
    for (const auto& r : st.rotations) apply_rotation(U, r);
  return U * std::polar(1.0, -s.global_phase);
}

StateVector apply_gates(const GateList& g, const StateVector& psi0) {
  if (psi0.size() != (Eigen::Index{1} << g.n_qubits)) throw std::invalid_argument("apply_gates: dimension mismatch");
  StateVector psi = psi0;
  for (const auto& gate : g.gates) apply_gate(psi.data(), psi.size(), g.n_qubits, gate);
  return psi;
}

DenseOperator gate_unitary(const GateList& g) {
  if (g.n_qubits > dense_limit()) throw std::length_error("gate list exceeds dense limit");
  Eigen::Index dim = Eigen::Index{1} << g.n_qubits;
  DenseOperator U = DenseOperator::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (const auto& gate : g.gates) apply_gate(U.col(c).data(), dim, g.n_qubits, gate);
  return U;
}

double spectral_norm(const DenseOperator& M) {
  if (M.size() == 0) return 0.0;
  if (std::max(M.rows(), M.cols()) < 1024) {
    Eigen::JacobiSVD<DenseOperator> svd(M);
    return svd.singularValues()(0);
  }
  Eigen::VectorXcd v(M.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(1.0 + 0.001 * (i % 17), 0.0005 * (i % 5));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXcd w = M.adjoint() * (M * v);
    double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

ErrorMetrics error_metrics(const DenseOperator& approx, const DenseOperator& exact, const StateVector& psi0) {
  DenseOperator d = exact - approx;
  ErrorMetrics m;
  m.operator_error = spectral_norm(d);
  if (psi0.size() > 0) m.state_error = (d * psi0).norm();
  return m;
}

ErrorMetrics error_metrics(const TrotterSchedule& s, const DenseOperator& exact, const StateVector& psi0) {
  return error_metrics(schedule_unitary(s), exact, psi0);
}

ReferenceResult reference_propagator_interaction(const ModelParams& params, double t, double tol, long long L_max) {
  auto product = [&](long long L) {
    double dt = t / static_cast<double>(L);
    Eigen::Index dim = Eigen::Index{1} << params.n_qubits();
    DenseOperator U = DenseOperator::Identity(dim, dim);
    for (long long j = 0; j < L; ++j) U = exact_unitary(dense_interaction(params, (j + 0.5) * dt), dt) * U;
    return U;
  };
  std::vector<DenseOperator> prev{product(1)};
  ReferenceResult res;
  for (long long L = 2; L <= L_max; L *= 2) {
    std::vector<DenseOperator> row{product(L)};
    double f = 1.0;
    for (std::size_t m = 1; m <= prev.size(); ++m) {
      f *= 4.0;
      row.push_back(row[m - 1] + (row[m - 1] - prev[m - 1]) / (f - 1.0));
    }
    double change = spectral_norm(row.back() - prev.back());
    res.last_change = change;
    if (change < tol) {
      res.U = row.back();
      res.L = L;
      return res;
    }
    prev = std::move(row);
  }
  throw NumericError("reference propagator did not converge within L_max");
}

double jc_survival(double g, double Delta, double t) {
  double Omega = std::sqrt(Delta * Delta + 4 * g * g);
  if (Omega == 0.0) return 1.0;
  double s = std::sin(Omega * t / 2);
  return 1.0 - 4 * g * g / (Omega * Omega) * s * s;
}

ModelParams jc_params(double g, double Delta, int k) {
  ModelParams p;
  p.n_modes = 1;
  p.trunc_bits = k;
  p.atom_freq = 1.0;
  p.mode_freqs = {1.0 + Delta};
  p.couplings = {g};
  return validate(p);
}

std::vector<double> jc_simulate(double g, double Delta, const std::vector<double>& times, long long N_T, int order) {
  auto params = jc_params(g, Delta);
  auto parts = build_schrodinger(params);
  auto part = partition_structured(parts.h_int, params, Picture::schrodinger, 0.0);
  auto problem = make_problem(parts, part);
  auto psi0 = basis_state(params.n_qubits(), 0);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    auto s = order == 1 ? schedule_first_order(problem, t, N_T, Ordering::fixed)
                        : schedule_second_order(problem, t, N_T, Ordering::fixed);
    auto psi = apply_schedule(s, psi0);
    out.push_back(std::norm(psi[0]));
  }
  return out;
}

std::vector<cplx> coherent_state(cplx alpha, int k, bool renormalize) {
  if (k < 1) throw std::invalid_argument("coherent_state: k >= 1");
  std::size_t dim = std::size_t{1} << k;
  std::vector<cplx> amp(dim);
  double pref = std::exp(-std::norm(alpha) / 2);
  cplx power = 1.0;
  double fact = 1.0;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b > 0) {
      power *= alpha;
      fact *= static_cast<double>(b);
    }
    amp[b] = pref * power / std::sqrt(fact);
  }
  if (renormalize) {
    double nrm = 0;
    for (auto a : amp) nrm += std::norm(a);
    nrm = std::sqrt(nrm);
    for (auto& a : amp) a /= nrm;
  }
  return amp;
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
  StateVector v = StateVector::Zero(Eigen::Index{1} << n_qubits);
  v[index] = 1.0;
  return v;
}

StateVector product_state(const ModelParams& params, const std::vector<std::vector<cplx>>& modes,
                          const std::array<cplx, 2>& atom) {
  if (static_cast<int>(modes.size()) != params.n_modes) throw std::invalid_argument("product_state: mode count");
  StateVector v = StateVector::Ones(1);
  for (const auto& m : modes) {
    if (m.size() != (std::size_t{1} << params.trunc_bits)) throw std::invalid_argument("product_state: mode size");
    StateVector f = Eigen::Map<const StateVector>(m.data(), m.size());
    StateVector next(v.size() * f.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * f.size(), f.size()) = v[i] * f;
    v = std::move(next);
  }
  StateVector out(v.size() * 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i] * atom[0];
    out[2 * i + 1] = v[i] * atom[1];
  }
  return out;
}

PauliSum total_number_operator(const ModelParams& params) {
  PauliSum s(params.n_qubits());
  auto local = number_operator(params.trunc_bits);
  for (int m = 1; m <= params.n_modes; ++m) s = s + embed(local, m, params);
  return s;
}

PauliSum total_number_squared_operator(const ModelParams& params) {
  PauliSum s(params.n_qubits());
  auto sq = number_squared_operator(params.trunc_bits);
  auto num = number_operator(params.trunc_bits);
  for (int m = 1; m <= params.n_modes; ++m) s = s + embed(sq, m, params);
  for (int m = 1; m <= params.n_modes; ++m)
    for (int l = 1; l <= params.n_modes; ++l)
      if (l != m) s = s + embed(num, m, params) * embed(num, l, params);
  return s;
}

PauliSum variance_operator(const ModelParams& params) {
  PauliSum s(params.n_qubits());
  auto sq = number_squared_operator(params.trunc_bits);
  auto num = number_operator(params.trunc_bits);
  for (int m = 1; m <= params.n_modes; ++m) s = s + embed(sq, m, params);
  for (int m = 2; m <= params.n_modes; ++m)
    for (int l = 1; l < m; ++l) s = s - embed(num, m, params) * embed(num, l, params) * cplx(2.0);
  return s;
}

PhotonStatistics photon_statistics(const StateVector& psi, const ModelParams& params) {
  if (psi.size() != (Eigen::Index{1} << params.n_qubits())) throw std::invalid_argument("photon_statistics: dimension");
  PhotonStatistics st;
  auto num = number_operator(params.trunc_bits);
  for (int m = 1; m <= params.n_modes; ++m) st.mode_means.push_back(expectation(embed(num, m, params), psi).real());
  st.mean = expectation(total_number_operator(params), psi).real();
  st.second_moment = expectation(total_number_squared_operator(params), psi).real();
  st.variance = st.second_moment - st.mean * st.mean;
  st.variance_operator_value = expectation(variance_operator(params), psi).real();
  return st;
}

ShotEstimate shot_estimate(double variance, double eps, int n_modes, int k) {
  if (!(eps > 0.0)) throw std::invalid_argument("shot_estimate: eps must be > 0");
  ShotEstimate s;
  double shots = std::ceil(std::max(variance, 0.0) / (eps * eps));
  s.shots = std::max(1LL, static_cast<long long>(shots));
  double w = static_cast<double>(n_modes) * std::ldexp(1.0, k);
  s.worst_case = w * w / (eps * eps);
  return s;
}

}  // namespace ejcm
