#pragma once

#include <cstdint>
#include <vector>

#include "ejcm/hamiltonian.hpp"
#include "ejcm/model.hpp"
#include "ejcm/partition.hpp"
#include "ejcm/pauli.hpp"
#include "ejcm/trotter.hpp"

namespace ejcm {

// Row-stacked rho, sum_ij rho_ij |i>|j>, scaled to unit L2 norm.
// Qubits 0..N-1 hold the row index, N..2N-1 the column index.
struct VecDensity {
  StateVector v;
  int n_qubits = 0;
  double frobenius = 1.0;  // norm of the matrix before scaling
};

VecDensity vectorize(const DenseOperator& rho);
// rho / ||rho||_F as stored
DenseOperator unvectorize(const VecDensity& v);
DenseOperator unvectorize_normalized(const VecDensity& v);

// rho(t) = U rho U^dagger, so vec(rho) evolves under U (x) conj(U):
// the row register sees H, the column register -H^T
struct LiouvillianPair {
  TrotterProblem row;
  TrotterProblem column;
};

LiouvillianPair liouvillian(const HamiltonianParts& parts, const CommutingPartition& partition);
DenseOperator liouvillian_dense(const PauliSum& H);

struct MixedConfig {
  Picture picture = Picture::schrodinger;
  double t = 1.0;
  long long N_T = 1;
  int order = 2;
  Ordering ordering = Ordering::fixed;
  std::uint64_t seed = 0;
  long long L = 1;
  Integrator integrator = Integrator::midpoint;
};

// one schedule on 2N qubits: row-register steps followed by the column-register steps
TrotterSchedule vectorized_schedule(const ModelParams& params, const MixedConfig& cfg);
VecDensity evolve_vectorized(const ModelParams& params, const MixedConfig& cfg, const VecDensity& rho0);

struct TraceEstimate {
  double value = 0.0;  // sqrt(2^N) <Phi|v>, real part
  double imag = 0.0;
  bool negative = false;
  double proxy = 0.0;  // |<Phi|v>|^2
};

TraceEstimate trace_via_bell(const VecDensity& v, int n_qubits);
cplx observable_overlap(const StateVector& o_vec, const VecDensity& rho_vec);
// Hadamard-test circuit on 2N+1 qubits, ancilla last; imaginary adds S^dagger on the ancilla
GateList hadamard_test(const TrotterSchedule& s, bool imaginary);

// amplitudes p(x)/norm on |x>|x>; photon register only unless include_atom
StateVector build_O_N_vector(const ModelParams& params, bool include_atom = false);

// weights over photon basis states (length 2^{N_F k}), atom fixed to basis state atom_state
DenseOperator diagonal_mixture(const ModelParams& params, const std::vector<double>& weights, int atom_state = 0);
// H on every qubit of the first register, CNOT fan-out into the second
GateList uniform_mixture_purification(int n_qubits);

}  // namespace ejcm
