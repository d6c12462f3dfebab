#pragma once

#include <array>
#include <vector>

#include "ejcm/hamiltonian.hpp"
#include "ejcm/model.hpp"
#include "ejcm/pauli.hpp"
#include "ejcm/trotter.hpp"

namespace ejcm {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DenseOperator exact_unitary(const DenseOperator& H, double t);

void apply_rotation(StateVector& psi, const Rotation& r);
void apply_rotation(DenseOperator& U, const Rotation& r);
StateVector apply_schedule(const TrotterSchedule& s, const StateVector& psi0);
DenseOperator schedule_unitary(const TrotterSchedule& s);

StateVector apply_gates(const GateList& g, const StateVector& psi0);
DenseOperator gate_unitary(const GateList& g);

// SVD below 2^10, power iteration on M^dagger M above
double spectral_norm(const DenseOperator& M);

struct ErrorMetrics {
  double operator_error = 0.0;
  double state_error = 0.0;
};

ErrorMetrics error_metrics(const DenseOperator& approx, const DenseOperator& exact, const StateVector& psi0);
ErrorMetrics error_metrics(const TrotterSchedule& s, const DenseOperator& exact, const StateVector& psi0);

struct ReferenceResult {
  DenseOperator U;
  long long L = 0;
  double last_change = 0.0;
};

// midpoint products with doubling L and Richardson extrapolation in even powers of dt
ReferenceResult reference_propagator_interaction(const ModelParams& params, double t, double tol,
                                                 long long L_max = 1LL << 20);

double jc_survival(double g, double Delta, double t);
ModelParams jc_params(double g, double Delta, int k = 1);
// survival probability of |0>_photon |e>_atom under the Schrodinger-picture product formula
std::vector<double> jc_simulate(double g, double Delta, const std::vector<double>& times, long long N_T, int order);

std::vector<cplx> coherent_state(cplx alpha, int k, bool renormalize = true);
StateVector basis_state(int n_qubits, std::uint64_t index);
// modes[m] are Fock amplitudes of mode m+1, atom = (c0, c1)
StateVector product_state(const ModelParams& params, const std::vector<std::vector<cplx>>& modes,
                          const std::array<cplx, 2>& atom);

PauliSum total_number_operator(const ModelParams& params);
PauliSum total_number_squared_operator(const ModelParams& params);
// sum_l O_{N^2}^(l) - 2 sum_{m>n} O_N^(m) O_N^(n), exposed as written
PauliSum variance_operator(const ModelParams& params);

struct PhotonStatistics {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  std::vector<double> mode_means;
  double variance_operator_value = 0.0;
};

PhotonStatistics photon_statistics(const StateVector& psi, const ModelParams& params);

struct ShotEstimate {
  long long shots = 1;
  double worst_case = 0.0;
};

ShotEstimate shot_estimate(double variance, double eps, int n_modes, int k);

}  // namespace ejcm
