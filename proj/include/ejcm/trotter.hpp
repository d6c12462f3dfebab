#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ejcm/hamiltonian.hpp"
#include "ejcm/partition.hpp"
#include "ejcm/pauli.hpp"

namespace ejcm {

enum class Ordering { fixed, randomized };
enum class Integrator { left, midpoint };

// exp(-i angle P)
struct Rotation {
  double angle = 0.0;
  PauliString string;
};

struct ScheduleStep {
  enum class Kind { group, diagonal };
  Kind kind = Kind::group;
  int group_id = -1;
  std::vector<Rotation> rotations;
};

struct TrotterSchedule {
  int n_qubits = 0;
  std::vector<ScheduleStep> steps;
  // the schedule implements exp(-i global_phase) * prod(steps)
  double global_phase = 0.0;
  Picture picture = Picture::schrodinger;
  int order = 1;
  long long L = 1;
  long long N_T = 1;
  std::optional<std::uint64_t> seed;
  Ordering ordering = Ordering::fixed;

  std::size_t rotation_count() const;
};

// Hermitian problem split into a diagonal layer and commuting groups
struct TrotterProblem {
  int n_qubits = 0;
  std::vector<Rotation> diagonal;             // angle holds the coefficient
  std::vector<std::vector<Rotation>> groups;  // angle holds the coefficient
  double identity_shift = 0.0;
};

TrotterProblem make_problem(const PauliSum& diagonal, const PauliSum& interaction, const CommutingPartition& partition,
                            double identity_shift);
TrotterProblem make_problem(const HamiltonianParts& parts, const CommutingPartition& partition);
// generator -H^T: odd-Y coefficients keep their sign, the rest flip
TrotterProblem conjugate_problem(const TrotterProblem& p);

TrotterSchedule schedule_first_order(const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                                     std::uint64_t seed = 0);
TrotterSchedule schedule_second_order(const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                                      std::uint64_t seed = 0);
// S_{2r} by the five-fold recursion; r = 1 is the second-order formula
TrotterSchedule schedule_higher_order(int r, const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                                      std::uint64_t seed = 0);

TrotterSchedule schedule_first_order(const HamiltonianParts& parts, const CommutingPartition& partition, double T,
                                     long long N_T, Ordering ordering, std::uint64_t seed = 0);
TrotterSchedule schedule_second_order(const HamiltonianParts& parts, const CommutingPartition& partition, double T,
                                      long long N_T, Ordering ordering, std::uint64_t seed = 0);

double suzuki_u(int r);

using PartitionSupplier = std::function<CommutingPartition(const TaggedSum&, double)>;

struct InteractionConfig {
  double t = 1.0;
  long long L = 1;
  long long N_T = 1;
  int order = 2;
  Integrator integrator = Integrator::midpoint;
  Ordering ordering = Ordering::fixed;
  std::uint64_t seed = 0;
  // build the column-register schedule (generator -H^T) instead
  bool conjugate = false;
};

PartitionSupplier structured_supplier(const ModelParams& params);
TrotterSchedule schedule_interaction(const ModelParams& params, const PartitionSupplier& supplier,
                                     const InteractionConfig& cfg);

TrotterSchedule shift_schedule(const TrotterSchedule& s, int offset, int n_total);

struct Gate {
  enum class Kind { CX, H, RX, RZ, CRZ };
  Kind kind = Kind::H;
  int q0 = 0;
  int q1 = -1;
  double theta = 0.0;
};

struct GateList {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::size_t count(Gate::Kind k) const;
  std::string to_json() const;
};

GateList lower_rotation(int n_qubits, const Rotation& r);
GateList lower_to_gates(const TrotterSchedule& s);
GateList controlled(const GateList& g, int ancilla);
GateList controlled(const TrotterSchedule& s, int ancilla);

}  // namespace ejcm
