#pragma once

#include <stdexcept>
#include <string>

#include "ejcm/bounds.hpp"

namespace ejcm {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BudgetConfig {
  double eps_total = 1e-2;
  double p_phys = 1e-3;
  double overestimation_factor = 50.0;
  // p_L(d) = A (p_phys / p_th)^((d+1)/2)
  double logical_A = 0.1;
  double logical_p_th = 1e-2;
  // linear tock model
  double tocks_per_rotation = 1.0;
  double tocks_per_t = 0.0;
  double routing_factor = 2.0;
  // patch footprints in logical qubits
  double footprint_15_20 = 64.0;
  double footprint_15_15 = 80.0;
  int device_side = 20;
};

void check_config(const BudgetConfig& cfg);

struct BudgetSplit {
  double eps_Rz = 0.0;
  double p_out_req = 0.0;
  double clifford_budget = 0.0;
};

BudgetSplit allocate_budget(const BudgetConfig& cfg, long long n_Rz, long long n_T);

struct PrecisionBits {
  int bits = 0;
  double q = 0.0;
};

PrecisionBits rz_precision_bits(double eps_Rz);

enum class Factory { nested15_20, nested15_15 };
std::string factory_name(Factory f);

struct FactoryRecord {
  Factory factory = Factory::nested15_20;
  double p_out = 0.0;       // achievable output infidelity at p_phys
  double raw_law = 0.0;     // scaling law evaluated at p_phys without calibration
  double footprint = 0.0;
};

// nested output infidelity from the scaling laws, uncalibrated
double nested_15_20_law(double p);
double nested_15_15_law(double p);
// scaling laws normalized to the quoted output infidelities at p = 1e-3
double achievable_15_20(double p_phys);
double achievable_15_15(double p_phys);

FactoryRecord select_distillery(double p_out_req, double p_phys, const BudgetConfig& cfg = {});

int code_distance(double volume, double clifford_budget, const BudgetConfig& cfg = {});

struct CircuitCounts {
  long long rotations = 0;  // analytic (bound-derived) rotation count
  long long data_qubits = 0;
};

CircuitCounts counts_from_plan(const CostPlan& plan, const ModelParams& params);
CircuitCounts counts_from_gate_cost(const GateCost& gc, const ModelParams& params);

struct ResourceReport {
  long long n_Rz = 0;
  long long n_T = 0;
  double eps_Rz = 0.0;
  int precision_bits = 0;
  Factory factory = Factory::nested15_20;
  double p_out_required = 0.0;
  double p_out_achieved = 0.0;
  double clifford_budget = 0.0;
  double volume = 0.0;
  int distance = 0;
  long long storage_devices = 0;
  long long physical_qubits = 0;
  double tocks = 0.0;
  bool minimal = false;

  std::string to_json() const;
};

ResourceReport resource_report(const CircuitCounts& counts, const BudgetConfig& cfg);

}  // namespace ejcm
