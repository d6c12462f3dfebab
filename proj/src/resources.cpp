#include "ejcm/resources.hpp"

#include <cmath>

#include "json.hpp"

namespace ejcm {

namespace {

constexpr double kQuoted15_20 = 6e-15;
constexpr double kQuoted15_15 = 1.5e-21;
constexpr double kReferenceP = 1e-3;

double l15(double p) { return 35.0 * p * p * p; }
double l20(double p) { return 5.5 * p * p; }

}  // namespace

void check_config(const BudgetConfig& c) {
  if (!(c.eps_total > 0.0 && c.eps_total < 1.0)) throw ResourceError("eps_total must be in (0, 1)");
  if (!(c.p_phys > 0.0 && c.p_phys < 1.0)) throw ResourceError("p_phys must be in (0, 1)");
  if (!(c.overestimation_factor > 0.0)) throw ResourceError("overestimation factor must be positive");
  if (!(c.logical_A > 0.0 && c.logical_p_th > 0.0)) throw ResourceError("logical error model must be positive");
  if (c.tocks_per_rotation < 0.0 || c.tocks_per_t < 0.0 || !(c.routing_factor > 0.0))
    throw ResourceError("tock model must be non-negative");
  if (c.device_side < 1) throw ResourceError("device side must be positive");
}

BudgetSplit allocate_budget(const BudgetConfig& cfg, long long n_Rz, long long n_T) {
  check_config(cfg);
  if (n_Rz < 1 || n_T < 1) throw ResourceError("gate counts must be >= 1");
  BudgetSplit b;
  b.clifford_budget = cfg.eps_total / 3.0;
  b.eps_Rz = b.clifford_budget / static_cast<double>(n_Rz);
  b.p_out_req = b.clifford_budget / static_cast<double>(n_T);
  return b;
}

PrecisionBits rz_precision_bits(double eps_Rz) {
  if (!(eps_Rz > 0.0 && eps_Rz < 1.0)) throw ResourceError("eps_Rz must be in (0, 1)");
  PrecisionBits p;
  p.bits = static_cast<int>(std::ceil(-std::log2(eps_Rz))) + 3;
  p.q = std::ldexp(1.0, p.bits);
  return p;
}

std::string factory_name(Factory f) { return f == Factory::nested15_20 ? "nested15_20" : "nested15_15"; }

double nested_15_20_law(double p) { return l20(l15(p)); }
double nested_15_15_law(double p) { return l15(l15(p)); }

double achievable_15_20(double p_phys) { return kQuoted15_20 * std::pow(p_phys / kReferenceP, 6); }

double achievable_15_15(double p_phys) { return kQuoted15_15 * std::pow(p_phys / kReferenceP, 9); }

FactoryRecord select_distillery(double p_out_req, double p_phys, const BudgetConfig& cfg) {
  if (!(p_out_req > 0.0)) throw ResourceError("p_out_req must be positive");
  if (!(p_phys > 0.0 && p_phys < 1.0)) throw ResourceError("p_phys must be in (0, 1)");
  FactoryRecord r;
  if (p_out_req >= achievable_15_20(p_phys)) {
    r.factory = Factory::nested15_20;
    r.p_out = achievable_15_20(p_phys);
    r.raw_law = nested_15_20_law(p_phys);
    r.footprint = cfg.footprint_15_20;
    return r;
  }
  if (p_out_req >= achievable_15_15(p_phys)) {
    r.factory = Factory::nested15_15;
    r.p_out = achievable_15_15(p_phys);
    r.raw_law = nested_15_15_law(p_phys);
    r.footprint = cfg.footprint_15_15;
    return r;
  }
  throw ResourceError("required T-state infidelity is unachievable with the modeled factories");
}

int code_distance(double volume, double clifford_budget, const BudgetConfig& cfg) {
  if (!(volume > 0.0)) throw ResourceError("volume must be positive");
  if (!(clifford_budget > 0.0)) throw ResourceError("budget must be positive");
  const double ratio = cfg.p_phys / cfg.logical_p_th;
  for (int d = 3; d <= 101; d += 2) {
    double pl = cfg.logical_A * std::pow(ratio, (d + 1) / 2.0);
    if (volume * pl <= clifford_budget) return d;
  }
  throw ResourceError("no code distance up to 101 meets the budget");
}

CircuitCounts counts_from_plan(const CostPlan& plan, const ModelParams& params) {
  CircuitCounts c;
  c.rotations = static_cast<long long>(std::ceil(plan.total_cost));
  c.data_qubits = params.n_qubits();
  return c;
}

CircuitCounts counts_from_gate_cost(const GateCost& gc, const ModelParams& params) {
  CircuitCounts c;
  c.rotations = gc.rotations;
  c.data_qubits = params.n_qubits();
  return c;
}

ResourceReport resource_report(const CircuitCounts& counts, const BudgetConfig& cfg) {
  check_config(cfg);
  if (counts.rotations < 0 || counts.data_qubits < 0) throw ResourceError("counts must be non-negative");
  ResourceReport r;
  r.clifford_budget = cfg.eps_total / 3.0;
  if (counts.rotations == 0) {
    r.minimal = true;
    r.factory = Factory::nested15_20;
    r.distance = 3;
    r.storage_devices = counts.data_qubits > 0 ? (counts.data_qubits + 399) / 400 : 0;
    const long long patch = 2LL * r.distance * r.distance;
    r.physical_qubits = r.storage_devices * 400 * patch;
    return r;
  }
  r.n_Rz = std::max(1LL, static_cast<long long>(std::ceil(counts.rotations / cfg.overestimation_factor)));
  auto split0 = allocate_budget(cfg, r.n_Rz, 1);
  r.eps_Rz = split0.eps_Rz;
  r.precision_bits = rz_precision_bits(std::min(r.eps_Rz, 0.5)).bits;
  const long long t_per_rot = static_cast<long long>(std::ceil(3.0 * std::log2(1.0 / r.eps_Rz)));
  r.n_T = r.n_Rz * std::max(1LL, t_per_rot);
  auto split = allocate_budget(cfg, r.n_Rz, r.n_T);
  r.p_out_required = split.p_out_req;
  auto fac = select_distillery(split.p_out_req, cfg.p_phys, cfg);
  r.factory = fac.factory;
  r.p_out_achieved = fac.p_out;
  r.tocks = static_cast<double>(r.n_Rz) * cfg.tocks_per_rotation + static_cast<double>(r.n_T) * cfg.tocks_per_t;
  r.volume = (static_cast<double>(counts.data_qubits) + fac.footprint) * std::max(r.tocks, 1.0) * cfg.routing_factor;
  r.distance = code_distance(r.volume, split.clifford_budget, cfg);
  r.storage_devices = (counts.data_qubits + 399) / 400;
  const long long per_device = static_cast<long long>(cfg.device_side) * cfg.device_side;
  const long long patch = 2LL * r.distance * r.distance;
  r.physical_qubits = (2 + r.storage_devices) * per_device * patch;
  return r;
}

std::string ResourceReport::to_json() const {
  nlohmann::ordered_json j;
  j["n_Rz"] = n_Rz;
  j["n_T"] = n_T;
  j["eps_Rz"] = eps_Rz;
  j["Precision R_Z (bits)"] = precision_bits;
  j["factory"] = factory_name(factory);
  j["Infidelity T (required)"] = p_out_required;
  j["Infidelity T"] = p_out_achieved;
  j["clifford_budget"] = clifford_budget;
  j["Vol"] = volume;
  j["Tocks"] = tocks;
  j["Distance"] = distance;
  j["storage_devices"] = storage_devices;
  j["Physical Qubits"] = physical_qubits;
  j["minimal"] = minimal;
  j["non_reproducible"] = {"Vol", "Tocks", "Distance", "Physical Qubits"};
  return j.dump(2);
}

}  // namespace ejcm
