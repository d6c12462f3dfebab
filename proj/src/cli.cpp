#include "ejcm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ejcm/bounds.hpp"
#include "ejcm/hamiltonian.hpp"
#include "ejcm/mixed.hpp"
#include "ejcm/model.hpp"
#include "ejcm/partition.hpp"
#include "ejcm/resources.hpp"
#include "ejcm/sim.hpp"
#include "ejcm/trotter.hpp"
#include "json.hpp"

namespace ejcm::cli {

namespace {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string subcommand;
  std::string config_path;
  std::string params_inline;
  std::string out_dir;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int seeds = 1;
  int jobs = 1;
  std::vector<long long> nt;
  std::vector<double> eps;
  std::vector<double> times;
  int order = 0;
  std::string picture = "schrodinger";
  std::string ordering = "fixed";
  std::string method = "structured";
  std::string integrator = "midpoint";
  int G = 0;
  double g = 1.0;
  double delta = 0.0;
  int points = 64;
  double tmax = 2 * std::numbers::pi;
  double t = 1.0;
  bool has_t = false;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json meta;
  std::optional<Table> table;
  json document;
};

Picture parse_picture(const std::string& s) {
  if (s == "schrodinger") return Picture::schrodinger;
  if (s == "interaction") return Picture::interaction;
  throw ConfigError("unknown picture: " + s);
}

Ordering parse_ordering(const std::string& s) {
  if (s == "fixed") return Ordering::fixed;
  if (s == "randomized") return Ordering::randomized;
  throw ConfigError("unknown ordering: " + s);
}

Integrator parse_integrator(const std::string& s) {
  if (s == "midpoint") return Integrator::midpoint;
  if (s == "left") return Integrator::left;
  throw ConfigError("unknown integrator: " + s);
}

ModelParams uniform_default_params() {
  ModelParams p;
  p.n_modes = 3;
  p.trunc_bits = 2;
  p.mode_freqs = {1.0, 1.0, 1.0};
  p.atom_freq = 1.0;
  p.couplings = {1.0, 1.0, 1.0};
  return p;
}

// bounded pool, one result slot per index
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

struct Context {
  Options opt;
  ModelParams params;
  json file;  // config document, may be empty

  json section(const std::string& name) const {
    if (file.is_object() && file.contains(name)) return file[name];
    return json::object();
  }
};

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.is_object() && j.contains(key)) dst = j[key].get<T>();
}

Context resolve(const Options& opt) {
  Context c;
  c.opt = opt;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot read config: " + opt.config_path);
    try {
      c.file = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!c.file.is_object()) throw ConfigError("config must be a JSON object");
  }
  if (!opt.params_inline.empty()) {
    c.params = params_from_json(opt.params_inline);
  } else if (c.file.is_object() && c.file.contains("params")) {
    c.params = params_from_json(c.file["params"].dump());
  } else if (c.file.is_object() && c.file.contains("n_modes")) {
    c.params = params_from_json(c.file.dump());
  } else {
    c.params = validate(uniform_default_params());
  }
  // sweep axes from the file fill in whatever the flags left unset
  json sweep = c.section("sweep");
  try {
    if (c.opt.nt.empty()) take(sweep, "nt", c.opt.nt);
    if (c.opt.eps.empty()) take(sweep, "eps", c.opt.eps);
    if (c.opt.times.empty()) take(sweep, "t", c.opt.times);
    if (!c.opt.has_t && c.file.is_object() && c.file.contains("T")) c.opt.t = c.file["T"].get<double>();
    if (c.opt.G == 0) take(c.file, "G", c.opt.G);
    if (c.opt.seeds == 1) take(sweep, "seeds", c.opt.seeds);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }
  if (c.opt.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (c.opt.seeds < 1) throw ConfigError("--seeds must be >= 1");
  for (auto v : c.opt.nt)
    if (v < 1) throw ConfigError("N_T values must be >= 1");
  for (auto v : c.opt.eps)
    if (!(v > 0.0)) throw ConfigError("eps values must be > 0");
  return c;
}

json resolved_config(const Context& c) {
  json j;
  j["subcommand"] = c.opt.subcommand;
  j["params"] = json::parse(params_to_json(c.params));
  j["seed"] = c.opt.seed;
  j["seeds"] = c.opt.seeds;
  j["nt"] = c.opt.nt;
  j["eps"] = c.opt.eps;
  j["t_list"] = c.opt.times;
  j["T"] = c.opt.t;
  j["order"] = c.opt.order;
  j["picture"] = c.opt.picture;
  j["ordering"] = c.opt.ordering;
  j["G"] = c.opt.G;
  return j;
}

int group_count(const Context& c, Picture pic, double t) {
  return c.opt.G > 0 ? c.opt.G : default_group_count(c.params, pic, t);
}

Output cmd_build(const Context& c) {
  Output o;
  Picture pic = parse_picture(c.opt.picture);
  auto counts = term_counts(c.params);
  o.meta["counts"] = {{"N_Z", counts.N_Z}, {"N_P", counts.N_P}, {"M", counts.M}, {"N_I_t0", counts.N_I_t0},
                      {"N_I_t", counts.N_I_t}};
  Table t;
  t.columns = {"part", "label", "re", "im"};
  auto add = [&](const char* part, const PauliSum& s) {
    for (const auto& term : s.terms())
      t.rows.push_back({part, term.string.label(), num(term.coeff.real()), num(term.coeff.imag())});
  };
  if (pic == Picture::schrodinger) {
    auto parts = build_schrodinger(c.params);
    o.meta["identity_shift"] = parts.identity_shift;
    add("photon", parts.h_photon);
    add("atom", parts.h_atom);
    add("interaction", parts.h_int.sum);
  } else {
    add("interaction", build_interaction(c.params, c.opt.t).sum);
  }
  o.table = std::move(t);
  return o;
}

Output cmd_partition(const Context& c) {
  Output o;
  Picture pic = parse_picture(c.opt.picture);
  TaggedSum h = pic == Picture::schrodinger ? build_schrodinger(c.params).h_int : build_interaction(c.params, c.opt.t);
  CommutingPartition p;
  if (c.opt.method == "structured")
    p = partition_structured(h, c.params, pic, c.opt.t);
  else if (c.opt.method == "greedy")
    p = partition_greedy(h.sum, c.opt.seed);
  else
    throw ConfigError("unknown method: " + c.opt.method);
  auto edges = frustration_graph(h.sum);
  o.meta["G"] = p.size();
  o.meta["method"] = c.opt.method;
  o.meta["verified"] = verify_partition(h.sum, p);
  o.meta["frustration_edges"] = edges.size();
  Table t;
  t.columns = {"group", "term", "label"};
  for (std::size_t gi = 0; gi < p.groups.size(); ++gi)
    for (auto idx : p.groups[gi]) t.rows.push_back({std::to_string(gi), std::to_string(idx), h.sum[idx].string.label()});
  o.table = std::move(t);
  return o;
}

Output cmd_bound(const Context& c) {
  Output o;
  Picture pic = parse_picture(c.opt.picture);
  std::vector<int> orders = c.opt.order ? std::vector<int>{c.opt.order} : std::vector<int>{1, 2};
  std::vector<long long> nts = c.opt.nt.empty() ? std::vector<long long>{1} : c.opt.nt;
  const int G = group_count(c, pic, c.opt.t);
  Table t;
  t.columns = {"picture", "order", "T", "N_T", "G", "Lambda_k", "prefactor", "bound"};
  for (int ord : orders) {
    for (auto nt : nts) {
      BoundReport r;
      if (pic == Picture::schrodinger)
        r = ord == 1 ? first_order_bound_schrodinger(c.params, G, c.opt.t, nt)
                     : second_order_bound_schrodinger(c.params, G, c.opt.t, nt);
      else
        r = ord == 1 ? first_order_bound_interaction(c.params, G, c.opt.t, nt)
                     : second_order_bound_interaction(c.params, G, c.opt.t, nt);
      t.rows.push_back({c.opt.picture, std::to_string(ord), num(r.T), std::to_string(nt), std::to_string(G),
                        num(r.Lambda_k), num(r.prefactor), num(r.epsilon_bound)});
    }
  }
  auto dn = derivative_norm_bounds(c.params);
  o.meta["derivative_norms"] = {{"A", dn.A}, {"Hpp", dn.Hpp}, {"Comm", dn.Comm}};
  o.table = std::move(t);
  return o;
}

Output cmd_plan(const Context& c) {
  Output o;
  std::vector<int> orders = c.opt.order ? std::vector<int>{c.opt.order} : std::vector<int>{1, 2};
  std::vector<double> epss = c.opt.eps.empty() ? std::vector<double>{1e-2} : c.opt.eps;
  const int G = group_count(c, Picture::interaction, c.opt.t);
  Table t;
  t.columns = {"order", "eps", "t", "G", "degenerate", "x_opt", "L", "N_T", "per_step", "total_cost", "C_int",
               "A", "B", "K_M", "C", "N_I"};
  for (int ord : orders)
    for (double e : epss) {
      auto p = ord == 1 ? optimize_cost_first_order(c.params, G, c.opt.t, e)
                        : optimize_cost_second_order(c.params, G, c.opt.t, e);
      t.rows.push_back({std::to_string(ord), num(e), num(c.opt.t), std::to_string(G), p.degenerate ? "1" : "0",
                        num(p.x_opt), std::to_string(p.L), std::to_string(p.N_T), std::to_string(p.per_step),
                        num(p.total_cost), num(p.C_int), num(p.A), num(p.B), num(p.K_M), num(p.C),
                        std::to_string(p.N_I)});
    }
  o.table = std::move(t);
  return o;
}

Output cmd_simulate(const Context& c) {
  Output o;
  if (c.params.n_qubits() > dense_limit()) throw std::length_error("instance exceeds the dense limit");
  const int order = c.opt.order ? c.opt.order : 1;
  if (order != 1 && order != 2) throw ConfigError("simulate supports order 1 or 2");
  std::vector<long long> nts = c.opt.nt;
  if (nts.empty())
    for (long long n = 1; n <= 128; n *= 2) nts.push_back(n);
  const Ordering ordering = parse_ordering(c.opt.ordering);
  const int G = group_count(c, Picture::schrodinger, 0.0);
  const double T = c.opt.t;
  auto parts = build_schrodinger(c.params);
  auto part = partition_structured(parts.h_int, c.params, Picture::schrodinger, 0.0);
  auto problem = make_problem(parts, part);
  const DenseOperator exact = exact_unitary(to_dense(total(parts)), T);
  const StateVector psi0 = basis_state(c.params.n_qubits(), 0);
  const int nseeds = ordering == Ordering::randomized ? c.opt.seeds : 1;
  struct Cell {
    long long nt;
    std::uint64_t seed;
    double bound = 0, op = 0, st = 0;
  };
  std::vector<Cell> cells;
  for (auto nt : nts)
    for (int s = 0; s < nseeds; ++s) cells.push_back({nt, c.opt.seed + static_cast<std::uint64_t>(s)});
  parallel_for(cells.size(), c.opt.jobs, [&](std::size_t i) {
    Cell& cell = cells[i];
    auto sched = order == 1 ? schedule_first_order(problem, T, cell.nt, ordering, cell.seed)
                            : schedule_second_order(problem, T, cell.nt, ordering, cell.seed);
    auto m = error_metrics(sched, exact, psi0);
    cell.op = m.operator_error;
    cell.st = m.state_error;
    cell.bound = order == 1 ? first_order_bound_schrodinger(c.params, G, T, cell.nt).epsilon_bound
                            : second_order_bound_schrodinger(c.params, G, T, cell.nt).epsilon_bound;
  });
  Table t;
  t.columns = {"N_T", "bound", "operator_error", "state_error", "seed"};
  for (const auto& cell : cells)
    t.rows.push_back({std::to_string(cell.nt), num(cell.bound), num(cell.op), num(cell.st),
                      ordering == Ordering::randomized ? std::to_string(cell.seed) : ""});
  o.meta["order"] = order;
  o.meta["G_bound"] = G;
  o.meta["initial_state"] = "basis index 0";
  o.table = std::move(t);
  return o;
}

Output cmd_jc(const Context& c) {
  Output o;
  const int order = c.opt.order ? c.opt.order : 1;
  const long long nt = c.opt.nt.empty() ? 512 : c.opt.nt.front();
  if (c.opt.points < 1) throw ConfigError("--points must be >= 1");
  std::vector<double> times = c.opt.times;
  if (times.empty())
    for (int i = 0; i < c.opt.points; ++i)
      times.push_back(c.opt.points == 1 ? 0.0 : c.opt.tmax * i / (c.opt.points - 1));
  std::vector<double> sim(times.size());
  parallel_for(times.size(), c.opt.jobs, [&](std::size_t i) {
    sim[i] = jc_simulate(c.opt.g, c.opt.delta, {times[i]}, nt, order).front();
  });
  Table t;
  t.columns = {"t", "P_analytic", "P_simulated"};
  for (std::size_t i = 0; i < times.size(); ++i)
    t.rows.push_back({num(times[i]), num(jc_survival(c.opt.g, c.opt.delta, times[i])), num(sim[i])});
  o.meta["g"] = c.opt.g;
  o.meta["delta"] = c.opt.delta;
  o.meta["N_T"] = nt;
  o.meta["order"] = order;
  o.table = std::move(t);
  return o;
}

// smallest L with operator error <= eps, doubling then bisection
long long numerical_slices(const ModelParams& params, const DenseOperator& exact, const InteractionConfig& base,
                           double eps, long long cap) {
  auto err = [&](long long L) {
    InteractionConfig cfg = base;
    cfg.L = L;
    return spectral_norm(schedule_unitary(schedule_interaction(params, structured_supplier(params), cfg)) - exact);
  };
  long long hi = 1;
  while (err(hi) > eps) {
    if (hi >= cap) return -1;
    hi = std::min(hi * 2, cap);
  }
  long long lo = hi / 2;  // err(lo) > eps unless hi == 1
  if (hi == 1) return 1;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (err(mid) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Output cmd_interaction(const Context& c) {
  Output o;
  if (c.params.n_qubits() > dense_limit()) throw std::length_error("instance exceeds the dense limit");
  const int order = c.opt.order ? c.opt.order : 2;
  std::vector<double> epss = c.opt.eps.empty() ? std::vector<double>{1e-1, 5e-2, 1e-2} : c.opt.eps;
  const int G = group_count(c, Picture::interaction, c.opt.t);
  auto parts = build_schrodinger(c.params);
  const DenseOperator exact = exact_unitary(to_dense(total(parts)), c.opt.t);
  InteractionConfig base;
  base.t = c.opt.t;
  base.N_T = c.opt.nt.empty() ? 1 : c.opt.nt.front();
  base.order = order;
  base.integrator = parse_integrator(c.opt.integrator);
  base.ordering = parse_ordering(c.opt.ordering);
  base.seed = c.opt.seed;
  std::vector<long long> theo(epss.size()), theo_nt(epss.size()), numer(epss.size());
  parallel_for(epss.size(), c.opt.jobs, [&](std::size_t i) {
    auto plan = order == 1 ? optimize_cost_first_order(c.params, G, c.opt.t, epss[i])
                           : optimize_cost_second_order(c.params, G, c.opt.t, epss[i]);
    theo[i] = plan.L;
    theo_nt[i] = plan.N_T;
    numer[i] = numerical_slices(c.params, exact, base, epss[i], std::max<long long>(4 * plan.L, 1 << 12));
  });
  Table t;
  t.columns = {"eps", "L_numerical", "L_theoretical", "N_T_theoretical", "steps_numerical", "steps_theoretical"};
  for (std::size_t i = 0; i < epss.size(); ++i)
    t.rows.push_back({num(epss[i]), std::to_string(numer[i]), std::to_string(theo[i]), std::to_string(theo_nt[i]),
                      std::to_string(numer[i] * base.N_T), std::to_string(theo[i] * theo_nt[i])});
  o.meta["order"] = order;
  o.meta["G"] = G;
  o.meta["inner_N_T"] = base.N_T;
  o.table = std::move(t);
  return o;
}

Output cmd_mixed(const Context& c) {
  Output o;
  json sec = c.section("mixed");
  const int kf = c.params.n_modes * c.params.trunc_bits;
  std::vector<double> weights;
  take(sec, "weights", weights);
  if (weights.empty()) {
    weights.assign(std::size_t{1} << kf, 0.0);
    weights[0] = 1.0;
  }
  int atom_state = 0;
  take(sec, "atom_state", atom_state);
  std::vector<double> times = c.opt.times;
  if (times.empty())
    for (int i = 0; i <= 10; ++i) times.push_back(c.opt.t * i / 10.0);
  MixedConfig base;
  base.picture = parse_picture(c.opt.picture);
  base.order = c.opt.order ? c.opt.order : 2;
  base.N_T = c.opt.nt.empty() ? 64 : c.opt.nt.front();
  base.ordering = parse_ordering(c.opt.ordering);
  base.seed = c.opt.seed;
  base.integrator = parse_integrator(c.opt.integrator);
  auto rho0 = vectorize(diagonal_mixture(c.params, weights, atom_state));
  StateVector o_vec = build_O_N_vector(c.params, true);
  double o_norm = 0.0;
  {
    const std::uint64_t d = std::uint64_t{1} << c.params.n_qubits();
    const std::uint64_t mask = (std::uint64_t{1} << c.params.trunc_bits) - 1;
    for (std::uint64_t x = 0; x < d; ++x) {
      double p = 0;
      for (int m = 0; m < c.params.n_modes; ++m) p += static_cast<double>(((x >> 1) >> (c.params.trunc_bits * m)) & mask);
      o_norm += p * p;
    }
    o_norm = std::sqrt(o_norm);
  }
  struct Row {
    double trace = 0, mean = 0, purity = 0;
  };
  std::vector<Row> rows(times.size());
  parallel_for(times.size(), c.opt.jobs, [&](std::size_t i) {
    MixedConfig cfg = base;
    cfg.t = times[i];
    cfg.L = cfg.picture == Picture::interaction ? std::max<long long>(1, static_cast<long long>(std::ceil(8 * times[i]))) : 1;
    auto v = evolve_vectorized(c.params, cfg, rho0);
    auto tr = trace_via_bell(v, c.params.n_qubits());
    rows[i].trace = tr.value * v.frobenius;
    rows[i].mean = (observable_overlap(o_vec, v).real() * o_norm) / tr.value;
    rows[i].purity = 1.0 / (tr.value * tr.value);
  });
  Table t;
  t.columns = {"t", "trace", "mean_photon_number", "purity"};
  for (std::size_t i = 0; i < times.size(); ++i)
    t.rows.push_back({num(times[i]), num(rows[i].trace), num(rows[i].mean), num(rows[i].purity)});
  o.meta["weights"] = weights;
  o.meta["order"] = base.order;
  o.meta["N_T"] = base.N_T;
  o.table = std::move(t);
  return o;
}

BudgetConfig budget_from(const json& j) {
  BudgetConfig b;
  take(j, "eps_total", b.eps_total);
  take(j, "p_phys", b.p_phys);
  take(j, "overestimation_factor", b.overestimation_factor);
  take(j, "logical_A", b.logical_A);
  take(j, "logical_p_th", b.logical_p_th);
  take(j, "tocks_per_rotation", b.tocks_per_rotation);
  take(j, "tocks_per_t", b.tocks_per_t);
  take(j, "routing_factor", b.routing_factor);
  take(j, "footprint_15_20", b.footprint_15_20);
  take(j, "footprint_15_15", b.footprint_15_15);
  take(j, "device_side", b.device_side);
  return b;
}

Output cmd_resources(const Context& c) {
  Output o;
  BudgetConfig b;
  try {
    b = budget_from(c.section("resources"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("resources section: ") + e.what());
  }
  check_config(b);
  const int order = c.opt.order ? c.opt.order : 2;
  const double eps = c.opt.eps.empty() ? 0.25 : c.opt.eps.front();
  Picture pic = parse_picture(c.opt.picture);
  CircuitCounts counts;
  json plan;
  if (pic == Picture::schrodinger) {
    const int G = group_count(c, pic, 0.0);
    auto gc = gate_cost_schrodinger(c.params, G, c.opt.t, eps, order);
    counts = counts_from_gate_cost(gc, c.params);
    plan = {{"picture", "schrodinger"}, {"order", order}, {"G", G}, {"N_T", gc.N_T}, {"rotations", gc.rotations}};
  } else {
    const int G = group_count(c, pic, c.opt.t);
    auto p = order == 1 ? optimize_cost_first_order(c.params, G, c.opt.t, eps)
                        : optimize_cost_second_order(c.params, G, c.opt.t, eps);
    counts = counts_from_plan(p, c.params);
    plan = {{"picture", "interaction"}, {"order", order}, {"G", G}, {"L", p.L}, {"N_T", p.N_T},
            {"total_cost", p.total_cost}};
  }
  auto r = resource_report(counts, b);
  o.meta["plan"] = plan;
  o.meta["budget"] = {{"eps_total", b.eps_total},
                      {"p_phys", b.p_phys},
                      {"overestimation_factor", b.overestimation_factor},
                      {"logical_A", b.logical_A},
                      {"logical_p_th", b.logical_p_th}};
  o.document = json::parse(r.to_json());
  o.document["eps"] = eps;
  o.document["N_F"] = c.params.n_modes;
  o.document["k"] = c.params.trunc_bits;
  return o;
}

void emit(const Output& o, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json doc;
    doc["meta"] = o.meta;
    if (o.table) {
      doc["columns"] = o.table->columns;
      doc["rows"] = o.table->rows;
    } else {
      doc["report"] = o.document;
    }
    os << doc.dump(2) << "\n";
    return;
  }
  os << "# " << o.meta.dump() << "\n";
  if (!o.table) {
    // report-style commands: one key,value row per field
    os << "key,value\n";
    for (auto it = o.document.begin(); it != o.document.end(); ++it)
      os << it.key() << "," << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    return;
  }
  for (std::size_t i = 0; i < o.table->columns.size(); ++i) os << (i ? "," : "") << o.table->columns[i];
  os << "\n";
  for (const auto& row : o.table->rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

Output dispatch(const Context& c) {
  const auto& s = c.opt.subcommand;
  if (s == "build") return cmd_build(c);
  if (s == "partition") return cmd_partition(c);
  if (s == "bound") return cmd_bound(c);
  if (s == "plan") return cmd_plan(c);
  if (s == "simulate") return cmd_simulate(c);
  if (s == "jc") return cmd_jc(c);
  if (s == "interaction") return cmd_interaction(c);
  if (s == "mixed") return cmd_mixed(c);
  if (s == "resources") return cmd_resources(c);
  throw ConfigError("unknown subcommand: " + s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"extended Jaynes-Cummings product-formula toolkit", "ejcm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--params", opt.params_inline, "inline model parameters as JSON");
  app.add_option("--out", opt.out_dir, "output directory (stdout when omitted)");
  app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", opt.seed, "base RNG seed");
  app.add_option("--seeds", opt.seeds, "number of consecutive seeds for randomized sweeps");
  app.add_option("--jobs", opt.jobs, "worker threads");
  app.add_option("--nt", opt.nt, "Trotter step counts")->delimiter(',');
  app.add_option("--eps", opt.eps, "target precisions")->delimiter(',');
  app.add_option("--times", opt.times, "evaluation times")->delimiter(',');
  app.add_option("--order", opt.order, "product-formula order");
  app.add_option("--picture", opt.picture, "schrodinger or interaction");
  app.add_option("--ordering", opt.ordering, "fixed or randomized");
  app.add_option("--method", opt.method, "structured or greedy partition");
  app.add_option("--integrator", opt.integrator, "midpoint or left");
  app.add_option("--G", opt.G, "commuting family count used in bounds");
  app.add_option("--g", opt.g, "JC coupling");
  app.add_option("--delta", opt.delta, "JC detuning");
  app.add_option("--points", opt.points, "JC time grid size");
  app.add_option("--tmax", opt.tmax, "JC time grid end");
  auto* topt = app.add_option("--t", opt.t, "evolution time");
  for (const char* name : {"build", "partition", "bound", "plan", "simulate", "jc", "interaction", "mixed", "resources"})
    app.add_subcommand(name, "");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }
  opt.subcommand = app.get_subcommands().front()->get_name();
  opt.has_t = topt->count() > 0;

  try {
    Context c = resolve(opt);
    Output o = dispatch(c);
    json meta = resolved_config(c);
    for (auto it = o.meta.begin(); it != o.meta.end(); ++it) meta[it.key()] = it.value();
    o.meta = std::move(meta);
    if (c.opt.out_dir.empty()) {
      emit(o, c.opt.format, out);
    } else {
      std::filesystem::create_directories(c.opt.out_dir);
      auto path = std::filesystem::path(c.opt.out_dir) / (c.opt.subcommand + "." + c.opt.format);
      std::ofstream f(path);
      if (!f) throw ConfigError("cannot write " + path.string());
      emit(o, c.opt.format, f);
    }
    return ok;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::invalid_argument& e) {
    err << "config error (" << opt.subcommand << "): " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    err << "numeric failure (" << opt.subcommand << "): " << e.what() << "\n";
    return numeric_error;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ejcm::cli
