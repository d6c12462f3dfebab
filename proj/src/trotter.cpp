#include "ejcm/trotter.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ejcm/rng.hpp"
#include "json.hpp"

namespace ejcm {

namespace {

std::vector<Rotation> real_terms(const PauliSum& s, const char* what) {
  std::vector<Rotation> out;
  for (const auto& t : s.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-12) throw std::invalid_argument(std::string(what) + " is not Hermitian");
    if (t.string.is_identity()) continue;
    out.push_back({t.coeff.real(), t.string});
  }
  return out;
}

class Emitter {
 public:
  Emitter(const TrotterProblem& p, Ordering ordering, Rng& rng, std::vector<ScheduleStep>& out)
      : p_(p), ordering_(ordering), rng_(rng), out_(out) {}

  void s1(double tau) {
    auto ord = draw();
    diag(tau);
    for (std::size_t i = 0; i < ord.groups.size(); ++i) group(ord, i, tau, false);
  }

  void s2(double tau) {
    auto ord = draw();
    diag(tau / 2);
    for (std::size_t i = 0; i < ord.groups.size(); ++i) group(ord, i, tau / 2, false);
    for (std::size_t i = ord.groups.size(); i-- > 0;) group(ord, i, tau / 2, true);
    diag(tau / 2);
  }

  void s2r(int r, double tau) {
    if (r <= 1) {
      s2(tau);
      return;
    }
    double u = suzuki_u(r);
    s2r(r - 1, u * tau);
    s2r(r - 1, u * tau);
    s2r(r - 1, (1 - 4 * u) * tau);
    s2r(r - 1, u * tau);
    s2r(r - 1, u * tau);
  }

 private:
  struct Order {
    std::vector<int> groups;
    std::vector<std::vector<int>> within;
  };

  Order draw() {
    Order o;
    o.groups.resize(p_.groups.size());
    std::iota(o.groups.begin(), o.groups.end(), 0);
    o.within.resize(p_.groups.size());
    for (std::size_t g = 0; g < p_.groups.size(); ++g) {
      o.within[g].resize(p_.groups[g].size());
      std::iota(o.within[g].begin(), o.within[g].end(), 0);
    }
    if (ordering_ == Ordering::randomized) {
      shuffle(o.groups, rng_);
      for (auto& w : o.within) shuffle(w, rng_);
    }
    return o;
  }

  void diag(double tau) {
    if (p_.diagonal.empty()) return;
    ScheduleStep st;
    st.kind = ScheduleStep::Kind::diagonal;
    for (const auto& r : p_.diagonal) st.rotations.push_back({r.angle * tau, r.string});
    out_.push_back(std::move(st));
  }

  void group(const Order& ord, std::size_t i, double tau, bool reverse) {
    int g = ord.groups[i];
    const auto& w = ord.within[g];
    ScheduleStep st;
    st.kind = ScheduleStep::Kind::group;
    st.group_id = g;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto& r = p_.groups[g][w[reverse ? w.size() - 1 - j : j]];
      st.rotations.push_back({r.angle * tau, r.string});
    }
    out_.push_back(std::move(st));
  }

  const TrotterProblem& p_;
  Ordering ordering_;
  Rng& rng_;
  std::vector<ScheduleStep>& out_;
};

TrotterSchedule base_schedule(const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                              std::uint64_t seed, int order) {
  if (N_T < 1) throw std::invalid_argument("N_T must be >= 1");
  TrotterSchedule s;
  s.n_qubits = problem.n_qubits;
  s.global_phase = problem.identity_shift * T;
  s.order = order;
  s.N_T = N_T;
  s.ordering = ordering;
  if (ordering == Ordering::randomized) s.seed = seed;
  return s;
}

}  // namespace

std::size_t TrotterSchedule::rotation_count() const {
  std::size_t n = 0;
  for (const auto& st : steps) n += st.rotations.size();
  return n;
}

TrotterProblem make_problem(const PauliSum& diagonal, const PauliSum& interaction, const CommutingPartition& partition,
                            double identity_shift) {
  if (!verify_partition(interaction, partition)) throw std::invalid_argument("invalid commuting partition");
  TrotterProblem p;
  p.n_qubits = interaction.n_qubits();
  p.identity_shift = identity_shift + diagonal.identity_coeff().real() + interaction.identity_coeff().real();
  p.diagonal = real_terms(diagonal, "diagonal part");
  for (const auto& r : p.diagonal)
    if (!r.string.is_diagonal()) throw std::invalid_argument("diagonal layer must be Z-type");
  for (const auto& g : partition.groups) {
    std::vector<Rotation> rs;
    for (auto i : g) {
      const auto& t = interaction[i];
      if (std::abs(t.coeff.imag()) > 1e-12) throw std::invalid_argument("interaction part is not Hermitian");
      rs.push_back({t.coeff.real(), t.string});
    }
    p.groups.push_back(std::move(rs));
  }
  return p;
}

TrotterProblem make_problem(const HamiltonianParts& parts, const CommutingPartition& partition) {
  return make_problem(parts.h_photon + parts.h_atom, parts.h_int.sum, partition, parts.identity_shift);
}

TrotterProblem conjugate_problem(const TrotterProblem& p) {
  auto flip = [](Rotation r) {
    if (r.string.y_count() % 2 == 0) r.angle = -r.angle;
    return r;
  };
  TrotterProblem q = p;
  for (auto& r : q.diagonal) r = flip(r);
  for (auto& g : q.groups)
    for (auto& r : g) r = flip(r);
  q.identity_shift = -p.identity_shift;
  return q;
}

double suzuki_u(int r) {
  if (r < 2) throw std::invalid_argument("suzuki_u: r >= 2");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * r - 1.0)));
}

TrotterSchedule schedule_first_order(const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                                     std::uint64_t seed) {
  auto s = base_schedule(problem, T, N_T, ordering, seed, 1);
  Rng rng(seed);
  Emitter em(problem, ordering, rng, s.steps);
  for (long long i = 0; i < N_T; ++i) em.s1(T / N_T);
  return s;
}

TrotterSchedule schedule_second_order(const TrotterProblem& problem, double T, long long N_T, Ordering ordering,
                                      std::uint64_t seed) {
  auto s = base_schedule(problem, T, N_T, ordering, seed, 2);
  Rng rng(seed);
  Emitter em(problem, ordering, rng, s.steps);
  for (long long i = 0; i < N_T; ++i) em.s2(T / N_T);
  return s;
}

TrotterSchedule schedule_higher_order(int r, const TrotterProblem& problem, double T, long long N_T,
                                      Ordering ordering, std::uint64_t seed) {
  if (r < 2) throw std::invalid_argument("schedule_higher_order: r >= 2");
  auto s = base_schedule(problem, T, N_T, ordering, seed, 2 * r);
  Rng rng(seed);
  Emitter em(problem, ordering, rng, s.steps);
  for (long long i = 0; i < N_T; ++i) em.s2r(r, T / N_T);
  return s;
}

TrotterSchedule schedule_first_order(const HamiltonianParts& parts, const CommutingPartition& partition, double T,
                                     long long N_T, Ordering ordering, std::uint64_t seed) {
  return schedule_first_order(make_problem(parts, partition), T, N_T, ordering, seed);
}

TrotterSchedule schedule_second_order(const HamiltonianParts& parts, const CommutingPartition& partition, double T,
                                      long long N_T, Ordering ordering, std::uint64_t seed) {
  return schedule_second_order(make_problem(parts, partition), T, N_T, ordering, seed);
}

PartitionSupplier structured_supplier(const ModelParams& params) {
  return [params](const TaggedSum& h, double t) {
    return partition_structured(h, params, Picture::interaction, t);
  };
}

TrotterSchedule schedule_interaction(const ModelParams& params, const PartitionSupplier& supplier,
                                     const InteractionConfig& cfg) {
  if (cfg.L < 1) throw std::invalid_argument("L must be >= 1");
  if (cfg.N_T < 1) throw std::invalid_argument("N_T must be >= 1");
  if (cfg.order != 1 && cfg.order != 2) throw std::invalid_argument("order must be 1 or 2");
  TrotterSchedule s;
  s.n_qubits = params.n_qubits();
  s.picture = Picture::interaction;
  s.order = cfg.order;
  s.L = cfg.L;
  s.N_T = cfg.N_T;
  s.ordering = cfg.ordering;
  if (cfg.ordering == Ordering::randomized) s.seed = cfg.seed;
  Rng rng(cfg.seed);
  const double dt = cfg.t / static_cast<double>(cfg.L);
  const double offset = cfg.integrator == Integrator::midpoint ? 0.5 : 0.0;
  const PauliSum empty(params.n_qubits());
  for (long long j = 0; j < cfg.L; ++j) {
    double tj = (static_cast<double>(j) + offset) * dt;
    auto h = build_interaction(params, tj);
    auto problem = make_problem(empty, h.sum, supplier(h, tj), 0.0);
    if (cfg.conjugate) problem = conjugate_problem(problem);
    Emitter em(problem, cfg.ordering, rng, s.steps);
    for (long long i = 0; i < cfg.N_T; ++i) {
      if (cfg.order == 1) {
        em.s1(dt / cfg.N_T);
      } else {
        em.s2(dt / cfg.N_T);
      }
    }
  }
  auto parts = build_schrodinger(params);
  double sign = cfg.conjugate ? -1.0 : 1.0;
  ScheduleStep fin;
  fin.kind = ScheduleStep::Kind::diagonal;
  for (const auto& r : real_terms(parts.h_photon + parts.h_atom, "free part"))
    fin.rotations.push_back({sign * r.angle * cfg.t, r.string});
  if (!fin.rotations.empty()) s.steps.push_back(std::move(fin));
  s.global_phase = sign * parts.identity_shift * cfg.t;
  return s;
}

TrotterSchedule shift_schedule(const TrotterSchedule& s, int offset, int n_total) {
  TrotterSchedule out = s;
  out.n_qubits = n_total;
  for (auto& st : out.steps)
    for (auto& r : st.rotations) r.string = embed_at(r.string, offset, n_total);
  return out;
}

std::size_t GateList::count(Gate::Kind k) const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.kind == k;
  return n;
}

std::string GateList::to_json() const {
  static const char* names[] = {"CX", "H", "RX", "RZ", "CRZ"};
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : gates) {
    nlohmann::json e;
    e["g"] = names[static_cast<int>(g.kind)];
    if (g.q1 >= 0) {
      e["q"] = {g.q0, g.q1};
    } else {
      e["q"] = {g.q0};
    }
    if (g.kind == Gate::Kind::RX || g.kind == Gate::Kind::RZ || g.kind == Gate::Kind::CRZ) e["theta"] = g.theta;
    j.push_back(e);
  }
  return j.dump();
}

GateList lower_rotation(int n_qubits, const Rotation& r) {
  GateList out;
  out.n_qubits = n_qubits;
  auto sup = r.string.support();
  if (sup.empty()) return out;
  constexpr double half_pi = std::numbers::pi / 2;
  auto basis = [&](bool undo) {
    for (int q : sup) {
      char op = r.string.at(q);
      if (op == 'X') out.gates.push_back({Gate::Kind::H, q});
      if (op == 'Y') out.gates.push_back({Gate::Kind::RX, q, -1, undo ? -half_pi : half_pi});
    }
  };
  basis(false);
  for (std::size_t i = 0; i + 1 < sup.size(); ++i) out.gates.push_back({Gate::Kind::CX, sup[i], sup[i + 1]});
  out.gates.push_back({Gate::Kind::RZ, sup.back(), -1, 2 * r.angle});
  for (std::size_t i = sup.size() - 1; i-- > 0;) out.gates.push_back({Gate::Kind::CX, sup[i], sup[i + 1]});
  basis(true);
  return out;
}

GateList lower_to_gates(const TrotterSchedule& s) {
  GateList out;
  out.n_qubits = s.n_qubits;
  for (const auto& st : s.steps)
    for (const auto& r : st.rotations) {
      auto g = lower_rotation(s.n_qubits, r);
      out.gates.insert(out.gates.end(), g.gates.begin(), g.gates.end());
    }
  return out;
}

GateList controlled(const GateList& g, int ancilla) {
  if (ancilla < g.n_qubits) throw std::invalid_argument("ancilla collides with the data register");
  GateList out;
  out.n_qubits = ancilla + 1;
  out.gates.reserve(g.gates.size());
  for (auto gate : g.gates) {
    if (gate.kind == Gate::Kind::RZ) {
      gate = {Gate::Kind::CRZ, ancilla, gate.q0, gate.theta};
    } else if (gate.kind == Gate::Kind::CRZ) {
      throw std::invalid_argument("gate list is already controlled");
    }
    out.gates.push_back(gate);
  }
  return out;
}

GateList controlled(const TrotterSchedule& s, int ancilla) { return controlled(lower_to_gates(s), ancilla); }

}  // namespace ejcm
