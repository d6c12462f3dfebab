#include "ejcm/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ejcm/hamiltonian.hpp"

namespace ejcm {

namespace {

void check_G(int G) {
  if (G < 1) throw std::invalid_argument("G must be >= 1");
}

void check_eps(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
}

void check_nt(long long N_T) {
  if (N_T < 1) throw std::invalid_argument("N_T must be >= 1");
}

long long ceil_pos(double v) {
  double c = std::ceil(v);
  return c < 1.0 ? 1 : static_cast<long long>(c);
}

double intra_first(const DerivedScalars& d, const ModelParams& p, int G, double denom) {
  double nfk = static_cast<double>(p.n_modes) * p.trunc_bits;
  return d.gamma_max * d.gamma_max * d.Lambda_k * d.Lambda_k * nfk * nfk * (G - 1) / (denom * G);
}

}  // namespace

double first_order_prefactor_schrodinger(const ModelParams& params, int G) {
  check_G(G);
  auto d = derive(params);
  double n = d.n;
  double nf = params.n_modes;
  return intra_first(d, params, G, 72.0) + 0.5 * nf * d.omega_max * d.gamma_max * std::sqrt(n) +
         nf * d.omega_max * d.gamma_max * std::pow(n, 1.5);
}

double second_order_prefactor_interaction(const ModelParams& params, int G) {
  check_G(G);
  auto d = derive(params);
  double nfk = static_cast<double>(params.n_modes) * params.trunc_bits;
  double g3 = std::pow(d.gamma_max, 3);
  double l3 = std::pow(d.Lambda_k, 3);
  double GG = G;
  return g3 * 2.0 * l3 * nfk * nfk * nfk * (GG - 1) * (GG - 2) / (12.0 * 324.0 * GG * GG);
}

double second_order_prefactor_schrodinger(const ModelParams& params, int G) {
  auto d = derive(params);
  double n = d.n;
  double nf = params.n_modes;
  double sn = std::sqrt(n);
  double cross = (1 + 2 * n) * sn * nf * d.omega_max * d.gamma_max *
                 (2 * sn * nf * d.gamma_max + 0.5 * (1 + 2 * n * nf) * d.omega_max) / 12.0;
  return second_order_prefactor_interaction(params, G) + cross;
}

double first_order_prefactor_interaction(const ModelParams& params, int G) {
  check_G(G);
  return intra_first(derive(params), params, G, 18.0);
}

BoundReport first_order_bound_schrodinger(const ModelParams& params, int G, double T, long long N_T) {
  check_nt(N_T);
  BoundReport r{Picture::schrodinger, 1, 0.0, T, N_T, G, first_order_prefactor_schrodinger(params, G),
                lambda_k(params.trunc_bits)};
  r.epsilon_bound = T * T / static_cast<double>(N_T) * r.prefactor;
  return r;
}

BoundReport second_order_bound_schrodinger(const ModelParams& params, int G, double T, long long N_T) {
  check_nt(N_T);
  BoundReport r{Picture::schrodinger, 2, 0.0, T, N_T, G, second_order_prefactor_schrodinger(params, G),
                lambda_k(params.trunc_bits)};
  double nt = static_cast<double>(N_T);
  r.epsilon_bound = T * T * T / (nt * nt) * r.prefactor;
  return r;
}

BoundReport first_order_bound_interaction(const ModelParams& params, int G, double dt, long long N_T) {
  check_nt(N_T);
  BoundReport r{Picture::interaction, 1, 0.0, dt, N_T, G, first_order_prefactor_interaction(params, G),
                lambda_k(params.trunc_bits)};
  r.epsilon_bound = dt * dt / static_cast<double>(N_T) * r.prefactor;
  return r;
}

BoundReport second_order_bound_interaction(const ModelParams& params, int G, double dt, long long N_T) {
  check_nt(N_T);
  BoundReport r{Picture::interaction, 2, 0.0, dt, N_T, G, second_order_prefactor_interaction(params, G),
                lambda_k(params.trunc_bits)};
  double nt = static_cast<double>(N_T);
  r.epsilon_bound = dt * dt * dt / (nt * nt) * r.prefactor;
  return r;
}

DerivativeNorms derivative_norm_bounds(const ModelParams& params) {
  auto d = derive(params);
  double sn = std::sqrt(static_cast<double>(d.n));
  double s_gd = 0, s_gdd = 0, s_g = 0;
  for (int m = 0; m < params.n_modes; ++m) {
    double g = std::abs(params.couplings[m]);
    double delta = is_resonant(params, m) ? 0.0 : d.delta[m];
    s_gd += g * std::abs(delta);
    s_gdd += g * delta * delta;
    s_g += g;
  }
  return {2 * sn * s_gd, 2 * sn * s_gdd, 8.0 * d.n * s_gd * s_g};
}

long long time_slice_count(const ModelParams& params, double t, double eps, int order, bool halved) {
  check_eps(eps);
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  auto dn = derivative_norm_bounds(params);
  if (order == 1) return ceil_pos(dn.A * t * t / (halved ? 2.0 * eps : eps));
  if (order == 2) {
    double K = dn.Hpp / 24.0 + dn.Comm / 12.0;
    return ceil_pos(std::sqrt(K * t * t * t / eps));
  }
  throw std::invalid_argument("order must be 1 or 2");
}

CostPlan optimize_cost_first_order(const ModelParams& params, int G, double t, double eps) {
  check_eps(eps);
  CostPlan p;
  p.order = 1;
  p.G = G;
  p.A = derivative_norm_bounds(params).A;
  p.B = first_order_prefactor_interaction(params, G);
  p.N_I = term_counts(params).N_I_t;
  p.per_step = p.N_I;
  if (p.A == 0.0) {
    p.degenerate = true;
    p.x_opt = 0.0;
    p.L = 1;
    p.N_T = ceil_pos(t * t * p.B / eps);
    p.C_int = t * t * p.B * p.N_I / eps;
  } else {
    p.x_opt = p.A / (p.A + 2 * p.B);
    p.L = ceil_pos((p.A + 2 * p.B) * t * t / (2 * eps));
    p.N_T = 1;
    p.C_int = t * t * (p.A + 2 * p.B) * p.N_I / (2 * eps);
  }
  p.total_cost = static_cast<double>(p.L) * p.N_T * p.per_step;
  return p;
}

CostPlan optimize_cost_second_order(const ModelParams& params, int G, double t, double eps) {
  check_eps(eps);
  auto d = derive(params);
  CostPlan p;
  p.order = 2;
  p.G = G;
  double n = d.n, nf = params.n_modes;
  p.K_M = std::sqrt(n) * nf * d.gamma_max * d.delta_max * d.delta_max / 12.0 +
          2.0 * n * nf * nf * d.gamma_max * d.gamma_max * d.delta_max / 3.0;
  p.C = second_order_prefactor_interaction(params, G);
  p.N_I = term_counts(params).N_I_t;
  p.per_step = 2 * p.N_I - 1;
  double t15 = std::pow(t, 1.5);
  if (p.K_M == 0.0) {
    p.degenerate = true;
    p.x_opt = 0.0;
    p.L = 1;
    p.N_T = ceil_pos(t15 * std::sqrt(p.C / eps));
    p.C_int = t15 * std::sqrt(p.C / eps) * p.per_step;
  } else {
    p.x_opt = p.K_M / (p.K_M + p.C);
    p.L = ceil_pos(std::sqrt(p.K_M + p.C) * t15 / std::sqrt(eps));
    p.N_T = 1;
    p.C_int = t15 * std::sqrt(p.K_M + p.C) * p.per_step / std::sqrt(eps);
  }
  p.total_cost = static_cast<double>(p.L) * p.N_T * p.per_step;
  return p;
}

GateCost gate_cost_schrodinger(const ModelParams& params, int G, double T, double eps, int order) {
  check_eps(eps);
  auto c = term_counts(params);
  GateCost g;
  g.order = order;
  g.N_Z = c.N_Z;
  g.N_P = c.N_P;
  if (order == 1) {
    g.prefactor = first_order_prefactor_schrodinger(params, G);
    g.N_T = ceil_pos(T * T * g.prefactor / eps);
    g.rotations = (g.N_Z + g.N_P) * g.N_T;
  } else if (order == 2) {
    g.prefactor = second_order_prefactor_schrodinger(params, G);
    g.N_T = ceil_pos(std::pow(T, 1.5) * std::sqrt(g.prefactor / eps));
    g.rotations = 2 * (g.N_Z + g.N_P) * g.N_T;
  } else {
    throw std::invalid_argument("order must be 1 or 2");
  }
  return g;
}

int default_group_count(const ModelParams& params, Picture picture, double t) {
  if (picture == Picture::schrodinger) {
    auto parts = build_schrodinger(params);
    return static_cast<int>(partition_structured(parts.h_int, params, picture, 0.0).size());
  }
  return static_cast<int>(partition_structured(build_interaction(params, t), params, picture, t).size());
}

}  // namespace ejcm
