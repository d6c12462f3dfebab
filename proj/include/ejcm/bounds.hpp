#pragma once

#include <string>

#include "ejcm/model.hpp"
#include "ejcm/partition.hpp"

namespace ejcm {

struct BoundReport {
  Picture picture = Picture::schrodinger;
  int order = 1;
  double epsilon_bound = 0.0;
  double T = 0.0;  // total time, or slice length for the interaction picture
  long long N_T = 1;
  int G = 2;
  double prefactor = 0.0;  // B or C
  double Lambda_k = 0.0;
};

// B, the bracket multiplying T^2/N_T; G = 1 keeps only the cross terms
double first_order_prefactor_schrodinger(const ModelParams& params, int G);
// C, the constant multiplying T^3/N_T^2
double second_order_prefactor_schrodinger(const ModelParams& params, int G);
double first_order_prefactor_interaction(const ModelParams& params, int G);
// intra-interaction part of C
double second_order_prefactor_interaction(const ModelParams& params, int G);

BoundReport first_order_bound_schrodinger(const ModelParams& params, int G, double T, long long N_T);
BoundReport second_order_bound_schrodinger(const ModelParams& params, int G, double T, long long N_T);
BoundReport first_order_bound_interaction(const ModelParams& params, int G, double dt, long long N_T);
BoundReport second_order_bound_interaction(const ModelParams& params, int G, double dt, long long N_T);

struct DerivativeNorms {
  double A = 0.0;
  double Hpp = 0.0;
  double Comm = 0.0;
};

DerivativeNorms derivative_norm_bounds(const ModelParams& params);

// order 1 uses L = ceil(A t^2 / eps) unless halved is set (t^2 A / (2 eps))
long long time_slice_count(const ModelParams& params, double t, double eps, int order, bool halved = false);

struct CostPlan {
  int order = 1;
  bool degenerate = false;
  double x_opt = 0.0;
  long long L = 1;
  long long N_T = 1;
  long long per_step = 0;  // exponentials per Trotter step (N_I or M_S2)
  double total_cost = 0.0;
  double C_int = 0.0;  // continuous-valued optimal cost
  double A = 0.0;
  double B = 0.0;
  double K_M = 0.0;
  double C = 0.0;
  long long N_I = 0;
  int G = 0;
};

CostPlan optimize_cost_first_order(const ModelParams& params, int G, double t, double eps);
CostPlan optimize_cost_second_order(const ModelParams& params, int G, double t, double eps);

struct GateCost {
  int order = 1;
  long long N_T = 1;
  long long N_Z = 0;
  long long N_P = 0;
  long long rotations = 0;
  double prefactor = 0.0;
};

GateCost gate_cost_schrodinger(const ModelParams& params, int G, double T, double eps, int order);

// group count the structured partitioner produces for this picture and time
int default_group_count(const ModelParams& params, Picture picture, double t);

}  // namespace ejcm
