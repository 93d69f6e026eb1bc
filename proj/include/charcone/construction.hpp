#ifndef CHARCONE_CONSTRUCTION_HPP
#define CHARCONE_CONSTRUCTION_HPP

#include <memory>
#include <string>
#include <vector>

#include "charcone/jets.hpp"

namespace charcone {

// Full problem setup for a construction run.
struct ConeProblem {
  const ConeChart* chart = nullptr;
  const EosModel* eos = nullptr;
  FreeData free;
  CornerData corner;
  int n1 = 16, n2 = 16;
  double T = 1.0;
  int nt = 100;
  int jet_order = 0;
  double corner_tol = 1e-8;
  double c_floor_rel = 1e-6;
  double kappa_floor_rel = 1e-6;
  int monitor_stride = 16;       // 0 disables the step-doubling monitor
  double monitor_budget = 1e-3;  // relative per-step error budget
};

struct CornerReport {
  bool pass = false;
  double speed_residual = 0;      // max |(-vT + c) - V| on S_{0,0}
  double mismatch_s = 0;          // free data vs corner restriction, k = 0
  double mismatch_vsl = 0;
  double mismatch_Ls = 0;         // k = 1, only when L-jets are provided
  double mismatch_Lvsl = 0;
  int arg_i = 0, arg_j = 0;       // location of the worst speed residual
  bool checked_Ljets = false;
  std::string message;
};

CornerReport validate_corner(const ConeProblem& p);

// One stored output level.
struct LevelFields {
  double t = 0;
  Field x[3];
  Field wbar, w, rho, vT, c, s;
  Field v[3], vsl_cart[3];
  Field V, null_res;
  bool has_jets = false;
  Field trho, kappa, Tv[3], Ts, T2s;
  Field zeta[2], eta[2], TThat[3], txa[2][3];
};

struct RunResult {
  RunStatus status = RunStatus::Ok;
  double truncation_time = 0;  // == T on full-span success
  std::vector<LevelFields> levels;
  Grid2 grid;
  // metrics over all computed levels
  double max_null_residual = 0;
  double mean_null_residual = 0;
  double corner_speed_residual = 0;
  double kappa_min = 0;
  double c_min = 0;
  double max_step_error = 0;  // from the step-doubling monitor
  double max_generator_defect = 0;
};

// Runs the order-0 construction (plus the first-jet system when jet_order is
// 1). Stores every store_stride-th level plus the final one. Throws
// CornerIncompatible when the corner gate fails.
RunResult run_cone_construction(const ConeProblem& p, int store_stride = 1);

}  // namespace charcone

#endif
