#ifndef CHARCONE_JETS_HPP
#define CHARCONE_JETS_HPP

#include "charcone/eos.hpp"
#include "charcone/frame.hpp"
#include "charcone/freedata.hpp"

namespace charcone {

// References to the fixed problem pieces a stage evaluation needs.
struct StageInput {
  const ConeChart* chart = nullptr;
  const EosModel* eos = nullptr;
  const FreeData* free = nullptr;
  const Grid2* grid = nullptr;
  const DiffOps* ops = nullptr;
};

// Evolved grid unknowns: the transported Riemann invariant, and at jet
// order 1 the transversal density derivative, the inverse foliation density
// and the frame jets That(X_A^i).
struct EvolveState {
  Field wbar;
  bool with_jets = false;
  Field trho, kappa;
  Field txa[2][3];

  void axpy(double a, const EvolveState& other);
  EvolveState scaled_add(double a, const EvolveState& k) const;
};

// Order-0 derived fields at one time level: closure, Cartesian velocity,
// thermodynamic partials and every L-derivative of order-0 data the jet
// equations consume.
struct Level0 {
  double t = 0;
  GeometryLevel G;
  Field lambda[2], lambdat[2];
  Field s, st, stt;
  Field vsl[2], vslt[2], vsltt[2];
  Field w, rho, c, vT;
  Field vx[3], vslx[3];
  Field c_rho, c_s, c_rhorho, c_rhos, c_ss;
  Field p_s, p_ss, p_srho;
  Field Phi0, Psi0, Psi0_rho, Psi0_s, I1, I2;
  Field Dslash_vsl;  // surface divergence of the tangential velocity
  Field F0;          // L(wbar)
  Field Ls, L2s, LV, L2V;
  Field Lw, Lrho, Lc, LvT;
  Field LThat[3], LXA[2][3], Lvx[3];
  Field L2wbar, L2w, L2rho;
  Field null_res;
  double c_min = 0;
};

Level0 build_level0(const StageInput& in, double t, const Field& wbar);

// Jet-level derived fields for a given (trho, kappa, txa) state on top of an
// order-0 level.
struct JetLevel {
  Field Ts;             // That(s)
  Field Tc;             // That(c)
  Field a[3];           // T-independent part of That(v^i)
  Field ahat;           // sum_i That^i a_i
  Field Tv[3];          // That(v^i)
  Field Gq;             // L(kappa)/kappa
  Field zred[2];        // zeta_A / kappa
  Field zeta[2], eta[2];
  Field TThat[3];
  Field T2s;
  Field LTrho;          // assembled L(That rho)
  Field frame_rhs[2][3];
};

// Explicit first-jet right-hand sides: fills jl and returns the grid time
// derivatives (advection included) of the full state.
EvolveState stage_rhs(const StageInput& in, double t, const EvolveState& y,
                      Level0* out_l0 = nullptr, JetLevel* out_jl = nullptr);

// Generator chart components lambda^A with the tangency defect of
// (vslash - V That - dE/dt); a defect above tolerance means the speed
// function and the chart disagree.
struct GeneratorField {
  Field lambda[2];
  double max_normal_defect = 0;
};
GeneratorField generator_field(const GeometryLevel& G, const Field vsl[2]);

// Residual of the unused second Riemann transport equation, evaluated on a
// completed jet level as a pure consistency check.
Field riemann_constraint_residual(const StageInput& in, const Level0& l0,
                                  const JetLevel& jl, const EvolveState& y);

}  // namespace charcone

#endif
