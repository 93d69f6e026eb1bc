#ifndef CHARCONE_ACOUSTICS_HPP
#define CHARCONE_ACOUSTICS_HPP

#include <optional>

#include "charcone/errors.hpp"
#include "charcone/vec3.hpp"

namespace charcone {

// Acoustical metric and inverse in Cartesian coordinates (index 0 = t).
struct Metric4 {
  double g[4][4] = {};
  double ginv[4][4] = {};
};

Metric4 metric_at(double c, const Vec3& v);

// Cartesian first derivatives of the state, d/dx^mu with mu = 0..3.
// When assembled on a cone at jet order 0 the transversal pieces are not yet
// determined; ops that need the full table reject incomplete inputs.
struct StateDerivs {
  double dc2[4] = {};    // partial_mu (c^2)
  double dv[4][3] = {};  // partial_mu v^i
  bool complete = true;
};

struct Christoffels {
  double G[4][4][4] = {};  // G[lambda][mu][nu], symmetric in (mu, nu)
};

Christoffels christoffels_at(double c, const Vec3& v, const StateDerivs& d);

// Max-norm residual of metric compatibility,
// d_lambda g_{mu nu} - G^a_{lambda mu} g_{a nu} - G^a_{lambda nu} g_{a mu}.
double metric_compat_residual(double c, const Vec3& v, const StateDerivs& d);

// Null-condition residual (-vT + c) - V, and the equivalent determinant form
// (vT + V)^2 - c^2 of the graph construction; both vanish together.
double null_residual(double c, double vT, double V);
double null_residual_determinant(double c, double vT, double V);

// g(L, L) for L = d_t + (v - c That).
double null_generator_norm(double c, const Vec3& v, const Vec3& That);

// Wave operator from the material-frame formula:
//   box f = -B^2 f / c^2 + B(c) B(f) / c^3 + (grad c . grad f)/c
//           + lap f - div(v) B(f) / c^2.
struct BoxCartesianInput {
  double Bf = 0, B2f = 0;
  Vec3 gradf = {0, 0, 0};
  double lapf = 0;
  double c = 0, Bc = 0;
  Vec3 gradc = {0, 0, 0};
  double divv = 0;
};
double box_cartesian(const BoxCartesianInput& in);

// Wave operator decomposed in the null frame {X_1, X_2, T, L}:
//   box f = -(2/mu) LT(f) + lap_slash f - L^2 f / c^2 + L(c) L(f) / c^3
//           - L(kappa) L(f)/(mu c) - tr(kslash) L(f)/c
//           - (tr(kslash) - tr(theta)) That(f) - (2/mu) zeta^A X_A(f).
struct BoxNullFrameInput {
  double Lf = 0, L2f = 0, lap_slash_f = 0;
  double XAf[2] = {0, 0};
  std::optional<double> Tf;   // That(f): transversal first derivative
  std::optional<double> LTf;  // L(T(f)) with T = kappa That
  double c = 0, kappa = 0;    // mu = c kappa
  double Lc = 0, Lkappa = 0;
  double tr_kslash = 0, tr_theta = 0;
  double zeta_up[2] = {0, 0};  // zeta^A
};
double box_nullframe(const BoxNullFrameInput& in);

}  // namespace charcone

#endif
