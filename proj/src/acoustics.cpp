#include "charcone/acoustics.hpp"

#include <cmath>

namespace charcone {

Metric4 metric_at(double c, const Vec3& v) {
  if (!(c > 0)) throw NonPositiveSoundSpeed("metric_at: c <= 0");
  Metric4 m;
  const double v2 = dot(v, v);
  m.g[0][0] = -c * c + v2;
  for (int i = 0; i < 3; ++i) {
    m.g[0][i + 1] = m.g[i + 1][0] = -v[i];
    m.g[i + 1][i + 1] = 1.0;
  }
  const double ic2 = 1.0 / (c * c);
  m.ginv[0][0] = -ic2;
  for (int i = 0; i < 3; ++i) {
    m.ginv[0][i + 1] = m.ginv[i + 1][0] = -v[i] * ic2;
    for (int j = 0; j < 3; ++j)
      m.ginv[i + 1][j + 1] = (i == j ? 1.0 : 0.0) - v[i] * v[j] * ic2;
  }
  return m;
}

Christoffels christoffels_at(double c, const Vec3& v, const StateDerivs& d) {
  if (!d.complete)
    throw MissingDerivative("christoffels_at: transversal derivatives not determined");
  if (!(c > 0)) throw NonPositiveSoundSpeed("christoffels_at: c <= 0");
  Christoffels ch;
  const double c2 = c * c;
  // spatial gradients of (-c^2 + |v|^2)
  double dq[4];
  for (int mu = 0; mu < 4; ++mu) {
    double dv2 = 0;
    for (int j = 0; j < 3; ++j) dv2 += 2.0 * v[j] * d.dv[mu][j];
    dq[mu] = -d.dc2[mu] + dv2;
  }
  // v(f) means v^k d_k f
  double v_q = v[0] * dq[1] + v[1] * dq[2] + v[2] * dq[3];
  double common = (d.dc2[0] + v_q) / (2.0 * c2);

  ch.G[0][0][0] = common;
  for (int i = 0; i < 3; ++i)
    ch.G[i + 1][0][0] = v[i] * common - d.dv[0][i] - 0.5 * dq[i + 1];

  for (int i = 0; i < 3; ++i) {
    double curl = 0;  // v^k (d_i v^k - d_k v^i)
    for (int k = 0; k < 3; ++k) curl += v[k] * (d.dv[i + 1][k] - d.dv[k + 1][i]);
    double g0 = -dq[i + 1] / (2.0 * c2) + curl / (2.0 * c2);
    ch.G[0][i + 1][0] = ch.G[0][0][i + 1] = g0;
    for (int j = 0; j < 3; ++j) {
      double gj = v[j] * g0 - 0.5 * (d.dv[i + 1][j] - d.dv[j + 1][i]);
      ch.G[j + 1][i + 1][0] = ch.G[j + 1][0][i + 1] = gj;
    }
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sym = (d.dv[i + 1][j] + d.dv[j + 1][i]) / (2.0 * c2);
      ch.G[0][i + 1][j + 1] = sym;
      for (int k = 0; k < 3; ++k) ch.G[k + 1][i + 1][j + 1] = v[k] * sym;
    }
  return ch;
}

double metric_compat_residual(double c, const Vec3& v, const StateDerivs& d) {
  Metric4 m = metric_at(c, v);
  Christoffels ch = christoffels_at(c, v, d);
  // d_lambda g_{mu nu}
  double dg[4][4][4] = {};
  for (int lam = 0; lam < 4; ++lam) {
    double dv2 = 0;
    for (int j = 0; j < 3; ++j) dv2 += 2.0 * v[j] * d.dv[lam][j];
    dg[lam][0][0] = -d.dc2[lam] + dv2;
    for (int i = 0; i < 3; ++i)
      dg[lam][0][i + 1] = dg[lam][i + 1][0] = -d.dv[lam][i];
  }
  double res = 0;
  for (int lam = 0; lam < 4; ++lam)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double acc = dg[lam][mu][nu];
        for (int a = 0; a < 4; ++a)
          acc -= ch.G[a][lam][mu] * m.g[a][nu] + ch.G[a][lam][nu] * m.g[a][mu];
        res = std::max(res, std::abs(acc));
      }
  return res;
}

double null_residual(double c, double vT, double V) { return (-vT + c) - V; }

double null_residual_determinant(double c, double vT, double V) {
  return (vT + V) * (vT + V) - c * c;
}

double null_generator_norm(double c, const Vec3& v, const Vec3& That) {
  Metric4 m = metric_at(c, v);
  double L[4] = {1.0, v[0] - c * That[0], v[1] - c * That[1], v[2] - c * That[2]};
  double acc = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) acc += m.g[mu][nu] * L[mu] * L[nu];
  return acc;
}

double box_cartesian(const BoxCartesianInput& in) {
  const double c = in.c, c2 = c * c;
  return -in.B2f / c2 + in.Bc * in.Bf / (c2 * c) + dot(in.gradc, in.gradf) / c +
         in.lapf - in.divv * in.Bf / c2;
}

double box_nullframe(const BoxNullFrameInput& in) {
  if (!in.Tf || !in.LTf)
    throw MissingDerivative("box_nullframe: transversal jet data not supplied");
  const double mu = in.c * in.kappa;
  const double c = in.c;
  return -2.0 / mu * (*in.LTf) + in.lap_slash_f - in.L2f / (c * c) +
         in.Lc * in.Lf / (c * c * c) - in.Lkappa * in.Lf / (mu * c) -
         in.tr_kslash * in.Lf / c - (in.tr_kslash - in.tr_theta) * (*in.Tf) -
         2.0 / mu * (in.zeta_up[0] * in.XAf[0] + in.zeta_up[1] * in.XAf[1]);
}

}  // namespace charcone
