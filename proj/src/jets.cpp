#include "charcone/jets.hpp"

#include <cmath>

namespace charcone {

void EvolveState::axpy(double a, const EvolveState& o) {
  for (size_t k = 0; k < wbar.size(); ++k) wbar[k] += a * o.wbar[k];
  if (with_jets) {
    for (size_t k = 0; k < trho.size(); ++k) {
      trho[k] += a * o.trho[k];
      kappa[k] += a * o.kappa[k];
    }
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i)
        for (size_t k = 0; k < txa[A][i].size(); ++k)
          txa[A][i][k] += a * o.txa[A][i][k];
  }
}

EvolveState EvolveState::scaled_add(double a, const EvolveState& k) const {
  EvolveState y = *this;
  y.axpy(a, k);
  return y;
}

GeneratorField generator_field(const GeometryLevel& G, const Field vsl[2]) {
  const int N = static_cast<int>(G.V.size());
  GeneratorField gen;
  gen.lambda[0].assign(N, 0.0);
  gen.lambda[1].assign(N, 0.0);
  for (int k = 0; k < N; ++k) {
    // spatial part of L is vslash - V That; subtract the chart drift dE/dt
    // and project on the raised tangents
    Vec3 Et{G.Et[0][k], G.Et[1][k], G.Et[2][k]};
    Vec3 That{G.That[0][k], G.That[1][k], G.That[2][k]};
    for (int A = 0; A < 2; ++A) {
      Vec3 OmA{G.OmA[A][0][k], G.OmA[A][1][k], G.OmA[A][2][k]};
      gen.lambda[A][k] = vsl[A][k] - dot(OmA, Et);
    }
    double defect = -G.V[k] - dot(Et, That);
    gen.max_normal_defect = std::max(gen.max_normal_defect, std::abs(defect));
  }
  return gen;
}

namespace {

// worker with shared scratch for one stage evaluation
struct Stage {
  const StageInput& in;
  const Grid2& g;
  const DiffOps& ops;
  const int N;

  Stage(const StageInput& si, double time, const Field& wbar)
      : in(si), g(*si.grid), ops(*si.ops), N(si.grid->size()) {
    build0(time, wbar);
  }

  Level0 l0;

  Field d1(const Field& f) const { return ops.d(f, 1); }
  Field d2(const Field& f) const { return ops.d(f, 2); }
  Field dA(const Field& f, int A) const { return ops.d(f, A + 1); }

  // L q = qt + lambda^A d_A q for cone-analytic fields
  Field L_of(const Field& q, const Field& qt) const {
    Field q1 = d1(q), q2 = d2(q);
    Field out(N);
    for (int k = 0; k < N; ++k)
      out[k] = qt[k] + l0.lambda[0][k] * q1[k] + l0.lambda[1][k] * q2[k];
    return out;
  }
  // L^2 q from (q, qt, qtt) and the L(q) grid
  Field L2_of(const Field& q, const Field& qt, const Field& qtt,
              const Field& Lq) const {
    Field q1 = d1(q), q2 = d2(q);
    Field qt1 = d1(qt), qt2 = d2(qt);
    Field Lq1 = d1(Lq), Lq2 = d2(Lq);
    Field out(N);
    for (int k = 0; k < N; ++k) {
      double dLq_dt = qtt[k] + l0.lambdat[0][k] * q1[k] + l0.lambdat[1][k] * q2[k] +
                      l0.lambda[0][k] * qt1[k] + l0.lambda[1][k] * qt2[k];
      out[k] = dLq_dt + l0.lambda[0][k] * Lq1[k] + l0.lambda[1][k] * Lq2[k];
    }
    return out;
  }

  void build0(double t, const Field& wbar) {
    l0.t = t;
    l0.G = build_geometry_level(*in.chart, g, ops, t);
    const GeometryLevel& G = l0.G;
    auto alloc = [&](Field& f) { f.assign(N, 0.0); };
    for (Field* f :
         {&l0.s, &l0.st, &l0.stt, &l0.w, &l0.rho, &l0.c, &l0.vT, &l0.c_rho, &l0.c_s,
          &l0.c_rhorho, &l0.c_rhos, &l0.c_ss, &l0.p_s, &l0.p_ss, &l0.p_srho,
          &l0.Phi0, &l0.Psi0, &l0.Psi0_rho, &l0.Psi0_s, &l0.I1, &l0.I2, &l0.F0,
          &l0.Lw, &l0.Lrho, &l0.Lc, &l0.LvT, &l0.null_res})
      alloc(*f);
    for (int A = 0; A < 2; ++A) {
      alloc(l0.vsl[A]);
      alloc(l0.vslt[A]);
      alloc(l0.vsltt[A]);
      alloc(l0.lambda[A]);
      alloc(l0.lambdat[A]);
    }
    for (int i = 0; i < 3; ++i) {
      alloc(l0.vx[i]);
      alloc(l0.vslx[i]);
      alloc(l0.LThat[i]);
      alloc(l0.Lvx[i]);
      for (int A = 0; A < 2; ++A) alloc(l0.LXA[A][i]);
    }

    // free data and generators
    for (int i1 = 0; i1 < g.n1; ++i1)
      for (int j1 = 0; j1 < g.n2; ++j1) {
        int k = g.idx(i1, j1);
        double u = g.theta1(i1), v = g.theta2(j1);
        l0.s[k] = in.free->s.value(t, u, v);
        l0.st[k] = in.free->s.dt(t, u, v);
        l0.stt[k] = in.free->s.dtt(t, u, v);
        for (int A = 0; A < 2; ++A) {
          l0.vsl[A][k] = in.free->vslash[A].value(t, u, v);
          l0.vslt[A][k] = in.free->vslash[A].dt(t, u, v);
          l0.vsltt[A][k] = in.free->vslash[A].dtt(t, u, v);
        }
      }
    for (int k = 0; k < N; ++k) {
      Vec3 Et{G.Et[0][k], G.Et[1][k], G.Et[2][k]};
      Vec3 Ett{G.Ett[0][k], G.Ett[1][k], G.Ett[2][k]};
      for (int A = 0; A < 2; ++A) {
        Vec3 OmA{G.OmA[A][0][k], G.OmA[A][1][k], G.OmA[A][2][k]};
        Vec3 OmAt{G.OmAt[A][0][k], G.OmAt[A][1][k], G.OmAt[A][2][k]};
        l0.lambda[A][k] = l0.vsl[A][k] - dot(OmA, Et);
        l0.lambdat[A][k] = l0.vslt[A][k] - dot(OmAt, Et) - dot(OmA, Ett);
      }
    }

    // pointwise закрытие: closure and thermodynamics
    l0.c_min = 1e300;
    for (int k = 0; k < N; ++k) {
      double wb = wbar[k], sv = l0.s[k], V = G.V[k];
      double w = in.eos->w_from_wbar(wb, V, sv);
      double rho = in.eos->rho_from_phi0(w + wb, sv);
      Thermo th = in.eos->eval(rho, sv);
      l0.w[k] = w;
      l0.rho[k] = rho;
      l0.c[k] = th.c;
      l0.vT[k] = w - wb;
      l0.c_rho[k] = th.c_rho;
      l0.c_s[k] = th.c_s;
      l0.c_rhorho[k] = th.c_rhorho;
      l0.c_rhos[k] = th.c_rhos;
      l0.c_ss[k] = th.c_ss;
      l0.p_s[k] = th.p_s;
      l0.p_ss[k] = th.p_ss;
      l0.p_srho[k] = th.p_srho;
      l0.Phi0[k] = th.Phi0;
      l0.Psi0[k] = th.Psi0;
      l0.Psi0_rho[k] = th.Psi0_rho;
      l0.Psi0_s[k] = th.Psi0_s;
      l0.I1[k] = th.I1;
      l0.I2[k] = th.I2;
      l0.null_res[k] = (-l0.vT[k] + th.c) - V;
      l0.c_min = std::min(l0.c_min, th.c);
      for (int i = 0; i < 3; ++i) {
        double vsli = l0.vsl[0][k] * G.X[0][i][k] + l0.vsl[1][k] * G.X[1][i][k];
        l0.vslx[i][k] = vsli;
        l0.vx[i][k] = l0.vT[k] * G.That[i][k] + vsli;
      }
    }

    l0.Dslash_vsl = div_slash(G, ops, l0.vsl[0], l0.vsl[1]);
    l0.Ls = L_of(l0.s, l0.st);
    l0.L2s = L2_of(l0.s, l0.st, l0.stt, l0.Ls);
    l0.LV = L_of(G.V, G.Vt);
    l0.L2V = L2_of(G.V, G.Vt, G.Vtt, l0.LV);

    // transport equation for wbar: F0 = L(wbar)
    Field DV1 = d1(G.V), DV2 = d2(G.V);
    Field theta_vv(N), vslV(N);
    for (int k = 0; k < N; ++k) {
      double v1 = l0.vsl[0][k], v2 = l0.vsl[1][k];
      theta_vv[k] = G.theta11[k] * v1 * v1 + 2 * G.theta12[k] * v1 * v2 +
                    G.theta22[k] * v2 * v2;
      vslV[k] = v1 * DV1[k] + v2 * DV2[k];
    }
    for (int k = 0; k < N; ++k) {
      double c = l0.c[k];
      l0.F0[k] = -0.5 * (c * l0.Dslash_vsl[k] + G.trtheta[k] * c * c -
                         c * G.trtheta[k] * G.V[k] + theta_vv[k] + vslV[k]) +
                 0.5 * l0.Psi0[k] * l0.Ls[k];
    }

    // chain rule through the closure: L of w, rho, c, vT
    Field beta(N);
    for (int k = 0; k < N; ++k) {
      beta[k] = l0.rho[k] * l0.c_rho[k] / l0.c[k];
      double num = l0.LV[k] - (beta[k] + 1.0) * l0.F0[k] +
                   (beta[k] * l0.I1[k] - l0.c_s[k]) * l0.Ls[k];
      l0.Lw[k] = num / (beta[k] - 1.0);
      l0.Lrho[k] =
          l0.rho[k] / l0.c[k] * (l0.Lw[k] + l0.F0[k] - l0.I1[k] * l0.Ls[k]);
      l0.Lc[k] = l0.c_rho[k] * l0.Lrho[k] + l0.c_s[k] * l0.Ls[k];
      l0.LvT[k] = l0.Lw[k] - l0.F0[k];
    }

    // frame transport: L(That^i) and L(X_A^i), then L(v^i)
    Field Xv[2][3], Xc[2];
    for (int A = 0; A < 2; ++A) {
      for (int i = 0; i < 3; ++i) Xv[A][i] = dA(l0.vx[i], A);
      Xc[A] = dA(l0.c, A);
    }
    for (int k = 0; k < N; ++k) {
      double gi[2][2] = {{G.ginv11[k], G.ginv12[k]}, {G.ginv12[k], G.ginv22[k]}};
      double coef[2];
      for (int A = 0; A < 2; ++A) {
        double TX = 0;
        for (int j = 0; j < 3; ++j) TX += G.That[j][k] * Xv[A][j][k];
        coef[A] = -TX + Xc[A][k];
      }
      for (int i = 0; i < 3; ++i) {
        double acc = 0;
        for (int A = 0; A < 2; ++A)
          for (int B = 0; B < 2; ++B) acc += gi[A][B] * coef[A] * G.X[B][i][k];
        l0.LThat[i][k] = acc;
      }
    }
    Field fvec[3];  // v^i - c That^i
    for (int i = 0; i < 3; ++i) {
      fvec[i].resize(N);
      for (int k = 0; k < N; ++k)
        fvec[i][k] = l0.vx[i][k] - l0.c[k] * G.That[i][k];
      for (int A = 0; A < 2; ++A) l0.LXA[A][i] = dA(fvec[i], A);
    }
    Field Lvsl[2];
    for (int A = 0; A < 2; ++A) Lvsl[A] = L_of(l0.vsl[A], l0.vslt[A]);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < N; ++k)
        l0.Lvx[i][k] = l0.LvT[k] * G.That[i][k] + l0.vT[k] * l0.LThat[i][k] +
                       Lvsl[0][k] * G.X[0][i][k] + Lvsl[1][k] * G.X[1][i][k] +
                       l0.vsl[0][k] * l0.LXA[0][i][k] + l0.vsl[1][k] * l0.LXA[1][i][k];

    // L^2 of wbar, w, rho (second L-derivatives through the transport
    // equation and the closure)
    build_L2();
  }

  void build_L2() {
    const GeometryLevel& G = l0.G;
    // L of geometry/free-data scalars entering F0
    Field Dsl_t(N);  // d/dt of the surface divergence at fixed theta
    {
      Field q1(N), q2(N), q1t(N), q2t(N);
      for (int k = 0; k < N; ++k) {
        q1[k] = G.sqrtg[k] * l0.vsl[0][k];
        q2[k] = G.sqrtg[k] * l0.vsl[1][k];
        q1t[k] = G.sqrtgt[k] * l0.vsl[0][k] + G.sqrtg[k] * l0.vslt[0][k];
        q2t[k] = G.sqrtgt[k] * l0.vsl[1][k] + G.sqrtg[k] * l0.vslt[1][k];
      }
      Field a = d1(q1), b = d2(q2), at = d1(q1t), bt = d2(q2t);
      for (int k = 0; k < N; ++k) {
        double sg = G.sqrtg[k];
        Dsl_t[k] = (at[k] + bt[k]) / sg - G.sqrtgt[k] * (a[k] + b[k]) / (sg * sg);
      }
    }
    Field LDsl = L_of(l0.Dslash_vsl, Dsl_t);
    Field Ltrth = L_of(G.trtheta, G.trthetat);

    Field DV1 = d1(G.V), DV2 = d2(G.V);
    Field DVt1 = d1(G.Vt), DVt2 = d2(G.Vt);
    Field theta_vv(N), theta_vv_t(N), vslV(N), vslV_t(N);
    for (int k = 0; k < N; ++k) {
      double v1 = l0.vsl[0][k], v2 = l0.vsl[1][k];
      double v1t = l0.vslt[0][k], v2t = l0.vslt[1][k];
      theta_vv[k] = G.theta11[k] * v1 * v1 + 2 * G.theta12[k] * v1 * v2 +
                    G.theta22[k] * v2 * v2;
      theta_vv_t[k] = G.thetat11[k] * v1 * v1 + 2 * G.thetat12[k] * v1 * v2 +
                      G.thetat22[k] * v2 * v2 +
                      2 * (G.theta11[k] * v1 * v1t + G.theta12[k] * (v1t * v2 + v1 * v2t) +
                           G.theta22[k] * v2 * v2t);
      vslV[k] = v1 * DV1[k] + v2 * DV2[k];
      vslV_t[k] = v1t * DV1[k] + v2t * DV2[k] + v1 * DVt1[k] + v2 * DVt2[k];
    }
    Field Lthvv = L_of(theta_vv, theta_vv_t);
    Field LvslV = L_of(vslV, vslV_t);

    l0.L2wbar.assign(N, 0.0);
    l0.L2w.assign(N, 0.0);
    l0.L2rho.assign(N, 0.0);
    for (int k = 0; k < N; ++k) {
      double c = l0.c[k], Lc = l0.Lc[k], V = G.V[k], LV = l0.LV[k];
      double trth = G.trtheta[k], Ltr = Ltrth[k];
      double LPsi0 = l0.Psi0_rho[k] * l0.Lrho[k] + l0.Psi0_s[k] * l0.Ls[k];
      l0.L2wbar[k] = -0.5 * (Lc * l0.Dslash_vsl[k] + c * LDsl[k] + Ltr * c * c +
                             2.0 * c * Lc * trth - Lc * trth * V - c * Ltr * V -
                             c * trth * LV + Lthvv[k] + LvslV[k]) +
                     0.5 * (LPsi0 * l0.Ls[k] + l0.Psi0[k] * l0.L2s[k]);
    }
    for (int k = 0; k < N; ++k) {
      double rho = l0.rho[k], c = l0.c[k];
      double beta = rho * l0.c_rho[k] / c;
      double beta_rho = (l0.c_rho[k] + rho * l0.c_rhorho[k]) / c -
                        rho * l0.c_rho[k] * l0.c_rho[k] / (c * c);
      double beta_s = rho * l0.c_rhos[k] / c - rho * l0.c_rho[k] * l0.c_s[k] / (c * c);
      double Lbeta = beta_rho * l0.Lrho[k] + beta_s * l0.Ls[k];
      double LI1 = (l0.c_s[k] / rho) * l0.Lrho[k] + l0.I2[k] * l0.Ls[k];
      double Lcs = l0.c_rhos[k] * l0.Lrho[k] + l0.c_ss[k] * l0.Ls[k];
      double num = l0.LV[k] - (beta + 1.0) * l0.F0[k] +
                   (beta * l0.I1[k] - l0.c_s[k]) * l0.Ls[k];
      double Lnum = l0.L2V[k] - Lbeta * l0.F0[k] - (beta + 1.0) * l0.L2wbar[k] +
                    (Lbeta * l0.I1[k] + beta * LI1 - Lcs) * l0.Ls[k] +
                    (beta * l0.I1[k] - l0.c_s[k]) * l0.L2s[k];
      l0.L2w[k] = (Lnum * (beta - 1.0) - num * Lbeta) / ((beta - 1.0) * (beta - 1.0));
      // L rho = (rho/c)(Lw + F0 - I1 Ls)
      double inner = l0.Lw[k] + l0.F0[k] - l0.I1[k] * l0.Ls[k];
      double Lroc = l0.Lrho[k] / c - rho * l0.Lc[k] / (c * c);
      l0.L2rho[k] = Lroc * inner + rho / c *
                                       (l0.L2w[k] + l0.L2wbar[k] - LI1 * l0.Ls[k] -
                                        l0.I1[k] * l0.L2s[k]);
    }
  }

  // ---- jet layer -------------------------------------------------------

  void build_jets(const EvolveState& y, JetLevel& jl) {
    const GeometryLevel& G = l0.G;
    const Field& T = y.trho;
    const Field& K = y.kappa;

    Field Xrho[2], Xs[2], Xc[2], Xw[2], XK[2];
    for (int A = 0; A < 2; ++A) {
      Xrho[A] = dA(l0.rho, A);
      Xs[A] = dA(l0.s, A);
      Xc[A] = dA(l0.c, A);
      Xw[A] = dA(l0.w, A);
      XK[A] = dA(K, A);
    }
    Field Xv[2][3];
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i) Xv[A][i] = dA(l0.vx[i], A);

    auto alloc = [&](Field& f) { f.assign(N, 0.0); };
    alloc(jl.Ts);
    alloc(jl.Tc);
    alloc(jl.ahat);
    alloc(jl.Gq);
    alloc(jl.T2s);
    alloc(jl.LTrho);
    for (int i = 0; i < 3; ++i) {
      alloc(jl.a[i]);
      alloc(jl.Tv[i]);
      alloc(jl.TThat[i]);
    }
    for (int A = 0; A < 2; ++A) {
      alloc(jl.zred[A]);
      alloc(jl.zeta[A]);
      alloc(jl.eta[A]);
      for (int i = 0; i < 3; ++i) alloc(jl.frame_rhs[A][i]);
    }

    // pointwise pieces: That(s), a_i, ahat, That(v^i), Gq, zeta
    for (int k = 0; k < N; ++k) {
      double c = l0.c[k], rho = l0.rho[k];
      jl.Ts[k] = -l0.Ls[k] / c;
      double dis[3];  // partial_i s
      for (int i = 0; i < 3; ++i) {
        double tang = G.OmA[0][i][k] * Xs[0][k] + G.OmA[1][i][k] * Xs[1][k];
        dis[i] = tang + G.That[i][k] * jl.Ts[k];
      }
      double ah = 0;
      for (int i = 0; i < 3; ++i) {
        double tang_rho = G.OmA[0][i][k] * Xrho[0][k] + G.OmA[1][i][k] * Xrho[1][k];
        jl.a[i][k] = -(c / rho) * tang_rho - l0.p_s[k] / (c * rho) * dis[i] -
                     l0.Lvx[i][k] / c;
        ah += G.That[i][k] * jl.a[i][k];
      }
      jl.ahat[k] = ah;
      jl.Tc[k] = l0.c_rho[k] * T[k] + l0.c_s[k] * jl.Ts[k];
      jl.Gq[k] = -jl.Tc[k] + ah - (c / rho) * T[k];
      for (int i = 0; i < 3; ++i)
        jl.Tv[i][k] = jl.a[i][k] - (c / rho) * G.That[i][k] * T[k];
      for (int A = 0; A < 2; ++A) {
        double Xv_That = 0, X_a = 0;
        for (int j = 0; j < 3; ++j) {
          Xv_That += Xv[A][j][k] * G.That[j][k];
          X_a += G.X[A][j][k] * jl.a[j][k];
        }
        jl.zred[A][k] = 0.5 * (Xv_That + X_a - 2.0 * Xc[A][k]);
        jl.zeta[A][k] = K[k] * jl.zred[A][k];
        jl.eta[A][k] = jl.zeta[A][k] + Xc[A][k] * K[k] + l0.c[k] * XK[A][k];
      }
      // That(That^i) = -(1/kappa) ginv^{AB} X_B(kappa) X_A^i
      double gi[2][2] = {{G.ginv11[k], G.ginv12[k]}, {G.ginv12[k], G.ginv22[k]}};
      for (int i = 0; i < 3; ++i) {
        double acc = 0;
        for (int A = 0; A < 2; ++A)
          for (int B = 0; B < 2; ++B) acc += gi[A][B] * XK[B][k] * G.X[A][i][k];
        jl.TThat[i][k] = -acc / K[k];
      }
    }

    // ---- the L(That rho) equation: equate the two wave-operator forms ----
    Field lap_rho = lap_slash(G, ops, l0.rho);
    Field lap_s = lap_slash(G, ops, l0.s);
    for (int k = 0; k < N; ++k) {
      double c = l0.c[k], rho = l0.rho[k];
      double gi[2][2] = {{G.ginv11[k], G.ginv12[k]}, {G.ginv12[k], G.ginv22[k]}};
      double tr_k = 0;  // tr kslash = (1/c) ginv^{AB} X_A^j X_B(v^j)
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
          double s1 = 0;
          for (int j = 0; j < 3; ++j) s1 += G.X[A][j][k] * Xv[B][j][k];
          tr_k += gi[A][B] * s1;
        }
      tr_k /= c;

      // Cartesian first derivatives with the transversal parts substituted
      double dr[3], ds[3], dc[3], dv[3][3];
      for (int i = 0; i < 3; ++i) {
        double tr_rho = G.OmA[0][i][k] * Xrho[0][k] + G.OmA[1][i][k] * Xrho[1][k];
        double tr_s = G.OmA[0][i][k] * Xs[0][k] + G.OmA[1][i][k] * Xs[1][k];
        dr[i] = tr_rho + G.That[i][k] * T[k];
        ds[i] = tr_s + G.That[i][k] * jl.Ts[k];
        dc[i] = l0.c_rho[k] * dr[i] + l0.c_s[k] * ds[i];
        for (int j = 0; j < 3; ++j)
          dv[i][j] = G.OmA[0][i][k] * Xv[0][j][k] + G.OmA[1][i][k] * Xv[1][j][k] +
                     G.That[i][k] * jl.Tv[j][k];
      }
      double divv = dv[0][0] + dv[1][1] + dv[2][2];
      double Brho = l0.Lrho[k] + c * T[k];
      double Bc = l0.Lc[k] + c * jl.Tc[k];

      // Delta s elimination through the two expressions of box(s)
      double LTs = l0.Lc[k] * l0.Ls[k] / (c * c) - l0.L2s[k] / c;
      double zXs = 0, zXrho = 0;
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
          zXs += gi[A][B] * jl.zred[B][k] * Xs[A][k];
          zXrho += gi[A][B] * jl.zred[B][k] * Xrho[A][k];
        }
      double box_s = -2.0 / c * (jl.Gq[k] * jl.Ts[k] + LTs) + lap_s[k] -
                     l0.L2s[k] / (c * c) + l0.Lc[k] * l0.Ls[k] / (c * c * c) -
                     jl.Gq[k] * l0.Ls[k] / (c * c) - tr_k * l0.Ls[k] / c -
                     (tr_k - G.trtheta[k]) * jl.Ts[k] - 2.0 / c * zXs;
      double grad_cs = dc[0] * ds[0] + dc[1] * ds[1] + dc[2] * ds[2];
      double lap_s_cart = box_s - grad_cs / c;

      // material-frame form of box(rho)
      double dvdv = 0, grad_r2 = 0, grad_rs = 0, grad_s2 = 0, grad_cr = 0;
      for (int i = 0; i < 3; ++i) {
        grad_r2 += dr[i] * dr[i];
        grad_rs += dr[i] * ds[i];
        grad_s2 += ds[i] * ds[i];
        grad_cr += dc[i] * dr[i];
        for (int j = 0; j < 3; ++j) dvdv += dv[i][j] * dv[j][i];
      }
      double box_rho_A =
          rho / (c * c) * (divv * divv - dvdv) +
          (-Brho * Brho / (c * c) + grad_r2) / rho -
          (-Bc * Brho / (c * c) + grad_cr) / c +
          1.0 / (c * c) *
              ((l0.p_s[k] / rho - l0.p_srho[k]) * grad_rs - l0.p_s[k] * lap_s_cart -
               l0.p_ss[k] * grad_s2);

      // null-frame form of box(rho) without the L(That rho) term
      double box_rho_B = -2.0 / c * jl.Gq[k] * T[k] + lap_rho[k] -
                         l0.L2rho[k] / (c * c) +
                         l0.Lc[k] * l0.Lrho[k] / (c * c * c) -
                         jl.Gq[k] * l0.Lrho[k] / (c * c) - tr_k * l0.Lrho[k] / c -
                         (tr_k - G.trtheta[k]) * T[k] - 2.0 / c * zXrho;

      jl.LTrho[k] = 0.5 * c * (box_rho_B - box_rho_A);
    }

    // ---- That^2(s) ----
    for (int k = 0; k < N; ++k) {
      double c = l0.c[k];
      double LTs = l0.Lc[k] * l0.Ls[k] / (c * c) - l0.L2s[k] / c;
      double gi[2][2] = {{G.ginv11[k], G.ginv12[k]}, {G.ginv12[k], G.ginv22[k]}};
      double zeXs = 0;
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
          zeXs += gi[A][B] *
                  (2.0 * jl.zred[B][k] + Xc[B][k] + c * XK[B][k] / K[k]) * Xs[A][k];
      jl.T2s[k] = -(jl.Gq[k] * jl.Ts[k] + LTs + zeXs + jl.Tc[k] * jl.Ts[k]) / c;
    }

    // ---- frame-jet transport RHS ----
    Field Tf[3];  // That(v^i - c That^i)
    for (int i = 0; i < 3; ++i) {
      Tf[i].resize(N);
      for (int k = 0; k < N; ++k)
        Tf[i][k] = jl.Tv[i][k] - jl.Tc[k] * G.That[i][k] - l0.c[k] * jl.TThat[i][k];
    }
    Field XTf[2][3], XThat[2][3], XXA[2][2][3], Xf[2][3];
    Field fvec[3];
    for (int i = 0; i < 3; ++i) {
      fvec[i].resize(N);
      for (int k = 0; k < N; ++k)
        fvec[i][k] = l0.vx[i][k] - l0.c[k] * G.That[i][k];
    }
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i) {
        XTf[A][i] = dA(Tf[i], A);
        XThat[A][i] = dA(G.That[i], A);
        Xf[A][i] = dA(fvec[i], A);
        for (int B = 0; B < 2; ++B) XXA[A][B][i] = dA(G.X[B][i], A);
      }

    for (int k = 0; k < N; ++k) {
      double c = l0.c[k];
      double gi[2][2] = {{G.ginv11[k], G.ginv12[k]}, {G.ginv12[k], G.ginv22[k]}};
      // kappa^{-1}(zeta^B + eta^B) as raised components
      double ze_up[2];
      for (int B = 0; B < 2; ++B) {
        double acc = 0;
        for (int C = 0; C < 2; ++C)
          acc += gi[B][C] * (2.0 * jl.zred[C][k] + Xc[C][k] + c * XK[C][k] / K[k]);
        ze_up[B] = acc;
      }
      for (int A = 0; A < 2; ++A) {
        for (int i = 0; i < 3; ++i) {
          double rhs = 0;
          for (int B = 0; B < 2; ++B) rhs -= ze_up[B] * XXA[B][A][i][k];
          rhs += XTf[A][i][k];
          rhs -= jl.Gq[k] * y.txa[A][i][k];
          for (int j = 0; j < 3; ++j) {
            double djf = G.OmA[0][j][k] * Xf[0][i][k] + G.OmA[1][j][k] * Xf[1][i][k] +
                         G.That[j][k] * Tf[i][k];
            rhs += (y.txa[A][j][k] - XThat[A][j][k]) * djf;
          }
          jl.frame_rhs[A][i][k] = rhs;
        }
      }
    }
  }
};

}  // namespace

Level0 build_level0(const StageInput& in, double t, const Field& wbar) {
  Stage st(in, t, wbar);
  return std::move(st.l0);
}

EvolveState stage_rhs(const StageInput& in, double t, const EvolveState& y,
                      Level0* out_l0, JetLevel* out_jl) {
  Stage st(in, t, y.wbar);
  const int N = in.grid->size();

  EvolveState dy;
  dy.with_jets = y.with_jets;
  dy.wbar.assign(N, 0.0);
  Field w1 = st.d1(y.wbar), w2 = st.d2(y.wbar);
  for (int k = 0; k < N; ++k)
    dy.wbar[k] = st.l0.F0[k] - st.l0.lambda[0][k] * w1[k] - st.l0.lambda[1][k] * w2[k];

  if (y.with_jets) {
    JetLevel jl;
    st.build_jets(y, jl);
    dy.trho.assign(N, 0.0);
    dy.kappa.assign(N, 0.0);
    Field t1 = st.d1(y.trho), t2 = st.d2(y.trho);
    Field k1 = st.d1(y.kappa), k2 = st.d2(y.kappa);
    for (int k = 0; k < N; ++k) {
      dy.trho[k] = jl.LTrho[k] - st.l0.lambda[0][k] * t1[k] - st.l0.lambda[1][k] * t2[k];
      dy.kappa[k] = y.kappa[k] * jl.Gq[k] - st.l0.lambda[0][k] * k1[k] -
                    st.l0.lambda[1][k] * k2[k];
    }
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i) {
        dy.txa[A][i].assign(N, 0.0);
        Field x1 = st.d1(y.txa[A][i]), x2 = st.d2(y.txa[A][i]);
        for (int k = 0; k < N; ++k)
          dy.txa[A][i][k] = jl.frame_rhs[A][i][k] - st.l0.lambda[0][k] * x1[k] -
                            st.l0.lambda[1][k] * x2[k];
      }
    if (out_jl) *out_jl = std::move(jl);
  }
  if (out_l0) *out_l0 = std::move(st.l0);
  return dy;
}

Field riemann_constraint_residual(const StageInput& in, const Level0& l0,
                                  const JetLevel& jl, const EvolveState& y) {
  const GeometryLevel& G = l0.G;
  const DiffOps& ops = *in.ops;
  const int N = in.grid->size();
  Field XK1 = ops.d(y.kappa, 1), XK2 = ops.d(y.kappa, 2);
  Field cv(N);  // -vT + c
  for (int k = 0; k < N; ++k) cv[k] = l0.c[k] - l0.vT[k];
  Field dcv1 = ops.d(cv, 1), dcv2 = ops.d(cv, 2);
  Field out(N, 0.0);
  for (int k = 0; k < N; ++k) {
    double c = l0.c[k];
    // That(w) = (That(Phi0) + That(vT))/2
    double TPhi = (c / l0.rho[k]) * y.trho[k] + l0.I1[k] * jl.Ts[k];
    double TvT = 0;
    for (int i = 0; i < 3; ++i)
      TvT += jl.Tv[i][k] * G.That[i][k] + l0.vx[i][k] * jl.TThat[i][k];
    double Tw = 0.5 * (TPhi + TvT);
    double vsl_kappa = l0.vsl[0][k] * XK1[k] + l0.vsl[1][k] * XK2[k];
    double vsl_cv = l0.vsl[0][k] * dcv1[k] + l0.vsl[1][k] * dcv2[k];
    double theta_vv = G.theta11[k] * l0.vsl[0][k] * l0.vsl[0][k] +
                      2 * G.theta12[k] * l0.vsl[0][k] * l0.vsl[1][k] +
                      G.theta22[k] * l0.vsl[1][k] * l0.vsl[1][k];
    out[k] = l0.Lw[k] + 2.0 * c * Tw +
             0.5 * (c * l0.Dslash_vsl[k] + c * G.trtheta[k] * l0.vT[k] +
                    2.0 * c * vsl_kappa / y.kappa[k] - vsl_cv - theta_vv) -
             0.5 * l0.Psi0[k] * c * jl.Ts[k];
  }
  return out;
}

}  // namespace charcone
