#include "charcone/frame.hpp"

#include <cmath>

namespace charcone {

namespace {

struct PointGeom {
  Vec3 X[2], Xt[2], That, Thatt;
  double g[2][2], gt[2][2], ginv[2][2], ginvt[2][2], sqrtg, sqrtgt;
  Vec3 OmA[2], OmAt[2];
};

void metric_from_tangents(const Vec3 X[2], const Vec3 Xt[2], double orient,
                          PointGeom& p) {
  for (int A = 0; A < 2; ++A) {
    p.X[A] = X[A];
    p.Xt[A] = Xt[A];
  }
  Vec3 C = cross(X[0], X[1]);
  double n = norm(C);
  double scale = std::sqrt(norm(X[0]) * norm(X[1]));
  if (!(n > 1e-10 * std::max(scale * scale, 1e-300)))
    throw DegenerateChart("frame: |X1 x X2| below 1e-10 of scale");
  p.That = (orient / n) * C;
  Vec3 Ct = cross(Xt[0], X[1]) + cross(X[0], Xt[1]);
  double CdotCt = dot(C, Ct);
  p.Thatt = orient * ((1.0 / n) * Ct - (CdotCt / (n * n * n)) * C);

  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B) {
      p.g[A][B] = dot(X[A], X[B]);
      p.gt[A][B] = dot(Xt[A], X[B]) + dot(X[A], Xt[B]);
    }
  double det = p.g[0][0] * p.g[1][1] - p.g[0][1] * p.g[0][1];
  p.sqrtg = std::sqrt(det);
  p.ginv[0][0] = p.g[1][1] / det;
  p.ginv[1][1] = p.g[0][0] / det;
  p.ginv[0][1] = p.ginv[1][0] = -p.g[0][1] / det;
  // d(ginv) = -ginv dg ginv
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B) {
      double acc = 0;
      for (int C1 = 0; C1 < 2; ++C1)
        for (int D = 0; D < 2; ++D) acc += p.ginv[A][C1] * p.gt[C1][D] * p.ginv[D][B];
      p.ginvt[A][B] = -acc;
    }
  double trg = p.ginv[0][0] * p.gt[0][0] + 2 * p.ginv[0][1] * p.gt[0][1] +
               p.ginv[1][1] * p.gt[1][1];
  p.sqrtgt = 0.5 * p.sqrtg * trg;
  for (int A = 0; A < 2; ++A) {
    p.OmA[A] = p.ginv[A][0] * X[0] + p.ginv[A][1] * X[1];
    p.OmAt[A] = p.ginvt[A][0] * X[0] + p.ginv[A][0] * Xt[0] +
                p.ginvt[A][1] * X[1] + p.ginv[A][1] * Xt[1];
  }
}

}  // namespace

SurfaceFrame frame_at(const ConeChart& chart, double t, double th1, double th2) {
  Vec3 X[2] = {chart.dE_dth(1, t, th1, th2), chart.dE_dth(2, t, th1, th2)};
  Vec3 Xt[2] = {chart.d2E_dtdth(1, t, th1, th2), chart.d2E_dtdth(2, t, th1, th2)};
  PointGeom p;
  metric_from_tangents(X, Xt, chart.orient(), p);
  SurfaceFrame fr;
  fr.X[0] = p.X[0];
  fr.X[1] = p.X[1];
  fr.That = p.That;
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B) {
      fr.g[A][B] = p.g[A][B];
      fr.ginv[A][B] = p.ginv[A][B];
    }
  fr.sqrtg = p.sqrtg;
  fr.OmA[0] = p.OmA[0];
  fr.OmA[1] = p.OmA[1];
  return fr;
}

void second_form_at(const ConeChart& chart, double t, double th1, double th2,
                    SurfaceFrame& fr) {
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      fr.theta[A][B] = -dot(fr.That, chart.d2E_dthdth(A + 1, B + 1, t, th1, th2));
  fr.trtheta = fr.ginv[0][0] * fr.theta[0][0] + 2 * fr.ginv[0][1] * fr.theta[0][1] +
               fr.ginv[1][1] * fr.theta[1][1];
}

double speed_at(const ConeChart& chart, double t, double th1, double th2) {
  SurfaceFrame fr = frame_at(chart, t, th1, th2);
  return -dot(chart.dE_dt(t, th1, th2), fr.That);
}

GeometryLevel build_geometry_level(const ConeChart& chart, const Grid2& grid,
                                   const DiffOps& ops, double t) {
  GeometryLevel G;
  G.t = t;
  const int N = grid.size();
  auto alloc = [&](Field& f) { f.assign(N, 0.0); };
  for (int i = 0; i < 3; ++i) {
    alloc(G.E[i]);
    alloc(G.Et[i]);
    alloc(G.Ett[i]);
    alloc(G.Ettt[i]);
    alloc(G.That[i]);
    alloc(G.Thatt[i]);
    alloc(G.Thattt[i]);
    for (int A = 0; A < 2; ++A) {
      alloc(G.X[A][i]);
      alloc(G.Xt[A][i]);
      alloc(G.OmA[A][i]);
      alloc(G.OmAt[A][i]);
    }
  }
  for (Field* f : {&G.g11, &G.g12, &G.g22, &G.gt11, &G.gt12, &G.gt22, &G.ginv11,
                   &G.ginv12, &G.ginv22, &G.ginvt11, &G.ginvt12, &G.ginvt22,
                   &G.sqrtg, &G.sqrtgt, &G.theta11, &G.theta12, &G.theta22,
                   &G.thetat11, &G.thetat12, &G.thetat22, &G.trtheta, &G.trthetat,
                   &G.V, &G.Vt, &G.Vtt})
    alloc(*f);

  // second tangential partials, kept for the theta time-derivative pass
  Field EAB[2][2][3];
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int i = 0; i < 3; ++i) EAB[A][B][i].assign(N, 0.0);

  for (int i1 = 0; i1 < grid.n1; ++i1)
    for (int j1 = 0; j1 < grid.n2; ++j1) {
      const int k = grid.idx(i1, j1);
      const double u = grid.theta1(i1), v = grid.theta2(j1);
      Vec3 E = chart.E(t, u, v), Et = chart.dE_dt(t, u, v),
           Ett = chart.d2E_dt2(t, u, v), Ettt = chart.d3E_dt3(t, u, v);
      Vec3 X[2] = {chart.dE_dth(1, t, u, v), chart.dE_dth(2, t, u, v)};
      Vec3 Xt[2] = {chart.d2E_dtdth(1, t, u, v), chart.d2E_dtdth(2, t, u, v)};
      PointGeom p;
      metric_from_tangents(X, Xt, chart.orient(), p);
      for (int i = 0; i < 3; ++i) {
        G.E[i][k] = E[i];
        G.Et[i][k] = Et[i];
        G.Ett[i][k] = Ett[i];
        G.Ettt[i][k] = Ettt[i];
        G.That[i][k] = p.That[i];
        G.Thatt[i][k] = p.Thatt[i];
        for (int A = 0; A < 2; ++A) {
          G.X[A][i][k] = X[A][i];
          G.Xt[A][i][k] = Xt[A][i];
          G.OmA[A][i][k] = p.OmA[A][i];
          G.OmAt[A][i][k] = p.OmAt[A][i];
        }
      }
      G.g11[k] = p.g[0][0];
      G.g12[k] = p.g[0][1];
      G.g22[k] = p.g[1][1];
      G.gt11[k] = p.gt[0][0];
      G.gt12[k] = p.gt[0][1];
      G.gt22[k] = p.gt[1][1];
      G.ginv11[k] = p.ginv[0][0];
      G.ginv12[k] = p.ginv[0][1];
      G.ginv22[k] = p.ginv[1][1];
      G.ginvt11[k] = p.ginvt[0][0];
      G.ginvt12[k] = p.ginvt[0][1];
      G.ginvt22[k] = p.ginvt[1][1];
      G.sqrtg[k] = p.sqrtg;
      G.sqrtgt[k] = p.sqrtgt;

      Vec3 Eab[2][2];
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
          Eab[A][B] = chart.d2E_dthdth(A + 1, B + 1, t, u, v);
          for (int i = 0; i < 3; ++i) EAB[A][B][i][k] = Eab[A][B][i];
        }
      double th[2][2];
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) th[A][B] = -dot(p.That, Eab[A][B]);
      G.theta11[k] = th[0][0];
      G.theta12[k] = 0.5 * (th[0][1] + th[1][0]);
      G.theta22[k] = th[1][1];
      G.trtheta[k] = p.ginv[0][0] * th[0][0] + 2 * p.ginv[0][1] * G.theta12[k] +
                     p.ginv[1][1] * th[1][1];
      G.V[k] = -dot(Et, p.That);
      G.Vt[k] = -dot(Ett, p.That) - dot(Et, p.Thatt);
    }

  // grid passes: d/dt of X via tangential derivatives of analytic samples
  Field Xtt[2][3];
  for (int A = 0; A < 2; ++A)
    for (int i = 0; i < 3; ++i) Xtt[A][i] = ops.d(G.Ett[i], A + 1);
  Field EtAB[2][2][3];  // d^3 E / dt dthA dthB, symmetrized
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int i = 0; i < 3; ++i) {
        Field da = ops.d(G.Xt[B][i], A + 1);
        Field db = ops.d(G.Xt[A][i], B + 1);
        EtAB[A][B][i].resize(N);
        for (int k = 0; k < N; ++k) EtAB[A][B][i][k] = 0.5 * (da[k] + db[k]);
      }

  for (int k = 0; k < N; ++k) {
    Vec3 X1{G.X[0][0][k], G.X[0][1][k], G.X[0][2][k]};
    Vec3 X2{G.X[1][0][k], G.X[1][1][k], G.X[1][2][k]};
    Vec3 X1t{G.Xt[0][0][k], G.Xt[0][1][k], G.Xt[0][2][k]};
    Vec3 X2t{G.Xt[1][0][k], G.Xt[1][1][k], G.Xt[1][2][k]};
    Vec3 X1tt{Xtt[0][0][k], Xtt[0][1][k], Xtt[0][2][k]};
    Vec3 X2tt{Xtt[1][0][k], Xtt[1][1][k], Xtt[1][2][k]};
    Vec3 C = cross(X1, X2);
    Vec3 Ct = cross(X1t, X2) + cross(X1, X2t);
    Vec3 Ctt = cross(X1tt, X2) + 2.0 * cross(X1t, X2t) + cross(X1, X2tt);
    double n = norm(C);
    double cct = dot(C, Ct);
    Vec3 Ntt = (1.0 / n) * Ctt -
               (1.0 / (n * n * n)) * (2.0 * cct * Ct + (dot(Ct, Ct) + dot(C, Ctt)) * C) +
               (3.0 * cct * cct / (n * n * n * n * n)) * C;
    Vec3 Thattt = chart.orient() * Ntt;
    for (int i = 0; i < 3; ++i) G.Thattt[i][k] = Thattt[i];
    Vec3 Et{G.Et[0][k], G.Et[1][k], G.Et[2][k]};
    Vec3 Ett{G.Ett[0][k], G.Ett[1][k], G.Ett[2][k]};
    Vec3 Ettt{G.Ettt[0][k], G.Ettt[1][k], G.Ettt[2][k]};
    Vec3 That{G.That[0][k], G.That[1][k], G.That[2][k]};
    Vec3 Thatt{G.Thatt[0][k], G.Thatt[1][k], G.Thatt[2][k]};
    G.Vtt[k] = -dot(Ettt, That) - 2.0 * dot(Ett, Thatt) - dot(Et, Thattt);

    // theta time derivative
    double thetat[2][2];
    for (int A = 0; A < 2; ++A)
      for (int B = 0; B < 2; ++B) {
        Vec3 Eab{EAB[A][B][0][k], EAB[A][B][1][k], EAB[A][B][2][k]};
        Vec3 Etab{EtAB[A][B][0][k], EtAB[A][B][1][k], EtAB[A][B][2][k]};
        thetat[A][B] = -dot(Thatt, Eab) - dot(That, Etab);
      }
    G.thetat11[k] = thetat[0][0];
    G.thetat12[k] = 0.5 * (thetat[0][1] + thetat[1][0]);
    G.thetat22[k] = thetat[1][1];
    G.trthetat[k] = G.ginvt11[k] * G.theta11[k] + 2 * G.ginvt12[k] * G.theta12[k] +
                    G.ginvt22[k] * G.theta22[k] + G.ginv11[k] * thetat[0][0] +
                    2 * G.ginv12[k] * G.thetat12[k] + G.ginv22[k] * thetat[1][1];
  }
  return G;
}

Field grad_slash_component(const GeometryLevel&, const DiffOps& ops, const Field& f,
                           int A) {
  return ops.d(f, A);
}

Field lap_slash(const GeometryLevel& G, const DiffOps& ops, const Field& f) {
  const int N = static_cast<int>(f.size());
  Field f1 = ops.d(f, 1), f2 = ops.d(f, 2);
  Field q1(N), q2(N);
  for (int k = 0; k < N; ++k) {
    q1[k] = G.sqrtg[k] * (G.ginv11[k] * f1[k] + G.ginv12[k] * f2[k]);
    q2[k] = G.sqrtg[k] * (G.ginv12[k] * f1[k] + G.ginv22[k] * f2[k]);
  }
  Field d1 = ops.d(q1, 1), d2 = ops.d(q2, 2);
  Field out(N);
  for (int k = 0; k < N; ++k) out[k] = (d1[k] + d2[k]) / G.sqrtg[k];
  return out;
}

Field div_slash(const GeometryLevel& G, const DiffOps& ops, const Field& V1,
                const Field& V2) {
  const int N = static_cast<int>(V1.size());
  Field q1(N), q2(N);
  for (int k = 0; k < N; ++k) {
    q1[k] = G.sqrtg[k] * V1[k];
    q2[k] = G.sqrtg[k] * V2[k];
  }
  Field d1 = ops.d(q1, 1), d2 = ops.d(q2, 2);
  Field out(N);
  for (int k = 0; k < N; ++k) out[k] = (d1[k] + d2[k]) / G.sqrtg[k];
  return out;
}

}  // namespace charcone
