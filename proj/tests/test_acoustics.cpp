#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charcone/acoustics.hpp"

using namespace charcone;

namespace {

// Analytic test function with hand-coded jets.
struct TestFn {
  std::function<double(double, const Vec3&)> f, ft, ftt;
  std::function<Vec3(double, const Vec3&)> grad, grad_ft;
  std::function<void(double, const Vec3&, double H[3][3])> hess;
};

TestFn fn_x1_sq() {
  TestFn F;
  F.f = [](double, const Vec3& x) { return x[0] * x[0]; };
  F.ft = [](double, const Vec3&) { return 0.0; };
  F.ftt = [](double, const Vec3&) { return 0.0; };
  F.grad = [](double, const Vec3& x) { return Vec3{2 * x[0], 0, 0}; };
  F.grad_ft = [](double, const Vec3&) { return Vec3{0, 0, 0}; };
  F.hess = [](double, const Vec3&, double H[3][3]) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) H[i][j] = 0;
    H[0][0] = 2;
  };
  return F;
}

TestFn fn_mixed() {
  // f = x1 x2 + t x3 + sin(x1) cos(t)
  TestFn F;
  F.f = [](double t, const Vec3& x) {
    return x[0] * x[1] + t * x[2] + std::sin(x[0]) * std::cos(t);
  };
  F.ft = [](double t, const Vec3& x) { return x[2] - std::sin(x[0]) * std::sin(t); };
  F.ftt = [](double t, const Vec3& x) { return -std::sin(x[0]) * std::cos(t); };
  F.grad = [](double t, const Vec3& x) {
    return Vec3{x[1] + std::cos(x[0]) * std::cos(t), x[0], t};
  };
  F.grad_ft = [](double t, const Vec3& x) {
    return Vec3{-std::cos(x[0]) * std::sin(t), 0, 1};
  };
  F.hess = [](double t, const Vec3& x, double H[3][3]) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) H[i][j] = 0;
    H[0][0] = -std::sin(x[0]) * std::cos(t);
    H[0][1] = H[1][0] = 1;
  };
  return F;
}

// Both wave-operator forms on the constant background (c0, v = 0) with the
// geometric sphere foliation through radius |x| (kappa = 1, zeta = 0,
// tr kslash = 0, tr theta = -2/r with inward That = -xhat).
double boxes_constant_bg(const TestFn& F, double c0, double t, const Vec3& x,
                         double* out_cart) {
  double r = norm(x);
  Vec3 xh = (1.0 / r) * x;
  double H[3][3];
  F.hess(t, x, H);
  Vec3 g = F.grad(t, x);
  double lap = H[0][0] + H[1][1] + H[2][2];
  double fr = dot(xh, g);
  double frr = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) frr += xh[i] * H[i][j] * xh[j];

  BoxCartesianInput ci;
  ci.c = c0;
  ci.Bf = F.ft(t, x);
  ci.B2f = F.ftt(t, x);
  ci.gradf = g;
  ci.lapf = lap;
  ci.Bc = 0;
  ci.gradc = {0, 0, 0};
  ci.divv = 0;
  *out_cart = box_cartesian(ci);

  // null frame pieces: L = d_t + c xhat . grad, T = -xhat . grad
  auto Lf_at = [&](double tt, const Vec3& xx) {
    Vec3 gg = F.grad(tt, xx);
    Vec3 xhh = (1.0 / norm(xx)) * xx;
    return F.ft(tt, xx) + c0 * dot(xhh, gg);
  };
  auto Tf_at = [&](double tt, const Vec3& xx) {
    Vec3 gg = F.grad(tt, xx);
    Vec3 xhh = (1.0 / norm(xx)) * xx;
    return -dot(xhh, gg);
  };
  // exact directional derivatives of Lf and Tf
  Vec3 grad_fr;  // grad of (xhat . grad f)
  for (int i = 0; i < 3; ++i) {
    double acc = 0;
    for (int j = 0; j < 3; ++j) acc += ((i == j ? 1.0 : 0.0) - xh[i] * xh[j]) / r * g[j];
    for (int j = 0; j < 3; ++j) acc += xh[j] * H[j][i];
    grad_fr[i] = acc;
  }
  Vec3 gft = F.grad_ft(t, x);
  double L2f = F.ftt(t, x) + c0 * dot(xh, gft) +
               c0 * (dot(xh, gft) + c0 * dot(xh, grad_fr));
  double LTf = -(dot(xh, gft)) - c0 * dot(xh, grad_fr);
  // d/dt of Tf has only the grad_ft part since xhat is static
  (void)Lf_at;
  (void)Tf_at;

  BoxNullFrameInput ni;
  ni.c = c0;
  ni.kappa = 1.0;
  ni.Lf = F.ft(t, x) + c0 * fr;
  ni.L2f = L2f;
  ni.Tf = -fr;
  ni.LTf = LTf;
  ni.lap_slash_f = lap - frr - 2.0 / r * fr;
  ni.XAf[0] = ni.XAf[1] = 0;  // folded into lap_slash; zeta = 0 anyway
  ni.Lc = 0;
  ni.Lkappa = 0;
  ni.tr_kslash = 0;
  ni.tr_theta = -2.0 / r;
  ni.zeta_up[0] = ni.zeta_up[1] = 0;
  return box_nullframe(ni);
}

}  // namespace

TEST_CASE("metric and inverse") {
  Metric4 m = metric_at(1.0, {0, 0, 0});
  CHECK(m.g[0][0] == doctest::Approx(-1.0));
  CHECK(m.g[1][1] == doctest::Approx(1.0));
  CHECK(std::abs(m.g[0][1]) < 1e-15);

  m = metric_at(2.0, {1, 0, 0});
  CHECK(m.g[0][0] == doctest::Approx(-3.0));
  CHECK(m.g[0][1] == doctest::Approx(-1.0));

  // g . ginv = id on assorted states
  for (double c : {0.7, 1.3}) {
    Vec3 v{0.3, -0.8, 0.2};
    m = metric_at(c, v);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double acc = 0;
        for (int k = 0; k < 4; ++k) acc += m.g[a][k] * m.ginv[k][b];
        CHECK(acc == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("g(B,B) = -c^2 and g(B, d_i) = 0") {
  Vec3 v{0.4, -0.1, 0.9};
  double c = 1.7;
  Metric4 m = metric_at(c, v);
  double B[4] = {1, v[0], v[1], v[2]};
  double bb = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) bb += m.g[a][b] * B[a] * B[b];
  CHECK(bb == doctest::Approx(-c * c).epsilon(1e-13));
  for (int i = 1; i < 4; ++i) {
    double bi = 0;
    for (int a = 0; a < 4; ++a) bi += m.g[a][i] * B[a];
    CHECK(std::abs(bi) < 1e-13);
  }
}

TEST_CASE("null generator has zero norm for any state") {
  Vec3 v{0.4, -0.1, 0.9};
  Vec3 n{0.6, 0.48, 0.64};  // unit
  CHECK(std::abs(null_generator_norm(1.3, v, n)) < 1e-12);
}

TEST_CASE("christoffels: constant state vanishes; linear shear example") {
  StateDerivs d;  // all zero
  Christoffels ch = christoffels_at(1.5, {0.2, 0, 0}, d);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(std::abs(ch.G[a][b][c]) < 1e-15);

  // v^1 = a x^2, c const: G^0_{12} = a/(2c^2)
  double a = 0.7, c0 = 1.3;
  StateDerivs d2;
  d2.dv[2][0] = a;  // d v^1 / d x^2
  ch = christoffels_at(c0, {0, 0, 0}, d2);
  CHECK(ch.G[0][1][2] == doctest::Approx(a / (2 * c0 * c0)).epsilon(1e-13));
  CHECK(ch.G[0][2][1] == doctest::Approx(a / (2 * c0 * c0)).epsilon(1e-13));
}

TEST_CASE("christoffels satisfy metric compatibility on a manufactured state") {
  // smooth state with analytic partials at a sample point
  double t = 0.4;
  Vec3 x{0.3, -0.2, 0.5};
  auto c2f = [](double t, const Vec3& x) {
    return 1.0 + 0.1 * x[0] + 0.05 * t * x[2] + 0.02 * std::sin(x[1]);
  };
  auto vf = [](double t, const Vec3& x) {
    return Vec3{0.1 * std::sin(x[1]) + 0.02 * t, -0.05 * x[0] * x[2],
                0.03 * std::cos(t) * x[0]};
  };
  StateDerivs d;
  d.dc2[0] = 0.05 * x[2];
  d.dc2[1] = 0.1;
  d.dc2[2] = 0.02 * std::cos(x[1]);
  d.dc2[3] = 0.05 * t;
  // dv[mu][i]
  d.dv[0][0] = 0.02;
  d.dv[0][2] = -0.03 * std::sin(t) * x[0];
  d.dv[1][1] = -0.05 * x[2];
  d.dv[1][2] = 0.03 * std::cos(t);
  d.dv[2][0] = 0.1 * std::cos(x[1]);
  d.dv[3][1] = -0.05 * x[0];
  double c = std::sqrt(c2f(t, x));
  CHECK(metric_compat_residual(c, vf(t, x), d) < 1e-12);

  // symmetry in the lower indices
  Christoffels ch = christoffels_at(c, vf(t, x), d);
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        CHECK(std::abs(ch.G[a][m][n] - ch.G[a][n][m]) < 1e-14);
}

TEST_CASE("null residual forms") {
  CHECK(null_residual(1, 0, 1) == doctest::Approx(0.0));
  CHECK(null_residual(2, -1, 3) == doctest::Approx(0.0));
  CHECK(std::abs(null_residual_determinant(2, -1, 3)) < 1e-14);
  CHECK(null_residual(2, -1, 2.5) == doctest::Approx(0.5));
}

TEST_CASE("box_cartesian basics on the constant background") {
  BoxCartesianInput in;
  in.c = 1.0;
  // f = x1: everything zero
  in.gradf = {1, 0, 0};
  CHECK(box_cartesian(in) == doctest::Approx(0.0));
  // f = (x1)^2: reduces to lap f = 2
  in.gradf = {0.4, 0, 0};
  in.lapf = 2.0;
  CHECK(box_cartesian(in) == doctest::Approx(2.0));
  // f = t: Bf = 1, B2f = 0, div v = 0 on constant background
  BoxCartesianInput in2;
  in2.c = 1.0;
  in2.Bf = 1.0;
  CHECK(box_cartesian(in2) == doctest::Approx(0.0));
}

TEST_CASE("wave-operator decomposition agrees with the material form") {
  for (const TestFn& F : {fn_x1_sq(), fn_mixed()}) {
    for (double c0 : {1.0, 1.7}) {
      Vec3 x{0.8, -0.5, 1.1};
      double cart = 0;
      double nf = boxes_constant_bg(F, c0, 0.7, x, &cart);
      CHECK(std::abs(nf - cart) < 1e-9);
    }
  }
}

TEST_CASE("box_nullframe refuses missing transversal data") {
  BoxNullFrameInput in;
  in.c = 1;
  in.kappa = 1;
  CHECK_THROWS_AS(box_nullframe(in), MissingDerivative);
}
