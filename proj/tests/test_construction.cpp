#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charcone/construction.hpp"
#include "charcone/oracle1d.hpp"

using namespace charcone;

namespace {

PolytropicEos gamma2_eos() { return PolytropicEos(2.0, EntropyFactor::constant(1.0)); }

ConeProblem constant_problem(const ConeChart* chart, const EosModel* eos) {
  ConeProblem p;
  p.chart = chart;
  p.eos = eos;
  p.free.s = FreeDataField::constant(0.0);
  p.corner = CornerData::constants(1.0, {0, 0, 0}, 0.0);
  p.n1 = 16;
  p.n2 = 16;
  p.T = 1.0;
  p.nt = 100;
  return p;
}

Vec3 radial_dir(double th1, double th2) {
  return {std::sin(th1) * std::cos(th2), std::sin(th1) * std::sin(th2), std::cos(th1)};
}

}  // namespace

TEST_CASE("constant state on the matched expanding sphere is a fixed point") {
  ExpandingSphereChart chart(ScalarFn::poly({1.0, 1.0}), 1.1, 2.0);
  auto eos = gamma2_eos();
  ConeProblem p = constant_problem(&chart, &eos);
  p.jet_order = 1;
  auto res = run_cone_construction(p, 50);
  CHECK(res.status == RunStatus::Ok);
  REQUIRE(!res.levels.empty());
  const auto& last = res.levels.back();
  CHECK(last.t == doctest::Approx(1.0));
  for (double v : last.rho) CHECK(std::abs(v - 1.0) < 1e-10);
  for (int i = 0; i < 3; ++i)
    for (double v : last.v[i]) CHECK(std::abs(v) < 1e-10);
  for (double v : last.s) CHECK(std::abs(v) < 1e-12);
  CHECK(res.max_null_residual < 1e-12);
  for (double v : last.kappa) CHECK(std::abs(v - 1.0) < 1e-10);
  // the transversal density jet picks up spectrally amplified rounding noise
  for (double v : last.trho) CHECK(std::abs(v) < 2e-9);
  for (double v : last.Ts) CHECK(std::abs(v) < 1e-12);
  for (double v : last.T2s) CHECK(std::abs(v) < 1e-12);
  for (int A = 0; A < 2; ++A) {
    for (double v : last.zeta[A]) CHECK(std::abs(v) < 2e-9);
    for (double v : last.eta[A]) CHECK(std::abs(v) < 2e-9);
  }
  // assembled v . That equals w - wbar
  const Grid2& g = res.grid;
  for (int k = 0; k < g.size(); ++k) {
    double vT = last.vT[k];
    CHECK(std::abs((last.w[k] - last.wbar[k]) - vT) < 1e-12);
  }
}

TEST_CASE("generator field vanishes for the aligned sphere and has tiny defect") {
  ExpandingSphereChart chart(ScalarFn::poly({1.0, 1.0}), 1.1, 2.0);
  Grid2 g = chart.domain(16, 16);
  DiffOps ops(g);
  auto G = build_geometry_level(chart, g, ops, 0.3);
  Field vsl[2] = {g.make_field(0.0), g.make_field(0.0)};
  auto gen = generator_field(G, vsl);
  CHECK(gen.max_normal_defect < 1e-12);
  CHECK(max_abs(gen.lambda[0]) < 1e-12);
  CHECK(max_abs(gen.lambda[1]) < 1e-12);
}

TEST_CASE("corner gate rejects incompatible data and passes compatible data") {
  auto eos = gamma2_eos();

  // rate 1 with c0 = 1, v = 0: compatible
  ExpandingSphereChart good(ScalarFn::poly({1.0, 1.0}), 1.1, 2.0);
  ConeProblem p = constant_problem(&good, &eos);
  p.corner_tol = 1e-6;
  auto rep = validate_corner(p);
  CHECK(rep.pass);
  CHECK(rep.speed_residual < 1e-12);

  // rate 1.1: residual 0.1, rejected
  ExpandingSphereChart bad(ScalarFn::poly({1.0, 1.1}), 1.1, 2.0);
  ConeProblem q = constant_problem(&bad, &eos);
  q.corner_tol = 1e-6;
  auto rep2 = validate_corner(q);
  CHECK(!rep2.pass);
  CHECK(rep2.speed_residual == doctest::Approx(0.1).epsilon(1e-10));
  CHECK_THROWS_AS(run_cone_construction(q, 10), CornerIncompatible);

  // mismatched entropy free data at t = 0
  ConeProblem r = constant_problem(&good, &eos);
  r.free.s = FreeDataField::constant(1e-3);
  r.corner_tol = 1e-6;
  auto rep3 = validate_corner(r);
  CHECK(!rep3.pass);
  CHECK(rep3.mismatch_s == doctest::Approx(1e-3));
}

TEST_CASE("k=1 corner check uses supplied L-jets") {
  auto eos = gamma2_eos();
  ExpandingSphereChart chart(ScalarFn::poly({1.0, 1.0}), 1.1, 2.0);
  ConeProblem p = constant_problem(&chart, &eos);
  p.corner.has_Ljets = true;  // constants provider: Ls = 0, Lvsl = 0
  auto rep = validate_corner(p);
  CHECK(rep.checked_Ljets);
  CHECK(rep.pass);

  // free data with a nonzero time slope at t = 0 breaks the k = 1 check
  FreeDataField::Term term;
  term.amp = 0.01;
  term.tpow = 1;
  term.kind = FreeDataField::Term::Kind::Band;
  term.l = 0;
  term.m = 0;
  p.free.s = FreeDataField({term});
  auto rep2 = validate_corner(p);
  CHECK(!rep2.pass);
  CHECK(rep2.mismatch_Ls == doctest::Approx(0.01));
}

TEST_CASE("spherical order-0 run matches the 1D characteristic oracle") {
  // 1D data: smooth nonlinear R- profile along the cone
  SphericalLattice::Data d;
  d.gamma = 2.0;
  ScalarFn rm;
  rm.f = [](double t) { return 0.9 + 0.1 * std::sin(2.0 * t); };
  rm.d1 = [](double t) { return 0.2 * std::cos(2.0 * t); };
  rm.d2 = [](double t) { return -0.4 * std::sin(2.0 * t); };
  rm.d3 = [](double t) { return -0.8 * std::cos(2.0 * t); };
  d.Rm_cone = rm;
  d.Rp_col = ScalarFn::constant(1.05);
  d.r_corner = 1.0;

  const double T = 0.256;
  const int n1d = 2048;
  SphericalLattice lat(d, 4, 4, 8, n1d, T / n1d);

  // geometry: spline chart from the cone row (knots uniform in t)
  RadialSplineChart chart(lat.cone_knots(), 1.1, 2.0);

  auto eos = gamma2_eos();
  ConeProblem p;
  p.chart = &chart;
  p.eos = &eos;
  p.free.s = FreeDataField::constant(0.0);
  // corner: radial velocity v0 = R+ - R-, rho from c = (R+ + R-)/2
  double Rp0 = lat.cone_Rp(0), Rm0 = lat.cone_Rm(0);
  double c0 = lat.sound_speed(Rp0, Rm0), v0 = Rp0 - Rm0;
  p.corner.rho = [c0](double, double) { return c0 * c0; };
  p.corner.v = [v0](double u, double v) { return v0 * radial_dir(u, v); };
  p.corner.s = [](double, double) { return 0.0; };
  p.n1 = 12;
  p.n2 = 8;
  p.T = T;
  p.nt = 256;  // dt = 1e-3, 8 lattice steps
  p.corner_tol = 1e-9;
  p.monitor_stride = 0;
  auto res = run_cone_construction(p, 32);
  CHECK(res.status == RunStatus::Ok);

  // wbar along the cone equals R+ of the oracle at the matched times
  double err = 0;
  for (const auto& lv : res.levels) {
    int j = static_cast<int>(std::lround(lv.t / lat.h()));
    double ref = lat.cone_Rp(j);
    for (double wb : lv.wbar) err = std::max(err, std::abs(wb - ref));
    // reconstructed radial velocity matches R+ - R-
    double vref = lat.cone_v(j);
    const Grid2& g = res.grid;
    for (int i1 = 0; i1 < g.n1; ++i1)
      for (int j1 = 0; j1 < g.n2; ++j1) {
        int k = g.idx(i1, j1);
        Vec3 n = radial_dir(g.theta1(i1), g.theta2(j1));
        double vr = lv.v[0][k] * n[0] + lv.v[1][k] * n[1] + lv.v[2][k] * n[2];
        err = std::max(err, std::abs(vr - vref));
      }
  }
  CHECK(err < 2e-6);
  CHECK(res.max_null_residual < 1e-10);
}

TEST_CASE("order-0 RK4 self-convergence at slope 4 on a generic band run") {
  ExpandingSphereChart chart(ScalarFn::poly({1.0, 1.0, 0.15}), 1.1, 2.0);
  auto eos = gamma2_eos();

  auto run_nt = [&](int nt) {
    ConeProblem p;
    p.chart = &chart;
    p.eos = &eos;
    // nontrivial entropy and azimuthal tangential velocity; both vanish at
    // t = 0 so the constant corner stays compatible
    FreeDataField::Term s1;
    s1.amp = 0.05;
    s1.tpow = 1;
    s1.kind = FreeDataField::Term::Kind::Band;
    s1.l = 2;
    s1.m = 1;
    p.free.s = FreeDataField({s1});
    FreeDataField::Term v2;
    v2.amp = 0.04;
    v2.tpow = 1;
    v2.kind = FreeDataField::Term::Kind::BandSin;
    v2.l = 3;
    v2.m = 2;
    p.free.vslash[1] = FreeDataField({v2});
    p.corner = CornerData::constants(1.0, {0, 0, 0}, 0.0);
    p.n1 = 16;
    p.n2 = 16;
    p.T = 0.4;
    p.nt = nt;
    p.monitor_stride = 0;
    return run_cone_construction(p, nt);
  };
  auto rA = run_nt(20), rB = run_nt(40), rC = run_nt(80);
  double e1 = 0, e2 = 0;
  for (int k = 0; k < rA.grid.size(); ++k) {
    e1 = std::max(e1, std::abs(rA.levels.back().wbar[k] - rC.levels.back().wbar[k]));
    e2 = std::max(e2, std::abs(rB.levels.back().wbar[k] - rC.levels.back().wbar[k]));
  }
  // error against the dt/4 run: ratio ~ (16 e)/(e...) -> slope from the pair
  double slope = std::log2(e1 / e2) ;
  // e1 ~ C dt^4 (1 - 1/16 ... ) : slope of differences is ~4 up to the
  // Richardson correction factor
  CHECK(slope == doctest::Approx(4.0).epsilon(0.12));
}
