#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charcone/eos.hpp"

using namespace charcone;

TEST_CASE("polytropic gamma=2 closed forms") {
  PolytropicEos eos(2.0, EntropyFactor::constant(1.0));
  auto t = eos.eval(4.0, 0.0);
  CHECK(t.c == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.Phi0 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(t.Psi0 == doctest::Approx(0.0).epsilon(1e-14));
  auto t1 = eos.eval(1.0, 0.0);
  CHECK(t1.c == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t1.Phi0 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Psi0 vanishes whenever the entropy factor is constant") {
  PolytropicEos eos(1.4, EntropyFactor::constant(2.5));
  for (double rho : {0.3, 1.0, 7.0})
    CHECK(std::abs(eos.eval(rho, 0.3).Psi0) < 1e-14);
}

TEST_CASE("riemann invariants round trip") {
  PolytropicEos eos(2.0, EntropyFactor::constant(1.0));
  double vsl[2] = {0.1, -0.2};
  auto r = riemann_from_state(eos, 1.0, 0.5, vsl, 0.0);
  CHECK(r.w == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(r.wbar == doctest::Approx(0.75).epsilon(1e-13));
  auto p = state_from_riemann(eos, r);
  CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.vT == doctest::Approx(0.5).epsilon(1e-12));

  // vT = 0 gives w = wbar = Phi0/2
  auto r0 = riemann_from_state(eos, 1.0, 0.0, vsl, 0.0);
  CHECK(r0.w == doctest::Approx(r0.wbar).epsilon(1e-14));
}

TEST_CASE("state_from_riemann examples") {
  PolytropicEos eos(2.0, EntropyFactor::constant(1.0));
  RiemannState r;
  r.w = 1;
  r.wbar = 1;
  r.s = 0;
  auto p = state_from_riemann(eos, r);
  CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.vT == doctest::Approx(0.0).epsilon(1e-12));
  r.w = 4;
  r.wbar = 2;
  p = state_from_riemann(eos, r);
  CHECK(p.rho == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(p.vT == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("speed closure w(wbar): polytropic linear solve") {
  PolytropicEos eos(2.0, EntropyFactor::constant(1.0));
  double w = eos.w_from_wbar(1.0, 1.0, 0.0);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(speed_constraint_residual(eos, w, 1.0, 0.0, 1.0)) < 1e-12);
  w = eos.w_from_wbar(2.0, 1.0, 0.0);
  CHECK(w == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(std::abs(speed_constraint_residual(eos, w, 2.0, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("polytropic identity c = (gamma-1)(w+wbar)/2") {
  PolytropicEos eos(1.4, EntropyFactor::exponential());
  double vsl[2] = {0, 0};
  for (double rho : {0.5, 1.0, 3.0}) {
    for (double vT : {-0.4, 0.0, 0.7}) {
      auto r = riemann_from_state(eos, rho, vT, vsl, 0.2);
      auto t = eos.eval(rho, 0.2);
      CHECK(t.c == doctest::Approx(0.5 * 0.4 * (r.w + r.wbar)).epsilon(1e-12));
    }
  }
}

TEST_CASE("user EOS quadrature matches a closed form") {
  // p = rho^2/2 + rho s^2, c^2 = rho + s^2.
  // Phi0 = int sqrt(r+s^2)/r dr has the closed form
  //   2 sqrt(r+a^2) + a ln[(sqrt(r+a^2)-a)/(sqrt(r+a^2)+a)], a = |s|.
  UserEos::Callbacks cb;
  cb.p = [](double r, double s) { return 0.5 * r * r + r * s * s; };
  cb.c = [](double r, double s) { return std::sqrt(r + s * s); };
  cb.c_rho = [](double r, double s) { return 0.5 / std::sqrt(r + s * s); };
  cb.c_s = [](double r, double s) { return s / std::sqrt(r + s * s); };
  cb.c_rhorho = [](double r, double s) { return -0.25 / std::pow(r + s * s, 1.5); };
  cb.c_rhos = [](double r, double s) { return -0.5 * s / std::pow(r + s * s, 1.5); };
  cb.c_ss = [](double r, double s) { return r / std::pow(r + s * s, 1.5); };
  cb.p_s = [](double r, double s) { return 2.0 * r * s; };
  cb.p_ss = [](double r, double) { return 2.0 * r; };
  cb.p_srho = [](double, double s) { return 2.0 * s; };
  UserEos eos(cb, 1.0);

  double s = 0.5, rho = 2.3;
  auto closed = [&](double r) {
    double a = std::abs(s);
    double q = std::sqrt(r + a * a);
    return 2.0 * q + a * std::log((q - a) / (q + a));
  };
  auto t = eos.eval(rho, s);
  CHECK(t.Phi0 == doctest::Approx(closed(rho) - closed(1.0)).epsilon(1e-11));

  // inversion consistency
  double back = eos.rho_from_phi0(t.Phi0, s);
  CHECK(back == doctest::Approx(rho).epsilon(1e-11));

  // closure solved iteratively, residual within tolerance
  double V = 1.2, wbar = 0.8;
  double w = eos.w_from_wbar(wbar, V, s);
  CHECK(std::abs(speed_constraint_residual(eos, w, wbar, s, V)) <=
        1e-11 * std::max(1.0, std::abs(V)));
}

TEST_CASE("finite-difference check of dPhi0/drho = c/rho (Richardson slope 2)") {
  PolytropicEos eos(1.66, EntropyFactor::constant(1.0));
  double s = 0.0, rho = 1.7;
  auto t = eos.eval(rho, s);
  auto fd = [&](double h) {
    return (eos.eval(rho + h, s).Phi0 - eos.eval(rho - h, s).Phi0) / (2 * h) -
           t.c / t.rho;
  };
  double e1 = std::abs(fd(1e-2)), e2 = std::abs(fd(5e-3));
  double slope = std::log2(e1 / e2);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("error paths") {
  PolytropicEos eos(2.0, EntropyFactor::constant(1.0));
  CHECK_THROWS_AS(eos.eval(-1.0, 0.0), NonPositiveDensity);
  CHECK_THROWS_AS(eos.rho_from_phi0(-2.0, 0.0), OutOfRange);
}
