#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charcone/oracle1d.hpp"

using namespace charcone;

namespace {

SphericalLattice::Data constant_data(double c0, double r0) {
  // R+ = R- = c0 gives v = 0, c = c0 for gamma = 2
  SphericalLattice::Data d;
  d.gamma = 2.0;
  d.Rm_cone = ScalarFn::constant(c0);
  d.Rp_col = ScalarFn::constant(c0);
  d.r_corner = r0;
  return d;
}

SphericalLattice::Data smooth_data() {
  SphericalLattice::Data d;
  d.gamma = 2.0;
  ScalarFn rm, rp;
  rm.f = [](double t) { return 0.9 + 0.08 * std::sin(3.0 * t); };
  rm.d1 = [](double t) { return 0.24 * std::cos(3.0 * t); };
  rm.d2 = [](double t) { return -0.72 * std::sin(3.0 * t); };
  rm.d3 = [](double t) { return -2.16 * std::cos(3.0 * t); };
  rp.f = [](double u) { return 1.0 + 0.25 * std::tanh(2.0 * u); };
  rp.d1 = [](double u) { double c = std::cosh(2.0 * u); return 0.5 / (c * c); };
  rp.d2 = [](double u) {
    double c = std::cosh(2.0 * u);
    return -2.0 * std::tanh(2.0 * u) / (c * c);
  };
  rp.d3 = [](double) { return 0.0; };
  d.Rm_cone = rm;
  d.Rp_col = rp;
  d.r_corner = 1.0;
  return d;
}

SphericalLattice make_lattice(const SphericalLattice::Data& d, double T, int nT,
                              double pad_r) {
  double h = T / nT;
  int pad = static_cast<int>(std::ceil(pad_r / h));
  return SphericalLattice(d, pad, pad, pad + 8, nT, h);
}

}  // namespace

TEST_CASE("constant state is preserved exactly and cones expand at c0") {
  double c0 = 1.0, r0 = 1.0;
  int n = 128;
  SphericalLattice lat = make_lattice(constant_data(c0, r0), 0.25, n, 0.05);
  double h = lat.h();
  for (int j = 0; j <= n; ++j) {
    CHECK(std::abs(lat.cone_v(j)) < 1e-14);
    CHECK(lat.cone_c(j) == doctest::Approx(c0).epsilon(1e-14));
    CHECK(lat.cone_r(j) == doctest::Approx(r0 + c0 * j * h).epsilon(1e-13));
  }
  // interior sampling reproduces the constant state
  auto p = lat.sample(0.1, lat.cone_r(static_cast<int>(0.1 / h)) - 0.02);
  CHECK(p.v == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.c == doctest::Approx(c0).epsilon(1e-12));
}

TEST_CASE("lattice self-convergence at slope 2") {
  auto d = smooth_data();
  auto endRp = [&](int n) {
    SphericalLattice lat = make_lattice(d, 0.2, n, 0.04);
    return std::pair<double, double>(lat.cone_Rp(n), lat.cone_r(n));
  };
  auto [a, ra] = endRp(64);
  auto [b, rb] = endRp(128);
  auto [c, rc] = endRp(256);
  CHECK(std::log2(std::abs(a - c) / std::abs(b - c)) == doctest::Approx(2.0).epsilon(0.3));
  CHECK(std::log2(std::abs(ra - rc) / std::abs(rb - rc)) ==
        doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("mesh is internally consistent: sampled slice hits the cone row") {
  auto d = smooth_data();
  SphericalLattice lat = make_lattice(d, 0.2, 512, 0.04);
  double h = lat.h();
  int j = 256;
  auto p = lat.sample(j * h, lat.cone_r(j));
  CHECK(p.Rp == doctest::Approx(lat.cone_Rp(j)).epsilon(1e-9));
  CHECK(p.Rm == doctest::Approx(lat.cone_Rm(j)).epsilon(1e-9));
}

TEST_CASE("cone row RK4 matches the lattice row at the lattice accuracy") {
  auto d = smooth_data();
  int n = 1024;
  double T = 0.2;
  SphericalLattice lat = make_lattice(d, T, n, 0.01);
  auto row = integrate_cone_row(2.0, d.Rm_cone, d.Rp_col.f(0.0), d.r_corner, T, n);
  CHECK(std::abs(lat.cone_Rp(n) - row.Rp[n]) < 5e-7);
  CHECK(std::abs(lat.cone_r(n) - row.r[n]) < 5e-7);
  int j = n / 2;
  double h = row.h;
  double fd1 = (row.r[j + 1] - row.r[j - 1]) / (2 * h);
  CHECK(row.r1[j] == doctest::Approx(fd1).epsilon(1e-5));
  double fd2 = (row.r[j + 1] - 2 * row.r[j] + row.r[j - 1]) / (h * h);
  CHECK(row.r2[j] == doctest::Approx(fd2).epsilon(1e-3));
}

TEST_CASE("fd_jet slope 2 and Richardson stability on a smooth background") {
  auto d = smooth_data();
  SphericalLattice lat = make_lattice(d, 0.2, 2048, 0.06);
  double t = 0.1;
  // Richardson-extrapolated value as reference
  double ref = lat.fd_jet_richardson(SphericalLattice::Quantity::Rho, t, 0.005);
  double e1 = std::abs(lat.fd_jet(SphericalLattice::Quantity::Rho, t, 0.04) - ref);
  double e2 = std::abs(lat.fd_jet(SphericalLattice::Quantity::Rho, t, 0.02) - ref);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.35));
  // extrapolated value stable between off and off/2
  double r1 = lat.fd_jet_richardson(SphericalLattice::Quantity::Rho, t, 0.02);
  double r2 = lat.fd_jet_richardson(SphericalLattice::Quantity::Rho, t, 0.01);
  CHECK(std::abs(r1 - r2) < 1e-8);
  // row-scaled variant agrees
  CHECK(std::abs(lat.cone_trho(static_cast<int>(t / lat.h())) - r1) < 1e-6);
}

TEST_CASE("constant state: all transversal jets vanish") {
  SphericalLattice lat = make_lattice(constant_data(1.0, 1.0), 0.25, 256, 0.05);
  double t = 0.125;
  CHECK(std::abs(lat.fd_jet(SphericalLattice::Quantity::Rho, t, 0.02)) < 1e-12);
  CHECK(std::abs(lat.fd_jet(SphericalLattice::Quantity::VRadial, t, 0.02)) < 1e-12);
}

TEST_CASE("cone knots feed a spline chart that reproduces the radius") {
  auto d = smooth_data();
  SphericalLattice lat = make_lattice(d, 0.2, 512, 0.01);
  auto knots = lat.cone_knots();
  RadialSplineChart chart(knots, 1.2, 1.9);
  // knot-aligned evaluation is exact
  CHECK(chart.radius(0.1) == doctest::Approx(lat.cone_r(256)).epsilon(1e-14));
  // mid-segment evaluation is smooth and close
  double mid = chart.radius(0.1 + 0.5 * lat.h());
  CHECK(mid == doctest::Approx(0.5 * (lat.cone_r(256) + lat.cone_r(257))).epsilon(1e-7));
}

TEST_CASE("negative sound speed raises") {
  SphericalLattice::Data d;
  d.gamma = 2.0;
  d.Rm_cone = ScalarFn::constant(-2.0);
  d.Rp_col = ScalarFn::constant(0.5);
  d.r_corner = 0.5;
  CHECK_THROWS(SphericalLattice(d, 4, 4, 4, 16, 1e-2));
}
