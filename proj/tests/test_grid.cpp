#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charcone/grid.hpp"

using namespace charcone;

namespace {

Grid2 band_grid(int n1, int n2) {
  Grid2 g;
  g.n1 = n1;
  g.n2 = n2;
  g.a1 = 1.0;
  g.b1 = 2.0;
  g.periodic1 = false;
  g.a2 = 0.0;
  g.b2 = 2.0 * M_PI;
  g.periodic2 = true;
  return g;
}

}  // namespace

TEST_CASE("fornberg weights reproduce the classical centered stencils") {
  auto w = fd_weights(0.0, {-1, 0, 1}, 1);
  CHECK(w[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(0.5).epsilon(1e-14));
  auto w2 = fd_weights(0.0, {-2, -1, 0, 1, 2}, 1);
  CHECK(w2[0] == doctest::Approx(1.0 / 12).epsilon(1e-13));
  CHECK(w2[1] == doctest::Approx(-8.0 / 12).epsilon(1e-13));
}

TEST_CASE("constant fields differentiate to zero exactly") {
  Grid2 g = band_grid(16, 16);
  DiffOps ops(g);
  Field f = g.make_field(3.7);
  for (double v : ops.d(f, 1)) CHECK(std::abs(v) < 1e-13);
  for (double v : ops.d(f, 2)) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("periodic derivative of sin is cos to spectral-level accuracy") {
  Grid2 g = band_grid(12, 64);
  DiffOps ops(g);
  Field f = g.make_field();
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) f[g.idx(i, j)] = std::sin(g.theta2(j));
  Field d = ops.d(f, 2);
  double err = 0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      err = std::max(err, std::abs(d[g.idx(i, j)] - std::cos(g.theta2(j))));
  CHECK(err < 1e-10);
}

TEST_CASE("non-periodic direction keeps high order at the closures") {
  Grid2 g = band_grid(48, 8);
  DiffOps ops(g);
  Field f = g.make_field();
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) f[g.idx(i, j)] = std::exp(g.theta1(i));
  Field d = ops.d(f, 1);
  double err = 0;
  for (int i = 0; i < g.n1; ++i)
    err = std::max(err, std::abs(d[g.idx(i, 0)] - std::exp(g.theta1(i))));
  CHECK(err < 1e-8);
}

TEST_CASE("convergence slope of the first derivative is at least 4") {
  auto max_err = [](int n1) {
    Grid2 g = band_grid(n1, 8);
    DiffOps ops(g);
    Field f = g.make_field();
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        f[g.idx(i, j)] = std::sin(3.0 * g.theta1(i)) * std::cos(g.theta1(i));
    Field d = ops.d(f, 1);
    double err = 0;
    for (int i = 0; i < g.n1; ++i) {
      double x = g.theta1(i);
      double exact = 3.0 * std::cos(3 * x) * std::cos(x) - std::sin(3 * x) * std::sin(x);
      err = std::max(err, std::abs(d[g.idx(i, 0)] - exact));
    }
    return err;
  };
  double e1 = max_err(33), e2 = max_err(65);
  double slope = std::log2(e1 / e2);
  CHECK(slope > 4.0);
}

TEST_CASE("too-coarse grids are rejected") {
  Grid2 g = band_grid(6, 16);
  DiffOps ops(g);
  Field f = g.make_field(1.0);
  CHECK_THROWS_AS(ops.d(f, 1), GridTooCoarse);
}
