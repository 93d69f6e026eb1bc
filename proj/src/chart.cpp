#include "charcone/chart.hpp"

#include <cmath>

namespace charcone {

ScalarFn ScalarFn::constant(double a) {
  ScalarFn s;
  s.f = [a](double) { return a; };
  s.d1 = [](double) { return 0.0; };
  s.d2 = [](double) { return 0.0; };
  s.d3 = [](double) { return 0.0; };
  return s;
}

ScalarFn ScalarFn::poly(std::vector<double> coeffs) {
  ScalarFn s;
  auto mk = [coeffs](int m) {
    return [coeffs, m](double t) {
      double acc = 0.0;
      double tp = 1.0;
      for (size_t k = m; k < coeffs.size(); ++k) {
        double fac = 1.0;
        for (int j = 0; j < m; ++j) fac *= static_cast<double>(k - j);
        acc += fac * coeffs[k] * tp;
        tp *= t;
      }
      return acc;
    };
  };
  s.f = mk(0);
  s.d1 = mk(1);
  s.d2 = mk(2);
  s.d3 = mk(3);
  return s;
}

// ---------------------------------------------------------------- radial

RadialChartBase::RadialChartBase(Vec3 axes, double th1_min, double th1_max)
    : axes_(axes), th1_min_(th1_min), th1_max_(th1_max) {}

Vec3 RadialChartBase::shape(double u, double v, int du, int dv) const {
  // partial derivatives of (sin u cos v, sin u sin v, cos u), scaled by axes
  auto su = [&](int m) {
    switch (m % 4) {
      case 0: return std::sin(u);
      case 1: return std::cos(u);
      case 2: return -std::sin(u);
      default: return -std::cos(u);
    }
  };
  auto cu = [&](int m) {
    switch (m % 4) {
      case 0: return std::cos(u);
      case 1: return -std::sin(u);
      case 2: return -std::cos(u);
      default: return std::sin(u);
    }
  };
  auto cv = [&](int m) {
    switch (m % 4) {
      case 0: return std::cos(v);
      case 1: return -std::sin(v);
      case 2: return -std::cos(v);
      default: return std::sin(v);
    }
  };
  auto sv = [&](int m) {
    switch (m % 4) {
      case 0: return std::sin(v);
      case 1: return std::cos(v);
      case 2: return -std::sin(v);
      default: return -std::cos(v);
    }
  };
  return {axes_[0] * su(du) * cv(dv), axes_[1] * su(du) * sv(dv),
          axes_[2] * (dv == 0 ? cu(du) : 0.0)};
}

Vec3 RadialChartBase::E(double t, double u, double v) const {
  return R(t, 0) * shape(u, v, 0, 0);
}
Vec3 RadialChartBase::dE_dt(double t, double u, double v) const {
  return R(t, 1) * shape(u, v, 0, 0);
}
Vec3 RadialChartBase::dE_dth(int A, double t, double u, double v) const {
  return R(t, 0) * shape(u, v, A == 1 ? 1 : 0, A == 2 ? 1 : 0);
}
Vec3 RadialChartBase::d2E_dt2(double t, double u, double v) const {
  return R(t, 2) * shape(u, v, 0, 0);
}
Vec3 RadialChartBase::d2E_dtdth(int A, double t, double u, double v) const {
  return R(t, 1) * shape(u, v, A == 1 ? 1 : 0, A == 2 ? 1 : 0);
}
Vec3 RadialChartBase::d2E_dthdth(int A, int B, double t, double u, double v) const {
  int du = (A == 1) + (B == 1), dv = (A == 2) + (B == 2);
  return R(t, 0) * shape(u, v, du, dv);
}
Vec3 RadialChartBase::d3E_dt3(double t, double u, double v) const {
  return R(t, 3) * shape(u, v, 0, 0);
}
Grid2 RadialChartBase::domain(int n1, int n2) const {
  Grid2 g;
  g.n1 = n1;
  g.n2 = n2;
  g.a1 = th1_min_;
  g.b1 = th1_max_;
  g.periodic1 = false;
  g.a2 = 0.0;
  g.b2 = 2.0 * M_PI;
  g.periodic2 = true;
  return g;
}

ExpandingSphereChart::ExpandingSphereChart(ScalarFn radius, double th1_min,
                                           double th1_max)
    : RadialChartBase({1, 1, 1}, th1_min, th1_max), R_(std::move(radius)) {}

double ExpandingSphereChart::R(double t, int deriv) const {
  switch (deriv) {
    case 0: return R_.f(t);
    case 1: return R_.d1(t);
    case 2: return R_.d2(t);
    default: return R_.d3(t);
  }
}

EllipsoidChart::EllipsoidChart(double a, double b, double c, ScalarFn rate,
                               double th1_min, double th1_max)
    : RadialChartBase({a, b, c}, th1_min, th1_max), R_(std::move(rate)) {}

double EllipsoidChart::R(double t, int deriv) const {
  switch (deriv) {
    case 0: return R_.f(t);
    case 1: return R_.d1(t);
    case 2: return R_.d2(t);
    default: return R_.d3(t);
  }
}

RadialSplineChart::RadialSplineChart(Knots knots, double th1_min, double th1_max)
    : RadialChartBase({1, 1, 1}, th1_min, th1_max), k_(std::move(knots)) {}

double RadialSplineChart::R(double t, int deriv) const {
  const int n = static_cast<int>(k_.r.size());
  double x = (t - k_.t0) / k_.dt;
  int i = static_cast<int>(std::floor(x + 0.5));
  if (i >= 0 && i < n && std::abs(x - i) < 1e-9) {
    // knot-aligned evaluation: exact nodal data
    switch (deriv) {
      case 0: return k_.r[i];
      case 1: return k_.r1[i];
      case 2: return k_.r2[i];
      default: return k_.r3[i];
    }
  }
  // quintic Hermite on the containing segment
  i = std::clamp(static_cast<int>(std::floor(x)), 0, n - 2);
  double h = k_.dt;
  double s = (t - (k_.t0 + i * h)) / h;
  double y0 = k_.r[i], y1 = k_.r[i + 1];
  double d0 = k_.r1[i] * h, d1 = k_.r1[i + 1] * h;
  double a0 = k_.r2[i] * h * h, a1 = k_.r2[i + 1] * h * h;
  // quintic Hermite basis (value/slope/curvature at both ends)
  double c0 = y0;
  double c1 = d0;
  double c2 = 0.5 * a0;
  double c3 = -10 * y0 + 10 * y1 - 6 * d0 - 4 * d1 - 1.5 * a0 + 0.5 * a1;
  double c4 = 15 * y0 - 15 * y1 + 8 * d0 + 7 * d1 + 1.5 * a0 - a1;
  double c5 = -6 * y0 + 6 * y1 - 3 * d0 - 3 * d1 - 0.5 * a0 + 0.5 * a1;
  auto horner = [&](int m) {
    double c[6] = {c0, c1, c2, c3, c4, c5};
    double acc = 0.0;
    for (int k = 5; k >= m; --k) {
      double fac = 1.0;
      for (int j = 0; j < m; ++j) fac *= (k - j);
      acc = acc * s + fac * c[k];
    }
    return acc / std::pow(h, m);
  };
  return horner(deriv);
}

// ---------------------------------------------------------------- plane

PlaneFrontChart::PlaneFrontChart(ScalarFn height, double L1, double L2)
    : h_(std::move(height)), L1_(L1), L2_(L2) {}

Vec3 PlaneFrontChart::E(double t, double u, double v) const { return {u, v, h_.f(t)}; }
Vec3 PlaneFrontChart::dE_dt(double t, double, double) const { return {0, 0, h_.d1(t)}; }
Vec3 PlaneFrontChart::dE_dth(int A, double, double, double) const {
  return A == 1 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
}
Vec3 PlaneFrontChart::d2E_dt2(double t, double, double) const { return {0, 0, h_.d2(t)}; }
Vec3 PlaneFrontChart::d2E_dtdth(int, double, double, double) const { return {0, 0, 0}; }
Vec3 PlaneFrontChart::d2E_dthdth(int, int, double, double, double) const {
  return {0, 0, 0};
}
Vec3 PlaneFrontChart::d3E_dt3(double t, double, double) const { return {0, 0, h_.d3(t)}; }
Grid2 PlaneFrontChart::domain(int n1, int n2) const {
  Grid2 g;
  g.n1 = n1;
  g.n2 = n2;
  g.a1 = 0;
  g.b1 = L1_;
  g.a2 = 0;
  g.b2 = L2_;
  g.periodic1 = true;
  g.periodic2 = true;
  return g;
}

// ---------------------------------------------------------------- polynomial

PolynomialChart::PolynomialChart(std::vector<Term> terms, double orient, Grid2 box)
    : terms_(std::move(terms)), orient_(orient), box_(box) {}

Vec3 PolynomialChart::eval(int dt, int du, int dv, double t, double u, double v) const {
  Vec3 out{0, 0, 0};
  for (const auto& T : terms_) {
    if (T.k < dt || T.m < du || T.n < dv) continue;
    double fac = T.coeff;
    for (int j = 0; j < dt; ++j) fac *= (T.k - j);
    for (int j = 0; j < du; ++j) fac *= (T.m - j);
    for (int j = 0; j < dv; ++j) fac *= (T.n - j);
    out[T.comp] += fac * std::pow(t, T.k - dt) * std::pow(u, T.m - du) *
                   std::pow(v, T.n - dv);
  }
  return out;
}

Vec3 PolynomialChart::E(double t, double u, double v) const { return eval(0, 0, 0, t, u, v); }
Vec3 PolynomialChart::dE_dt(double t, double u, double v) const {
  return eval(1, 0, 0, t, u, v);
}
Vec3 PolynomialChart::dE_dth(int A, double t, double u, double v) const {
  return A == 1 ? eval(0, 1, 0, t, u, v) : eval(0, 0, 1, t, u, v);
}
Vec3 PolynomialChart::d2E_dt2(double t, double u, double v) const {
  return eval(2, 0, 0, t, u, v);
}
Vec3 PolynomialChart::d2E_dtdth(int A, double t, double u, double v) const {
  return A == 1 ? eval(1, 1, 0, t, u, v) : eval(1, 0, 1, t, u, v);
}
Vec3 PolynomialChart::d2E_dthdth(int A, int B, double t, double u, double v) const {
  int du = (A == 1) + (B == 1), dv = (A == 2) + (B == 2);
  return eval(0, du, dv, t, u, v);
}
Vec3 PolynomialChart::d3E_dt3(double t, double u, double v) const {
  return eval(3, 0, 0, t, u, v);
}
Grid2 PolynomialChart::domain(int n1, int n2) const {
  Grid2 g = box_;
  g.n1 = n1;
  g.n2 = n2;
  return g;
}

}  // namespace charcone
