#ifndef CHARCONE_CHART_HPP
#define CHARCONE_CHART_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "charcone/grid.hpp"
#include "charcone/vec3.hpp"

namespace charcone {

// Smooth scalar function of t with derivatives up to third order.
struct ScalarFn {
  std::function<double(double)> f, d1, d2, d3;
  static ScalarFn constant(double a);
  static ScalarFn poly(std::vector<double> coeffs);  // sum c_k t^k
};

// Embedded cone chart E(t, theta1, theta2) -> R^3 describing the surfaces
// S_{t,0}. Analytic partials are required up to total order 2, plus the pure
// time partial d^3E/dt^3 consumed by the first-order jet equations.
class ConeChart {
 public:
  virtual ~ConeChart() = default;

  virtual Vec3 E(double t, double u, double v) const = 0;
  virtual Vec3 dE_dt(double t, double u, double v) const = 0;
  virtual Vec3 dE_dth(int A, double t, double u, double v) const = 0;
  virtual Vec3 d2E_dt2(double t, double u, double v) const = 0;
  virtual Vec3 d2E_dtdth(int A, double t, double u, double v) const = 0;
  virtual Vec3 d2E_dthdth(int A, int B, double t, double u, double v) const = 0;
  virtual Vec3 d3E_dt3(double t, double u, double v) const = 0;

  // Sign fixing the inward normal: That = orient * (X1 x X2)/|X1 x X2|.
  virtual double orient() const = 0;

  // Natural parameter rectangle and periodicity flags.
  virtual Grid2 domain(int n1, int n2) const = 0;

  virtual std::string describe() const = 0;
};

// Common machinery for charts of the form E = R(t) * shape(theta).
class RadialChartBase : public ConeChart {
 public:
  RadialChartBase(Vec3 axes, double th1_min, double th1_max);
  Vec3 E(double t, double u, double v) const override;
  Vec3 dE_dt(double t, double u, double v) const override;
  Vec3 dE_dth(int A, double t, double u, double v) const override;
  Vec3 d2E_dt2(double t, double u, double v) const override;
  Vec3 d2E_dtdth(int A, double t, double u, double v) const override;
  Vec3 d2E_dthdth(int A, int B, double t, double u, double v) const override;
  Vec3 d3E_dt3(double t, double u, double v) const override;
  double orient() const override { return -1.0; }  // inward points to the origin
  Grid2 domain(int n1, int n2) const override;

 protected:
  virtual double R(double t, int deriv) const = 0;

 private:
  Vec3 shape(double u, double v, int du, int dv) const;
  Vec3 axes_;
  double th1_min_, th1_max_;
};

// S_{t,0} = sphere of radius R(t); band in the polar angle to stay clear of
// the poles, periodic in the azimuth.
class ExpandingSphereChart final : public RadialChartBase {
 public:
  ExpandingSphereChart(ScalarFn radius, double th1_min = 1.0, double th1_max = 2.0);
  std::string describe() const override { return "expanding_sphere"; }

 protected:
  double R(double t, int deriv) const override;

 private:
  ScalarFn R_;
};

// S_{t,0} = R(t) * (a sin cos, b sin sin, c cos).
class EllipsoidChart final : public RadialChartBase {
 public:
  EllipsoidChart(double a, double b, double c, ScalarFn rate, double th1_min = 1.0,
                 double th1_max = 2.0);
  std::string describe() const override { return "ellipsoid"; }

 protected:
  double R(double t, int deriv) const override;

 private:
  ScalarFn R_;
};

// Sphere whose radius interpolates sampled knot data (value plus first three
// derivatives per uniform knot). Evaluation points that land on knots read
// the knot data directly; interior points use the quintic Hermite segment.
class RadialSplineChart final : public RadialChartBase {
 public:
  struct Knots {
    double t0 = 0, dt = 0;
    std::vector<double> r, r1, r2, r3;
  };
  explicit RadialSplineChart(Knots knots, double th1_min = 1.0, double th1_max = 2.0);
  std::string describe() const override { return "radial_spline"; }
  double radius(double t) const { return R(t, 0); }

 protected:
  double R(double t, int deriv) const override;

 private:
  Knots k_;
};

// S_{t,0} = plane x3 = h(t), doubly periodic chart.
class PlaneFrontChart final : public ConeChart {
 public:
  PlaneFrontChart(ScalarFn height, double L1 = 1.0, double L2 = 1.0);
  Vec3 E(double t, double u, double v) const override;
  Vec3 dE_dt(double t, double u, double v) const override;
  Vec3 dE_dth(int A, double t, double u, double v) const override;
  Vec3 d2E_dt2(double t, double u, double v) const override;
  Vec3 d2E_dtdth(int A, double t, double u, double v) const override;
  Vec3 d2E_dthdth(int A, int B, double t, double u, double v) const override;
  Vec3 d3E_dt3(double t, double u, double v) const override;
  double orient() const override { return -1.0; }  // inward = -e3
  Grid2 domain(int n1, int n2) const override;
  std::string describe() const override { return "plane_front"; }

 private:
  ScalarFn h_;
  double L1_, L2_;
};

// E^i = sum C^i_{kmn} t^k u^m v^n on a non-periodic rectangle.
class PolynomialChart final : public ConeChart {
 public:
  struct Term {
    int comp, k, m, n;
    double coeff;
  };
  PolynomialChart(std::vector<Term> terms, double orient, Grid2 box);
  Vec3 E(double t, double u, double v) const override;
  Vec3 dE_dt(double t, double u, double v) const override;
  Vec3 dE_dth(int A, double t, double u, double v) const override;
  Vec3 d2E_dt2(double t, double u, double v) const override;
  Vec3 d2E_dtdth(int A, double t, double u, double v) const override;
  Vec3 d2E_dthdth(int A, int B, double t, double u, double v) const override;
  Vec3 d3E_dt3(double t, double u, double v) const override;
  double orient() const override { return orient_; }
  Grid2 domain(int n1, int n2) const override;
  std::string describe() const override { return "polynomial"; }

 private:
  Vec3 eval(int dt, int du, int dv, double t, double u, double v) const;
  std::vector<Term> terms_;
  double orient_;
  Grid2 box_;
};

}  // namespace charcone

#endif
