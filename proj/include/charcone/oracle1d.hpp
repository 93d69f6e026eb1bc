#ifndef CHARCONE_ORACLE1D_HPP
#define CHARCONE_ORACLE1D_HPP

#include <vector>

#include "charcone/chart.hpp"
#include "charcone/errors.hpp"

namespace charcone {

// Spherically symmetric barotropic flow on a characteristic mesh. Riemann
// invariants R+ = (Phi0 + v)/2 and R- = (Phi0 - v)/2 (v = outward radial
// velocity) obey, along the outgoing/ingoing characteristics respectively,
//   dR+/dt = -(c/r)(R+ - R-),  dr/dt = v + c   (outgoing),
//   dR-/dt = -(c/r)(R+ - R-),  dr/dt = v - c   (ingoing).
// Mesh nodes are intersections of the two families; the node time t is part
// of the cell solve since the two t-parametrizations do not commute. Labels:
// ubar = t along the cone row (u = 0), u = t along the corner ingoing curve
// (ubar = 0). Free data: R- along the cone row, R+ along the corner column.
// Rows above the cone (u < 0) extend the solution to the exterior side so
// centered transversal differences across the cone exist.
class SphericalLattice {
 public:
  struct Data {
    double gamma = 2.0;     // polytropic exponent, A == 1
    ScalarFn Rm_cone;       // R-(t) along the cone row (t may be negative)
    ScalarFn Rp_col;        // R+(u) along the corner column
    double r_corner = 1.0;  // r at the corner (u = ubar = 0)
  };

  // pad_ext rows above the cone, pad_int below; pad_back backward steps in
  // ubar and nT forward steps, all with label spacing h.
  SphericalLattice(Data data, int pad_ext, int pad_int, int pad_back, int nT,
                   double h);

  double h() const { return h_; }
  int nT() const { return nT_; }
  double gamma() const { return data_.gamma; }

  double sound_speed(double Rp, double Rm) const;
  double rho_of(double Rp, double Rm) const;

  // cone-row readouts at t = j h, j in [0, nT]
  double cone_r(int j) const { return r_[idx(i0_, j0_ + j)]; }
  double cone_Rp(int j) const { return Rp_[idx(i0_, j0_ + j)]; }
  double cone_Rm(int j) const { return Rm_[idx(i0_, j0_ + j)]; }
  double cone_v(int j) const { return cone_Rp(j) - cone_Rm(j); }
  double cone_c(int j) const { return sound_speed(cone_Rp(j), cone_Rm(j)); }

  // interpolated state on the slice Sigma_t at radius r
  struct PointState {
    double Rp = 0, Rm = 0, rho = 0, v = 0, c = 0;
  };
  PointState sample(double t, double r) const;

  // centered transversal difference across the cone: inward normal points to
  // decreasing r, so That(q) ~ [q(r-off) - q(r+off)] / (2 off).
  enum class Quantity { Rho, VRadial, SoundSpeed };
  double fd_jet(Quantity q, double t, double off) const;
  double fd_jet_richardson(Quantity q, double t, double off) const;

  // -d(rho)/dr on the cone at t = j h (mesh-scaled Richardson differences)
  double cone_trho(int j) const;

  // spline knots of the cone radius (uniform in t along the cone row)
  RadialSplineChart::Knots cone_knots() const;

 private:
  int idx(int i, int j) const { return i * nubar_ + j; }
  double q_of(Quantity q, double Rp, double Rm) const;
  void check(double c, double r) const;

  Data data_;
  double h_ = 0;
  int nu_ = 0, nubar_ = 0, i0_ = 0, j0_ = 0, nT_ = 0;
  std::vector<double> Rp_, Rm_, r_, t_;
};

// Self-contained integration of the cone row alone: given the free function
// R-(t) along the cone, advances (R+, r) with classical RK4. Used as the
// high-accuracy geometry source for matched 3D runs.
struct ConeRowSolution {
  double h = 0;
  std::vector<double> Rp, r;       // at t = j h
  std::vector<double> r1, r2, r3;  // dr/dt and higher, analytic chain
};
ConeRowSolution integrate_cone_row(double gamma, const ScalarFn& Rm_of_t,
                                   double Rp0, double r0, double T, int steps);

}  // namespace charcone

#endif
