#include "charcone/oracle1d.hpp"

#include <algorithm>
#include <cmath>

namespace charcone {

namespace {

// transport rate shared by both invariants
inline double g_rate(double c, double r, double v) { return -(c / r) * v; }

}  // namespace

void SphericalLattice::check(double c, double r) const {
  if (!(c > 0)) throw NonPositiveSoundSpeed("spherical lattice: c <= 0");
  if (!(r > 0)) throw RadiusCollapse("spherical lattice: r <= 0");
}

double SphericalLattice::sound_speed(double Rp, double Rm) const {
  return 0.5 * (data_.gamma - 1.0) * (Rp + Rm);
}

double SphericalLattice::rho_of(double Rp, double Rm) const {
  double c = sound_speed(Rp, Rm);
  return std::pow(c * c, 1.0 / (data_.gamma - 1.0));
}

SphericalLattice::SphericalLattice(Data data, int pad_ext, int pad_int,
                                   int pad_back, int nT, double h)
    : data_(std::move(data)), h_(h), nT_(nT) {
  nu_ = pad_ext + 1 + pad_int;
  nubar_ = pad_back + 1 + nT;
  i0_ = pad_ext;
  j0_ = pad_back;
  const int N = nu_ * nubar_;
  Rp_.assign(N, 0.0);
  Rm_.assign(N, 0.0);
  r_.assign(N, 0.0);
  t_.assign(N, 0.0);

  auto cs = [&](double Rp, double Rm) { return sound_speed(Rp, Rm); };

  // --- cone row: t = (j - j0) h exactly, R- is data, (R+, r) by trapezoid
  {
    int k0 = idx(i0_, j0_);
    Rp_[k0] = data_.Rp_col.f(0.0);
    Rm_[k0] = data_.Rm_cone.f(0.0);
    r_[k0] = data_.r_corner;
    t_[k0] = 0.0;
    for (int dir : {+1, -1}) {
      for (int j = j0_; j + dir >= 0 && j + dir < nubar_; j += dir) {
        double dt = dir * h_;
        double t1 = t_[idx(i0_, j)] + dt;
        double Rp0 = Rp_[idx(i0_, j)], Rm0 = Rm_[idx(i0_, j)], r0 = r_[idx(i0_, j)];
        double c0 = cs(Rp0, Rm0);
        check(c0, r0);
        double f0 = g_rate(c0, r0, Rp0 - Rm0);
        double s0 = (Rp0 - Rm0) + c0;
        double Rp1 = Rp0 + dt * f0;
        double Rm1 = data_.Rm_cone.f(t1);
        double r1 = r0 + dt * s0;
        for (int it = 0; it < 4; ++it) {
          double c1 = cs(Rp1, Rm1);
          check(c1, r1);
          double f1 = g_rate(c1, r1, Rp1 - Rm1);
          double s1 = (Rp1 - Rm1) + c1;
          Rp1 = Rp0 + 0.5 * dt * (f0 + f1);
          r1 = r0 + 0.5 * dt * (s0 + s1);
        }
        int k1 = idx(i0_, j + dir);
        Rp_[k1] = Rp1;
        Rm_[k1] = Rm1;
        r_[k1] = r1;
        t_[k1] = t1;
      }
    }
  }

  // --- corner column: t = (i - i0) h exactly, R+ is data, (R-, r) along the
  // ingoing curve
  for (int dir : {+1, -1}) {
    for (int i = i0_; i + dir >= 0 && i + dir < nu_; i += dir) {
      double dt = dir * h_;
      double t1 = t_[idx(i, j0_)] + dt;
      double Rp0 = Rp_[idx(i, j0_)], Rm0 = Rm_[idx(i, j0_)], r0 = r_[idx(i, j0_)];
      double c0 = cs(Rp0, Rm0);
      check(c0, r0);
      double f0 = g_rate(c0, r0, Rp0 - Rm0);
      double s0 = (Rp0 - Rm0) - c0;
      double Rp1 = data_.Rp_col.f(t1);
      double Rm1 = Rm0 + dt * f0;
      double r1 = r0 + dt * s0;
      for (int it = 0; it < 4; ++it) {
        double c1 = cs(Rp1, Rm1);
        check(c1, r1);
        double f1 = g_rate(c1, r1, Rp1 - Rm1);
        double s1 = (Rp1 - Rm1) - c1;
        Rm1 = Rm0 + 0.5 * dt * (f0 + f1);
        r1 = r0 + 0.5 * dt * (s0 + s1);
      }
      int k1 = idx(i + dir, j0_);
      Rp_[k1] = Rp1;
      Rm_[k1] = Rm1;
      r_[k1] = r1;
      t_[k1] = t1;
    }
  }

  // --- wings: interior rows (i > i0) use the inner neighbor (i-1, j), the
  // exterior rows (i < i0) the neighbor (i+1, j); node time is solved from
  // the crossing of the two characteristic segments
  auto solve_cell = [&](int i, int j, int iv, int jdir) {
    // A = (i, j - jdir): along the same outgoing curve
    // B = (iv, j): along the same ingoing curve
    const int kA = idx(i, j - jdir), kB = idx(iv, j), kN = idx(i, j);
    double tA = t_[kA], rA = r_[kA], RpA = Rp_[kA], RmA = Rm_[kA];
    double tB = t_[kB], rB = r_[kB], RpB = Rp_[kB], RmB = Rm_[kB];
    double cA = cs(RpA, RmA), cB = cs(RpB, RmB);
    check(cA, rA);
    check(cB, rB);
    double gA = g_rate(cA, rA, RpA - RmA), gB = g_rate(cB, rB, RpB - RmB);
    double soA = (RpA - RmA) + cA;  // outgoing slope at A
    double siB = (RpB - RmB) - cB;  // ingoing slope at B
    // initial guess from frozen slopes
    double so = soA, si = siB, gN = gA;
    double tN = 0, rN = 0, RpN = RpA, RmN = RmB;
    for (int it = 0; it < 5; ++it) {
      double so_avg = 0.5 * (soA + so);
      double si_avg = 0.5 * (siB + si);
      tN = (rB - rA + so_avg * tA - si_avg * tB) / (so_avg - si_avg);
      rN = rA + so_avg * (tN - tA);
      RpN = RpA + 0.5 * (gA + gN) * (tN - tA);
      RmN = RmB + 0.5 * (gB + gN) * (tN - tB);
      double cN = cs(RpN, RmN);
      check(cN, rN);
      gN = g_rate(cN, rN, RpN - RmN);
      so = (RpN - RmN) + cN;
      si = (RpN - RmN) - cN;
    }
    Rp_[kN] = RpN;
    Rm_[kN] = RmN;
    r_[kN] = rN;
    t_[kN] = tN;
  };

  for (int i = i0_ + 1; i < nu_; ++i) {
    for (int j = j0_ + 1; j < nubar_; ++j) solve_cell(i, j, i - 1, +1);
    for (int j = j0_ - 1; j >= 0; --j) solve_cell(i, j, i - 1, -1);
  }
  for (int i = i0_ - 1; i >= 0; --i) {
    for (int j = j0_ + 1; j < nubar_; ++j) solve_cell(i, j, i + 1, +1);
    for (int j = j0_ - 1; j >= 0; --j) solve_cell(i, j, i + 1, -1);
  }
}

SphericalLattice::PointState SphericalLattice::sample(double t, double r_target) const {
  // stage 1: per outgoing row, interpolate to time t (t is monotone in j)
  std::vector<double> rr, pp, mm;
  rr.reserve(nu_);
  pp.reserve(nu_);
  mm.reserve(nu_);
  for (int i = 0; i < nu_; ++i) {
    // bracket t in the row
    if (t_[idx(i, 0)] > t || t_[idx(i, nubar_ - 1)] < t) continue;
    int lo = 0, hi = nubar_ - 1;
    while (hi - lo > 1) {
      int m = (lo + hi) / 2;
      if (t_[idx(i, m)] <= t)
        lo = m;
      else
        hi = m;
    }
    int first = std::clamp(lo - 1, 0, nubar_ - 4);
    double ts[4], rs[4], ps[4], ms[4];
    for (int m = 0; m < 4; ++m) {
      int k = idx(i, first + m);
      ts[m] = t_[k];
      rs[m] = r_[k];
      ps[m] = Rp_[k];
      ms[m] = Rm_[k];
    }
    auto lag = [&](const double y[4]) {
      double acc = 0;
      for (int a = 0; a < 4; ++a) {
        double w = y[a];
        for (int b = 0; b < 4; ++b)
          if (b != a) w *= (t - ts[b]) / (ts[a] - ts[b]);
        acc += w;
      }
      return acc;
    };
    rr.push_back(lag(rs));
    pp.push_back(lag(ps));
    mm.push_back(lag(ms));
  }
  if (rr.size() < 4) throw OutOfRange("lattice sample: time outside the covered wedge");
  // stage 2: interpolate across rows in r (r decreases with the row index)
  int n = static_cast<int>(rr.size());
  if (!(r_target <= rr.front() && r_target >= rr.back()))
    throw OutOfRange("lattice sample: radius outside the covered wedge");
  int a = 0, b = n - 1;
  while (b - a > 1) {
    int m = (a + b) / 2;
    if (rr[m] >= r_target)
      a = m;
    else
      b = m;
  }
  int first = std::clamp(a - 1, 0, n - 4);
  auto lag_r = [&](const std::vector<double>& y) {
    double acc = 0;
    for (int m = 0; m < 4; ++m) {
      double w = y[first + m];
      for (int l = 0; l < 4; ++l)
        if (l != m) w *= (r_target - rr[first + l]) / (rr[first + m] - rr[first + l]);
      acc += w;
    }
    return acc;
  };
  PointState p;
  p.Rp = lag_r(pp);
  p.Rm = lag_r(mm);
  p.rho = rho_of(p.Rp, p.Rm);
  p.v = p.Rp - p.Rm;
  p.c = sound_speed(p.Rp, p.Rm);
  return p;
}

double SphericalLattice::q_of(Quantity q, double Rp, double Rm) const {
  switch (q) {
    case Quantity::Rho: return rho_of(Rp, Rm);
    case Quantity::VRadial: return Rp - Rm;
    default: return sound_speed(Rp, Rm);
  }
}

double SphericalLattice::fd_jet(Quantity q, double t, double off) const {
  int j = static_cast<int>(std::lround(t / h_));
  double rc = cone_r(j);
  PointState in = sample(t, rc - off);
  PointState out = sample(t, rc + off);
  return (q_of(q, in.Rp, in.Rm) - q_of(q, out.Rp, out.Rm)) / (2.0 * off);
}

double SphericalLattice::fd_jet_richardson(Quantity q, double t, double off) const {
  double d1 = fd_jet(q, t, off);
  double d2 = fd_jet(q, t, 0.5 * off);
  return (4.0 * d2 - d1) / 3.0;
}

double SphericalLattice::cone_trho(int j) const {
  double off = 48.0 * h_ * cone_c(j);
  return fd_jet_richardson(Quantity::Rho, j * h_, off);
}

RadialSplineChart::Knots SphericalLattice::cone_knots() const {
  RadialSplineChart::Knots K;
  K.t0 = 0.0;
  K.dt = h_;
  const int n = nT_ + 1;
  K.r.resize(n);
  K.r1.resize(n);
  K.r2.resize(n);
  K.r3.resize(n);
  for (int j = 0; j < n; ++j) {
    K.r[j] = cone_r(j);
    K.r1[j] = cone_v(j) + cone_c(j);
  }
  auto d1 = [&](const std::vector<double>& y, int j) {
    if (j >= 2 && j + 2 < n)
      return (-y[j + 2] + 8 * y[j + 1] - 8 * y[j - 1] + y[j - 2]) / (12 * h_);
    int sgn = (j < 2) ? 1 : -1;
    return sgn * (-3 * y[j] + 4 * y[j + sgn] - y[j + 2 * sgn]) / (2 * h_);
  };
  for (int j = 0; j < n; ++j) K.r2[j] = d1(K.r1, j);
  for (int j = 0; j < n; ++j) K.r3[j] = d1(K.r2, j);
  return K;
}

ConeRowSolution integrate_cone_row(double gamma, const ScalarFn& Rm_of_t,
                                   double Rp0, double r0, double T, int steps) {
  ConeRowSolution sol;
  sol.h = T / steps;
  sol.Rp.resize(steps + 1);
  sol.r.resize(steps + 1);
  sol.r1.resize(steps + 1);
  sol.r2.resize(steps + 1);
  sol.r3.resize(steps + 1);
  const double cg = 0.5 * (gamma - 1.0);

  auto rhs = [&](double t, double Rp, double r, double* fRp, double* fr) {
    double Rm = Rm_of_t.f(t);
    double c = cg * (Rp + Rm);
    if (!(c > 0)) throw NonPositiveSoundSpeed("cone row: c <= 0");
    if (!(r > 0)) throw RadiusCollapse("cone row: r <= 0");
    *fRp = -(c / r) * (Rp - Rm);
    *fr = (Rp - Rm) + c;
  };
  auto fill_derivs = [&](int j, double t, double Rp, double r) {
    double fRp, fr;
    rhs(t, Rp, r, &fRp, &fr);
    double Rm = Rm_of_t.f(t), Rm1 = Rm_of_t.d1(t), Rm2 = Rm_of_t.d2(t);
    double c = cg * (Rp + Rm);
    double v = Rp - Rm;
    sol.Rp[j] = Rp;
    sol.r[j] = r;
    sol.r1[j] = fr;
    double dRp = fRp;
    sol.r2[j] = (1 + cg) * dRp + (cg - 1) * Rm1;
    double dc = cg * (dRp + Rm1);
    double dv = dRp - Rm1;
    double ddRp = -(dc / r) * v + (c / (r * r)) * fr * v - (c / r) * dv;
    sol.r3[j] = (1 + cg) * ddRp + (cg - 1) * Rm2;
  };

  double Rp = Rp0, r = r0;
  fill_derivs(0, 0.0, Rp, r);
  for (int j = 0; j < steps; ++j) {
    double t = j * sol.h, dt = sol.h;
    double k1p, k1r, k2p, k2r, k3p, k3r, k4p, k4r;
    rhs(t, Rp, r, &k1p, &k1r);
    rhs(t + 0.5 * dt, Rp + 0.5 * dt * k1p, r + 0.5 * dt * k1r, &k2p, &k2r);
    rhs(t + 0.5 * dt, Rp + 0.5 * dt * k2p, r + 0.5 * dt * k2r, &k3p, &k3r);
    rhs(t + dt, Rp + dt * k3p, r + dt * k3r, &k4p, &k4r);
    Rp += dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    r += dt / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
    fill_derivs(j + 1, t + dt, Rp, r);
  }
  return sol;
}

}  // namespace charcone
