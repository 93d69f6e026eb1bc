#include "charcone/eos.hpp"

#include <cmath>
#include <sstream>

namespace charcone {

namespace {

void fill_psi_partials(Thermo& t) {
  // Psi0 = I1 - p_s/(c rho)
  const double cr = t.c * t.rho;
  t.Psi0 = t.I1 - t.p_s / cr;
  t.Psi0_rho = t.c_s / t.rho + t.p_s * (t.c + t.rho * t.c_rho) / (cr * cr) -
               t.p_srho / cr;
  t.Psi0_s = t.I2 + t.c_s * t.p_s / (t.c * cr) - t.p_ss / cr;
}

double brent_newton(const std::function<double(double)>& f,
                    const std::function<double(double)>& df, double x0,
                    double lo, double hi, double tol, const char* what) {
  // safeguarded Newton inside a verified bracket
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (flo * fhi > 0) throw NoRoot(std::string(what) + ": bracket does not straddle a root");
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < 100; ++it) {
    double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (flo * fx < 0) {
      hi = x;
    } else {
      lo = x;
      flo = fx;
    }
    double d = df(x);
    double step = (d != 0) ? fx / d : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi) || d == 0) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < 1e-16 * std::max(1.0, std::abs(x)) ) {
      x = xn;
      if (std::abs(f(x)) <= tol) return x;
    }
    x = xn;
  }
  if (std::abs(f(x)) <= tol * 10) return x;
  throw NonConvergence(std::string(what) + ": root-find did not converge");
}

}  // namespace

EntropyFactor EntropyFactor::constant(double a) {
  EntropyFactor e;
  e.A = [a](double) { return a; };
  e.A1 = [](double) { return 0.0; };
  e.A2 = [](double) { return 0.0; };
  std::ostringstream os;
  os << "const(" << a << ")";
  e.name = os.str();
  return e;
}

EntropyFactor EntropyFactor::exponential() {
  EntropyFactor e;
  e.A = [](double s) { return std::exp(s); };
  e.A1 = [](double s) { return std::exp(s); };
  e.A2 = [](double s) { return std::exp(s); };
  e.name = "exp";
  return e;
}

EntropyFactor EntropyFactor::affine(double a, double b) {
  EntropyFactor e;
  e.A = [a, b](double s) { return a + b * s; };
  e.A1 = [b](double) { return b; };
  e.A2 = [](double) { return 0.0; };
  std::ostringstream os;
  os << "affine(" << a << "," << b << ")";
  e.name = os.str();
  return e;
}

PolytropicEos::PolytropicEos(double gamma, EntropyFactor A)
    : gamma_(gamma), A_(std::move(A)) {}

Thermo PolytropicEos::eval(double rho, double s) const {
  if (!(rho > 0)) throw NonPositiveDensity("polytropic eval: rho <= 0");
  const double g = gamma_;
  const double A = A_.A(s), A1 = A_.A1(s), A2 = A_.A2(s);
  const double c2 = std::pow(rho, g - 1.0) * A;
  if (!(c2 > 0)) throw NonPositiveSoundSpeed("polytropic eval: c^2 <= 0");
  Thermo t;
  t.rho = rho;
  t.s = s;
  t.c = std::sqrt(c2);
  t.p = std::pow(rho, g) * A / g;
  t.c_rho = 0.5 * (g - 1.0) * t.c / rho;
  t.c_rhorho = 0.25 * (g - 1.0) * (g - 3.0) * t.c / (rho * rho);
  t.c_s = 0.5 * t.c * A1 / A;
  t.c_rhos = 0.25 * (g - 1.0) * t.c * A1 / (rho * A);
  t.c_ss = t.c * (0.5 * A2 / A - 0.25 * A1 * A1 / (A * A));
  t.p_s = std::pow(rho, g) * A1 / g;
  t.p_ss = std::pow(rho, g) * A2 / g;
  t.p_srho = std::pow(rho, g - 1.0) * A1;
  t.Phi0 = 2.0 * t.c / (g - 1.0);
  t.I1 = t.c * A1 / ((g - 1.0) * A);
  t.I2 = t.Phi0 * (0.5 * A2 / A - 0.25 * A1 * A1 / (A * A));
  fill_psi_partials(t);
  return t;
}

double PolytropicEos::rho_from_phi0(double phi, double s) const {
  const double g = gamma_;
  const double c = 0.5 * (g - 1.0) * phi;
  if (!(c > 0)) throw OutOfRange("rho_from_phi0: Phi0 outside the model range (c <= 0)");
  const double A = A_.A(s);
  return std::pow(c * c / A, 1.0 / (g - 1.0));
}

double PolytropicEos::w_from_wbar(double wbar, double V, double s) const {
  (void)s;
  const double g = gamma_;
  // (gamma-3)/2 w + (gamma+1)/2 wbar = V, linear in w for gamma != 3
  return (2.0 * V - (g + 1.0) * wbar) / (g - 3.0);
}

std::string PolytropicEos::describe() const {
  std::ostringstream os;
  os << "polytropic(gamma=" << gamma_ << ", A=" << A_.name << ")";
  return os.str();
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  // adaptive Simpson with Richardson acceptance
  struct Rec {
    static double simpson(double a, double fa, double b, double fb, double fm) {
      return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }
    static double go(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = simpson(a, fa, m, fm, flm);
      double right = simpson(m, fm, b, fb, frm);
      double err = left + right - whole;
      if (depth <= 0 || std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
      return go(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
             go(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    }
  };
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = Rec::simpson(a, fa, b, fb, fm);
  return Rec::go(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

UserEos::UserEos(Callbacks cb, double rho_ref, std::string name)
    : cb_(std::move(cb)), rho_ref_(rho_ref), name_(std::move(name)) {}

Thermo UserEos::eval(double rho, double s) const {
  if (!(rho > 0)) throw NonPositiveDensity("user eval: rho <= 0");
  Thermo t;
  t.rho = rho;
  t.s = s;
  t.p = cb_.p(rho, s);
  t.c = cb_.c(rho, s);
  if (!(t.c > 0)) throw NonPositiveSoundSpeed("user eval: c <= 0");
  t.c_rho = cb_.c_rho(rho, s);
  t.c_s = cb_.c_s(rho, s);
  t.c_rhorho = cb_.c_rhorho(rho, s);
  t.c_rhos = cb_.c_rhos(rho, s);
  t.c_ss = cb_.c_ss(rho, s);
  t.p_s = cb_.p_s(rho, s);
  t.p_ss = cb_.p_ss(rho, s);
  t.p_srho = cb_.p_srho(rho, s);
  t.Phi0 = integrate_adaptive([&](double r) { return cb_.c(r, s) / r; }, rho_ref_, rho);
  t.I1 = integrate_adaptive([&](double r) { return cb_.c_s(r, s) / r; }, rho_ref_, rho);
  t.I2 = integrate_adaptive([&](double r) { return cb_.c_ss(r, s) / r; }, rho_ref_, rho);
  fill_psi_partials(t);
  return t;
}

double UserEos::rho_from_phi0(double phi, double s) const {
  auto F = [&](double r) {
    return integrate_adaptive([&](double x) { return cb_.c(x, s) / x; }, rho_ref_, r) - phi;
  };
  auto dF = [&](double r) { return cb_.c(r, s) / r; };
  // expand a bracket geometrically around rho_ref
  double lo = rho_ref_, hi = rho_ref_;
  double Fref = F(rho_ref_);
  if (Fref == 0) return rho_ref_;
  if (Fref < 0) {
    for (int it = 0; it < 200 && F(hi) < 0; ++it) hi *= 2.0;
    if (F(hi) < 0) throw OutOfRange("rho_from_phi0: no density matches Phi0 (upper)");
    lo = hi / 2.0;
  } else {
    for (int it = 0; it < 200 && F(lo) > 0; ++it) lo *= 0.5;
    if (F(lo) > 0) throw OutOfRange("rho_from_phi0: no density matches Phi0 (lower)");
    hi = lo * 2.0;
  }
  return brent_newton(F, dF, 0.5 * (lo + hi), lo, hi, 1e-13 * std::max(1.0, std::abs(phi)),
                      "rho_from_phi0");
}

double EosModel::w_from_wbar(double wbar, double V, double s) const {
  // Newton on F(w) = c(rho(w+wbar, s), s) - (w - wbar) - V.  F' = beta - 1,
  // beta = rho c_rho / c; strict monotonicity near the root is required.
  auto eval_at = [&](double w) {
    double rho = rho_from_phi0(w + wbar, s);
    Thermo t = eval(rho, s);
    return std::pair<double, double>(t.c - (w - wbar) - V,
                                     t.rho * t.c_rho / t.c - 1.0);
  };
  double w = wbar;  // symmetric initial guess
  double tol = 1e-12 * std::max(1.0, std::abs(V));
  double f0, d0;
  std::tie(f0, d0) = eval_at(w);
  double w_prev = w, f_prev = f0;
  for (int it = 0; it < 80; ++it) {
    if (std::abs(f0) <= tol) return w;
    if (d0 == 0) throw NonMonotone("w_from_wbar: stationary constraint derivative");
    double wn = w - f0 / d0;
    double fn, dn;
    std::tie(fn, dn) = eval_at(wn);
    if (d0 * dn < 0)
      throw NonMonotone("w_from_wbar: constraint derivative changes sign");
    w_prev = w;
    f_prev = f0;
    w = wn;
    f0 = fn;
    d0 = dn;
    (void)w_prev;
    (void)f_prev;
  }
  if (std::abs(f0) <= 10 * tol) return w;
  throw NonConvergence("w_from_wbar: Newton did not converge");
}

RiemannState riemann_from_state(const EosModel& eos, double rho, double vT,
                                const double vslash[2], double s) {
  Thermo t = eos.eval(rho, s);
  RiemannState r;
  r.wbar = 0.5 * (t.Phi0 - vT);
  r.w = 0.5 * (t.Phi0 + vT);
  r.vslash[0] = vslash[0];
  r.vslash[1] = vslash[1];
  r.s = s;
  return r;
}

PrimitiveState state_from_riemann(const EosModel& eos, const RiemannState& r) {
  PrimitiveState p;
  p.rho = eos.rho_from_phi0(r.w + r.wbar, r.s);
  p.vT = r.w - r.wbar;
  p.vslash[0] = r.vslash[0];
  p.vslash[1] = r.vslash[1];
  p.s = r.s;
  return p;
}

double speed_constraint_residual(const EosModel& eos, double w, double wbar,
                                 double s, double V) {
  double rho = eos.rho_from_phi0(w + wbar, s);
  Thermo t = eos.eval(rho, s);
  return (-(w - wbar) + t.c) - V;
}

}  // namespace charcone
