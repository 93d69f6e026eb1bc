#include "charcone/freedata.hpp"

#include <cmath>

namespace charcone {

FreeDataField FreeDataField::constant(double a) {
  if (a == 0.0) return FreeDataField();
  Term t;
  t.amp = a;
  t.tpow = 0;
  t.kind = Term::Kind::Band;
  t.l = 0;
  t.m = 0;
  return FreeDataField({t});
}

double FreeDataField::eval(double t, double th1, double th2, int tderiv) const {
  double acc = 0.0;
  for (const Term& T : terms_) {
    double tf;
    int k = T.tpow;
    if (tderiv == 0) {
      tf = std::pow(t, k);
    } else if (tderiv == 1) {
      tf = (k >= 1) ? k * std::pow(t, k - 1) : 0.0;
    } else {
      tf = (k >= 2) ? k * (k - 1) * std::pow(t, k - 2) : 0.0;
    }
    if (tf == 0.0) continue;
    double ang = 0.0;
    switch (T.kind) {
      case Term::Kind::Band:
        ang = std::assoc_legendre(T.l, T.m, std::cos(th1)) * std::cos(T.m * th2);
        break;
      case Term::Kind::BandSin:
        ang = std::assoc_legendre(T.l, T.m, std::cos(th1)) * std::sin(T.m * th2);
        break;
      case Term::Kind::Wave:
        ang = std::cos(T.m1 * T.w1 * th1 + T.ph1) * std::cos(T.m2 * T.w2 * th2 + T.ph2);
        break;
    }
    acc += T.amp * tf * ang;
  }
  return acc;
}

CornerData CornerData::constants(double rho0, Vec3 v0, double s0) {
  CornerData c;
  c.rho = [rho0](double, double) { return rho0; };
  c.v = [v0](double, double) { return v0; };
  c.s = [s0](double, double) { return s0; };
  c.trho = [](double, double) { return 0.0; };
  c.kappa0 = [](double, double) { return 1.0; };
  c.has_trho = true;
  c.Ls = [](double, double) { return 0.0; };
  c.Lvslash = [](double, double) { return Vec3{0, 0, 0}; };
  return c;
}

}  // namespace charcone
