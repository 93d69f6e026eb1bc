#ifndef CHARCONE_FREEDATA_HPP
#define CHARCONE_FREEDATA_HPP

#include <functional>
#include <string>
#include <vector>

#include "charcone/vec3.hpp"

namespace charcone {

// Scalar field on the cone chart, given analytically in (t, theta1, theta2)
// with first and second time derivatives. Tangential derivatives are taken
// spectrally on the grid, so none are required here.
class FreeDataField {
 public:
  // One term: amp * t^k * angular(theta1, theta2).
  struct Term {
    double amp = 0;
    int tpow = 0;
    // band: assoc Legendre P_l^m(cos th1) * {cos|sin}(m th2)
    // wave: cos(m1 w1 th1 + ph1) * cos(m2 w2 th2 + ph2)
    enum class Kind { Band, BandSin, Wave } kind = Kind::Band;
    int l = 0, m = 0;
    double w1 = 0, w2 = 0, ph1 = 0, ph2 = 0;
    int m1 = 0, m2 = 0;
  };

  FreeDataField() = default;
  explicit FreeDataField(std::vector<Term> terms) : terms_(std::move(terms)) {}
  static FreeDataField constant(double a);

  double value(double t, double th1, double th2) const { return eval(t, th1, th2, 0); }
  double dt(double t, double th1, double th2) const { return eval(t, th1, th2, 1); }
  double dtt(double t, double th1, double th2) const { return eval(t, th1, th2, 2); }

  bool is_zero() const { return terms_.empty(); }

 private:
  double eval(double t, double th1, double th2, int tderiv) const;
  std::vector<Term> terms_;
};

// The free data of the construction: entropy and the chart components of the
// tangential velocity.
struct FreeData {
  FreeDataField s;
  FreeDataField vslash[2];
};

// Corner data on S_{0,0}: the restriction of the ambient initial data plus
// the transversal jets the order-1 system needs. L-jets are optional and
// enable the k=1 compatibility check.
struct CornerData {
  std::function<double(double, double)> rho;
  std::function<Vec3(double, double)> v;
  std::function<double(double, double)> s;
  // first-order transversal data (defaults: distance-normalized foliation)
  std::function<double(double, double)> trho;    // That(rho)
  std::function<double(double, double)> kappa0;  // inverse foliation density
  bool has_trho = false;
  // optional L-jets for the k = 1 compatibility check
  std::function<double(double, double)> Ls;
  std::function<Vec3(double, double)> Lvslash;
  bool has_Ljets = false;

  static CornerData constants(double rho0, Vec3 v0, double s0);
};

}  // namespace charcone

#endif
