#ifndef CHARCONE_EOS_HPP
#define CHARCONE_EOS_HPP

#include <functional>
#include <memory>
#include <string>

#include "charcone/errors.hpp"

namespace charcone {

// Thermodynamic snapshot at one (rho, s). Potentials:
//   Phi0 = int c/rho drho,  Psi0 = int (1/rho) dc/ds drho - (1/(c rho)) dp/ds,
//   I1 = dPhi0/ds = int (1/rho) dc/ds drho,  I2 = dI1/ds.
struct Thermo {
  double rho = 0, s = 0;
  double p = 0, c = 0;
  double c_rho = 0, c_s = 0, c_rhorho = 0, c_rhos = 0, c_ss = 0;
  double p_s = 0, p_ss = 0, p_srho = 0;
  double Phi0 = 0, Psi0 = 0, I1 = 0, I2 = 0;
  // dPsi0/drho and dPsi0/ds assembled from the pieces above
  double Psi0_rho = 0, Psi0_s = 0;
};

// Equation of state p(rho, s) with analytic partials. All partials are
// supplied by the model; nothing is differenced numerically.
class EosModel {
 public:
  virtual ~EosModel() = default;

  virtual Thermo eval(double rho, double s) const = 0;

  // Inverts Phi0(rho, s) = phi at fixed s.
  virtual double rho_from_phi0(double phi, double s) const = 0;

  // Solves (-vT + c)(w, wbar, s) = V for w at fixed (wbar, s), where
  // vT = w - wbar and c is evaluated at rho(Phi0 = w + wbar, s).
  virtual double w_from_wbar(double wbar, double V, double s) const;

  virtual std::string describe() const = 0;
};

// Entropy factor A(s) for the polytropic law p = rho^gamma A(s) / gamma.
struct EntropyFactor {
  std::function<double(double)> A, A1, A2;  // A, A', A''
  std::string name;
  static EntropyFactor constant(double a);
  static EntropyFactor exponential();
  static EntropyFactor affine(double a, double b);
};

class PolytropicEos final : public EosModel {
 public:
  PolytropicEos(double gamma, EntropyFactor A);
  Thermo eval(double rho, double s) const override;
  double rho_from_phi0(double phi, double s) const override;
  double w_from_wbar(double wbar, double V, double s) const override;
  std::string describe() const override;
  double gamma() const { return gamma_; }

 private:
  double gamma_;
  EntropyFactor A_;
};

// User-supplied EOS: callable c(rho,s) and p(rho,s) with analytic partials.
// Potentials are integrated by adaptive quadrature from rho_ref.
class UserEos final : public EosModel {
 public:
  struct Callbacks {
    std::function<double(double, double)> p, c;
    std::function<double(double, double)> c_rho, c_s, c_rhorho, c_rhos, c_ss;
    std::function<double(double, double)> p_s, p_ss, p_srho;
  };
  UserEos(Callbacks cb, double rho_ref = 1.0, std::string name = "user");
  Thermo eval(double rho, double s) const override;
  double rho_from_phi0(double phi, double s) const override;
  std::string describe() const override { return name_; }

 private:
  Callbacks cb_;
  double rho_ref_;
  std::string name_;
};

// Riemann-invariant representation (w, wbar, tangential components, s).
struct RiemannState {
  double w = 0, wbar = 0;
  double vslash[2] = {0, 0};  // chart components, carried through unchanged
  double s = 0;
};

// wbar = (Phi0 - vT)/2, w = (Phi0 + vT)/2.
RiemannState riemann_from_state(const EosModel& eos, double rho, double vT,
                                const double vslash[2], double s);

struct PrimitiveState {
  double rho = 0, vT = 0;
  double vslash[2] = {0, 0};
  double s = 0;
};

PrimitiveState state_from_riemann(const EosModel& eos, const RiemannState& r);

// Residual of the closure: (-vT + c)(w, wbar, s) - V.
double speed_constraint_residual(const EosModel& eos, double w, double wbar,
                                 double s, double V);

// Adaptive quadrature (Simpson with local extrapolation), used for the
// potentials of user models.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-13);

}  // namespace charcone

#endif
