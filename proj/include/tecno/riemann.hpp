#pragma once

#include "tecno/physics.hpp"

namespace tecno::euler {

/// Exact solution of the 1D Riemann problem for an ideal gas, found by
/// Newton iteration on the pressure function.
class ExactRiemann {
 public:
  /// Throws std::domain_error when the data generates a vacuum.
  ExactRiemann(const Prim& left, const Prim& right, double gamma = kGamma);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }

  /// State on the ray x / t = s.
  Prim sample(double s) const;

 private:
  double f(double p, const Prim& w, double a) const;
  double df(double p, const Prim& w, double a) const;

  Prim l_, r_;
  double g_;
  double al_, ar_;
  double p_star_ = 0.0, u_star_ = 0.0;
};

}  // namespace tecno::euler
