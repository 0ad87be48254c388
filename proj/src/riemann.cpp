#include "tecno/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tecno::euler {

ExactRiemann::ExactRiemann(const Prim& left, const Prim& right, double gamma)
    : l_(left), r_(right), g_(gamma) {
  al_ = std::sqrt(g_ * l_.p / l_.rho);
  ar_ = std::sqrt(g_ * r_.p / r_.rho);
  const double du = r_.u - l_.u;
  if (2.0 * (al_ + ar_) / (g_ - 1.0) <= du) {
    throw std::domain_error("Riemann data generates a vacuum");
  }
  // Two-rarefaction guess, then Newton.
  const double z = (g_ - 1.0) / (2.0 * g_);
  double p = std::pow((al_ + ar_ - 0.5 * (g_ - 1.0) * du) /
                          (al_ / std::pow(l_.p, z) + ar_ / std::pow(r_.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);
  for (int it = 0; it < 100; ++it) {
    const double fp = f(p, l_, al_) + f(p, r_, ar_) + du;
    const double next = std::max(p - fp / (df(p, l_, al_) + df(p, r_, ar_)), 1e-14);
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  p_star_ = p;
  u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (f(p, r_, ar_) - f(p, l_, al_));
}

double ExactRiemann::f(double p, const Prim& w, double a) const {
  if (p > w.p) {
    const double A = 2.0 / ((g_ + 1.0) * w.rho);
    const double B = (g_ - 1.0) / (g_ + 1.0) * w.p;
    return (p - w.p) * std::sqrt(A / (p + B));
  }
  return 2.0 * a / (g_ - 1.0) * (std::pow(p / w.p, (g_ - 1.0) / (2.0 * g_)) - 1.0);
}

double ExactRiemann::df(double p, const Prim& w, double a) const {
  if (p > w.p) {
    const double A = 2.0 / ((g_ + 1.0) * w.rho);
    const double B = (g_ - 1.0) / (g_ + 1.0) * w.p;
    return std::sqrt(A / (p + B)) * (1.0 - 0.5 * (p - w.p) / (p + B));
  }
  return std::pow(p / w.p, -(g_ + 1.0) / (2.0 * g_)) / (w.rho * a);
}

Prim ExactRiemann::sample(double s) const {
  const double gm = (g_ - 1.0) / (g_ + 1.0);
  const double ps = p_star_, us = u_star_;
  // Mirror the right side onto the left-side formulas.
  const bool left_side = s <= us;
  const Prim& w = left_side ? l_ : r_;
  const double a = left_side ? al_ : ar_;
  const double sign = left_side ? 1.0 : -1.0;
  const double u = sign * w.u;
  const double x = sign * s;
  const double ustar = sign * us;
  Prim out;
  if (ps > w.p) {
    const double shock = u - a * std::sqrt((g_ + 1.0) / (2.0 * g_) * ps / w.p +
                                           (g_ - 1.0) / (2.0 * g_));
    if (x <= shock) {
      out = w;
    } else {
      out = {w.rho * (ps / w.p + gm) / (gm * ps / w.p + 1.0), us, w.v, ps};
    }
  } else {
    const double head = u - a;
    const double a_star = a * std::pow(ps / w.p, (g_ - 1.0) / (2.0 * g_));
    const double tail = ustar - a_star;
    if (x <= head) {
      out = w;
    } else if (x >= tail) {
      out = {w.rho * std::pow(ps / w.p, 1.0 / g_), us, w.v, ps};
    } else {
      const double c = 2.0 / (g_ + 1.0) + gm / a * (u - x);
      out.rho = w.rho * std::pow(c, 2.0 / (g_ - 1.0));
      out.u = sign * 2.0 / (g_ + 1.0) * (a + 0.5 * (g_ - 1.0) * u + x);
      out.v = w.v;
      out.p = w.p * std::pow(c, 2.0 * g_ / (g_ - 1.0));
    }
  }
  return out;
}

}  // namespace tecno::euler
