#pragma once

#include <array>
#include <cmath>
#include <type_traits>

/// Conservation-law models, entropy algebra, entropy-conservative fluxes and
/// the eigen-decomposition used for TeCNO diffusion.
namespace tecno {

enum class ScalarKind { Advection, Burgers };

/// Scalar law with the square entropy eta = u^2/2, so v = u.
struct ScalarModel {
  ScalarKind kind = ScalarKind::Advection;
  double c = 1.0;  // advection speed

  double flux(double u) const {
    return kind == ScalarKind::Advection ? c * u : 0.5 * u * u;
  }
  double dflux(double u) const { return kind == ScalarKind::Advection ? c : u; }
  double entropy(double u) const { return 0.5 * u * u; }
  double entropy_flux(double u) const {
    return kind == ScalarKind::Advection ? 0.5 * c * u * u : u * u * u / 3.0;
  }
  /// Psi = v f - q.
  double potential(double u) const {
    return kind == ScalarKind::Advection ? 0.5 * c * u * u : u * u * u / 6.0;
  }
  /// Two-point entropy-conservative flux.
  double ec_flux(double ul, double ur) const {
    if (kind == ScalarKind::Advection) return 0.5 * c * (ul + ur);
    return (ul * ul + ur * ur + ul * ur) / 6.0;
  }
};

/// (a - b) / (ln a - ln b), with a series branch near a == b.
/// Throws std::domain_error for nonpositive input.
double log_mean(double a, double b);

/// Fourth-order entropy-conservative flux at x_{i+1/2} from a two-point
/// flux F and states u_{i-1}, u_i, u_{i+1}, u_{i+2}.
template <class State, class TwoPoint>
State ec4_flux(const State& um1, const State& u0, const State& up1,
               const State& up2, TwoPoint&& F) {
  const State a = F(u0, up1);
  const State b = F(um1, up1);
  const State c = F(u0, up2);
  if constexpr (std::is_arithmetic_v<State>) {
    return (4.0 / 3.0) * a - (1.0 / 6.0) * (b + c);
  } else {
    State out;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = (4.0 / 3.0) * a[k] - (1.0 / 6.0) * (b[k] + c[k]);
    }
    return out;
  }
}

namespace euler {

inline constexpr double kGamma = 1.4;

/// Primitive state. The x-direction kernels treat u as the normal velocity
/// and v as tangential; y-direction sweeps swap them beforehand. In 1D v = 0
/// and the state has three components.
struct Prim {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;

  double beta() const { return rho / (2.0 * p); }
  double sound_speed() const { return std::sqrt(kGamma * p / rho); }
  double enthalpy() const {
    return kGamma / (kGamma - 1.0) * p / rho + 0.5 * (u * u + v * v);
  }
};

template <int N>
using State = std::array<double, N>;

template <int N>
using Mat = std::array<double, N * N>;  // row-major

/// Conserved (rho, rho u[, rho v], E) to primitive. No positivity check.
template <int N>
Prim primitive(const double* c) {
  static_assert(N == 3 || N == 4);
  Prim w;
  w.rho = c[0];
  w.u = c[1] / c[0];
  w.v = N == 4 ? c[2] / c[0] : 0.0;
  const double e = c[N - 1];
  w.p = (kGamma - 1.0) * (e - 0.5 * w.rho * (w.u * w.u + w.v * w.v));
  return w;
}

template <int N>
State<N> conserved(const Prim& w) {
  State<N> c;
  c[0] = w.rho;
  c[1] = w.rho * w.u;
  if constexpr (N == 4) c[2] = w.rho * w.v;
  c[N - 1] = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return c;
}

/// Physical flux in the direction of u.
template <int N>
State<N> flux(const Prim& w) {
  State<N> f;
  const double m = w.rho * w.u;
  f[0] = m;
  f[1] = m * w.u + w.p;
  if constexpr (N == 4) f[2] = m * w.v;
  const double e = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  f[N - 1] = (e + w.p) * w.u;
  return f;
}

/// Physical entropy s = ln p - gamma ln rho.
inline double physical_entropy(const Prim& w) {
  return std::log(w.p) - kGamma * std::log(w.rho);
}

/// Mathematical entropy eta = -rho s / (gamma - 1).
inline double entropy(const Prim& w) {
  return -w.rho * physical_entropy(w) / (kGamma - 1.0);
}

/// Entropy potential in the direction of u: Psi = rho u.
inline double potential(const Prim& w) { return w.rho * w.u; }

/// v = d eta / d u = ((gamma - s)/(gamma - 1) - beta |u|^2, 2 beta u, -2 beta).
template <int N>
State<N> entropy_vars(const Prim& w) {
  const double b = w.beta();
  State<N> v;
  v[0] = (kGamma - physical_entropy(w)) / (kGamma - 1.0) -
         b * (w.u * w.u + w.v * w.v);
  v[1] = 2.0 * b * w.u;
  if constexpr (N == 4) v[2] = 2.0 * b * w.v;
  v[N - 1] = -2.0 * b;
  return v;
}

/// Kinetic-energy-preserving entropy-conservative flux in the u direction.
template <int N>
State<N> kepec_flux(const Prim& l, const Prim& r) {
  const double bl = l.beta(), br = r.beta();
  const double rho_hat = log_mean(l.rho, r.rho);
  const double beta_hat = log_mean(bl, br);
  const double rho_bar = 0.5 * (l.rho + r.rho);
  const double beta_bar = 0.5 * (bl + br);
  const double u_bar = 0.5 * (l.u + r.u);
  const double v_bar = 0.5 * (l.v + r.v);
  const double vel2_bar =
      0.5 * (l.u * l.u + l.v * l.v + r.u * r.u + r.v * r.v);
  const double p_tilde = rho_bar / (2.0 * beta_bar);

  State<N> f;
  f[0] = rho_hat * u_bar;
  f[1] = p_tilde + u_bar * f[0];
  double fe = (1.0 / (2.0 * (kGamma - 1.0) * beta_hat) - 0.5 * vel2_bar) * f[0] +
              u_bar * f[1];
  if constexpr (N == 4) {
    f[2] = v_bar * f[0];
    fe += v_bar * f[2];
  }
  f[N - 1] = fe;
  return f;
}

/// Right eigenvectors of the u-direction flux Jacobian at `w`, ordered by
/// wave speed (u - a, u, [u,] u + a), each column scaled so that
/// R R^T = du/dv.
template <int N>
Mat<N> scaled_eigenvectors(const Prim& w) {
  const double a = w.sound_speed();
  const double h = w.enthalpy();
  const double q2 = 0.5 * (w.u * w.u + w.v * w.v);
  const double s_ac = std::sqrt(w.rho / (2.0 * kGamma));
  const double s_en = std::sqrt((kGamma - 1.0) * w.rho / kGamma);
  Mat<N> r{};
  auto at = [&](int row, int col) -> double& { return r[row * N + col]; };
  const int last = N - 1;
  // acoustic u - a
  at(0, 0) = s_ac;
  at(1, 0) = s_ac * (w.u - a);
  at(last, 0) = s_ac * (h - w.u * a);
  // entropy wave
  at(0, 1) = s_en;
  at(1, 1) = s_en * w.u;
  at(last, 1) = s_en * q2;
  // acoustic u + a
  at(0, last) = s_ac;
  at(1, last) = s_ac * (w.u + a);
  at(last, last) = s_ac * (h + w.u * a);
  if constexpr (N == 4) {
    const double s_sh = std::sqrt(w.p);
    at(2, 0) = s_ac * w.v;
    at(2, 1) = s_en * w.v;
    at(2, 3) = s_ac * w.v;
    at(2, 2) = s_sh;
    at(3, 2) = s_sh * w.v;
  }
  return r;
}

/// |eigenvalues| in the same order as the eigenvector columns.
template <int N>
State<N> roe_lambda(const Prim& w) {
  const double a = w.sound_speed();
  State<N> l;
  l.fill(std::abs(w.u));
  l[0] = std::abs(w.u - a);
  l[N - 1] = std::abs(w.u + a);
  return l;
}

template <int N>
State<N> rusanov_lambda(const Prim& w) {
  State<N> l;
  l.fill(std::abs(w.u) + w.sound_speed());
  return l;
}

/// Arithmetic mean of primitives.
inline Prim average(const Prim& l, const Prim& r) {
  return {0.5 * (l.rho + r.rho), 0.5 * (l.u + r.u), 0.5 * (l.v + r.v),
          0.5 * (l.p + r.p)};
}

}  // namespace euler

}  // namespace tecno
