#include "tecno/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tecno {

namespace {

constexpr double kEighth = 0.125;
constexpr double kThreeEighths = 0.375;

// kappa+(a, b) with a = theta_plus, b = theta_minus.
double kappa(double a, double b) {
  if (a == 1.0) return 1.0;
  const double psi = (1.0 - b) / (1.0 - a);
  if (psi == -1.0) return 1.0;
  return 1.0 / (1.0 + psi);
}

// C1(theta_plus, theta_minus); C2 is the same map with arguments swapped.
double spweno_c1(double a, double b) {
  if (a == 1.0) return -kThreeEighths;
  const double psi = (1.0 - b) / (1.0 - a);
  if (psi < 0.0) {
    if (psi == -1.0) return 0.0;
    const double kp = kappa(a, b);
    const double km = kappa(b, a);
    return kEighth * (kp / (kp * kp + km * km));
  }
  return std::abs(a) <= 1.0 ? -kThreeEighths : kEighth;
}

// C1 on the line L = 1 at C2 = y: (1 + psi+)/8 - y psi+.
double on_line(double psi, double y) { return kEighth * (1.0 + psi) - y * psi; }

// Ratios beyond this are clamped; a subnormal d_0 otherwise gives inf.
constexpr double kMaxRatio = 1e100;

double clamp_ratio(double t) {
  if (std::isnan(t)) return kMaxRatio;
  return std::clamp(t, -kMaxRatio, kMaxRatio);
}

VertexSet repeat(WenoPerturbation v) { return {v, v, v, v, v}; }

}  // namespace

std::optional<JumpData> jump_data(const Stencil4& s) {
  const double d0 = s.zp1 - s.z0;
  if (d0 == 0.0) return std::nullopt;
  JumpData j;
  j.d_m = s.z0 - s.zm1;
  j.d_0 = d0;
  j.d_p = s.zp2 - s.zp1;
  j.theta_plus = clamp_ratio(j.d_m / d0);
  j.theta_minus = clamp_ratio(j.d_p / d0);
  if (j.theta_plus != 1.0) {
    j.psi_plus = (1.0 - j.theta_minus) / (1.0 - j.theta_plus);
    if (*j.psi_plus != 0.0) j.psi_minus = 1.0 / *j.psi_plus;
  }
  return j;
}

JumpData jump_data_from_ratios(double theta_plus, double theta_minus) {
  return *jump_data({-theta_plus, 0.0, 1.0, 1.0 + theta_minus});
}

WenoWeights weights_from_perturbation(WenoPerturbation c) {
  WenoWeights w;
  w.w0 = 0.75 + 2.0 * c.c1;
  w.wt0 = 0.25 - 2.0 * c.c2;
  w.w1 = 1.0 - w.w0;
  w.wt1 = 1.0 - w.wt0;
  return w;
}

std::string_view to_string(FeasibleCase c) {
  switch (c) {
    case FeasibleCase::Case1: return "1";
    case FeasibleCase::Case2a: return "2a";
    case FeasibleCase::Case2b: return "2b";
    case FeasibleCase::Case3a: return "3a";
    case FeasibleCase::Case3b: return "3b";
    case FeasibleCase::Case4a: return "4a";
    case FeasibleCase::Case4b: return "4b";
    case FeasibleCase::Case5a: return "5a";
    case FeasibleCase::Case5b: return "5b";
    case FeasibleCase::Case6: return "6";
  }
  return "?";
}

FeasibleCase classify_case(const JumpData& j) {
  const double tp = j.theta_plus;
  const double tm = j.theta_minus;
  if (tp > 1.0 && tm > 1.0) return FeasibleCase::Case1;
  if (tp < 1.0 && tm > 1.0) {
    return *j.psi_plus < -1.0 ? FeasibleCase::Case2b : FeasibleCase::Case2a;
  }
  if (tp > 1.0 && tm < 1.0) {
    return *j.psi_plus < -1.0 ? FeasibleCase::Case3b : FeasibleCase::Case3a;
  }
  if (tm == 1.0 && tp > 1.0) return FeasibleCase::Case4a;
  if (tm == 1.0) return FeasibleCase::Case4b;
  if (tp == 1.0 && tm > 1.0) return FeasibleCase::Case5a;
  if (tp == 1.0) return FeasibleCase::Case5b;
  return FeasibleCase::Case6;
}

bool is_c_region(FeasibleCase c) {
  return c == FeasibleCase::Case2a || c == FeasibleCase::Case2b ||
         c == FeasibleCase::Case3a || c == FeasibleCase::Case3b;
}

std::optional<double> sign_constraint_measure(WenoPerturbation c,
                                              const JumpData& j) {
  if (!j.psi_plus || !j.psi_minus) return std::nullopt;
  const double pp = *j.psi_plus;
  const double pm = *j.psi_minus;
  if (pp == -1.0 && pm == -1.0) return c.c1 - c.c2 + 1.0;
  if (pp == -1.0 || pm == -1.0) return std::nullopt;
  return c.c1 / (kEighth * (1.0 + pp)) + c.c2 / (kEighth * (1.0 + pm));
}

WenoPerturbation keep_sign(WenoPerturbation c, const JumpData& j) {
  if (sign_bracket(c, j) >= 0.0) return c;
  auto dir = [](double t) { return t > 1.0 ? 1.0 : t < 1.0 ? -1.0 : 0.0; };
  const double s1 = dir(j.theta_plus), s2 = dir(j.theta_minus);
  auto in_box = [](double x) { return x >= -kThreeEighths && x <= kEighth; };
  const bool boxed = in_box(c.c1) && in_box(c.c2);
  double step = 4.0 * std::numeric_limits<double>::epsilon();
  for (int k = 0; k < 6; ++k, step *= 2.0) {
    WenoPerturbation t{c.c1 + s1 * step, c.c2 + s2 * step};
    if (boxed) {
      t.c1 = std::clamp(t.c1, -kThreeEighths, kEighth);
      t.c2 = std::clamp(t.c2, -kThreeEighths, kEighth);
    }
    if (sign_bracket(t, j) >= 0.0) return t;
  }
  return c;
}

WenoPerturbation spweno_perturbation(const JumpData& j) {
  return keep_sign({spweno_c1(j.theta_plus, j.theta_minus),
                    spweno_c1(j.theta_minus, j.theta_plus)},
                   j);
}

WenoPerturbation spwenoc_perturbation(const JumpData& j, const Stencil4& s) {
  WenoPerturbation c = spweno_perturbation(j);
  if (!is_c_region(classify_case(j))) return c;
  const double ad = std::abs(j.d_0);
  const double g = std::pow(
      std::min(ad / (0.5 * (std::abs(s.z0) + std::abs(s.zp1))), ad), 3);
  c.c1 -= 0.25 * g / (1.0 - j.theta_plus);
  c.c2 -= 0.25 * g / (1.0 - j.theta_minus);
  return keep_sign(c, j);
}

ReconPair weno_reconstruct(const Stencil4& s, WenoPerturbation c) {
  const WenoWeights w = weights_from_perturbation(c);
  ReconPair r;
  r.minus = 0.5 * (w.w0 * (s.z0 + s.zp1) + w.w1 * (3.0 * s.z0 - s.zm1));
  r.plus = 0.5 * (w.wt0 * (3.0 * s.zp1 - s.zp2) + w.wt1 * (s.z0 + s.zp1));
  return r;
}

double sign_bracket(WenoPerturbation c, const JumpData& j) {
  // w~0 = 1/4 - 2 C2 and w1 = 1/4 - 2 C1, written alike so the value is
  // symmetric under the mirror swap.
  return (0.25 - 2.0 * c.c2) * (1.0 - j.theta_minus) +
         (0.25 - 2.0 * c.c1) * (1.0 - j.theta_plus);
}

ReconPair spweno_reconstruct(const Stencil4& s) {
  const auto j = jump_data(s);
  if (!j) return {s.z0, s.zp1};
  return weno_reconstruct(s, spweno_perturbation(*j));
}

ReconPair spwenoc_reconstruct(const Stencil4& s) {
  const auto j = jump_data(s);
  if (!j) return {s.z0, s.zp1};
  return weno_reconstruct(s, spwenoc_perturbation(*j, s));
}

namespace {

// Quadratic through z[s], z[s+1], z[s+2] (unit spacing) evaluated at
// offset t from z[s].
double quadratic_at(const double* z, double t) {
  const double d1 = z[1] - z[0];
  const double d2 = 0.5 * (z[2] - 2.0 * z[1] + z[0]);
  return z[0] + t * d1 + t * (t - 1.0) * d2;
}

// Leftmost index of the ENO stencil grown from `start` inside z[0..5].
int eno_stencil(const double* z, int start) {
  int left = start;
  if (std::abs(z[start] - z[start - 1]) <= std::abs(z[start + 1] - z[start])) {
    left = start - 1;
  }
  const double dd_left = z[left + 1] - 2.0 * z[left] + z[left - 1];
  const double dd_right = z[left + 2] - 2.0 * z[left + 1] + z[left];
  if (std::abs(dd_left) <= std::abs(dd_right)) --left;
  return left;
}

}  // namespace

ReconPair eno3_reconstruct(std::span<const double, 6> z) {
  // z[2] = z_i, z[3] = z_{i+1}; the interface sits at offset 2.5.
  const double* p = z.data();
  const int lm = eno_stencil(p, 2);
  const int lp = eno_stencil(p, 3);
  return {quadratic_at(p + lm, 2.5 - lm), quadratic_at(p + lp, 2.5 - lp)};
}

VertexSet feasible_vertices(const JumpData& j, const ScaledJumps& jumps) {
  const double tp = j.theta_plus;
  const double tm = j.theta_minus;
  const double jmax = std::max({jumps[0], jumps[1], jumps[2]});
  const double g1 = std::min(jmax, kEighth);
  const double g2 = -std::min(jmax, kThreeEighths);

  if (tm > 1.0 && tp > 1.0) return repeat({kEighth, kEighth});

  const bool case2 = tm > 1.0 && tp < 1.0;
  const bool case3 = tm < 1.0 && tp > 1.0;
  if (case2 || case3) {
    const double pp = *j.psi_plus;
    const double pm = *j.psi_minus;
    // Point of L = 1 closest to the origin.
    // Written in whichever of psi+-, psi- = 1 / psi+, is at most 1 in
    // magnitude so that nothing is squared past overflow.
    auto closest = [&] {
      if (std::abs(pp) <= 1.0) {
        const double d = 8.0 * (1.0 + pp * pp);
        return repeat({(1.0 + pp) / d, (pp + pp * pp) / d});
      }
      const double d = 8.0 * (pm * pm + 1.0);
      return repeat({(pm * pm + pm) / d, (1.0 + pm) / d});
    };
    const VertexSet box{{{g2, g1}, {g1, g1}, {g2, g2}, {g1, g2}, {0.0, 0.0}}};

    if (case2) {
      if (pp < -1.0) {
        const double xs = on_line(pp, g1);
        if (xs < g2) return closest();
        const double ys2 = on_line(pm, g1);
        const double xc = (2.0 * g2 + xs) / 3.0;
        const double yc = (2.0 * g1 + ys2) / 3.0;
        return {{{g2, g1}, {xs, g1}, {g2, ys2}, {xc, yc}, {xc, yc}}};
      }
      const double ys = on_line(pm, g1);
      const double xs2 = on_line(pp, g2);
      if (ys < g2) return box;
      return {{{g2, g1}, {g1, g1}, {g2, g2}, {g1, ys}, {xs2, g2}}};
    }

    if (pp < -1.0) {
      const double xs = on_line(pp, g1);
      const double ys3 = on_line(pm, g2);
      if (xs < g2) return box;
      return {{{g1, g2}, {g1, g1}, {g2, g2}, {xs, g1}, {g2, ys3}}};
    }
    const double ys = on_line(pm, g1);
    if (ys < g2) return closest();
    const double xs3 = on_line(pp, g1);
    const double xc = (2.0 * g1 + xs3) / 3.0;
    const double yc = (2.0 * g2 + ys) / 3.0;
    return {{{g1, g2}, {xs3, g2}, {g1, ys}, {xc, yc}, {xc, yc}}};
  }

  if (tm == 1.0 && tp > 1.0) {
    return {{{kEighth, -kThreeEighths},
             {kEighth, kEighth},
             {kEighth, kEighth},
             {kEighth, -kThreeEighths},
             {kEighth, -kEighth}}};
  }
  if (tp == 1.0 && tm > 1.0) {
    return {{{kEighth, kEighth},
             {kEighth, kEighth},
             {-kThreeEighths, kEighth},
             {-kThreeEighths, kEighth},
             {-kEighth, kEighth}}};
  }
  return {{{kEighth, kEighth},
           {kEighth, -kThreeEighths},
           {-kThreeEighths, -kThreeEighths},
           {-kThreeEighths, kEighth},
           {-kEighth, -kEighth}}};
}

}  // namespace tecno
