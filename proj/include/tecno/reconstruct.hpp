#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace tecno {

/// Point values z_{i-1}, z_i, z_{i+1}, z_{i+2} around interface x_{i+1/2}.
struct Stencil4 {
  double zm1 = 0.0;
  double z0 = 0.0;
  double zp1 = 0.0;
  double zp2 = 0.0;

  Stencil4 operator-() const { return {-zm1, -z0, -zp1, -zp2}; }
};

/// Undivided jumps and jump ratios of a stencil with nonzero central jump.
struct JumpData {
  double d_m = 0.0;          // z_i - z_{i-1}
  double d_0 = 0.0;          // z_{i+1} - z_i
  double d_p = 0.0;          // z_{i+2} - z_{i+1}
  double theta_plus = 0.0;   // d_m / d_0, clamped to +-1e100
  double theta_minus = 0.0;  // d_p / d_0, clamped to +-1e100
  /// (1 - theta_minus) / (1 - theta_plus), absent when theta_plus == 1.
  std::optional<double> psi_plus;
  /// 1 / psi_plus, absent when psi_plus is absent or zero.
  std::optional<double> psi_minus;
};

/// Returns std::nullopt when z_{i+1} == z_i (degenerate central jump).
std::optional<JumpData> jump_data(const Stencil4& s);

/// Builds ratio data directly from (theta_plus, theta_minus) with d_0 = 1.
JumpData jump_data_from_ratios(double theta_plus, double theta_minus);

struct WenoPerturbation {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct WenoWeights {
  double w0 = 0.0;
  double w1 = 0.0;
  double wt0 = 0.0;
  double wt1 = 0.0;
};

/// w0 = 3/4 + 2 C1, wt0 = 1/4 - 2 C2, w1 = 1 - w0, wt1 = 1 - wt0.
WenoWeights weights_from_perturbation(WenoPerturbation c);

/// Partition of the (theta_plus, theta_minus) plane into the ten cases with
/// distinct admissible perturbation sets.
enum class FeasibleCase {
  Case1,
  Case2a,
  Case2b,
  Case3a,
  Case3b,
  Case4a,
  Case4b,
  Case5a,
  Case5b,
  Case6
};

std::string_view to_string(FeasibleCase c);
FeasibleCase classify_case(const JumpData& j);
bool is_c_region(FeasibleCase c);

/// Sign-constraint functional: C1/((1+psi+)/8) + C2/((1+psi-)/8), or
/// C1 - C2 + 1 on the psi+ = psi- = -1 line. std::nullopt where the
/// functional is undefined (theta_plus == 1 or exactly one of 1 + psi is 0).
std::optional<double> sign_constraint_measure(WenoPerturbation c,
                                              const JumpData& j);

/// Returns `c` unless its sign bracket is negative; then `c` moved by at most
/// ~3e-14 per component towards the sign-feasible side, staying inside the
/// box [-3/8, 1/8]^2 if it started there. Rounding can leave a boundary
/// perturbation just outside the feasible set when the ratios are large.
WenoPerturbation keep_sign(WenoPerturbation c, const JumpData& j);

/// Hand-crafted SP-WENO perturbation. Requires d_0 != 0.
WenoPerturbation spweno_perturbation(const JumpData& j);

/// SP-WENOc: SP-WENO plus the cubic G correction in the C-region.
WenoPerturbation spwenoc_perturbation(const JumpData& j, const Stencil4& s);

struct ReconPair {
  double minus = 0.0;  // z^-_{i+1/2}, from cell i
  double plus = 0.0;   // z^+_{i+1/2}, from cell i+1

  double jump() const { return plus - minus; }
};

/// Third-order WENO interface values for the given perturbation.
ReconPair weno_reconstruct(const Stencil4& s, WenoPerturbation c);

/// The bracket w~0 (1 - theta-) + w1 (1 - theta+); the reconstructed jump
/// equals half of it times d_0. Nonnegative iff the sign property holds.
double sign_bracket(WenoPerturbation c, const JumpData& j);

/// Third-order ENO on six point values z_{i-2..i+3}.
ReconPair eno3_reconstruct(std::span<const double, 6> z);

ReconPair spweno_reconstruct(const Stencil4& s);
ReconPair spwenoc_reconstruct(const Stencil4& s);

/// Absolute jumps |dz*_{i-1/2}|, |dz*_{i+1/2}|, |dz*_{i+3/2}| of the scaled
/// stencil.
using ScaledJumps = std::array<double, 3>;

/// Five (possibly repeated) vertices (C1, C2) spanning the feasible region.
using VertexSet = std::array<WenoPerturbation, 5>;

VertexSet feasible_vertices(const JumpData& j, const ScaledJumps& jumps);

}  // namespace tecno
