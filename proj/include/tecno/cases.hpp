#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tecno/evolve.hpp"

/// Catalog of the benchmark problems: domains, defaults, initial data and
/// exact solutions where one exists.
namespace tecno {

/// Scalar models use element 0; Euler states are primitive (rho, u, v, p).
using PointState = std::array<double, 4>;

enum class ReferenceKind {
  Exact,     // closed form or exact Riemann / Lax-Oleinik solution
  FineMesh,  // no exact solution; compare against a fine ENO3 run
};

struct TestCase {
  std::string id;
  std::string description;
  ModelKind model = ModelKind::Advection;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;  // 2D only
  BoundaryKind bc = BoundaryKind::Periodic;
  double cfl = 0.4;
  double t_final = 0.0;
  int default_n = 100;
  std::function<PointState(double x, double y)> initial;
  /// Empty when only a fine-mesh reference is available.
  std::function<PointState(double x, double y, double t)> exact;

  ReferenceKind reference() const {
    return exact ? ReferenceKind::Exact : ReferenceKind::FineMesh;
  }
  Mesh2D mesh(int n) const;
};

const std::vector<TestCase>& catalog();
/// Throws std::invalid_argument for an unknown id.
const TestCase& find_case(const std::string& id);

/// Point values of `f(x, y)` at the cell centers of `ctx`'s mesh, converted
/// to conserved variables for the Euler models.
Field sample_field(const RhsContext& ctx,
                   const std::function<PointState(double, double)>& f);

/// Conserved state to PointState (primitive for Euler).
PointState point_state(const Model& m, const double* cell);

/// Burgers solution for periodic data built from constant and sin(pi x)
/// pieces, via the Lax-Oleinik (Hopf) formula.
class LaxOleinik {
 public:
  struct Piece {
    double lo, hi;
    bool sine;     // sin(pi x) when true, otherwise the constant `value`
    double value;
  };
  /// Pieces must tile [lo, lo + period) in order.
  LaxOleinik(std::vector<Piece> pieces, double period);

  double operator()(double x, double t) const;
  double initial(double x) const;

 private:
  double antiderivative(double y) const;  // U0(y), U0(pieces.front().lo) = 0
  int piece_of(double y_reduced) const;

  std::vector<Piece> pieces_;
  double period_;
  double lo_;
  std::vector<double> offset_;  // U0 at each piece start
  double mass_;                 // integral over one period
  double max_speed_;
};

}  // namespace tecno
