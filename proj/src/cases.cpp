#include "tecno/cases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tecno/riemann.hpp"

namespace tecno {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x, double lo, double hi) {
  const double len = hi - lo;
  double r = std::fmod(x - lo, len);
  if (r < 0) r += len;
  return lo + r;
}

PointState scalar(double u) { return {u, 0.0, 0.0, 0.0}; }

PointState from_prim(const euler::Prim& w) { return {w.rho, w.u, w.v, w.p}; }

double moving_shapes(double x) {
  if (x > 0.2 && x <= 0.3) return 10 * (x - 0.2);
  if (x > 0.3 && x <= 0.4) return 10 * (0.4 - x);
  if (x > 0.6 && x <= 0.8) return 1.0;
  if (x > 1.0 && x <= 1.2) return 100 * (x - 1.0) * (1.2 - x);
  return 0.0;
}

const LaxOleinik& burgers2_solution() {
  static const LaxOleinik s({{-4.0, -1.0, true, 0.0},
                             {-1.0, -0.5, false, 3.0},
                             {-0.5, 0.0, false, 1.0},
                             {0.0, 0.5, false, 3.0},
                             {0.5, 1.0, false, 2.0},
                             {1.0, 4.0, true, 0.0}},
                            8.0);
  return s;
}

PointState vortex(double x, double y) {
  const double g = euler::kGamma;
  const double strength = 5.0;
  const double r2 = x * x + y * y;
  const double e = std::exp(0.5 * (1.0 - r2));
  const double temp =
      1.0 - (g - 1.0) * strength * strength / (8.0 * g * kPi * kPi) * e * e;
  return {std::pow(temp, 1.0 / (g - 1.0)), 1.0 - strength * y / (2 * kPi) * e,
          strength * x / (2 * kPi) * e, std::pow(temp, g / (g - 1.0))};
}

// Quadrants split at (0.5, 0.5): Q1 upper right, Q2 upper left, Q3 lower
// left, Q4 lower right.
std::function<PointState(double, double)> quadrants(PointState q1, PointState q2,
                                                    PointState q3, PointState q4) {
  return [=](double x, double y) {
    if (y > 0.5) return x > 0.5 ? q1 : q2;
    return x > 0.5 ? q4 : q3;
  };
}

std::function<PointState(double, double, double)> riemann_exact(euler::Prim l,
                                                                euler::Prim r,
                                                                double x0) {
  const euler::ExactRiemann rs(l, r);
  return [=](double x, double, double t) {
    if (t <= 0.0) return from_prim(x < x0 ? l : r);
    return from_prim(rs.sample((x - x0) / t));
  };
}

std::vector<TestCase> build_catalog() {
  std::vector<TestCase> c;
  {
    TestCase t;
    t.id = "advection-1";
    t.description = "linear advection of sin(x)";
    t.model = ModelKind::Advection;
    t.x0 = -kPi;
    t.x1 = kPi;
    t.cfl = 0.4;
    t.t_final = 0.5;
    t.default_n = 100;
    t.initial = [](double x, double) { return scalar(std::sin(x)); };
    t.exact = [](double x, double, double tt) {
      return scalar(std::sin(wrap(x - tt, -kPi, kPi)));
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "advection-2";
    t.description = "linear advection of sin^4(x)";
    t.model = ModelKind::Advection;
    t.x0 = -kPi;
    t.x1 = kPi;
    t.cfl = 0.5;
    t.t_final = 0.5;
    t.default_n = 100;
    t.initial = [](double x, double) { return scalar(std::pow(std::sin(x), 4)); };
    t.exact = [](double x, double, double tt) {
      return scalar(std::pow(std::sin(wrap(x - tt, -kPi, kPi)), 4));
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "moving-shapes";
    t.description = "linear advection of shapes with mixed regularity";
    t.model = ModelKind::Advection;
    t.x0 = 0.0;
    t.x1 = 1.4;
    t.cfl = 0.2;
    t.t_final = 1.4;
    t.default_n = 100;
    t.initial = [](double x, double) { return scalar(moving_shapes(x)); };
    t.exact = [](double x, double, double tt) {
      return scalar(moving_shapes(wrap(x - tt, 0.0, 1.4)));
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "burgers-1";
    t.description = "Burgers shock, 3 | -1";
    t.model = ModelKind::Burgers;
    t.x0 = -1.0;
    t.x1 = 1.0;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.4;
    t.t_final = 0.5;
    t.default_n = 100;
    t.initial = [](double x, double) { return scalar(x < 0 ? 3.0 : -1.0); };
    // Shock speed (3 + (-1)) / 2 = 1.
    t.exact = [](double x, double, double tt) { return scalar(x < tt ? 3.0 : -1.0); };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "burgers-2";
    t.description = "Burgers with steps and a sine background";
    t.model = ModelKind::Burgers;
    t.x0 = -4.0;
    t.x1 = 4.0;
    t.cfl = 0.4;
    t.t_final = 0.4;
    t.default_n = 400;
    t.initial = [](double x, double) { return scalar(burgers2_solution().initial(x)); };
    t.exact = [](double x, double, double tt) {
      return scalar(burgers2_solution()(x, tt));
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "sod";
    t.description = "modified Sod shock tube";
    t.model = ModelKind::Euler1D;
    t.x0 = 0.0;
    t.x1 = 1.0;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.4;
    t.t_final = 0.2;
    t.default_n = 400;
    const euler::Prim l{1.0, 0.75, 0.0, 1.0}, r{0.125, 0.0, 0.0, 0.1};
    t.initial = [=](double x, double) { return from_prim(x < 0.3 ? l : r); };
    t.exact = riemann_exact(l, r, 0.3);
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "shu-osher";
    t.description = "shock interacting with an entropy wave";
    t.model = ModelKind::Euler1D;
    t.x0 = -5.0;
    t.x1 = 5.0;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.4;
    t.t_final = 1.8;
    t.default_n = 400;
    t.initial = [](double x, double) -> PointState {
      if (x < -4.0) return {3.857143, 2.629369, 0.0, 10.33333};
      return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 0.0, 1.0};
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "lax";
    t.description = "Lax shock tube";
    t.model = ModelKind::Euler1D;
    t.x0 = -5.0;
    t.x1 = 5.0;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.4;
    t.t_final = 1.3;
    t.default_n = 200;
    const euler::Prim l{0.445, 0.698, 0.0, 3.528}, r{0.5, 0.0, 0.0, 0.571};
    t.initial = [=](double x, double) { return from_prim(x < 0.0 ? l : r); };
    t.exact = riemann_exact(l, r, 0.0);
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "vortex";
    t.description = "isentropic vortex advected over one period";
    t.model = ModelKind::Euler2D;
    t.x0 = t.y0 = -5.0;
    t.x1 = t.y1 = 5.0;
    t.cfl = 0.5;
    t.t_final = 10.0;
    t.default_n = 100;
    t.initial = vortex;
    t.exact = [](double x, double y, double tt) {
      return vortex(wrap(x - tt, -5.0, 5.0), y);
    };
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "riemann-12";
    t.description = "2D Riemann problem, configuration 12";
    t.model = ModelKind::Euler2D;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.5;
    t.t_final = 0.25;
    t.default_n = 400;
    t.initial = quadrants({0.5313, 0.0, 0.0, 0.4}, {1.0, 0.7276, 0.0, 1.0},
                          {0.8, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.7276, 1.0});
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "riemann-3";
    t.description = "2D Riemann problem, configuration 3";
    t.model = ModelKind::Euler2D;
    t.bc = BoundaryKind::Neumann;
    t.cfl = 0.4;
    t.t_final = 0.3;
    t.default_n = 400;
    t.initial = quadrants({1.5, 0.0, 0.0, 1.5}, {0.5323, 1.206, 0.0, 0.3},
                          {0.138, 1.206, 1.206, 0.029}, {0.5323, 0.0, 1.206, 0.3});
    c.push_back(t);
  }
  {
    TestCase t;
    t.id = "kelvin-helmholtz";
    t.description = "Kelvin-Helmholtz shear layer";
    t.model = ModelKind::Euler2D;
    t.x0 = t.y0 = -0.5;
    t.x1 = t.y1 = 0.5;
    t.cfl = 0.4;
    t.t_final = 3.0;
    t.default_n = 256;
    t.initial = [](double x, double y) -> PointState {
      const double v = 0.01 * std::sin(2 * kPi * x);
      if (std::abs(y) <= 0.25) return {2.0, -0.5, v, 2.5};
      return {1.0, 0.5, v, 2.5};
    };
    c.push_back(t);
  }
  return c;
}

}  // namespace

Mesh2D TestCase::mesh(int n) const {
  if (model == ModelKind::Euler2D) return {Mesh1D(x0, x1, n), Mesh1D(y0, y1, n)};
  return {Mesh1D(x0, x1, n), Mesh1D()};
}

const std::vector<TestCase>& catalog() {
  static const std::vector<TestCase> c = build_catalog();
  return c;
}

const TestCase& find_case(const std::string& id) {
  for (const TestCase& t : catalog()) {
    if (t.id == id) return t;
  }
  throw std::invalid_argument("unknown test case '" + id + "'");
}

Field sample_field(const RhsContext& ctx,
                   const std::function<PointState(double, double)>& f) {
  Field u = make_field(ctx);
  for (int j = 0; j < u.ny(); ++j) {
    const double y = ctx.model.dims() == 2 ? ctx.mesh.y.center(j) : 0.0;
    for (int i = 0; i < u.nx(); ++i) {
      const PointState s = f(ctx.mesh.x.center(i), y);
      double* c = u.cell(i, j);
      const euler::Prim w{s[0], s[1], s[2], s[3]};
      switch (ctx.model.kind) {
        case ModelKind::Advection:
        case ModelKind::Burgers:
          c[0] = s[0];
          break;
        case ModelKind::Euler1D: {
          const auto q = euler::conserved<3>(w);
          std::copy(q.begin(), q.end(), c);
          break;
        }
        case ModelKind::Euler2D: {
          const auto q = euler::conserved<4>(w);
          std::copy(q.begin(), q.end(), c);
          break;
        }
      }
    }
  }
  return u;
}

PointState point_state(const Model& m, const double* cell) {
  euler::Prim w;
  switch (m.kind) {
    case ModelKind::Advection:
    case ModelKind::Burgers:
      return scalar(cell[0]);
    case ModelKind::Euler1D:
      w = euler::primitive<3>(cell);
      break;
    case ModelKind::Euler2D:
      w = euler::primitive<4>(cell);
      break;
  }
  return from_prim(w);
}

LaxOleinik::LaxOleinik(std::vector<Piece> pieces, double period)
    : pieces_(std::move(pieces)), period_(period) {
  if (pieces_.empty()) throw std::invalid_argument("LaxOleinik: no pieces");
  lo_ = pieces_.front().lo;
  double acc = 0.0;
  max_speed_ = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& p = pieces_[k];
    if (k > 0 && p.lo != pieces_[k - 1].hi) {
      throw std::invalid_argument("LaxOleinik: pieces must be contiguous");
    }
    offset_.push_back(acc);
    if (p.sine) {
      acc += (std::cos(kPi * p.lo) - std::cos(kPi * p.hi)) / kPi;
      max_speed_ = std::max(max_speed_, 1.0);
    } else {
      acc += p.value * (p.hi - p.lo);
      max_speed_ = std::max(max_speed_, std::abs(p.value));
    }
  }
  if (std::abs(pieces_.back().hi - lo_ - period_) > 1e-12) {
    throw std::invalid_argument("LaxOleinik: pieces must cover one period");
  }
  mass_ = acc;
}

int LaxOleinik::piece_of(double yr) const {
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    if (yr < pieces_[k].hi) return static_cast<int>(k);
  }
  return static_cast<int>(pieces_.size()) - 1;
}

double LaxOleinik::initial(double x) const {
  const Piece& p = pieces_[piece_of(wrap(x, lo_, lo_ + period_))];
  return p.sine ? std::sin(kPi * x) : p.value;
}

double LaxOleinik::antiderivative(double y) const {
  const double k = std::floor((y - lo_) / period_);
  const double yr = y - k * period_;
  const int idx = piece_of(yr);
  const Piece& p = pieces_[idx];
  const double part = p.sine ? (std::cos(kPi * p.lo) - std::cos(kPi * yr)) / kPi
                             : p.value * (yr - p.lo);
  return k * mass_ + offset_[idx] + part;
}

double LaxOleinik::operator()(double x, double t) const {
  if (t <= 0.0) return initial(x);
  // Minimize U0(y) + (x - y)^2 / (2t); characteristics reach x from
  // |x - y| <= t max|u0|.
  const double a = x - t * max_speed_ - 1e-9, b = x + t * max_speed_ + 1e-9;
  auto phi = [&](double y) { return antiderivative(y) + 0.5 * (x - y) * (x - y) / t; };
  double best_y = a, best = phi(a);
  auto consider = [&](double y) {
    if (y < a || y > b) return;
    const double v = phi(y);
    if (v < best) {
      best = v;
      best_y = y;
    }
  };
  consider(b);
  const double k0 = std::floor((a - lo_) / period_);
  for (double k = k0; lo_ + k * period_ <= b; k += 1.0) {
    for (const Piece& p : pieces_) {
      const double lo = std::max(a, p.lo + k * period_);
      const double hi = std::min(b, p.hi + k * period_);
      if (lo > hi) continue;
      consider(lo);
      consider(hi);
      if (!p.sine) {
        consider(std::clamp(x - p.value * t, lo, hi));
        continue;
      }
      // Stationary points of phi: sin(pi y) = (x - y) / t, bracketed on a
      // fine grid and refined by bisection.
      auto dphi = [&](double y) { return std::sin(kPi * y) - (x - y) / t; };
      const int steps = std::max(4, static_cast<int>((hi - lo) / 1e-3));
      double ya = lo, da = dphi(lo);
      for (int s = 1; s <= steps; ++s) {
        const double yb = lo + (hi - lo) * s / steps;
        const double db = dphi(yb);
        if (da < 0.0 && db >= 0.0) {
          double l = ya, r = yb;
          for (int it = 0; it < 80 && r - l > 1e-15; ++it) {
            const double m = 0.5 * (l + r);
            (dphi(m) < 0.0 ? l : r) = m;
          }
          consider(0.5 * (l + r));
        }
        ya = yb;
        da = db;
      }
    }
  }
  return (x - best_y) / t;
}

}  // namespace tecno
