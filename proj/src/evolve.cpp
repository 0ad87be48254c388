#include "tecno/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tecno {

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Advection:
      return "advection";
    case ModelKind::Burgers:
      return "burgers";
    case ModelKind::Euler1D:
      return "euler1d";
    case ModelKind::Euler2D:
      return "euler2d";
  }
  return "?";
}

std::string_view to_string(DiffusionKind k) {
  return k == DiffusionKind::Roe ? "roe" : "rusanov";
}

namespace {

constexpr int G = kGhostWidth;

// Cells of one grid line, ghosts included: element c holds cell c - G.
struct Line {
  const double* base = nullptr;  // cell -G
  std::ptrdiff_t stride = 0;     // doubles between neighbouring cells
  int n = 0;                     // interior cells
  const double* cell(int c) const { return base + c * stride; }
};

// Interface fluxes F[f], f = 0..n, at the left face of cell f.
void scalar_line_fluxes(const RhsContext& ctx, const Line& line,
                        std::vector<double>& u, std::vector<double>& skip,
                        std::vector<double>& out) {
  const ScalarModel m = ctx.model.scalar();
  const int n = line.n;
  const int total = n + 2 * G;
  u.resize(total);
  for (int c = 0; c < total; ++c) u[c] = *line.cell(c);
  // skip[c] = F(u_c, u_{c+2}) in ghost-shifted numbering.
  skip.resize(total);
  for (int c = 0; c + 2 < total; ++c) skip[c] = m.ec_flux(u[c], u[c + 2]);
  out.resize(n + 1);
  for (int f = 0; f <= n; ++f) {
    const int r = f + G;  // right cell of the interface
    const double adj = m.ec_flux(u[r - 1], u[r]);
    const double ec = (4.0 / 3.0) * adj - (1.0 / 6.0) * (skip[r - 2] + skip[r - 1]);
    const ReconPair z = ctx.recon(std::span<const double, 6>(u.data() + r - 3, 6));
    const double a = 0.5 * (std::abs(m.dflux(u[r - 1])) + std::abs(m.dflux(u[r])));
    out[f] = ec - a * z.jump();
  }
}

template <int N>
struct EulerScratch {
  std::vector<euler::Prim> w;
  std::vector<euler::State<N>> v;
  std::vector<euler::State<N>> skip;
  std::vector<euler::State<N>> out;
};

template <int N>
euler::Prim load_prim(const double* c, bool swap) {
  euler::Prim w = euler::primitive<N>(c);
  if (swap) std::swap(w.u, w.v);
  return w;
}

template <int N>
void euler_line_fluxes(const RhsContext& ctx, const Line& line, bool swap,
                       EulerScratch<N>& s) {
  using namespace euler;
  const int n = line.n;
  const int total = n + 2 * G;
  s.w.resize(total);
  s.v.resize(total);
  for (int c = 0; c < total; ++c) {
    s.w[c] = load_prim<N>(line.cell(c), swap);
    s.v[c] = entropy_vars<N>(s.w[c]);
  }
  s.skip.resize(total);
  for (int c = 0; c + 2 < total; ++c) s.skip[c] = kepec_flux<N>(s.w[c], s.w[c + 2]);
  s.out.resize(n + 1);
  const bool roe = ctx.diffusion == DiffusionKind::Roe;
  for (int f = 0; f <= n; ++f) {
    const int r = f + G;
    const State<N> adj = kepec_flux<N>(s.w[r - 1], s.w[r]);
    State<N>& flux = s.out[f];
    for (int k = 0; k < N; ++k) {
      flux[k] = (4.0 / 3.0) * adj[k] - (1.0 / 6.0) * (s.skip[r - 2][k] + s.skip[r - 1][k]);
    }
    const Prim avg = average(s.w[r - 1], s.w[r]);
    const Mat<N> R = scaled_eigenvectors<N>(avg);
    const State<N> lam = roe ? roe_lambda<N>(avg) : rusanov_lambda<N>(avg);
    // Jump of each scaled variable z_k = (R^T v)_k.
    State<N> d;
    for (int k = 0; k < N; ++k) {
      std::array<double, 6> z;
      for (int q = 0; q < 6; ++q) {
        const State<N>& vq = s.v[r - 3 + q];
        double acc = 0.0;
        for (int m = 0; m < N; ++m) acc += R[m * N + k] * vq[m];
        z[q] = acc;
      }
      d[k] = lam[k] * ctx.recon(z).jump();
    }
    for (int m = 0; m < N; ++m) {
      double acc = 0.0;
      for (int k = 0; k < N; ++k) acc += R[m * N + k] * d[k];
      flux[m] -= 0.5 * acc;
    }
  }
}

void check_positivity(const RhsContext& ctx, const Field& u, double t) {
  if (!ctx.model.is_euler()) return;
  const int nv = u.n_vars();
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      const double* c = u.cell(i, j);
      const euler::Prim w = nv == 3 ? euler::primitive<3>(c) : euler::primitive<4>(c);
      if (!(w.rho > 0.0) || !(w.p > 0.0)) {
        std::ostringstream msg;
        msg << "non-positive state at cell (" << i << ", " << j << "), t = " << t
            << ": rho = " << w.rho << ", p = " << w.p;
        throw SolverError(SolverError::Kind::Positivity, i, j, t, msg.str());
      }
    }
  }
}

void check_shape(const RhsContext& ctx, const Field& u) {
  if (u.n_vars() != ctx.model.n_vars() || u.dims() != ctx.model.dims() ||
      u.nx() != ctx.mesh.x.n || (u.dims() == 2 && u.ny() != ctx.mesh.y.n)) {
    throw std::invalid_argument("field shape does not match the model and mesh");
  }
}

template <int N>
void euler_rhs(const RhsContext& ctx, const Field& u, Field& out) {
  EulerScratch<N> s;
  const int nx = u.nx(), ny = u.ny();
  const double hx = ctx.mesh.x.h();
  for (int j = 0; j < ny; ++j) {
    euler_line_fluxes<N>(ctx, {u.cell(-G, j), u.stride_x(), nx}, false, s);
    for (int i = 0; i < nx; ++i) {
      double* o = out.cell(i, j);
      for (int k = 0; k < N; ++k) o[k] = -(s.out[i + 1][k] - s.out[i][k]) / hx;
    }
  }
  if constexpr (N == 4) {
    const double hy = ctx.mesh.y.h();
    for (int i = 0; i < nx; ++i) {
      euler_line_fluxes<N>(ctx, {u.cell(i, -G), u.stride_y(), ny}, true, s);
      for (int j = 0; j < ny; ++j) {
        double* o = out.cell(i, j);
        for (int k = 0; k < N; ++k) {
          // Swap the momentum components back to (x, y) order.
          const int src = k == 1 ? 2 : k == 2 ? 1 : k;
          o[k] -= (s.out[j + 1][src] - s.out[j][src]) / hy;
        }
      }
    }
  }
}

}  // namespace

Field make_field(const RhsContext& ctx) {
  if (ctx.model.dims() == 2) {
    return Field(ctx.mesh.x.n, ctx.mesh.y.n, ctx.model.n_vars());
  }
  return Field(ctx.mesh.x.n, ctx.model.n_vars());
}

void rhs(const RhsContext& ctx, const Field& u, Field& out, double t) {
  check_shape(ctx, u);
  if (!out.same_shape(u)) out = Field(u);
  check_positivity(ctx, u, t);
  switch (ctx.model.kind) {
    case ModelKind::Advection:
    case ModelKind::Burgers: {
      std::vector<double> a, b, f;
      scalar_line_fluxes(ctx, {u.cell(-G), u.stride_x(), u.nx()}, a, b, f);
      const double h = ctx.mesh.x.h();
      for (int i = 0; i < u.nx(); ++i) out(i, 0) = -(f[i + 1] - f[i]) / h;
      break;
    }
    case ModelKind::Euler1D:
      euler_rhs<3>(ctx, u, out);
      break;
    case ModelKind::Euler2D:
      euler_rhs<4>(ctx, u, out);
      break;
  }
}

double compute_dt(const RhsContext& ctx, const Field& u, const TimeControls& tc,
                  double t) {
  const double remaining = tc.t_final - t;
  double lx = 0.0, ly = 0.0;
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      const double* c = u.cell(i, j);
      switch (ctx.model.kind) {
        case ModelKind::Advection:
        case ModelKind::Burgers:
          lx = std::max(lx, std::abs(ctx.model.scalar().dflux(c[0])));
          break;
        case ModelKind::Euler1D: {
          const euler::Prim w = euler::primitive<3>(c);
          lx = std::max(lx, std::abs(w.u) + w.sound_speed());
          break;
        }
        case ModelKind::Euler2D: {
          const euler::Prim w = euler::primitive<4>(c);
          const double a = w.sound_speed();
          lx = std::max(lx, std::abs(w.u) + a);
          ly = std::max(ly, std::abs(w.v) + a);
          break;
        }
      }
    }
  }
  double rate = lx / ctx.mesh.x.h();
  if (ctx.model.dims() == 2) rate += ly / ctx.mesh.y.h();
  if (!(rate > 0.0)) return remaining;
  return std::min(tc.cfl / rate, remaining);
}

void ssprk3_step(Field& u, double dt, double t, const StageOperator& L) {
  Field l = u;
  Field stage = u;
  auto raw_u = u.raw();
  auto s = stage.raw();
  auto d = l.raw();
  std::fill(d.begin(), d.end(), 0.0);

  L(u, l, t);
  for (std::size_t q = 0; q < s.size(); ++q) s[q] = raw_u[q] + dt * d[q];
  L(stage, l, t + dt);
  for (std::size_t q = 0; q < s.size(); ++q) {
    s[q] = 0.75 * raw_u[q] + 0.25 * (s[q] + dt * d[q]);
  }
  L(stage, l, t + 0.5 * dt);
  for (std::size_t q = 0; q < s.size(); ++q) {
    raw_u[q] = (1.0 / 3.0) * raw_u[q] + (2.0 / 3.0) * (s[q] + dt * d[q]);
  }
}

void ssprk3_step(const RhsContext& ctx, Field& u, double dt, double t) {
  ssprk3_step(u, dt, t, [&](Field& stage, Field& out, double ts) {
    fill_ghosts(stage, ctx.bc);
    rhs(ctx, stage, out, ts);
  });
  fill_ghosts(u, ctx.bc);
}

double total_entropy(const RhsContext& ctx, const Field& u) {
  double vol = ctx.mesh.x.h();
  if (ctx.model.dims() == 2) vol *= ctx.mesh.y.h();
  double sum = 0.0;
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      const double* c = u.cell(i, j);
      switch (ctx.model.kind) {
        case ModelKind::Advection:
        case ModelKind::Burgers:
          sum += 0.5 * c[0] * c[0];
          break;
        case ModelKind::Euler1D:
          sum += euler::entropy(euler::primitive<3>(c));
          break;
        case ModelKind::Euler2D:
          sum += euler::entropy(euler::primitive<4>(c));
          break;
      }
    }
  }
  return sum * vol;
}

namespace {

StepRecord inspect(const RhsContext& ctx, const Field& u, int step, double t,
                   double dt) {
  StepRecord rec{step, t, dt, 0.0, 0.0, 0.0};
  double min_rho = std::numeric_limits<double>::infinity();
  double min_p = min_rho;
  const int nv = u.n_vars();
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      const double* c = u.cell(i, j);
      for (int k = 0; k < nv; ++k) {
        if (!std::isfinite(c[k])) {
          std::ostringstream msg;
          msg << "non-finite value at cell (" << i << ", " << j << "), t = " << t;
          throw SolverError(SolverError::Kind::NonFinite, i, j, t, msg.str());
        }
      }
      if (ctx.model.is_euler()) {
        const euler::Prim w = nv == 3 ? euler::primitive<3>(c) : euler::primitive<4>(c);
        min_rho = std::min(min_rho, w.rho);
        min_p = std::min(min_p, w.p);
      }
    }
  }
  if (ctx.model.is_euler()) {
    rec.min_rho = min_rho;
    rec.min_p = min_p;
    check_positivity(ctx, u, t);
  }
  rec.entropy = total_entropy(ctx, u);
  return rec;
}

}  // namespace

EvolveResult evolve(const RhsContext& ctx, Field u0, const TimeControls& tc,
                    const std::function<void(const StepRecord&)>& on_step) {
  if (!(tc.cfl > 0.0) || !(tc.t_final >= 0.0)) {
    throw std::invalid_argument("cfl must be positive and t_final nonnegative");
  }
  check_shape(ctx, u0);
  EvolveResult res{std::move(u0), {}};
  fill_ghosts(res.u, ctx.bc);
  double t = 0.0;
  int step = 0;
  while (t < tc.t_final) {
    const double dt = compute_dt(ctx, res.u, tc, t);
    ssprk3_step(ctx, res.u, dt, t);
    ++step;
    t = dt >= tc.t_final - t ? tc.t_final : t + dt;
    res.log.push_back(inspect(ctx, res.u, step, t, dt));
    if (on_step) on_step(res.log.back());
  }
  return res;
}

}  // namespace tecno
