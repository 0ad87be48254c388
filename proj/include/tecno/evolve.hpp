#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tecno/mesh.hpp"
#include "tecno/physics.hpp"
#include "tecno/scheme.hpp"

/// TeCNO4 semi-discrete operator, CFL step selection and SSP-RK3 marching.
namespace tecno {

enum class ModelKind { Advection, Burgers, Euler1D, Euler2D };

struct Model {
  ModelKind kind = ModelKind::Advection;
  double advection_speed = 1.0;

  int n_vars() const {
    switch (kind) {
      case ModelKind::Euler1D:
        return 3;
      case ModelKind::Euler2D:
        return 4;
      default:
        return 1;
    }
  }
  int dims() const { return kind == ModelKind::Euler2D ? 2 : 1; }
  bool is_euler() const {
    return kind == ModelKind::Euler1D || kind == ModelKind::Euler2D;
  }
  ScalarModel scalar() const {
    return {kind == ModelKind::Burgers ? ScalarKind::Burgers : ScalarKind::Advection,
            advection_speed};
  }
};

std::string_view to_string(ModelKind k);

/// Diffusion eigenvalues for the Euler models; scalar models always use
/// a = (|f'(u_i)| + |f'(u_{i+1})|)/2.
enum class DiffusionKind { Roe, Rusanov };

std::string_view to_string(DiffusionKind k);

struct RhsContext {
  Model model;
  Mesh2D mesh;  // mesh.y unused in 1D
  BoundaryKind bc = BoundaryKind::Periodic;
  Reconstructor recon;
  DiffusionKind diffusion = DiffusionKind::Roe;
};

struct TimeControls {
  double cfl = 0.4;
  double t_final = 0.0;
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { Positivity, NonFinite };

  SolverError(Kind kind, int i, int j, double t, const std::string& what)
      : std::runtime_error(what), kind_(kind), i_(i), j_(j), t_(t) {}

  Kind kind() const { return kind_; }
  int i() const { return i_; }
  int j() const { return j_; }
  double time() const { return t_; }

 private:
  Kind kind_;
  int i_, j_;
  double t_;
};

/// Allocates an interior field with the model's shape.
Field make_field(const RhsContext& ctx);

/// Tendency -(f_{i+1/2} - f_{i-1/2})/h, summed over axes. `u` must have its
/// ghosts filled; `t` only labels errors. Throws SolverError on a
/// non-positive density or pressure.
void rhs(const RhsContext& ctx, const Field& u, Field& out, double t = 0.0);

/// 1D: cfl h / max|lambda|; 2D: cfl / (max|lx|/hx + max|ly|/hy). Returns
/// t_final - t when every wave speed vanishes; never exceeds t_final - t.
double compute_dt(const RhsContext& ctx, const Field& u,
                  const TimeControls& tc, double t);

/// L(stage, out, t) writes the tendency of `stage` into `out` (same shape);
/// it may modify the stage's ghost cells.
using StageOperator = std::function<void(Field&, Field&, double)>;

/// u1 = u + dt L(u); u2 = 3/4 u + 1/4 (u1 + dt L(u1));
/// u <- 1/3 u + 2/3 (u2 + dt L(u2)).
void ssprk3_step(Field& u, double dt, double t, const StageOperator& L);

/// One SSP-RK3 step of the TeCNO operator; ghosts are refilled before each
/// stage and after the update.
void ssprk3_step(const RhsContext& ctx, Field& u, double dt, double t = 0.0);

/// h * sum eta(u_i) (hx hy in 2D).
double total_entropy(const RhsContext& ctx, const Field& u);

struct StepRecord {
  int step = 0;
  double t = 0.0;  // time after the step
  double dt = 0.0;
  double entropy = 0.0;
  double min_rho = 0.0;  // Euler only
  double min_p = 0.0;    // Euler only
};

struct EvolveResult {
  Field u;
  std::vector<StepRecord> log;
};

EvolveResult evolve(const RhsContext& ctx, Field u0, const TimeControls& tc,
                    const std::function<void(const StepRecord&)>& on_step = {});

}  // namespace tecno
