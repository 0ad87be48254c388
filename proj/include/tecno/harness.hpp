#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tecno/cases.hpp"

/// Experiment driver: configuration, runs with on-disk artifacts,
/// convergence studies, overshoot metrics and reconstruction studies.
namespace tecno::harness {

namespace fs = std::filesystem;

/// Path of the weights file shipped with the sources.
fs::path default_weights_path();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string case_id;
  ModelKind model = ModelKind::Advection;
  std::vector<int> n;
  ReconKind recon = ReconKind::SpWeno;
  DiffusionKind diffusion = DiffusionKind::Roe;
  double cfl = 0.4;
  double t_final = 0.0;
  BoundaryKind bc = BoundaryKind::Periodic;
  std::uint64_t seed = 20240601;
  fs::path out_dir = "out";
  fs::path weights;
  /// Fine mesh for the reference when the case has no exact solution;
  /// 0 disables the reference.
  int reference_n = 0;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses a flat `key = value` file; `#` starts a comment.
KeyValues read_config_file(const fs::path& path);

/// Case defaults first, then every key in `kv` on top. Throws ConfigError
/// on unknown keys or bad values.
RunConfig make_config(const KeyValues& kv);

std::optional<DiffusionKind> parse_diffusion(std::string_view s);
std::optional<BoundaryKind> parse_bc(std::string_view s);
std::string_view to_string(BoundaryKind b);

/// Reconstructor for `cfg`, loading the weights file for DSP-WENO.
Reconstructor make_reconstructor(const RunConfig& cfg);
RhsContext make_context(const RunConfig& cfg, int n);

/// Lowercase hex SHA-1 of "blob <size>\0<content>", as `git hash-object`.
std::string git_blob_sha1(const fs::path& path);

/// Variable names of the CSV columns, after the coordinates.
std::vector<std::string> variable_names(ModelKind m);

/// Writes x[,y] and the primitive variables, one row per interior cell.
void write_solution_csv(const fs::path& path, const RhsContext& ctx, const Field& u);
void write_step_log_csv(const fs::path& path, const std::vector<StepRecord>& log);

/// Point values per cell and variable, primitive for Euler; row-major, x
/// fastest.
std::vector<PointState> point_values(const RhsContext& ctx, const Field& u);

/// max(0, max num - max ref) + max(0, min ref - min num). Throws
/// std::invalid_argument on a size mismatch.
double overshoot_metric(std::span<const double> numeric,
                        std::span<const double> reference);

/// Samples a fine solution at the coarse cell centers by taking the fine
/// cell that contains each center.
std::vector<PointState> nearest_cell_sample(const RhsContext& fine,
                                            const Field& fine_u,
                                            const RhsContext& coarse);

/// Reference point values on the coarse grid at t_final: exact when the case
/// has one, else a fine ENO3 run with `cfg.reference_n` cells per direction.
std::optional<std::vector<PointState>> reference_values(const RunConfig& cfg,
                                                        const RhsContext& ctx);

struct VarErrors {
  std::string name;
  ErrorNorms norms;
  double overshoot = 0.0;
};

struct RunResult {
  bool completed = false;
  std::string error;  // empty when completed
  std::optional<SolverError> solver_error;
  Field u;
  double t_reached = 0.0;
  std::size_t steps = 0;
  double wall_seconds = 0.0;
  std::vector<VarErrors> errors;  // empty without a reference
  fs::path solution_csv, steps_csv, manifest;
};

/// One run at mesh size `cfg.n.front()`; writes
/// <case>_<recon>_n<N>.csv, ..._steps.csv and ..._manifest.json to out_dir.
/// Solver aborts are reported in the result and manifest, not thrown.
RunResult run(const RunConfig& cfg);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  ErrorNorms err;
  /// Empty for the first row or when an error is zero.
  std::optional<double> rate_l1, rate_l2, rate_linf;
  double wall_seconds = 0.0;
};

/// ln(e1 / e2) / ln(h1 / h2); empty when either error is not positive.
std::optional<double> observed_rate(double e1, double e2, double h1, double h2);

/// Errors of variable 0 (density for Euler) against the exact solution for
/// each mesh in cfg.n. Throws ConfigError when the case has no exact
/// solution and SolverError on aborts.
std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg);
void write_convergence_csv(const fs::path& path, const std::vector<ConvergenceRow>& rows);

// Reconstruction studies on point-value data, no time stepping.

/// u(x) = sin(10 pi x) + x on [0, 1].
double inclined_sine(double x);

/// Averaged two-sided interface error of `recon` for `u` sampled at the cell
/// centers of [0, 1] with N cells. Faces whose four-point stencil leaves the
/// domain are skipped; the outer ENO3 cells are sampled from u.
double reconstruction_error(const Reconstructor& recon, const std::function<double(double)>& u,
                            int n);

struct ReconAccuracyRow {
  int n = 0;
  double error = 0.0;
  std::optional<double> rate;
};
std::vector<ReconAccuracyRow> reconstruction_accuracy(const Reconstructor& recon,
                                                      std::span<const int> meshes);

/// Piecewise-linear profile with one cell inside a steep ramp: x/2 on
/// [-0.5, 0), x/eps on [0, eps], x - eps + 1 on (eps, 0.5].
double pseudo_discontinuity(double x, double eps = 1e-3);

struct InterfaceJump {
  std::string side;  // "left" or "right" face of the inner cell
  double x = 0.0;
  double z_minus = 0.0, z_plus = 0.0;
  double jump() const { return z_plus - z_minus; }
};

/// Reconstructed jumps at both faces of the cell [0, eps] with N = 1000 cells
/// on [-0.5, 0.5].
std::vector<InterfaceJump> pseudo_discontinuity_jumps(const Reconstructor& recon);

}  // namespace tecno::harness
