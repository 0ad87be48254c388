#include "tecno/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include <json.hpp>

#ifndef TECNO_DEFAULT_WEIGHTS
#define TECNO_DEFAULT_WEIGHTS "data/dsp_weno_default.json"
#endif

namespace tecno::harness {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("bad number for '" + key + "': '" + v + "'");
  }
  return out;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError("bad integer for '" + key + "': '" + v + "'");
  }
  return out;
}

std::vector<int> parse_mesh_list(const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int n = parse_int<int>("n", trim(item));
    if (n < 4) throw ConfigError("mesh size must be at least 4, got " + item);
    out.push_back(n);
  }
  if (out.empty()) throw ConfigError("empty mesh list");
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string stem_for(const RunConfig& cfg, int n) {
  return cfg.case_id + "_" + std::string(to_string(cfg.recon)) + "_n" + std::to_string(n);
}

json config_json(const RunConfig& cfg, int n) {
  const TestCase& c = find_case(cfg.case_id);
  json j;
  j["case"] = cfg.case_id;
  j["description"] = c.description;
  j["model"] = std::string(to_string(cfg.model));
  j["n"] = n;
  j["domain"] = c.model == ModelKind::Euler2D
                    ? json::array({c.x0, c.x1, c.y0, c.y1})
                    : json::array({c.x0, c.x1});
  j["recon"] = std::string(to_string(cfg.recon));
  j["diffusion"] = std::string(to_string(cfg.diffusion));
  j["cfl"] = cfg.cfl;
  j["t_final"] = cfg.t_final;
  j["bc"] = std::string(to_string(cfg.bc));
  j["seed"] = cfg.seed;
  j["reference"] = c.exact ? "exact"
                   : cfg.reference_n > 0 ? "eno3-fine-mesh-n" + std::to_string(cfg.reference_n)
                                         : "none";
  if (cfg.recon == ReconKind::DspWeno) {
    j["weights"] = {{"path", cfg.weights.string()},
                    {"git_blob_sha1", git_blob_sha1(cfg.weights)}};
  } else {
    j["weights"] = nullptr;
  }
  return j;
}

std::string solver_error_kind(SolverError::Kind k) {
  return k == SolverError::Kind::Positivity ? "positivity" : "non-finite";
}

}  // namespace

fs::path default_weights_path() { return TECNO_DEFAULT_WEIGHTS; }

std::optional<DiffusionKind> parse_diffusion(std::string_view s) {
  if (s == "roe") return DiffusionKind::Roe;
  if (s == "rusanov") return DiffusionKind::Rusanov;
  return std::nullopt;
}

std::optional<BoundaryKind> parse_bc(std::string_view s) {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "neumann") return BoundaryKind::Neumann;
  return std::nullopt;
}

std::string_view to_string(BoundaryKind b) {
  return b == BoundaryKind::Periodic ? "periodic" : "neumann";
}

KeyValues read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

RunConfig make_config(const KeyValues& kv) {
  const auto it = kv.find("case");
  if (it == kv.end() || it->second.empty()) throw ConfigError("missing 'case'");
  const TestCase* c = nullptr;
  try {
    c = &find_case(it->second);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  RunConfig cfg;
  cfg.case_id = c->id;
  cfg.model = c->model;
  cfg.n = {c->default_n};
  cfg.cfl = c->cfl;
  cfg.t_final = c->t_final;
  cfg.bc = c->bc;
  cfg.weights = default_weights_path();

  for (const auto& [key, value] : kv) {
    if (key == "case") {
      continue;
    } else if (key == "model") {
      if (value != to_string(c->model)) {
        throw ConfigError("case '" + c->id + "' uses model " +
                          std::string(to_string(c->model)) + ", not " + value);
      }
    } else if (key == "n") {
      cfg.n = parse_mesh_list(value);
    } else if (key == "recon") {
      const auto r = parse_recon(value);
      if (!r) throw ConfigError("unknown reconstruction '" + value + "'");
      cfg.recon = *r;
    } else if (key == "diffusion") {
      const auto d = parse_diffusion(value);
      if (!d) throw ConfigError("unknown diffusion '" + value + "'");
      cfg.diffusion = *d;
    } else if (key == "cfl") {
      cfg.cfl = parse_double(key, value);
      if (cfg.cfl <= 0.0) throw ConfigError("cfl must be positive");
    } else if (key == "t_final" || key == "tfinal") {
      cfg.t_final = parse_double(key, value);
      if (cfg.t_final < 0.0) throw ConfigError("t_final must be non-negative");
    } else if (key == "bc") {
      const auto b = parse_bc(value);
      if (!b) throw ConfigError("unknown boundary kind '" + value + "'");
      cfg.bc = *b;
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "weights") {
      cfg.weights = value;
    } else if (key == "reference_n") {
      cfg.reference_n = parse_int<int>(key, value);
      if (cfg.reference_n < 0) throw ConfigError("reference_n must be non-negative");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

Reconstructor make_reconstructor(const RunConfig& cfg) {
  if (cfg.recon != ReconKind::DspWeno) return Reconstructor(cfg.recon);
  return Reconstructor(ReconKind::DspWeno, dsp::load_params(cfg.weights));
}

RhsContext make_context(const RunConfig& cfg, int n) {
  const TestCase& c = find_case(cfg.case_id);
  return RhsContext{Model{c.model}, c.mesh(n), cfg.bc, make_reconstructor(cfg),
                    cfg.diffusion};
}

std::string git_blob_sha1(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

std::vector<std::string> variable_names(ModelKind m) {
  switch (m) {
    case ModelKind::Advection:
    case ModelKind::Burgers:
      return {"u"};
    case ModelKind::Euler1D:
      return {"rho", "u", "p"};
    case ModelKind::Euler2D:
      return {"rho", "u", "v", "p"};
  }
  return {};
}

namespace {

// PointState slot of each CSV variable.
std::vector<int> variable_slots(ModelKind m) {
  switch (m) {
    case ModelKind::Advection:
    case ModelKind::Burgers:
      return {0};
    case ModelKind::Euler1D:
      return {0, 1, 3};
    case ModelKind::Euler2D:
      return {0, 1, 2, 3};
  }
  return {};
}

std::vector<double> column(const std::vector<PointState>& v, int slot) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k][slot];
  return out;
}

}  // namespace

std::vector<PointState> point_values(const RhsContext& ctx, const Field& u) {
  std::vector<PointState> out;
  out.reserve(static_cast<std::size_t>(u.nx()) * u.ny());
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) out.push_back(point_state(ctx.model, u.cell(i, j)));
  }
  return out;
}

void write_solution_csv(const fs::path& path, const RhsContext& ctx, const Field& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const bool two_d = ctx.model.dims() == 2;
  out << (two_d ? "x,y" : "x");
  for (const std::string& name : variable_names(ctx.model.kind)) out << ',' << name;
  out << '\n';
  const std::vector<int> slots = variable_slots(ctx.model.kind);
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      const PointState s = point_state(ctx.model, u.cell(i, j));
      out << fmt17(ctx.mesh.x.center(i));
      if (two_d) out << ',' << fmt17(ctx.mesh.y.center(j));
      for (int k : slots) out << ',' << fmt17(s[k]);
      out << '\n';
    }
  }
}

void write_step_log_csv(const fs::path& path, const std::vector<StepRecord>& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "step,t,dt,entropy,min_rho,min_p\n";
  for (const StepRecord& r : log) {
    out << r.step << ',' << fmt17(r.t) << ',' << fmt17(r.dt) << ',' << fmt17(r.entropy)
        << ',' << fmt17(r.min_rho) << ',' << fmt17(r.min_p) << '\n';
  }
}

double overshoot_metric(std::span<const double> numeric,
                        std::span<const double> reference) {
  if (numeric.size() != reference.size() || numeric.empty()) {
    throw std::invalid_argument("overshoot_metric: grid mismatch");
  }
  const auto [nmin, nmax] = std::minmax_element(numeric.begin(), numeric.end());
  const auto [rmin, rmax] = std::minmax_element(reference.begin(), reference.end());
  return std::max(0.0, *nmax - *rmax) + std::max(0.0, *rmin - *nmin);
}

std::vector<PointState> nearest_cell_sample(const RhsContext& fine, const Field& fine_u,
                                            const RhsContext& coarse) {
  auto index = [](const Mesh1D& f, double x) {
    return std::clamp(static_cast<int>(std::floor((x - f.a) / f.h())), 0, f.n - 1);
  };
  const bool two_d = coarse.model.dims() == 2;
  const int ny = two_d ? coarse.mesh.y.n : 1;
  std::vector<PointState> out;
  out.reserve(static_cast<std::size_t>(coarse.mesh.x.n) * ny);
  for (int j = 0; j < ny; ++j) {
    const int fj = two_d ? index(fine.mesh.y, coarse.mesh.y.center(j)) : 0;
    for (int i = 0; i < coarse.mesh.x.n; ++i) {
      const int fi = index(fine.mesh.x, coarse.mesh.x.center(i));
      out.push_back(point_state(fine.model, fine_u.cell(fi, fj)));
    }
  }
  return out;
}

std::optional<std::vector<PointState>> reference_values(const RunConfig& cfg,
                                                        const RhsContext& ctx) {
  const TestCase& c = find_case(cfg.case_id);
  if (c.exact) {
    std::vector<PointState> out;
    const bool two_d = ctx.model.dims() == 2;
    const int ny = two_d ? ctx.mesh.y.n : 1;
    for (int j = 0; j < ny; ++j) {
      const double y = two_d ? ctx.mesh.y.center(j) : 0.0;
      for (int i = 0; i < ctx.mesh.x.n; ++i) {
        out.push_back(c.exact(ctx.mesh.x.center(i), y, cfg.t_final));
      }
    }
    return out;
  }
  if (cfg.reference_n <= 0) return std::nullopt;
  RunConfig ref = cfg;
  ref.recon = ReconKind::Eno3;
  const RhsContext fine = make_context(ref, cfg.reference_n);
  const EvolveResult r =
      evolve(fine, sample_field(fine, c.initial), {cfg.cfl, cfg.t_final});
  return nearest_cell_sample(fine, r.u, ctx);
}

RunResult run(const RunConfig& cfg) {
  if (cfg.n.empty()) throw ConfigError("no mesh size given");
  const int n = cfg.n.front();
  const TestCase& c = find_case(cfg.case_id);
  RhsContext ctx = make_context(cfg, n);
  json manifest = {{"config", config_json(cfg, n)}};

  fs::create_directories(cfg.out_dir);
  const std::string stem = stem_for(cfg, n);
  RunResult res;
  res.solution_csv = cfg.out_dir / (stem + ".csv");
  res.steps_csv = cfg.out_dir / (stem + "_steps.csv");
  res.manifest = cfg.out_dir / (stem + "_manifest.json");

  std::vector<StepRecord> log;
  const auto start = std::chrono::steady_clock::now();
  try {
    EvolveResult r = evolve(ctx, sample_field(ctx, c.initial), {cfg.cfl, cfg.t_final},
                            [&](const StepRecord& s) { log.push_back(s); });
    res.u = std::move(r.u);
    res.completed = true;
    res.t_reached = cfg.t_final;
  } catch (const SolverError& e) {
    res.solver_error = e;
    res.error = e.what();
    res.t_reached = log.empty() ? 0.0 : log.back().t;
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.steps = log.size();
  write_step_log_csv(res.steps_csv, log);

  json status;
  status["completed"] = res.completed;
  status["steps"] = res.steps;
  status["t_reached"] = res.t_reached;
  status["wall_seconds"] = res.wall_seconds;
  if (res.solver_error) {
    const SolverError& e = *res.solver_error;
    status["error"] = {{"kind", solver_error_kind(e.kind())},
                       {"i", e.i()},
                       {"j", e.j()},
                       {"t", e.time()},
                       {"message", e.what()}};
  }
  manifest["status"] = status;
  manifest["outputs"] = {{"steps", res.steps_csv.filename().string()}};

  if (res.completed) {
    write_solution_csv(res.solution_csv, ctx, res.u);
    manifest["outputs"]["solution"] = res.solution_csv.filename().string();
    if (const auto ref = reference_values(cfg, ctx)) {
      const std::vector<PointState> num = point_values(ctx, res.u);
      const double vol = ctx.model.dims() == 2 ? ctx.mesh.x.h() * ctx.mesh.y.h()
                                               : ctx.mesh.x.h();
      const std::vector<std::string> names = variable_names(ctx.model.kind);
      const std::vector<int> slots = variable_slots(ctx.model.kind);
      json errs = json::object();
      for (std::size_t k = 0; k < names.size(); ++k) {
        const std::vector<double> a = column(num, slots[k]), b = column(*ref, slots[k]);
        VarErrors v{names[k], {}, overshoot_metric(a, b)};
        for (std::size_t q = 0; q < a.size(); ++q) {
          const double e = std::abs(a[q] - b[q]);
          v.norms.l1 += vol * e;
          v.norms.l2 += vol * e * e;
          v.norms.linf = std::max(v.norms.linf, e);
        }
        v.norms.l2 = std::sqrt(v.norms.l2);
        errs[names[k]] = {{"l1", v.norms.l1},
                          {"l2", v.norms.l2},
                          {"linf", v.norms.linf},
                          {"overshoot", v.overshoot}};
        res.errors.push_back(v);
      }
      manifest["errors"] = errs;
    }
  }

  std::ofstream out(res.manifest);
  if (!out) throw std::runtime_error("cannot write " + res.manifest.string());
  out << manifest.dump(2) << '\n';
  return res;
}

std::optional<double> observed_rate(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0.0) || !(e2 > 0.0) || h1 == h2) return std::nullopt;
  return std::log(e1 / e2) / std::log(h1 / h2);
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg) {
  const TestCase& c = find_case(cfg.case_id);
  if (!c.exact) {
    throw ConfigError("case '" + c.id + "' has no exact solution for a convergence study");
  }
  std::vector<ConvergenceRow> rows;
  for (int n : cfg.n) {
    const RhsContext ctx = make_context(cfg, n);
    const auto start = std::chrono::steady_clock::now();
    const EvolveResult r =
        evolve(ctx, sample_field(ctx, c.initial), {cfg.cfl, cfg.t_final});
    ConvergenceRow row;
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.n = n;
    row.h = ctx.mesh.x.h();
    const Field exact = sample_field(
        ctx, [&](double x, double y) { return c.exact(x, y, cfg.t_final); });
    const double vol = ctx.model.dims() == 2 ? ctx.mesh.x.h() * ctx.mesh.y.h() : row.h;
    row.err = error_norms(r.u, exact, vol, 0);
    if (!rows.empty()) {
      const ConvergenceRow& p = rows.back();
      row.rate_l1 = observed_rate(p.err.l1, row.err.l1, p.h, row.h);
      row.rate_l2 = observed_rate(p.err.l2, row.err.l2, p.h, row.h);
      row.rate_linf = observed_rate(p.err.linf, row.err.linf, p.h, row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(const fs::path& path, const std::vector<ConvergenceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
  out << "n,h,l1,l2,linf,rate_l1,rate_l2,rate_linf,wall_seconds\n";
  for (const ConvergenceRow& r : rows) {
    out << r.n << ',' << fmt17(r.h) << ',' << fmt17(r.err.l1) << ',' << fmt17(r.err.l2)
        << ',' << fmt17(r.err.linf) << ',' << opt(r.rate_l1) << ',' << opt(r.rate_l2) << ','
        << opt(r.rate_linf) << ',' << fmt17(r.wall_seconds) << '\n';
  }
}

double inclined_sine(double x) { return std::sin(10.0 * std::numbers::pi * x) + x; }

double reconstruction_error(const Reconstructor& recon,
                            const std::function<double(double)>& u, int n) {
  const double h = 1.0 / n;
  // z[c] is cell c - 3.
  std::vector<double> z(n + 6);
  for (int c = 0; c < n + 6; ++c) z[c] = u((c - 3 + 0.5) * h);
  double sum = 0.0;
  for (int f = 2; f <= n - 2; ++f) {
    const ReconPair p = recon(std::span<const double, 6>(z.data() + f, 6));
    const double exact = u(f * h);
    sum += std::abs(p.minus - exact) + std::abs(p.plus - exact);
  }
  return sum / n;
}

std::vector<ReconAccuracyRow> reconstruction_accuracy(const Reconstructor& recon,
                                                      std::span<const int> meshes) {
  std::vector<ReconAccuracyRow> rows;
  for (int n : meshes) {
    ReconAccuracyRow r{n, reconstruction_error(recon, inclined_sine, n), std::nullopt};
    if (!rows.empty()) {
      r.rate = observed_rate(rows.back().error, r.error, 1.0 / rows.back().n, 1.0 / n);
    }
    rows.push_back(r);
  }
  return rows;
}

double pseudo_discontinuity(double x, double eps) {
  if (x < 0.0) return 0.5 * x;
  if (x <= eps) return x / eps;
  return x - eps + 1.0;
}

std::vector<InterfaceJump> pseudo_discontinuity_jumps(const Reconstructor& recon) {
  const int n = 1000;
  const Mesh1D mesh(-0.5, 0.5, n);
  const int inner = 500;  // cell [0, 0.001]
  std::vector<InterfaceJump> out;
  for (int face : {inner, inner + 1}) {
    std::array<double, 6> z;
    for (int k = 0; k < 6; ++k) z[k] = pseudo_discontinuity(mesh.center(face - 3 + k));
    const ReconPair p = recon(std::span<const double, 6>(z));
    out.push_back({face == inner ? "left" : "right", mesh.face(face), p.minus, p.plus});
  }
  return out;
}

}  // namespace tecno::harness
