// Acceptance suite. One criterion per invocation: `acceptance <id>`, or
// `acceptance all`. Prints one PASS/FAIL line per criterion and exits
// nonzero on failure. Run artifacts go to the working directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../support/hull.hpp"
#include "tecno/harness.hpp"
#include "tecno/training.hpp"

using namespace tecno;
namespace hr = tecno::harness;
using training::Rng;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
  void note(const std::string& what) {
    detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }
std::string fix(double v) { return fmt("%.2f", v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

dsp::MlpParams shipped() { return dsp::load_params(hr::default_weights_path()); }

Reconstructor recon_of(ReconKind k) {
  return k == ReconKind::DspWeno ? Reconstructor(k, shipped()) : Reconstructor(k);
}

std::string name_of(ReconKind k) { return std::string(to_string(k)); }

// Reconstruction accuracy on the inclined sine wave.

void recon_accuracy(Outcome& o) {
  const int meshes[] = {320, 640};
  const auto sp = hr::reconstruction_accuracy(recon_of(ReconKind::SpWeno), meshes);
  const auto spc = hr::reconstruction_accuracy(recon_of(ReconKind::SpWenoC), meshes);
  const auto eno = hr::reconstruction_accuracy(recon_of(ReconKind::Eno3), meshes);
  o.require(std::abs(sp[0].error / 3.29e-5 - 1.0) <= 0.02,
            "spweno E(320)=" + sci(sp[0].error) + " vs 3.29e-5");
  o.require(std::abs(eno[0].error / 7.42e-5 - 1.0) <= 0.02,
            "eno3 E(320)=" + sci(eno[0].error) + " vs 7.42e-5");
  o.require(*sp[1].rate >= 3.5, "spweno rate " + fix(*sp[1].rate) + " >= 3.5");
  o.require(*spc[1].rate >= 3.5, "spwenoc rate " + fix(*spc[1].rate) + " >= 3.5");
  o.require(*eno[1].rate >= 2.9, "eno3 rate " + fix(*eno[1].rate) + " >= 2.9");
}

void dsp_order(Outcome& o) {
  const int meshes[] = {160, 320, 640, 1280};
  const auto rows = hr::reconstruction_accuracy(recon_of(ReconKind::DspWeno), meshes);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    o.require(rows[k].error < rows[k - 1].error && *rows[k].rate >= 2.5,
              "N=" + std::to_string(rows[k].n) + " E=" + sci(rows[k].error) + " rate " +
                  fix(*rows[k].rate));
  }
}

// Convergence studies through the harness.

std::vector<hr::ConvergenceRow> converge(const std::string& id, ReconKind recon,
                                         const std::string& meshes) {
  hr::RunConfig cfg = hr::make_config({{"case", id}, {"n", meshes}, {"out", "."}});
  cfg.recon = recon;
  cfg.weights = hr::default_weights_path();
  const auto rows = hr::convergence_study(cfg);
  hr::write_convergence_csv(id + "_" + name_of(recon) + "_convergence.csv", rows);
  return rows;
}

void advection_smooth(Outcome& o) {
  const std::string meshes = "100,200,400,600,800,1000";
  const auto eno = converge("advection-1", ReconKind::Eno3, meshes);
  const double reference[] = {3.23e-5, 4.04e-6};
  for (int k = 0; k < 2; ++k) {
    const double ratio = eno[k].err.l1 / reference[k];
    o.require(ratio <= 3.0 && ratio >= 1.0 / 3.0,
              "eno3 L1(" + std::to_string(eno[k].n) + ")=" + sci(eno[k].err.l1) + " vs " +
                  sci(reference[k]));
  }
  for (std::size_t k = 1; k < eno.size(); ++k) {
    o.require(std::abs(*eno[k].rate_l1 - 3.0) <= 0.1,
              "eno3 rate@" + std::to_string(eno[k].n) + " " + fix(*eno[k].rate_l1));
  }
  const auto dsp = converge("advection-1", ReconKind::DspWeno, meshes);
  for (std::size_t k = 1; k < dsp.size(); ++k) {
    if (dsp[k].n < 400) continue;
    o.require(*dsp[k].rate_l1 >= 2.8,
              "dspweno rate@" + std::to_string(dsp[k].n) + " " + fix(*dsp[k].rate_l1));
  }
}

void advection_degraded(Outcome& o) {
  const std::string meshes = "800,1000";
  const auto eno = converge("advection-2", ReconKind::Eno3, meshes);
  o.require(*eno[1].rate_l1 < 2.0, "eno3 rate@1000 " + fix(*eno[1].rate_l1) + " < 2");
  for (ReconKind k : {ReconKind::SpWeno, ReconKind::SpWenoC, ReconKind::DspWeno}) {
    const auto rows = converge("advection-2", k, meshes);
    o.require(*rows[1].rate_l1 >= 2.8,
              name_of(k) + " rate@1000 " + fix(*rows[1].rate_l1) + " >= 2.8");
  }
}

void vortex(Outcome& o) {
  const std::string meshes = "50,100,150";
  const auto sp = converge("vortex", ReconKind::SpWeno, meshes);
  const auto dsp = converge("vortex", ReconKind::DspWeno, meshes);
  const auto eno = converge("vortex", ReconKind::Eno3, meshes);
  o.require(*sp[2].rate_l1 >= 3.3, "spweno rate@150 " + fix(*sp[2].rate_l1) + " >= 3.3");
  o.require(*dsp[2].rate_l1 >= 2.8, "dspweno rate@150 " + fix(*dsp[2].rate_l1) + " >= 2.8");
  o.require(*eno[2].rate_l1 < 2.8, "eno3 rate@150 " + fix(*eno[2].rate_l1) + " < 2.8");
}

// Stencil fuzzing.

// Stencils with common or per-entry scales 10^lo..10^hi, central jumps down
// to 1e-16 relative, ratios near 1, psi near -1, and smooth data.
Stencil4 fuzz_stencil(Rng& rng, double lo = -6.0, double hi = 6.0) {
  auto scale = [&] { return std::pow(10.0, rng.uniform(lo, hi)); };
  auto sym = [&] { return rng.uniform(-1.0, 1.0); };
  auto tiny = [&] {
    return (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::pow(10.0, rng.uniform(-16.0, -6.0));
  };
  const double s = scale();
  switch (rng.index(7)) {
    case 0:
      return {s * sym(), s * sym(), s * sym(), s * sym()};
    case 1:
      return {scale() * sym(), scale() * sym(), scale() * sym(), scale() * sym()};
    case 2: {
      const double z0 = s * sym();
      return {s * sym(), z0, z0 + s * tiny(), s * sym()};
    }
    case 3: {
      const double z0 = s * sym(), d0 = s * sym();
      return {z0 - d0 * (1.0 + tiny()), z0, z0 + d0, s * sym()};
    }
    case 4: {
      const double z0 = s * sym(), d0 = s * sym();
      return {s * sym(), z0, z0 + d0, z0 + d0 + d0 * (1.0 + tiny())};
    }
    case 5: {
      // theta+ + theta- = 2 up to a tiny offset, i.e. psi+ ~ -1.
      const double z0 = s * sym(), d0 = s * sym(), tp = 3.0 * sym();
      const double tm = 2.0 - tp + tiny();
      return {z0 - tp * d0, z0, z0 + d0, z0 + d0 + tm * d0};
    }
    default: {
      const double h = std::pow(10.0, rng.uniform(-4.0, -0.5));
      const double x = rng.uniform(0.0, 2.0);
      auto f = [&](double t) { return s * std::sin(std::numbers::pi * (x + t * h)); };
      return {f(-1), f(0), f(1), f(2)};
    }
  }
}

dsp::MlpParams random_params(Rng& rng) {
  dsp::MlpParams p;
  const double a = rng.uniform(0.5, 3.0);
  for (double& v : p.flat) v = rng.uniform(-a, a);
  return p;
}

constexpr int kFuzz = 1000000;

void sign_fuzz(Outcome& o, const dsp::MlpParams& trained, bool with_random) {
  Rng rng(kSeed);
  dsp::MlpParams random = random_params(rng);
  long bad[4] = {0, 0, 0, 0}, degenerate = 0;
  double worst[4] = {0, 0, 0, 0};
  for (int n = 0; n < kFuzz; ++n) {
    if (n % 1000 == 0) random = random_params(rng);
    const Stencil4 s = fuzz_stencil(rng);
    const auto j = jump_data(s);
    if (!j) {
      ++degenerate;
      continue;
    }
    WenoPerturbation c[4] = {spweno_perturbation(*j), spwenoc_perturbation(*j, s),
                             *dsp::dsp_weno_perturbation(random, s),
                             *dsp::dsp_weno_perturbation(trained, s)};
    for (int k = 0; k < 4; ++k) {
      if (k == 2 && !with_random) continue;
      const double b = sign_bracket(c[k], *j);
      worst[k] = std::min(worst[k], b);
      if (!(b >= -1e-12)) ++bad[k];
    }
  }
  const char* names[] = {"spweno", "spwenoc", "dsp-random", "dsp-trained"};
  for (int k = 0; k < 4; ++k) {
    if (k == 2 && !with_random) continue;
    o.require(bad[k] == 0, std::string(names[k]) + " violations " + std::to_string(bad[k]) +
                               " (min bracket " + sci(worst[k]) + ")");
  }
  o.note(std::to_string(degenerate) + " zero-jump stencils skipped");
}

// The bound carries an absolute 1e-12 slack, below the rounding of data
// much larger than 1e3, so the bound is checked on magnitudes 1e-6..1. The
// mixed-scale excess is reported in units of eps * max|z|.
void jump_hull_fuzz(Outcome& o, const dsp::MlpParams& trained, bool with_random) {
  Rng rng(kSeed + 1);
  dsp::MlpParams random = random_params(rng);
  long bound_bad[3] = {0, 0, 0}, hull_bad[2] = {0, 0}, spc_excursions = 0;
  double worst_excess = -1e300, worst_hull = 0.0;
  for (int n = 0; n < kFuzz; ++n) {
    if (n % 1000 == 0) random = random_params(rng);
    const Stencil4 s = fuzz_stencil(rng, -6.0, 0.0);
    const double bound = 0.5 * std::abs(s.z0 - s.zm1) + std::abs(s.zp1 - s.z0) +
                         0.5 * std::abs(s.zp2 - s.zp1);
    auto over = [&](ReconPair r) {
      const double e = std::abs(r.jump()) - bound;
      worst_excess = std::max(worst_excess, e);
      return !(e <= 1e-12);
    };
    if (over(spweno_reconstruct(s))) ++bound_bad[0];
    if (with_random && over(dsp::dsp_weno_reconstruct(random, s))) ++bound_bad[1];
    if (over(dsp::dsp_weno_reconstruct(trained, s))) ++bound_bad[2];
    if (std::abs(spwenoc_reconstruct(s).jump()) > bound + 1e-12) ++spc_excursions;

    const auto f = dsp::features(s);
    if (!f) continue;
    const VertexSet v = dsp::vertices_for(*f);
    for (int k = with_random ? 0 : 1; k < 2; ++k) {
      const dsp::MlpParams& p = k == 0 ? random : trained;
      const double d = testing::hull_distance(v, dsp::combine(v, dsp::mlp_forward(p, f->input)));
      worst_hull = std::max(worst_hull, d);
      if (!(d <= 1e-14)) ++hull_bad[k];
    }
  }
  o.require(bound_bad[0] == 0, "spweno bound violations " + std::to_string(bound_bad[0]));
  if (with_random)
    o.require(bound_bad[1] == 0, "dsp-random bound violations " + std::to_string(bound_bad[1]));
  o.require(bound_bad[2] == 0, "dsp-trained bound violations " + std::to_string(bound_bad[2]));
  if (with_random)
    o.require(hull_bad[0] == 0, "dsp-random hull exits " + std::to_string(hull_bad[0]));
  o.require(hull_bad[1] == 0, "dsp-trained hull exits " + std::to_string(hull_bad[1]));
  o.note("max |jump| - bound " + sci(worst_excess) + ", max hull distance " +
         sci(worst_hull) + ", spwenoc bound excursions " + std::to_string(spc_excursions) +
         " (not required)");

  double worst_ulps = 0.0;
  for (int n = 0; n < kFuzz; ++n) {
    const Stencil4 s = fuzz_stencil(rng);
    const double bound = 0.5 * std::abs(s.z0 - s.zm1) + std::abs(s.zp1 - s.z0) +
                         0.5 * std::abs(s.zp2 - s.zp1);
    const double mag = std::max({std::abs(s.zm1), std::abs(s.z0), std::abs(s.zp1),
                                 std::abs(s.zp2)});
    for (const ReconPair r : {spweno_reconstruct(s), dsp::dsp_weno_reconstruct(trained, s)}) {
      const double e = std::abs(r.jump()) - bound;
      if (e > 0.0) worst_ulps = std::max(worst_ulps, e / (mag * 0x1.0p-52));
    }
  }
  o.note("scales 1e-6..1e6: max excess " + fmt("%.1f", worst_ulps) + " eps*max|z|");
}

// Entropy-conservation identity with extended-precision v and Psi.

using LD = long double;

template <int N>
std::array<LD, N> entropy_vars_ld(const euler::Prim& w) {
  const LD rho = w.rho, u = w.u, v = w.v, p = w.p;
  const LD b = rho / (2 * p);
  const LD s = std::log(p) - 1.4L * std::log(rho);
  std::array<LD, N> out;
  out[0] = (1.4L - s) / 0.4L - b * (u * u + v * v);
  out[1] = 2 * b * u;
  if constexpr (N == 4) out[2] = 2 * b * v;
  out[N - 1] = -2 * b;
  return out;
}

template <int N>
double kepec_residual(const euler::Prim& l, const euler::Prim& r) {
  const auto f = euler::kepec_flux<N>(l, r);
  const auto vl = entropy_vars_ld<N>(l), vr = entropy_vars_ld<N>(r);
  LD s = 0;
  for (int k = 0; k < N; ++k) s += (vr[k] - vl[k]) * f[k];
  s -= static_cast<LD>(r.rho) * r.u - static_cast<LD>(l.rho) * l.u;
  return static_cast<double>(std::abs(s));
}

void ec_identity(Outcome& o) {
  Rng rng(kSeed);
  const ScalarModel adv{ScalarKind::Advection, 1.0};
  const ScalarModel burgers{ScalarKind::Burgers};
  // Psi = c u^2 / 2 for advection, u^3 / 6 for Burgers.
  auto scalar_residual = [](const ScalarModel& m, double a, double b) {
    const LD f = m.ec_flux(a, b);
    const LD la = a, lb = b;
    const LD psi = m.kind == ScalarKind::Advection ? (lb * lb - la * la) * m.c / 2
                                                   : (lb * lb * lb - la * la * la) / 6;
    return static_cast<double>(std::abs((lb - la) * f - psi));
  };
  double w_adv = 0, w_burg = 0, w1 = 0, w2 = 0;
  auto prim = [&](bool two_d) {
    return euler::Prim{rng.uniform(0.1, 10.0), rng.uniform(-5.0, 5.0),
                       two_d ? rng.uniform(-5.0, 5.0) : 0.0, rng.uniform(0.1, 10.0)};
  };
  for (int n = 0; n < 100000; ++n) {
    const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
    w_adv = std::max(w_adv, scalar_residual(adv, a, b));
    w_burg = std::max(w_burg, scalar_residual(burgers, a, b));
    const euler::Prim l1 = prim(false), r1 = prim(false);
    w1 = std::max(w1, kepec_residual<3>(l1, r1));
    const euler::Prim l2 = prim(true), r2 = prim(true);
    w2 = std::max(w2, kepec_residual<4>(l2, r2));
  }
  o.require(w_adv <= 1e-14, "advection " + sci(w_adv) + " <= 1e-14");
  o.require(w_burg <= 1e-14, "burgers " + sci(w_burg) + " <= 1e-14");
  o.require(w1 <= 1e-11, "kepec 1D " + sci(w1) + " <= 1e-11");
  o.require(w2 <= 1e-11, "kepec 2D " + sci(w2) + " <= 1e-11");
}

// Training.

// A central difference of size `step` is meaningless across a ReLU kink.
bool near_kink(const dsp::MlpParams& p, std::span<const training::Sample> batch,
               double step) {
  for (const auto& s : batch) {
    const auto f = dsp::features(s.stencil());
    if (!f) continue;
    dsp::ForwardTrace t;
    dsp::mlp_forward(p, f->input, t);
    for (int l = 0; l + 1 < dsp::kLayers; ++l)
      for (double z : t.pre[l])
        if (std::abs(z) < 1e3 * step) return true;
  }
  return false;
}

void gradient_check(Outcome& o) {
  const training::Dataset d = training::generate_dataset(kSeed, 4000);
  Rng rng(kSeed);
  const double step = 1e-6;
  int batches = 0, skipped = 0;
  double worst = 0.0;
  while (batches < 20 && skipped < 1000) {
    const dsp::MlpParams p = training::init_params(rng);
    std::vector<training::Sample> batch;
    for (int k = 0; k < 20; ++k) batch.push_back(d.samples[rng.index(4000)]);
    if (near_kink(p, batch, step)) {
      ++skipped;
      continue;
    }
    ++batches;
    const auto g = training::gradient(p, batch);
    double diff = 0.0, norm = 0.0;
    for (int k = 0; k < dsp::kParamCount; ++k) {
      dsp::MlpParams a = p, b = p;
      a.flat[k] += step;
      b.flat[k] -= step;
      const double fd = (training::loss(a, batch) - training::loss(b, batch)) / (2 * step);
      diff += (fd - g[k]) * (fd - g[k]);
      norm += g[k] * g[k];
    }
    worst = std::max(worst, std::sqrt(diff / norm));
  }
  o.require(batches == 20, std::to_string(batches) + " batches checked");
  o.require(worst <= 1e-5, "max relative error " + sci(worst) + " <= 1e-5");
  o.note(std::to_string(skipped) + " draws skipped near a ReLU kink");
}

void training_run(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  training::TrainConfig cfg;
  cfg.seed = kSeed;
  const training::TrainResult r = training::train(cfg);
  const double secs = seconds_since(t0);
  training::write_report_csv("training_report.csv", r);
  o.require(secs <= 600.0, "wall " + fix(secs) + " s <= 600");
  o.require(r.test_loss < 0.5 * r.untrained_test_loss,
            "test loss " + sci(r.test_loss) + " < 0.5 x untrained " +
                sci(r.untrained_test_loss));
  o.require(r.params == shipped(), "matches shipped weights");
  Outcome sign, hull;
  sign_fuzz(sign, r.params, false);
  jump_hull_fuzz(hull, r.params, false);
  o.require(sign.pass, "sign fuzz");
  o.require(hull.pass, "jump bound and hull fuzz");
}

// Shocks.

hr::RunResult run_case(const std::string& id, ReconKind recon, int n,
                       const hr::KeyValues& extra = {}) {
  hr::KeyValues kv{{"case", id}, {"n", std::to_string(n)}, {"out", "."}};
  for (const auto& [k, v] : extra) kv[k] = v;
  hr::RunConfig cfg = hr::make_config(kv);
  cfg.recon = recon;
  cfg.weights = hr::default_weights_path();
  return hr::run(cfg);
}

void shock_ordering(Outcome& o) {
  struct Item {
    const char* id;
    int n;
    const char* var;
  };
  for (const Item& it : {Item{"burgers-2", 400, "u"}, Item{"sod", 400, "rho"},
                         Item{"lax", 200, "rho"}}) {
    double m[3] = {0, 0, 0};
    const ReconKind kinds[] = {ReconKind::SpWeno, ReconKind::SpWenoC, ReconKind::DspWeno};
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const hr::RunResult r = run_case(it.id, kinds[k], it.n);
      ok = ok && r.completed;
      for (const auto& e : r.errors)
        if (e.name == it.var) m[k] = e.overshoot;
    }
    o.require(ok && m[2] < m[0] && m[2] < m[1],
              std::string(it.id) + " " + it.var + ": dsp " + sci(m[2]) + " spweno " +
                  sci(m[0]) + " spwenoc " + sci(m[1]));
  }
}

// 2D robustness.

struct LogMins {
  double rho = 1e300, p = 1e300;
  bool finite = true;
};

LogMins read_step_mins(const hr::fs::path& path) {
  LogMins m;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::strtod(cell.c_str(), nullptr));
    if (cols.size() < 6) continue;
    m.finite = m.finite && std::isfinite(cols[3]) && std::isfinite(cols[4]) &&
               std::isfinite(cols[5]);
    m.rho = std::min(m.rho, cols[4]);
    m.p = std::min(m.p, cols[5]);
  }
  return m;
}

void robust(Outcome& o, const std::string& id, int n, const hr::KeyValues& extra,
            std::vector<ReconKind> kinds) {
  for (ReconKind k : kinds) {
    const hr::RunResult r = run_case(id, k, n, extra);
    bool finite = r.completed;
    for (int j = 0; finite && j < r.u.ny(); ++j)
      for (int i = 0; finite && i < r.u.nx(); ++i)
        for (int v = 0; v < r.u.n_vars(); ++v) finite = finite && std::isfinite(r.u.cell(i, j)[v]);
    const LogMins m = read_step_mins(r.steps_csv);
    o.require(finite && m.finite && m.rho > 0 && m.p > 0,
              name_of(k) + (r.completed ? " t=" + fmt("%g", r.t_reached) : " aborted: " + r.error) +
                  " steps " + std::to_string(r.steps) + " min rho " + sci(m.rho) +
                  " min p " + sci(m.p));
  }
}

const std::vector<ReconKind> kAll = {ReconKind::Eno3, ReconKind::SpWeno, ReconKind::SpWenoC,
                                     ReconKind::DspWeno};

void pseudo_discontinuity(Outcome& o) {
  const auto sp = hr::pseudo_discontinuity_jumps(recon_of(ReconKind::SpWeno));
  const auto dsp = hr::pseudo_discontinuity_jumps(recon_of(ReconKind::DspWeno));
  const double ref = std::abs(sp[0].jump());
  for (const auto& j : dsp) {
    o.require(std::abs(j.jump()) >= 10.0 * ref,
              "dsp " + j.side + " jump " + sci(j.jump()) + " >= 10 x " + sci(ref));
  }
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"recon-accuracy", "reconstruction accuracy on the inclined sine", recon_accuracy},
      {"dsp-order", "DSP-WENO reconstruction order with shipped weights", dsp_order},
      {"advection-smooth", "linear advection test 1 errors and rates", advection_smooth},
      {"advection-degraded", "linear advection test 2 ENO3 degradation", advection_degraded},
      {"sign-fuzz", "sign property fuzz",
       [](Outcome& o) { sign_fuzz(o, shipped(), true); }},
      {"jump-hull-fuzz", "jump bound and hull membership fuzz",
       [](Outcome& o) { jump_hull_fuzz(o, shipped(), true); }},
      {"ec-identity", "entropy-conservative flux identity", ec_identity},
      {"gradient", "training gradient vs central differences", gradient_check},
      {"training", "training effectiveness and reproducibility", training_run},
      {"vortex", "isentropic vortex convergence", vortex},
      {"shock-ordering", "overshoot ordering on shock problems", shock_ordering},
      {"robust-riemann-12", "2D Riemann configuration 12 at 200^2",
       [](Outcome& o) { robust(o, "riemann-12", 200, {}, kAll); }},
      {"robust-kelvin-helmholtz", "Kelvin-Helmholtz at 128^2",
       [](Outcome& o) { robust(o, "kelvin-helmholtz", 128, {}, kAll); }},
      {"robust-riemann-3", "2D Riemann configuration 3 at 200^2, Rusanov diffusion",
       [](Outcome& o) { robust(o, "riemann-3", 200, {{"diffusion", "rusanov"}}, kAll); }},
      {"pseudo-discontinuity", "reconstructed jumps inside a steep ramp",
       pseudo_discontinuity},
  };
  return list;
}

bool run_one(const Criterion& c) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::printf("%s %s: %s | %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
              o.detail.str().c_str(), seconds_since(t0));
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <id>|all|--list\n");
    return 2;
  }
  const std::string arg = argv[1];
  if (arg == "--list") {
    for (const auto& c : criteria()) std::printf("%s\n", c.id);
    return 0;
  }
  bool all_pass = true, found = false;
  for (const auto& c : criteria()) {
    if (arg != "all" && arg != c.id) continue;
    found = true;
    all_pass = run_one(c) && all_pass;
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion '%s'\n", arg.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
