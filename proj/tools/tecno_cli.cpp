// Command-line driver: solve, converge, train, recon-study.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "tecno/harness.hpp"
#include "tecno/training.hpp"

using namespace tecno;
namespace hr = tecno::harness;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSolverAbort = 2;

struct RunOptions {
  std::string config;
  hr::KeyValues overrides;
};

void add_run_options(CLI::App* app, RunOptions& o) {
  app->add_option("-c,--config", o.config, "key = value config file");
  auto kv = [&o, app](const char* flag, const char* key, const char* help) {
    app->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.overrides[key] = v; }, help);
  };
  kv("--case", "case", "test case id (see `tecno solve --list`)");
  kv("--n", "n", "mesh size(s), comma separated");
  kv("--recon", "recon", "eno3 | spweno | spwenoc | dspweno");
  kv("--cfl", "cfl", "CFL number");
  kv("--tfinal", "t_final", "final time");
  kv("--bc", "bc", "periodic | neumann");
  kv("--diffusion", "diffusion", "roe | rusanov");
  kv("--weights", "weights", "DSP-WENO weights JSON");
  kv("--out", "out", "output directory");
  kv("--seed", "seed", "seed echoed into the manifest");
  kv("--reference-n", "reference_n", "fine ENO3 mesh for cases without an exact solution");
}

hr::RunConfig resolve(const RunOptions& o) {
  hr::KeyValues kv;
  if (!o.config.empty()) kv = hr::read_config_file(o.config);
  for (const auto& [k, v] : o.overrides) kv[k] = v;
  return hr::make_config(kv);
}

void print_solver_error(const SolverError& e) {
  std::fprintf(stderr, "error: solver-abort kind=%s i=%d j=%d t=%.17g: %s\n",
               e.kind() == SolverError::Kind::Positivity ? "positivity" : "non-finite",
               e.i(), e.j(), e.time(), e.what());
}

std::string rate_str(const std::optional<double>& r) {
  if (!r) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *r);
  return buf;
}

int cmd_list() {
  for (const TestCase& c : catalog()) {
    std::printf("%-18s %-9s n=%-4d cfl=%-4g T=%-5g %s (%s reference)\n", c.id.c_str(),
                std::string(to_string(c.model)).c_str(), c.default_n, c.cfl, c.t_final,
                c.description.c_str(), c.exact ? "exact" : "fine-mesh");
  }
  return kOk;
}

int cmd_solve(const RunOptions& o) {
  const hr::RunConfig cfg = resolve(o);
  const hr::RunResult r = hr::run(cfg);
  std::printf("%s n=%d recon=%s: %s after %zu steps, t=%.6g (%.2fs)\n", cfg.case_id.c_str(),
              cfg.n.front(), std::string(to_string(cfg.recon)).c_str(),
              r.completed ? "completed" : "aborted", r.steps, r.t_reached, r.wall_seconds);
  for (const hr::VarErrors& v : r.errors) {
    std::printf("  %-4s L1=%.6e L2=%.6e Linf=%.6e overshoot=%.6e\n", v.name.c_str(),
                v.norms.l1, v.norms.l2, v.norms.linf, v.overshoot);
  }
  std::printf("  manifest: %s\n", r.manifest.string().c_str());
  if (r.solver_error) {
    print_solver_error(*r.solver_error);
    return kSolverAbort;
  }
  return kOk;
}

int cmd_converge(const RunOptions& o) {
  const hr::RunConfig cfg = resolve(o);
  const auto rows = hr::convergence_study(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = cfg.out_dir / (cfg.case_id + "_" + std::string(to_string(cfg.recon)) +
                                   "_convergence.csv");
  hr::write_convergence_csv(path, rows);
  std::printf("%6s %12s %8s %12s %8s %12s %8s\n", "n", "L1", "rate", "L2", "rate", "Linf",
              "rate");
  for (const auto& r : rows) {
    std::printf("%6d %12.4e %8s %12.4e %8s %12.4e %8s\n", r.n, r.err.l1,
                rate_str(r.rate_l1).c_str(), r.err.l2, rate_str(r.rate_l2).c_str(),
                r.err.linf, rate_str(r.rate_linf).c_str());
  }
  std::printf("wrote %s\n", path.string().c_str());
  return kOk;
}

struct TrainOptions {
  std::uint64_t seed = 20240601;
  std::string out = hr::default_weights_path().string();
  std::string report;
  int runs = 5, epochs = 50, batch = 500, dataset = 100000;
  bool squared = false;
};

int cmd_train(const TrainOptions& o) {
  training::TrainConfig cfg;
  cfg.seed = o.seed;
  cfg.runs = o.runs;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch;
  cfg.dataset_size = o.dataset;
  cfg.loss = o.squared ? training::LossKind::SquaredNorm : training::LossKind::Norm;
  const training::Dataset data = training::generate_dataset(cfg.seed, cfg.dataset_size);
  const training::TrainResult r =
      training::train(cfg, data, [&](const training::EpochRecord& e) {
        if (e.epoch == cfg.epochs) {
          std::printf("run %d: train %.4e val %.4e test %.4e\n", e.run, e.train, e.val,
                      e.test);
          std::fflush(stdout);
        }
      });
  const std::filesystem::path out(o.out);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  dsp::save_params(out, r.params, {cfg.seed, cfg.epochs, r.test_loss});
  const std::filesystem::path report =
      o.report.empty() ? std::filesystem::path(out).replace_extension(".report.csv")
                       : std::filesystem::path(o.report);
  training::write_report_csv(report, r);
  std::printf("chosen run %d, test loss %.4e (untrained %.4e)\nwrote %s and %s\n",
              r.chosen_run, r.test_loss, r.untrained_test_loss, out.string().c_str(),
              report.string().c_str());
  return kOk;
}

struct StudyOptions {
  std::string study = "inclined-sine";
  std::vector<std::string> recons{"eno3", "spweno", "spwenoc", "dspweno"};
  std::vector<int> n{40, 80, 160, 320, 640, 1280};
  std::string weights = hr::default_weights_path().string();
  std::string out = "out";
};

int cmd_recon_study(const StudyOptions& o) {
  std::vector<Reconstructor> recons;
  for (const std::string& name : o.recons) {
    const auto k = parse_recon(name);
    if (!k) throw hr::ConfigError("unknown reconstruction '" + name + "'");
    recons.push_back(*k == ReconKind::DspWeno
                         ? Reconstructor(*k, dsp::load_params(o.weights))
                         : Reconstructor(*k));
  }
  std::filesystem::create_directories(o.out);
  const auto path = std::filesystem::path(o.out) / (o.study + ".csv");
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot write " + path.string());
  csv.precision(17);
  if (o.study == "inclined-sine") {
    csv << "recon,n,error,rate\n";
    for (const Reconstructor& r : recons) {
      const std::string name(to_string(r.kind()));
      for (const auto& row : hr::reconstruction_accuracy(r, o.n)) {
        csv << name << ',' << row.n << ',' << row.error << ',';
        if (row.rate) csv << *row.rate;
        csv << '\n';
        std::printf("%-8s n=%-5d E_h=%.3e rate=%s\n", name.c_str(), row.n, row.error,
                    rate_str(row.rate).c_str());
      }
    }
  } else if (o.study == "pseudo-discontinuity") {
    csv << "recon,face,x,z_minus,z_plus,jump\n";
    for (const Reconstructor& r : recons) {
      const std::string name(to_string(r.kind()));
      for (const auto& j : hr::pseudo_discontinuity_jumps(r)) {
        csv << name << ',' << j.side << ',' << j.x << ',' << j.z_minus << ',' << j.z_plus
            << ',' << j.jump() << '\n';
        std::printf("%-8s %-5s face x=%.4f z-=%.6f z+=%.6f jump=%.6e\n", name.c_str(),
                    j.side.c_str(), j.x, j.z_minus, j.z_plus, j.jump());
      }
    }
  } else {
    throw hr::ConfigError("unknown study '" + o.study +
                          "' (inclined-sine | pseudo-discontinuity)");
  }
  std::printf("wrote %s\n", path.string().c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-stable TeCNO solver with SP-WENO and DSP-WENO reconstructions"};
  app.require_subcommand(1);

  RunOptions solve_opts, converge_opts;
  bool list = false;
  auto* solve = app.add_subcommand("solve", "run one case and write CSV + manifest");
  add_run_options(solve, solve_opts);
  solve->add_flag("--list", list, "list the case catalog and exit");

  auto* converge = app.add_subcommand("converge", "L1/L2/Linf errors and rates over meshes");
  add_run_options(converge, converge_opts);

  TrainOptions train_opts;
  auto* train = app.add_subcommand("train", "train DSP-WENO weights");
  train->add_option("--seed", train_opts.seed, "master seed")->capture_default_str();
  train->add_option("--out", train_opts.out, "weights JSON")->capture_default_str();
  train->add_option("--report", train_opts.report, "report CSV (default: next to weights)");
  train->add_option("--runs", train_opts.runs)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--epochs", train_opts.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--batch", train_opts.batch)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--dataset-size", train_opts.dataset)
      ->capture_default_str()
      ->check(CLI::Range(10, 10000000));
  train->add_flag("--squared-loss", train_opts.squared, "mean of squared norms");

  StudyOptions study_opts;
  auto* study = app.add_subcommand("recon-study", "reconstruction-only studies");
  study->add_option("--study", study_opts.study, "inclined-sine | pseudo-discontinuity")
      ->capture_default_str();
  study->add_option("--recon", study_opts.recons, "reconstructions")->delimiter(',');
  study->add_option("--n", study_opts.n, "meshes for inclined-sine")->delimiter(',');
  study->add_option("--weights", study_opts.weights)->capture_default_str();
  study->add_option("--out", study_opts.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return list ? cmd_list() : cmd_solve(solve_opts);
    if (converge->parsed()) return cmd_converge(converge_opts);
    if (train->parsed()) return cmd_train(train_opts);
    if (study->parsed()) return cmd_recon_study(study_opts);
  } catch (const SolverError& e) {
    print_solver_error(e);
    return kSolverAbort;
  } catch (const hr::ConfigError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kUsage;
  } catch (const dsp::WeightsFileError& e) {
    std::fprintf(stderr, "error: weights: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
