// Python bindings: reconstructions, the case catalog, runs, convergence
// studies, reconstruction studies, training and weights files.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tecno/harness.hpp"
#include "tecno/training.hpp"

namespace py = pybind11;
using namespace tecno;
namespace hr = tecno::harness;

namespace {

ReconKind recon_kind(const std::string& name) {
  const auto k = parse_recon(name);
  if (!k) throw py::value_error("unknown reconstruction '" + name + "'");
  return *k;
}

Reconstructor make_recon(const std::string& name, const std::optional<std::string>& weights) {
  const ReconKind k = recon_kind(name);
  if (k != ReconKind::DspWeno) return Reconstructor(k);
  return Reconstructor(k, dsp::load_params(weights ? hr::fs::path(*weights)
                                                   : hr::default_weights_path()));
}

py::dict norms_dict(const ErrorNorms& e) {
  py::dict d;
  d["l1"] = e.l1;
  d["l2"] = e.l2;
  d["linf"] = e.linf;
  return d;
}

py::object rate(const std::optional<double>& r) {
  return r ? py::object(py::float_(*r)) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_tecno, m) {
  m.doc() = "Entropy-stable TeCNO solver with SP-WENO and DSP-WENO reconstructions";

  py::register_exception<hr::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<dsp::WeightsFileError>(m, "WeightsFileError", PyExc_ValueError);

  m.def("default_weights_path", [] { return hr::default_weights_path().string(); });

  m.def(
      "reconstruct",
      [](const std::string& recon, const std::vector<double>& z,
         const std::optional<std::string>& weights) {
        if (z.size() != 6) throw py::value_error("expected six values z[i-2..i+3]");
        const ReconPair r = make_recon(recon, weights)(std::span<const double, 6>(z.data(), 6));
        return py::make_tuple(r.minus, r.plus);
      },
      py::arg("recon"), py::arg("z"), py::arg("weights") = py::none(),
      "Interface values (z-, z+) at the face between z[2] and z[3].");

  m.def(
      "sign_bracket",
      [](const std::string& recon, const std::vector<double>& z,
         const std::optional<std::string>& weights) -> py::object {
        if (z.size() != 4) throw py::value_error("expected four values z[i-1..i+2]");
        const Stencil4 s{z[0], z[1], z[2], z[3]};
        const auto j = jump_data(s);
        if (!j) return py::none();
        WenoPerturbation c;
        switch (recon_kind(recon)) {
          case ReconKind::SpWeno:
            c = spweno_perturbation(*j);
            break;
          case ReconKind::SpWenoC:
            c = spwenoc_perturbation(*j, s);
            break;
          case ReconKind::DspWeno:
            c = *dsp::dsp_weno_perturbation(
                dsp::load_params(weights ? *weights : hr::default_weights_path().string()), s);
            break;
          default:
            throw py::value_error("sign bracket is defined for the WENO variants");
        }
        return py::float_(sign_bracket(c, *j));
      },
      py::arg("recon"), py::arg("z"), py::arg("weights") = py::none(),
      "Sign bracket of the perturbation on four values; None on a zero central jump.");

  m.def("cases", [] {
    py::list out;
    for (const TestCase& c : catalog()) {
      py::dict d;
      d["id"] = c.id;
      d["model"] = std::string(to_string(c.model));
      d["description"] = c.description;
      d["default_n"] = c.default_n;
      d["cfl"] = c.cfl;
      d["t_final"] = c.t_final;
      d["exact"] = static_cast<bool>(c.exact);
      out.append(d);
    }
    return out;
  });

  m.def(
      "run",
      [](const hr::KeyValues& config) {
        const hr::RunResult r = hr::run(hr::make_config(config));
        py::dict d;
        d["completed"] = r.completed;
        d["error"] = r.error;
        d["steps"] = r.steps;
        d["t_reached"] = r.t_reached;
        d["wall_seconds"] = r.wall_seconds;
        py::dict errors;
        for (const auto& v : r.errors) {
          py::dict e = norms_dict(v.norms);
          e["overshoot"] = v.overshoot;
          errors[py::str(v.name)] = e;
        }
        d["errors"] = errors;
        d["solution_csv"] = r.solution_csv.string();
        d["steps_csv"] = r.steps_csv.string();
        d["manifest"] = r.manifest.string();
        return d;
      },
      py::arg("config"),
      "One run from config keys as in the CLI config file; writes CSVs and a manifest.");

  m.def(
      "convergence",
      [](const hr::KeyValues& config) {
        py::list out;
        for (const auto& row : hr::convergence_study(hr::make_config(config))) {
          py::dict d = norms_dict(row.err);
          d["n"] = row.n;
          d["h"] = row.h;
          d["rate_l1"] = rate(row.rate_l1);
          d["rate_l2"] = rate(row.rate_l2);
          d["rate_linf"] = rate(row.rate_linf);
          out.append(d);
        }
        return out;
      },
      py::arg("config"));

  m.def(
      "reconstruction_accuracy",
      [](const std::string& recon, const std::vector<int>& meshes,
         const std::optional<std::string>& weights) {
        py::list out;
        for (const auto& row : hr::reconstruction_accuracy(make_recon(recon, weights), meshes)) {
          py::dict d;
          d["n"] = row.n;
          d["error"] = row.error;
          d["rate"] = rate(row.rate);
          out.append(d);
        }
        return out;
      },
      py::arg("recon"), py::arg("meshes"), py::arg("weights") = py::none(),
      "Averaged interface error on sin(10 pi x) + x.");

  m.def(
      "pseudo_discontinuity_jumps",
      [](const std::string& recon, const std::optional<std::string>& weights) {
        py::list out;
        for (const auto& j : hr::pseudo_discontinuity_jumps(make_recon(recon, weights))) {
          py::dict d;
          d["side"] = j.side;
          d["x"] = j.x;
          d["z_minus"] = j.z_minus;
          d["z_plus"] = j.z_plus;
          d["jump"] = j.jump();
          out.append(d);
        }
        return out;
      },
      py::arg("recon"), py::arg("weights") = py::none());

  m.def(
      "train",
      [](std::uint64_t seed, int runs, int epochs, int batch_size, int dataset_size,
         const std::optional<std::string>& out) {
        training::TrainConfig cfg;
        cfg.seed = seed;
        cfg.runs = runs;
        cfg.epochs = epochs;
        cfg.batch_size = batch_size;
        cfg.dataset_size = dataset_size;
        training::TrainResult r;
        {
          py::gil_scoped_release release;
          r = training::train(cfg);
        }
        if (out) dsp::save_params(*out, r.params, {cfg.seed, cfg.epochs, r.test_loss});
        py::dict d;
        d["chosen_run"] = r.chosen_run;
        d["test_loss"] = r.test_loss;
        d["untrained_test_loss"] = r.untrained_test_loss;
        d["run_test_loss"] = r.run_test_loss;
        d["params"] = std::vector<double>(r.params.flat.begin(), r.params.flat.end());
        return d;
      },
      py::arg("seed") = 20240601, py::arg("runs") = 5, py::arg("epochs") = 50,
      py::arg("batch_size") = 500, py::arg("dataset_size") = 100000,
      py::arg("out") = py::none());

  m.def("load_weights", [](const std::string& path) {
    const dsp::MlpParams p = dsp::load_params(path);
    return std::vector<double>(p.flat.begin(), p.flat.end());
  });

  m.def("git_blob_sha1", [](const std::string& path) { return hr::git_blob_sha1(path); });
}
