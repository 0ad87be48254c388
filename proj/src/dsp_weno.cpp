#include "tecno/dsp_weno.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tecno::dsp {

Stencil4 scale_stencil(const Stencil4& s) {
  const double m = std::max({1.0, std::abs(s.zm1), std::abs(s.z0),
                             std::abs(s.zp1), std::abs(s.zp2)});
  return {s.zm1 / m, s.z0 / m, s.zp1 / m, s.zp2 / m};
}

std::optional<Features> features(const Stencil4& s) {
  const auto j = jump_data(s);
  if (!j) return std::nullopt;
  const Stencil4 z = scale_stencil(s);
  Features f;
  f.jumps = *j;
  f.s.theta_minus = j->theta_minus;
  f.s.theta_plus = j->theta_plus;
  f.s.aj_m = std::abs(z.z0 - z.zm1);
  f.s.aj_0 = std::abs(z.zp1 - z.z0);
  f.s.aj_p = std::abs(z.zp2 - z.zp1);
  f.input = {std::tanh(f.s.theta_minus), std::tanh(f.s.theta_plus), f.s.aj_m,
             f.s.aj_0, f.s.aj_p};
  return f;
}

void mlp_forward(const MlpParams& p, const NetInput& x, ForwardTrace& t) {
  NetInput a = x;
  for (int l = 0; l < kLayers; ++l) {
    t.in[l] = a;
    NetInput z;
    for (int r = 0; r < kWidth; ++r) {
      double acc = p.b(l, r);
      for (int c = 0; c < kWidth; ++c) acc += p.w(l, r, c) * a[c];
      z[r] = acc;
    }
    t.pre[l] = z;
    if (l + 1 < kLayers) {
      for (int r = 0; r < kWidth; ++r) a[r] = z[r] > 0.0 ? z[r] : 0.0;
    }
  }
  const NetInput& o = t.pre[kLayers - 1];
  const double m = *std::max_element(o.begin(), o.end());
  double sum = 0.0;
  for (int r = 0; r < kWidth; ++r) {
    t.alpha[r] = std::exp(o[r] - m);
    sum += t.alpha[r];
  }
  for (double& v : t.alpha) v /= sum;
}

ConvexWeights mlp_forward(const MlpParams& p, const NetInput& x) {
  ForwardTrace t;
  mlp_forward(p, x, t);
  return t.alpha;
}

WenoPerturbation combine(const VertexSet& v, const ConvexWeights& alpha) {
  WenoPerturbation c{0.0, 0.0};
  for (int s = 0; s < kWidth; ++s) {
    c.c1 += alpha[s] * v[s].c1;
    c.c2 += alpha[s] * v[s].c2;
  }
  return c;
}

VertexSet vertices_for(const Features& f) {
  return feasible_vertices(f.jumps, {f.s.aj_m, f.s.aj_0, f.s.aj_p});
}

std::optional<WenoPerturbation> dsp_weno_perturbation(const MlpParams& p,
                                                      const Stencil4& s) {
  const auto f = features(s);
  if (!f) return std::nullopt;
  return keep_sign(combine(vertices_for(*f), mlp_forward(p, f->input)), f->jumps);
}

ReconPair dsp_weno_reconstruct(const MlpParams& p, const Stencil4& s) {
  const auto c = dsp_weno_perturbation(p, s);
  if (!c) return {s.z0, s.zp1};
  return weno_reconstruct(s, *c);
}

using nlohmann::json;
using Kind = WeightsFileError::Kind;

std::string params_to_json(const MlpParams& p, const TrainingMeta& meta) {
  json layers = json::array();
  for (int l = 0; l < kLayers; ++l) {
    json w = json::array();
    json b = json::array();
    for (int r = 0; r < kWidth; ++r) {
      for (int c = 0; c < kWidth; ++c) w.push_back(p.w(l, r, c));
      b.push_back(p.b(l, r));
    }
    layers.push_back({{"rows", kWidth}, {"cols", kWidth}, {"w", w}, {"b", b}});
  }
  json doc;
  doc["format"] = kWeightsFormat;
  doc["layers"] = layers;
  doc["meta"] = {{"seed", meta.seed},
                 {"epochs", meta.epochs},
                 {"test_loss", std::isfinite(meta.test_loss)
                                   ? json(meta.test_loss)
                                   : json(nullptr)}};
  return doc.dump(2) + "\n";
}

namespace {

double number_at(const json& arr, std::size_t k) {
  const json& v = arr.at(k);
  if (!v.is_number()) {
    throw WeightsFileError(Kind::Malformed, "weights: non-numeric entry");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw WeightsFileError(Kind::Malformed, "weights: non-finite entry");
  }
  return x;
}

}  // namespace

MlpParams params_from_json(const std::string& text, TrainingMeta* meta) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw WeightsFileError(Kind::Malformed,
                           std::string("weights: parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw WeightsFileError(Kind::Malformed, "weights: top level must be an object");
  }
  if (!doc.contains("format") || !doc["format"].is_number_integer()) {
    throw WeightsFileError(Kind::UnknownVersion, "weights: missing format version");
  }
  if (doc["format"].get<int>() != kWeightsFormat) {
    throw WeightsFileError(Kind::UnknownVersion,
                           "weights: unknown format version " +
                               doc["format"].dump());
  }
  if (!doc.contains("layers") || !doc["layers"].is_array()) {
    throw WeightsFileError(Kind::Malformed, "weights: missing layers array");
  }
  const json& layers = doc["layers"];
  if (layers.size() != kLayers) {
    throw WeightsFileError(Kind::DimensionMismatch,
                           "weights: expected 4 layers, got " +
                               std::to_string(layers.size()));
  }
  MlpParams p;
  try {
    for (int l = 0; l < kLayers; ++l) {
      const json& layer = layers[l];
      const int rows = layer.at("rows").get<int>();
      const int cols = layer.at("cols").get<int>();
      const json& w = layer.at("w");
      const json& b = layer.at("b");
      if (rows != kWidth || cols != kWidth || !w.is_array() || !b.is_array() ||
          w.size() != kWidth * kWidth || b.size() != kWidth) {
        throw WeightsFileError(
            Kind::DimensionMismatch,
            "weights: layer " + std::to_string(l) + " is " +
                std::to_string(rows) + "x" + std::to_string(cols) +
                ", expected 5x5 with 25 weights and 5 biases");
      }
      for (int r = 0; r < kWidth; ++r) {
        for (int c = 0; c < kWidth; ++c) {
          p.w(l, r, c) = number_at(w, r * kWidth + c);
        }
        p.b(l, r) = number_at(b, r);
      }
    }
  } catch (const json::exception& e) {
    throw WeightsFileError(Kind::Malformed,
                           std::string("weights: bad layer: ") + e.what());
  }
  if (meta) {
    *meta = {};
    if (doc.contains("meta") && doc["meta"].is_object()) {
      const json& m = doc["meta"];
      if (m.contains("seed") && m["seed"].is_number_unsigned()) {
        meta->seed = m["seed"].get<std::uint64_t>();
      }
      if (m.contains("epochs") && m["epochs"].is_number_integer()) {
        meta->epochs = m["epochs"].get<int>();
      }
      if (m.contains("test_loss") && m["test_loss"].is_number()) {
        meta->test_loss = m["test_loss"].get<double>();
      }
    }
  }
  return p;
}

void save_params(const std::filesystem::path& path, const MlpParams& p,
                 const TrainingMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw WeightsFileError(Kind::Io, "weights: cannot write " + path.string());
  }
  out << params_to_json(p, meta);
}

MlpParams load_params(const std::filesystem::path& path, TrainingMeta* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw WeightsFileError(Kind::Io, "weights: cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return params_from_json(ss.str(), meta);
}

}  // namespace tecno::dsp
