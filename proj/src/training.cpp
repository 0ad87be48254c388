#include "tecno/training.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tecno::training {

using dsp::kLayers;
using dsp::kWidth;
using dsp::MlpParams;

namespace {

constexpr double kMeshSizes[3] = {1.0 / 40, 1.0 / 100, 1.0 / 200};

void shuffle(std::vector<int>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[rng.index(i + 1)]);
  }
}

Sample smooth_sample(SampleKind kind, Rng& rng) {
  Sample s;
  s.kind = kind;
  for (;;) {
    const double h = kMeshSizes[rng.index(3)];
    const int n = static_cast<int>(std::lround(1.0 / h));
    const int i = 1 + rng.index(n - 3);
    std::function<double(double)> u;
    if (kind == SampleKind::Cubic) {
      const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
      const double c = rng.uniform(-10, 10), d = rng.uniform(-10, 10);
      u = [=](double x) { return ((a * x + b) * x + c) * x + d; };
    } else if (kind == SampleKind::ShiftedCubic) {
      const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
      const double c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
      u = [=](double x) { return (x - a) * (x - b) * (x - c) + d; };
    } else {
      const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
      u = [=](double x) { return std::sin(a * std::numbers::pi * x + b); };
    }
    for (int k = 0; k < 4; ++k) s.x[k] = u((i - 1 + k + 0.5) * h);
    const double xc = (i + 1) * h;
    s.y = {u(xc), u(xc)};
    s.h = h;
    if (s.x[2] != s.x[1]) return s;
  }
}

Sample jump_sample(Rng& rng) {
  Sample s;
  s.kind = SampleKind::PiecewiseLinear;
  for (;;) {
    const double h = kMeshSizes[rng.index(3)];
    const int n = static_cast<int>(std::lround(1.0 / h));
    const int k = rng.index(3);
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5);
    const double c = rng.uniform(-5, 5), d = rng.uniform(-5, 5);
    auto u = [=](double x) { return x <= 0.5 ? a * x + b : c * x + d; };
    // Face n/2 sits at x = 0.5; place it between stencil cells k and k+1.
    const int first = n / 2 - (k + 1);
    for (int m = 0; m < 4; ++m) s.x[m] = u((first + m + 0.5) * h);
    const int center_face = first + 2;
    const double xc = center_face * h;
    if (center_face == n / 2) {
      s.y = {a * xc + b, c * xc + d};
    } else {
      s.y = {u(xc), u(xc)};
    }
    s.h = h;
    s.jump_interface = k;
    if (s.x[2] != s.x[1]) return s;
  }
}

double sample_loss(double e0, double e1, LossKind kind) {
  const double sq = e0 * e0 + e1 * e1;
  return kind == LossKind::Norm ? std::sqrt(sq) : sq;
}

}  // namespace

std::vector<Sample> Dataset::subset(std::span<const int> idx) const {
  std::vector<Sample> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(samples[i]);
  return out;
}

Dataset generate_dataset(std::uint64_t seed, int size) {
  if (size <= 0 || size % 2 != 0) {
    throw std::invalid_argument("generate_dataset: size must be positive and even");
  }
  Rng rng(seed);
  Dataset d;
  d.seed = seed;
  d.samples.reserve(size);
  const int half = size / 2;
  constexpr SampleKind smooth[3] = {SampleKind::Cubic, SampleKind::ShiftedCubic,
                                    SampleKind::Sine};
  for (int k = 0; k < half; ++k) d.samples.push_back(smooth_sample(smooth[k % 3], rng));
  for (int k = 0; k < half; ++k) d.samples.push_back(jump_sample(rng));

  std::vector<int> order(size);
  for (int i = 0; i < size; ++i) order[i] = i;
  shuffle(order, rng);
  const int n_train = static_cast<int>(std::lround(0.6 * size));
  const int n_val = static_cast<int>(std::lround(0.2 * size));
  d.train.assign(order.begin(), order.begin() + n_train);
  d.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  d.test.assign(order.begin() + n_train + n_val, order.end());
  return d;
}

double loss(const MlpParams& p, std::span<const Sample> batch, LossKind kind) {
  if (batch.empty()) throw std::invalid_argument("loss: empty batch");
  double sum = 0.0;
  for (const Sample& s : batch) {
    const ReconPair r = dsp::dsp_weno_reconstruct(p, s.stencil());
    sum += sample_loss(r.minus - s.y[0], r.plus - s.y[1], kind);
  }
  return sum / static_cast<double>(batch.size());
}

Prepared prepare(const Sample& s) {
  Prepared q;
  q.y = s.y;
  const Stencil4 z = s.stencil();
  const auto f = dsp::features(z);
  if (!f) {
    q.degenerate = true;
    q.base_m = z.z0;
    q.base_p = z.zp1;
    return q;
  }
  q.input = f->input;
  q.vertices = dsp::vertices_for(*f);
  const ReconPair r0 = weno_reconstruct(z, {0.0, 0.0});
  q.base_m = r0.minus;
  q.base_p = r0.plus;
  q.k_m = z.zm1 - 2.0 * z.z0 + z.zp1;
  q.k_p = z.z0 - 2.0 * z.zp1 + z.zp2;
  return q;
}

std::vector<Prepared> prepare(std::span<const Sample> samples) {
  std::vector<Prepared> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(prepare(s));
  return out;
}

namespace {

// Adds d(loss_k)/d(params) * scale into grad.
void backprop(const MlpParams& p, const dsp::ForwardTrace& t,
              const dsp::ConvexWeights& d_alpha, double scale, Gradient& g) {
  double dot = 0.0;
  for (int s = 0; s < kWidth; ++s) dot += t.alpha[s] * d_alpha[s];
  dsp::NetInput delta;
  for (int s = 0; s < kWidth; ++s) delta[s] = scale * t.alpha[s] * (d_alpha[s] - dot);

  for (int l = kLayers - 1; l >= 0; --l) {
    const int off = l * dsp::kLayerSize;
    const dsp::NetInput& in = t.in[l];
    for (int r = 0; r < kWidth; ++r) {
      for (int c = 0; c < kWidth; ++c) g[off + r * kWidth + c] += delta[r] * in[c];
      g[off + kWidth * kWidth + r] += delta[r];
    }
    if (l == 0) break;
    dsp::NetInput back{};
    for (int c = 0; c < kWidth; ++c) {
      double acc = 0.0;
      for (int r = 0; r < kWidth; ++r) acc += p.w(l, r, c) * delta[r];
      // ReLU of the previous layer; subgradient 0 at the kink.
      back[c] = t.pre[l - 1][c] > 0.0 ? acc : 0.0;
    }
    delta = back;
  }
}

}  // namespace

double batch_loss(const MlpParams& p, std::span<const Prepared> data,
                  std::span<const int> batch, LossKind kind, Gradient* grad) {
  const std::size_t n = batch.empty() ? data.size() : batch.size();
  if (n == 0) throw std::invalid_argument("batch_loss: empty batch");
  const double inv_n = 1.0 / static_cast<double>(n);
  double sum = 0.0;
  dsp::ForwardTrace t;
  for (std::size_t k = 0; k < n; ++k) {
    const Prepared& q = batch.empty() ? data[k] : data[batch[k]];
    if (q.degenerate) {
      sum += sample_loss(q.base_m - q.y[0], q.base_p - q.y[1], kind);
      continue;
    }
    dsp::mlp_forward(p, q.input, t);
    const WenoPerturbation c = dsp::combine(q.vertices, t.alpha);
    const double e0 = q.base_m + q.k_m * c.c1 - q.y[0];
    const double e1 = q.base_p + q.k_p * c.c2 - q.y[1];
    const double l = sample_loss(e0, e1, kind);
    sum += l;
    if (!grad) continue;
    double g0, g1;
    if (kind == LossKind::Norm) {
      if (l == 0.0) continue;
      g0 = e0 / l;
      g1 = e1 / l;
    } else {
      g0 = 2.0 * e0;
      g1 = 2.0 * e1;
    }
    const double dc1 = g0 * q.k_m;
    const double dc2 = g1 * q.k_p;
    dsp::ConvexWeights d_alpha;
    for (int s = 0; s < kWidth; ++s) {
      d_alpha[s] = dc1 * q.vertices[s].c1 + dc2 * q.vertices[s].c2;
    }
    backprop(p, t, d_alpha, inv_n, *grad);
  }
  return sum * inv_n;
}

Gradient gradient(const MlpParams& p, std::span<const Sample> batch,
                  LossKind kind) {
  if (batch.empty()) throw std::invalid_argument("gradient: empty batch");
  const auto data = prepare(batch);
  Gradient g{};
  batch_loss(p, data, {}, kind, &g);
  return g;
}

void adam_step(MlpParams& p, const Gradient& g, AdamState& s,
               const AdamConfig& cfg) {
  ++s.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(s.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(s.step));
  for (std::size_t k = 0; k < p.flat.size(); ++k) {
    s.m[k] = cfg.beta1 * s.m[k] + (1.0 - cfg.beta1) * g[k];
    s.v[k] = cfg.beta2 * s.v[k] + (1.0 - cfg.beta2) * g[k] * g[k];
    p.flat[k] -= cfg.lr * cfg.weight_decay * p.flat[k];
    const double mh = s.m[k] / bc1;
    const double vh = s.v[k] / bc2;
    p.flat[k] -= cfg.lr * mh / (std::sqrt(vh) + cfg.eps);
  }
}

MlpParams init_params(Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(kWidth));
  MlpParams p;
  for (double& v : p.flat) v = rng.uniform(-bound, bound);
  return p;
}

TrainResult train(const TrainConfig& cfg, const Dataset& data,
                  const std::function<void(const EpochRecord&)>& progress) {
  if (cfg.runs <= 0 || cfg.epochs < 0 || cfg.batch_size <= 0) {
    throw std::invalid_argument("train: runs, epochs, batch size must be positive");
  }
  const auto all = prepare(data.samples);
  auto eval = [&](const MlpParams& p, const std::vector<int>& idx) {
    return batch_loss(p, all, idx, cfg.loss, nullptr);
  };

  TrainResult result;
  result.untrained_test_loss = eval(MlpParams{}, data.test);
  double best = std::numeric_limits<double>::infinity();

  for (int run = 0; run < cfg.runs; ++run) {
    Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(run + 1)));
    MlpParams p = init_params(rng);
    AdamState state;
    std::vector<int> order = data.train;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
      shuffle(order, rng);
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t len = std::min<std::size_t>(cfg.batch_size, order.size() - start);
        Gradient g{};
        batch_loss(p, all, std::span<const int>(order.data() + start, len), cfg.loss, &g);
        adam_step(p, g, state, cfg.adam);
      }
      EpochRecord rec{run, epoch, eval(p, data.train), eval(p, data.val),
                      eval(p, data.test)};
      result.history.push_back(rec);
      if (progress) progress(rec);
    }
    const double test = eval(p, data.test);
    result.run_test_loss.push_back(test);
    if (test < best) {
      best = test;
      result.params = p;
      result.chosen_run = run;
      result.test_loss = test;
    }
  }
  return result;
}

TrainResult train(const TrainConfig& cfg) {
  return train(cfg, generate_dataset(cfg.seed, cfg.dataset_size));
}

void write_report_csv(const std::filesystem::path& path, const TrainResult& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "run,epoch,train_loss,val_loss,test_loss\n" << std::setprecision(17);
  for (const EpochRecord& e : r.history) {
    out << e.run << ',' << e.epoch << ',' << e.train << ',' << e.val << ','
        << e.test << '\n';
  }
}

}  // namespace tecno::training
