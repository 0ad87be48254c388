#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tecno/training.hpp"

using namespace tecno;
using namespace tecno::training;
using dsp::MlpParams;
using doctest::Approx;

namespace {

MlpParams random_params(Rng& rng, double scale) {
  MlpParams p;
  for (double& v : p.flat) v = rng.uniform(-scale, scale);
  return p;
}

// True when some hidden pre-activation sits close enough to zero that a
// central difference of size `step` could straddle the ReLU kink.
bool near_kink(const MlpParams& p, std::span<const Sample> batch, double step) {
  for (const Sample& s : batch) {
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

}  // namespace

TEST_CASE("dataset census and sample contracts") {
  const Dataset d = generate_dataset(99, 100000);
  REQUIRE(d.samples.size() == 100000);
  int counts[4] = {0, 0, 0, 0};
  int jump_positions[3] = {0, 0, 0};
  for (const Sample& s : d.samples) {
    ++counts[static_cast<int>(s.kind)];
    CHECK(s.x[2] != s.x[1]);
    const bool mesh_ok = s.h == 1.0 / 40 || s.h == 1.0 / 100 || s.h == 1.0 / 200;
    CHECK(mesh_ok);
    if (s.kind != SampleKind::PiecewiseLinear) {
      CHECK(s.y[0] == s.y[1]);
      continue;
    }
    ++jump_positions[s.jump_interface];
    if (s.jump_interface == 1) {
      // One-sided limits are the linear extrapolations of each side.
      CHECK(s.y[0] == Approx(s.x[1] + 0.5 * (s.x[1] - s.x[0])).epsilon(1e-9));
      CHECK(s.y[1] == Approx(s.x[2] - 0.5 * (s.x[3] - s.x[2])).epsilon(1e-9));
    } else {
      CHECK(s.y[0] == s.y[1]);
      // Cells i and i+1 lie on the same linear piece.
      CHECK(s.y[0] == Approx(0.5 * (s.x[1] + s.x[2])).epsilon(1e-9));
    }
  }
  CHECK(counts[0] + counts[1] + counts[2] == 50000);
  CHECK(counts[0] == 16667);
  CHECK(counts[1] == 16667);
  CHECK(counts[2] == 16666);
  CHECK(counts[3] == 50000);
  for (int c : jump_positions) CHECK(std::abs(c - 50000 / 3) < 600);

  CHECK(d.train.size() == 60000);
  CHECK(d.val.size() == 20000);
  CHECK(d.test.size() == 20000);
  std::set<int> all(d.train.begin(), d.train.end());
  all.insert(d.val.begin(), d.val.end());
  all.insert(d.test.begin(), d.test.end());
  CHECK(all.size() == 100000);

  const Dataset again = generate_dataset(99, 100000);
  CHECK(again.samples[12345].x == d.samples[12345].x);
  CHECK(again.test == d.test);
  CHECK_THROWS(generate_dataset(1, 7));
}

TEST_CASE("loss examples") {
  Sample s;
  s.x = {5, 5, 5, 9};
  s.y = {2, 1};
  const std::vector<Sample> one{s};
  CHECK(loss(MlpParams{}, one) == 5.0);
  CHECK(loss(MlpParams{}, one, LossKind::SquaredNorm) == 25.0);

  const Dataset d = generate_dataset(5, 200);
  std::vector<Sample> batch = d.subset(d.test);
  Rng rng(1);
  const MlpParams p = random_params(rng, 1.0);
  for (Sample& q : batch) {
    const ReconPair r = dsp::dsp_weno_reconstruct(p, q.stencil());
    q.y = {r.minus, r.plus};
  }
  CHECK(loss(p, batch) == 0.0);

  std::vector<Sample> shuffled = d.subset(d.train);
  const double l = loss(p, shuffled);
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(loss(p, shuffled) == Approx(l).epsilon(1e-14));
  CHECK_THROWS(loss(p, std::vector<Sample>{}));

  // Prepared path agrees with the reference path.
  const auto prepared = prepare(shuffled);
  CHECK(batch_loss(p, prepared, {}, LossKind::Norm, nullptr) ==
        Approx(l).epsilon(1e-12));
}

TEST_CASE("gradient matches central differences") {
  const Dataset d = generate_dataset(17, 2000);
  Rng rng(4);
  int batches = 0;
  int attempts = 0;
  while (batches < 5 && attempts < 100) {
    ++attempts;
    const MlpParams p = random_params(rng, 1.0);
    std::vector<Sample> batch;
    for (int k = 0; k < 10; ++k) batch.push_back(d.samples[rng.index(2000)]);
    const double step = 1e-6;
    if (near_kink(p, batch, step)) continue;
    ++batches;
    const Gradient g = gradient(p, batch);
    double scale = 0.0;
    for (double v : g) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (int k = 0; k < dsp::kParamCount; ++k) {
      MlpParams a = p, b = p;
      a.flat[k] += step;
      b.flat[k] -= step;
      const double fd = (loss(a, batch) - loss(b, batch)) / (2 * step);
      const double denom = std::max({std::abs(fd), std::abs(g[k]), 1e-3 * scale});
      worst = std::max(worst, std::abs(fd - g[k]) / denom);
    }
    CHECK(worst <= 1e-5);
  }
  CHECK(batches == 5);
}

TEST_CASE("gradient edge cases") {
  Sample s;
  s.x = {1, 2, 2, 3};
  s.y = {0.5, 4};
  Rng rng(8);
  const MlpParams p = random_params(rng, 1.0);
  for (double v : gradient(p, std::vector<Sample>{s, s})) CHECK(v == 0.0);

  const Dataset d = generate_dataset(3, 40);
  const auto batch = d.subset(d.train);
  const Gradient whole = gradient(p, batch);
  Gradient mean{};
  for (const Sample& q : batch) {
    const Gradient gi = gradient(p, std::vector<Sample>{q});
    for (int k = 0; k < dsp::kParamCount; ++k) mean[k] += gi[k] / batch.size();
  }
  for (int k = 0; k < dsp::kParamCount; ++k) {
    CHECK(whole[k] == Approx(mean[k]).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("adam step") {
  Rng rng(2);
  MlpParams p = random_params(rng, 1.0);
  const MlpParams p0 = p;
  AdamState st;
  AdamConfig no_wd;
  no_wd.weight_decay = 0.0;
  adam_step(p, Gradient{}, st, no_wd);
  CHECK(p == p0);

  AdamState s1;
  Gradient g;
  for (int k = 0; k < dsp::kParamCount; ++k) g[k] = (k % 7 - 3) * 0.01 + 1e-4;
  g[10] = g[11];
  MlpParams q = p0;
  q.flat[11] = q.flat[10];
  const MlpParams q0 = q;
  adam_step(q, g, s1, no_wd);
  for (int k = 0; k < dsp::kParamCount; ++k) {
    const double step = q.flat[k] - q0.flat[k];
    CHECK(std::abs(step) <= 1e-3 * (1 + 1e-12));
    // First step: m_hat = g, v_hat = g^2.
    CHECK(step == Approx(-1e-3 * g[k] / (std::abs(g[k]) + 1e-8)).epsilon(1e-12));
  }
  CHECK(q.flat[10] == q.flat[11]);

  AdamState s2;
  MlpParams r = p0;
  AdamConfig wd_only;
  wd_only.weight_decay = 0.5;
  adam_step(r, Gradient{}, s2, wd_only);
  for (int k = 0; k < dsp::kParamCount; ++k) {
    CHECK(r.flat[k] == Approx(p0.flat[k] * (1 - 1e-3 * 0.5)));
  }
}

TEST_CASE("small training run is deterministic and effective") {
  TrainConfig cfg;
  cfg.seed = 77;
  cfg.dataset_size = 6000;
  cfg.runs = 2;
  cfg.epochs = 4;
  const Dataset d = generate_dataset(cfg.seed, cfg.dataset_size);
  const TrainResult a = train(cfg, d);
  const TrainResult b = train(cfg, d);
  CHECK(a.params == b.params);
  CHECK(a.history.size() == 8);
  for (double t : a.run_test_loss) CHECK(a.test_loss <= t);
  CHECK(a.test_loss < a.untrained_test_loss);
  Rng init(1);
  const MlpParams p = init_params(init);
  for (double v : p.flat) CHECK(std::abs(v) <= 1 / std::sqrt(5.0));
}
