#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "tecno/dsp_weno.hpp"

/// Synthetic dataset, loss, reverse-mode gradient, and the Adam-based
/// multi-run training protocol for the DSP-WENO network.
namespace tecno::training {

/// Deterministic stream: mt19937_64 with explicit 53-bit uniforms, so the
/// sequence does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, n).
  int index(int n) { return static_cast<int>(uniform() * n); }

 private:
  std::mt19937_64 gen_;
};

enum class SampleKind { Cubic, ShiftedCubic, Sine, PiecewiseLinear };

struct Sample {
  std::array<double, 4> x{};  // z_{i-1}, z_i, z_{i+1}, z_{i+2}
  std::array<double, 2> y{};  // left and right limits at x_{i+1/2}
  SampleKind kind = SampleKind::Cubic;
  double h = 0.0;
  int jump_interface = -1;  // 0, 1, 2 for discontinuous samples (1 = center)

  Stencil4 stencil() const { return {x[0], x[1], x[2], x[3]}; }
};

struct Dataset {
  std::vector<Sample> samples;
  std::vector<int> train, val, test;
  std::uint64_t seed = 0;

  std::vector<Sample> subset(std::span<const int> idx) const;
};

/// `size` must be even; half smooth (rows cycled evenly), half discontinuous.
Dataset generate_dataset(std::uint64_t seed, int size = 100000);

enum class LossKind {
  Norm,         // mean of Euclidean norms
  SquaredNorm,  // mean of squared Euclidean norms
};

/// Reference loss evaluated through dsp_weno_reconstruct.
double loss(const dsp::MlpParams& p, std::span<const Sample> batch,
            LossKind kind = LossKind::Norm);

/// Parameter-independent per-sample data. The reconstruction is affine in
/// the perturbation: z- = base_m + k_m C1, z+ = base_p + k_p C2.
struct Prepared {
  bool degenerate = false;
  dsp::NetInput input{};
  VertexSet vertices{};
  double base_m = 0.0, base_p = 0.0;
  double k_m = 0.0, k_p = 0.0;
  std::array<double, 2> y{};
};

Prepared prepare(const Sample& s);
std::vector<Prepared> prepare(std::span<const Sample> samples);

using Gradient = std::array<double, dsp::kParamCount>;

/// Loss over `batch` (indices into `data`, or all of `data` when empty);
/// accumulates the gradient into `grad` when non-null.
double batch_loss(const dsp::MlpParams& p, std::span<const Prepared> data,
                  std::span<const int> batch, LossKind kind, Gradient* grad);

Gradient gradient(const dsp::MlpParams& p, std::span<const Sample> batch,
                  LossKind kind = LossKind::Norm);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.5;
  double beta2 = 0.9;
  double eps = 1e-8;
  double weight_decay = 1e-5;
};

struct AdamState {
  Gradient m{};
  Gradient v{};
  long step = 0;
};

/// Decoupled weight decay p -= lr*wd*p, then the bias-corrected Adam update.
void adam_step(dsp::MlpParams& p, const Gradient& g, AdamState& s,
               const AdamConfig& cfg = {});

/// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] for weights and biases.
dsp::MlpParams init_params(Rng& rng);

struct TrainConfig {
  std::uint64_t seed = 20240601;
  int dataset_size = 100000;
  int runs = 5;
  int epochs = 50;
  int batch_size = 500;
  AdamConfig adam;
  LossKind loss = LossKind::Norm;
};

struct EpochRecord {
  int run = 0;
  int epoch = 0;
  double train = 0.0;
  double val = 0.0;
  double test = 0.0;
};

struct TrainResult {
  dsp::MlpParams params;
  int chosen_run = 0;
  double test_loss = 0.0;
  double untrained_test_loss = 0.0;  // all-zero parameters
  std::vector<double> run_test_loss;
  std::vector<EpochRecord> history;
};

TrainResult train(const TrainConfig& cfg, const Dataset& data,
                  const std::function<void(const EpochRecord&)>& progress = {});
TrainResult train(const TrainConfig& cfg);

/// CSV: run,epoch,train_loss,val_loss,test_loss.
void write_report_csv(const std::filesystem::path& path, const TrainResult& r);

}  // namespace tecno::training
