#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>

#include "tecno/reconstruct.hpp"

/// Inference side of the learned sign-preserving WENO reconstruction: input
/// scaling, stencil features, the small MLP, and the weights file format.
namespace tecno::dsp {

inline constexpr int kWidth = 5;
inline constexpr int kLayers = 4;
inline constexpr int kLayerSize = kWidth * kWidth + kWidth;
inline constexpr int kParamCount = kLayers * kLayerSize;

/// Parameters of the 5-5-5-5-5 network. Layer l occupies
/// flat[l*30 .. l*30+29]: a row-major 5x5 matrix (out x in) then 5 biases.
struct MlpParams {
  std::array<double, kParamCount> flat{};

  double& w(int layer, int row, int col) {
    return flat[layer * kLayerSize + row * kWidth + col];
  }
  double w(int layer, int row, int col) const {
    return flat[layer * kLayerSize + row * kWidth + col];
  }
  double& b(int layer, int row) {
    return flat[layer * kLayerSize + kWidth * kWidth + row];
  }
  double b(int layer, int row) const {
    return flat[layer * kLayerSize + kWidth * kWidth + row];
  }

  bool operator==(const MlpParams&) const = default;
};

using NetInput = std::array<double, kWidth>;
using ConvexWeights = std::array<double, kWidth>;

/// z / max(1, max |z|).
Stencil4 scale_stencil(const Stencil4& s);

/// Ratios from the raw stencil, absolute jumps from the scaled one.
struct SFeatures {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double aj_m = 0.0;
  double aj_0 = 0.0;
  double aj_p = 0.0;
};

struct Features {
  JumpData jumps;
  SFeatures s;
  NetInput input{};  // tanh(theta-), tanh(theta+), aj_m, aj_0, aj_p
};

/// std::nullopt when the central jump is zero.
std::optional<Features> features(const Stencil4& s);

/// Hidden activations kept for back-propagation.
struct ForwardTrace {
  std::array<NetInput, kLayers> pre{};  // pre-activation of each layer
  std::array<NetInput, kLayers> in{};   // input fed to each layer
  ConvexWeights alpha{};
};

ConvexWeights mlp_forward(const MlpParams& p, const NetInput& x);
void mlp_forward(const MlpParams& p, const NetInput& x, ForwardTrace& trace);

/// sum_s alpha_s * nu_s.
WenoPerturbation combine(const VertexSet& v, const ConvexWeights& alpha);

/// Vertex set for a non-degenerate stencil given its features.
VertexSet vertices_for(const Features& f);

/// std::nullopt when the central jump is zero.
std::optional<WenoPerturbation> dsp_weno_perturbation(const MlpParams& p,
                                                      const Stencil4& s);

/// Falls back to (z_i, z_{i+1}) on a zero central jump.
ReconPair dsp_weno_reconstruct(const MlpParams& p, const Stencil4& s);

struct TrainingMeta {
  std::uint64_t seed = 0;
  int epochs = 0;
  double test_loss = std::numeric_limits<double>::quiet_NaN();
};

class WeightsFileError : public std::runtime_error {
 public:
  enum class Kind { Malformed, DimensionMismatch, UnknownVersion, Io };

  WeightsFileError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr int kWeightsFormat = 1;

void save_params(const std::filesystem::path& path, const MlpParams& p,
                 const TrainingMeta& meta = {});
MlpParams load_params(const std::filesystem::path& path,
                      TrainingMeta* meta = nullptr);

/// Same document format, in memory.
std::string params_to_json(const MlpParams& p, const TrainingMeta& meta = {});
MlpParams params_from_json(const std::string& text, TrainingMeta* meta = nullptr);

}  // namespace tecno::dsp
