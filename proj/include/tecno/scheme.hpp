#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tecno/dsp_weno.hpp"
#include "tecno/reconstruct.hpp"

namespace tecno {

enum class ReconKind { Eno3, SpWeno, SpWenoC, DspWeno };

/// "eno3", "spweno", "spwenoc", "dspweno".
std::string_view to_string(ReconKind k);
std::optional<ReconKind> parse_recon(std::string_view name);

/// Interface reconstruction selected at run time. Copies share the network
/// parameters.
class Reconstructor {
 public:
  explicit Reconstructor(ReconKind kind = ReconKind::Eno3);
  Reconstructor(ReconKind kind, dsp::MlpParams params);

  ReconKind kind() const { return kind_; }
  /// Null unless kind() == DspWeno.
  const dsp::MlpParams* params() const { return params_.get(); }

  /// Values z_{i-2..i+3}; the WENO variants read only z_{i-1..i+2}.
  ReconPair operator()(std::span<const double, 6> z) const {
    switch (kind_) {
      case ReconKind::Eno3:
        return eno3_reconstruct(z);
      case ReconKind::SpWeno:
        return spweno_reconstruct({z[1], z[2], z[3], z[4]});
      case ReconKind::SpWenoC:
        return spwenoc_reconstruct({z[1], z[2], z[3], z[4]});
      case ReconKind::DspWeno:
        break;
    }
    return dsp::dsp_weno_reconstruct(*params_, {z[1], z[2], z[3], z[4]});
  }

 private:
  ReconKind kind_;
  std::shared_ptr<const dsp::MlpParams> params_;
};

}  // namespace tecno
