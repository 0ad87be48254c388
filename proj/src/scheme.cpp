#include "tecno/scheme.hpp"

#include <stdexcept>

namespace tecno {

std::string_view to_string(ReconKind k) {
  switch (k) {
    case ReconKind::Eno3:
      return "eno3";
    case ReconKind::SpWeno:
      return "spweno";
    case ReconKind::SpWenoC:
      return "spwenoc";
    case ReconKind::DspWeno:
      return "dspweno";
  }
  return "?";
}

std::optional<ReconKind> parse_recon(std::string_view name) {
  for (ReconKind k : {ReconKind::Eno3, ReconKind::SpWeno, ReconKind::SpWenoC,
                      ReconKind::DspWeno}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Reconstructor::Reconstructor(ReconKind kind) : kind_(kind) {
  if (kind == ReconKind::DspWeno) {
    throw std::invalid_argument("dspweno reconstruction needs network parameters");
  }
}

Reconstructor::Reconstructor(ReconKind kind, dsp::MlpParams params)
    : kind_(kind) {
  if (kind == ReconKind::DspWeno) {
    params_ = std::make_shared<const dsp::MlpParams>(params);
  }
}

}  // namespace tecno
