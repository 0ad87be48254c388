#include "tecno/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tecno {

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_mean: arguments must be positive");
  }
  if (a < b) std::swap(a, b);  // bitwise symmetry
  const double zeta = (a - b) / (a + b);
  if (std::abs(zeta) < 1e-2) {
    const double u = zeta * zeta;
    const double f = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0)));
    return 0.5 * (a + b) / f;
  }
  // ln(a / b) = 2 atanh(zeta) keeps full relative accuracy as a/b -> 1;
  // atanh itself loses it as zeta -> 1.
  if (zeta < 0.5) return 0.5 * (a + b) * zeta / std::atanh(zeta);
  return (a - b) / std::log(a / b);
}

}  // namespace tecno
