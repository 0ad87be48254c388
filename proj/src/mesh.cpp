#include "tecno/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace tecno {

Mesh1D::Mesh1D(double lo, double hi, int cells) : a(lo), b(hi), n(cells) {
  if (cells <= 0 || !(hi > lo)) {
    throw std::invalid_argument("Mesh1D: need n > 0 and b > a");
  }
}

Field::Field(int nx, int n_vars) : nx_(nx), ny_(1), nv_(n_vars), dims_(1) {
  if (nx <= 0 || n_vars <= 0) throw std::invalid_argument("Field: bad shape");
  data_.assign(static_cast<std::size_t>(nx + 2 * kGhostWidth) * nv_, 0.0);
}

Field::Field(int nx, int ny, int n_vars)
    : nx_(nx), ny_(ny), nv_(n_vars), dims_(2) {
  if (nx <= 0 || ny <= 0 || n_vars <= 0) {
    throw std::invalid_argument("Field: bad shape");
  }
  data_.assign(static_cast<std::size_t>(nx + 2 * kGhostWidth) *
                   (ny + 2 * kGhostWidth) * nv_,
               0.0);
}

namespace {

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

int source_index(int i, int n, BoundaryKind bc) {
  if (bc == BoundaryKind::Periodic) return wrap(i, n);
  return std::clamp(i, 0, n - 1);
}

}  // namespace

void fill_ghosts(Field& f, BoundaryKind bc) {
  const int g = kGhostWidth;
  const int nv = f.n_vars();
  const int nx = f.nx();
  const int ny = f.ny();
  const int rows = f.dims() == 2 ? ny : 1;

  for (int j = 0; j < rows; ++j) {
    for (int i = -g; i < 0; ++i) {
      const double* src = f.cell(source_index(i, nx, bc), j);
      std::copy(src, src + nv, f.cell(i, j));
    }
    for (int i = nx; i < nx + g; ++i) {
      const double* src = f.cell(source_index(i, nx, bc), j);
      std::copy(src, src + nv, f.cell(i, j));
    }
  }
  if (f.dims() != 2) return;

  // y ghosts over the padded x range, which also fills the corners.
  for (int j = -g; j < 0; ++j) {
    const int js = source_index(j, ny, bc);
    std::copy(f.cell(-g, js), f.cell(-g, js) + (nx + 2 * g) * nv, f.cell(-g, j));
  }
  for (int j = ny; j < ny + g; ++j) {
    const int js = source_index(j, ny, bc);
    std::copy(f.cell(-g, js), f.cell(-g, js) + (nx + 2 * g) * nv, f.cell(-g, j));
  }
}

ErrorNorms error_norms(const Field& numeric, const Field& exact,
                       double cell_volume, int var) {
  if (!numeric.same_shape(exact)) {
    throw std::invalid_argument("error_norms: mesh mismatch");
  }
  ErrorNorms out;
  double sq = 0.0;
  for (int j = 0; j < numeric.ny(); ++j) {
    for (int i = 0; i < numeric.nx(); ++i) {
      const double e =
          std::abs(numeric.at(i, j, var) - exact.at(i, j, var));
      out.l1 += e;
      sq += e * e;
      out.linf = std::max(out.linf, e);
    }
  }
  out.l1 *= cell_volume;
  out.l2 = std::sqrt(cell_volume * sq);
  return out;
}

double interface_error(std::span<const double> left_values,
                       std::span<const double> right_values,
                       std::span<const double> exact) {
  const std::size_t n = left_values.size();
  if (n == 0 || right_values.size() != n || exact.size() != n + 1) {
    throw std::invalid_argument("interface_error: length mismatch");
  }
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    left += std::abs(left_values[i] - exact[i + 1]);
    right += std::abs(right_values[i] - exact[i]);
  }
  return (left + right) / static_cast<double>(n);
}

}  // namespace tecno
