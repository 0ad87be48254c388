#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tecno {

/// Ghost layer width used by every field. ENO3 reads cells i-2..i+3 around
/// interface i+1/2, so three ghosts cover the outermost interfaces.
inline constexpr int kGhostWidth = 3;

/// Uniform partition of [a, b] into n cells.
struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int n = 1;

  Mesh1D() = default;
  Mesh1D(double lo, double hi, int cells);

  double h() const { return (b - a) / n; }
  /// Center of cell i (0-based, ghosts allowed).
  double center(int i) const { return a + (i + 0.5) * h(); }
  /// Location of interface i, i.e. the left face of cell i.
  double face(int i) const { return a + i * h(); }
  double length() const { return b - a; }
};

struct Mesh2D {
  Mesh1D x;
  Mesh1D y;
};

enum class BoundaryKind { Periodic, Neumann };

/// Cell-centered point values with ghost layers. Variables are interleaved
/// per cell and cells are stored row-major with x fastest.
class Field {
 public:
  Field() = default;
  /// 1D field.
  Field(int nx, int n_vars);
  /// 2D field.
  Field(int nx, int ny, int n_vars);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int n_vars() const { return nv_; }
  int dims() const { return dims_; }
  int ghost() const { return kGhostWidth; }
  int stride_x() const { return nv_; }
  int stride_y() const { return nv_ * (nx_ + 2 * kGhostWidth); }

  /// Flat offset of (i, j, k); i, j may index ghost cells.
  std::size_t offset(int i, int j = 0, int k = 0) const {
    const int jj = dims_ == 2 ? j + kGhostWidth : 0;
    return static_cast<std::size_t>(jj) * stride_y() +
           static_cast<std::size_t>(i + kGhostWidth) * nv_ + k;
  }

  double& operator()(int i, int k) { return data_[offset(i, 0, k)]; }
  double operator()(int i, int k) const { return data_[offset(i, 0, k)]; }
  double& at(int i, int j, int k) { return data_[offset(i, j, k)]; }
  double at(int i, int j, int k) const { return data_[offset(i, j, k)]; }

  double* cell(int i, int j = 0) { return data_.data() + offset(i, j, 0); }
  const double* cell(int i, int j = 0) const {
    return data_.data() + offset(i, j, 0);
  }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool same_shape(const Field& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && nv_ == other.nv_ &&
           dims_ == other.dims_;
  }

 private:
  int nx_ = 0;
  int ny_ = 1;
  int nv_ = 1;
  int dims_ = 1;
  std::vector<double> data_;
};

/// Populates all ghost cells. Periodic wraps modulo the interior extent;
/// Neumann replicates the nearest interior cell.
void fill_ghosts(Field& field, BoundaryKind bc);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Cell-volume weighted discrete norms of (numeric - exact) for one
/// variable over interior cells. `cell_volume` is h in 1D and hx*hy in 2D.
ErrorNorms error_norms(const Field& numeric, const Field& exact,
                       double cell_volume, int var = 0);

/// Averaged two-sided interface error. `left_values[i]` is the reconstruction
/// from cell i at its right face x_{i+1/2}; `right_values[i]` is the
/// reconstruction from cell i at its left face x_{i-1/2}; `exact` holds the
/// N+1 face values x_{1/2}..x_{N+1/2}.
double interface_error(std::span<const double> left_values,
                       std::span<const double> right_values,
                       std::span<const double> exact);

}  // namespace tecno
