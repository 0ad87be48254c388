#include <doctest.h>

#include <cmath>
#include <vector>

#include "tecno/mesh.hpp"

using namespace tecno;

TEST_CASE("mesh geometry") {
  Mesh1D m(-1.0, 1.0, 4);
  CHECK(m.h() == doctest::Approx(0.5));
  CHECK(m.center(0) == doctest::Approx(-0.75));
  CHECK(m.face(4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Mesh1D(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Mesh1D(1.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("periodic ghosts wrap exactly") {
  const int n = 7;
  Field f(n, 2);
  for (int i = 0; i < n; ++i) {
    f(i, 0) = 10.0 * i;
    f(i, 1) = -i;
  }
  fill_ghosts(f, BoundaryKind::Periodic);
  for (int i = -kGhostWidth; i < n + kGhostWidth; ++i) {
    const int src = ((i % n) + n) % n;
    CHECK(f(i, 0) == f(src, 0));
    CHECK(f(i, 1) == f(src, 1));
  }
}

TEST_CASE("neumann ghosts copy the edge cell") {
  Field f(5, 1);
  for (int i = 0; i < 5; ++i) f(i, 0) = i + 1.0;
  fill_ghosts(f, BoundaryKind::Neumann);
  for (int g = 1; g <= kGhostWidth; ++g) {
    CHECK(f(-g, 0) == 1.0);
    CHECK(f(4 + g, 0) == 5.0);
  }
}

TEST_CASE("2d ghosts including corners, idempotent fill") {
  const int nx = 4, ny = 5;
  Field f(nx, ny, 3);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (int k = 0; k < 3; ++k) f.at(i, j, k) = 100 * j + 10 * i + k;
  fill_ghosts(f, BoundaryKind::Periodic);
  for (int j = -kGhostWidth; j < ny + kGhostWidth; ++j) {
    for (int i = -kGhostWidth; i < nx + kGhostWidth; ++i) {
      const int si = ((i % nx) + nx) % nx;
      const int sj = ((j % ny) + ny) % ny;
      CHECK(f.at(i, j, 2) == f.at(si, sj, 2));
    }
  }
  const std::vector<double> before(f.raw().begin(), f.raw().end());
  fill_ghosts(f, BoundaryKind::Periodic);
  CHECK(std::equal(before.begin(), before.end(), f.raw().begin()));

  fill_ghosts(f, BoundaryKind::Neumann);
  CHECK(f.at(-3, -3, 1) == f.at(0, 0, 1));
  CHECK(f.at(nx + 2, ny + 2, 0) == f.at(nx - 1, ny - 1, 0));
}

TEST_CASE("error norms") {
  Field a(4, 1), b(4, 1);
  const double e[4] = {0.1, -0.2, 0.0, 0.4};
  for (int i = 0; i < 4; ++i) a(i, 0) = e[i];
  const double h = 0.25;
  const ErrorNorms n = error_norms(a, b, h);
  CHECK(n.l1 == doctest::Approx(h * 0.7));
  CHECK(n.l2 == doctest::Approx(std::sqrt(h * (0.01 + 0.04 + 0.16))));
  CHECK(n.linf == doctest::Approx(0.4));

  const ErrorNorms zero = error_norms(b, b, h);
  CHECK(zero.l1 == 0.0);
  CHECK(zero.linf == 0.0);

  Field scaled(4, 1);
  for (int i = 0; i < 4; ++i) scaled(i, 0) = -3.0 * e[i];
  const ErrorNorms s = error_norms(scaled, b, h);
  CHECK(s.l1 == doctest::Approx(3.0 * n.l1));
  CHECK(s.l2 == doctest::Approx(3.0 * n.l2));

  CHECK_THROWS_AS(error_norms(a, Field(5, 1), h), std::invalid_argument);
}

TEST_CASE("interface error") {
  const std::vector<double> exact{0.0, 1.0, 2.0, 3.0};
  std::vector<double> left{1.0, 2.0, 3.0};
  std::vector<double> right{0.0, 1.0, 2.0};
  CHECK(interface_error(left, right, exact) == 0.0);
  left[1] += 0.3;
  CHECK(interface_error(left, right, exact) == doctest::Approx(0.1));
  CHECK_THROWS(interface_error(left, right, std::vector<double>{0.0}));
}
