#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geometry.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace treeclust;

TEST_CASE("compute_bounds: degenerate single point") {
  PointSet ps(2, {1.f, 2.f});
  Aabb b = compute_bounds(ps);
  CHECK(b.min[0] == 1.f);
  CHECK(b.min[1] == 2.f);
  CHECK(b.max[0] == 1.f);
  CHECK(b.max[1] == 2.f);
}

TEST_CASE("compute_bounds: componentwise extremes") {
  PointSet ps(2, {0.f, 0.f, 3.f, 1.f});
  Aabb b = compute_bounds(ps);
  CHECK(b.min[0] == 0.f);
  CHECK(b.min[1] == 0.f);
  CHECK(b.max[0] == 3.f);
  CHECK(b.max[1] == 1.f);
}

TEST_CASE("compute_bounds: contains all inputs, tight on random data") {
  SplitMix64 rng(7);
  PointSet ps;
  ps.dim = 2;
  for (int i = 0; i < 1000; ++i) {
    ps.coords.push_back(static_cast<float>(rng.next_double()));
    ps.coords.push_back(static_cast<float>(rng.next_double()));
  }
  Aabb b = compute_bounds(ps);
  float lo[2] = {1.f, 1.f}, hi[2] = {0.f, 0.f};
  for (std::int64_t i = 0; i < ps.size(); ++i) {
    const float* p = ps.point(i);
    for (int k = 0; k < 2; ++k) {
      CHECK(p[k] >= b.min[k]);
      CHECK(p[k] <= b.max[k]);
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  for (int k = 0; k < 2; ++k) {
    CHECK(b.min[k] == lo[k]);
    CHECK(b.max[k] == hi[k]);
    CHECK(b.min[k] >= 0.f);
    CHECK(b.max[k] <= 1.f);
  }
}

TEST_CASE("distance_sq basics") {
  float a[3] = {1.f, 2.f, 3.f};
  CHECK(distance_sq(a, a, 3) == 0.0);
  float o[2] = {0.f, 0.f};
  float p[2] = {3.f, 4.f};
  CHECK(distance_sq(o, p, 2) == 25.0);
}

TEST_CASE("distance_sq: symmetric, matches naive loop") {
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int dim = (t % 2) ? 2 : 3;
    float a[3], b[3];
    for (int k = 0; k < dim; ++k) {
      a[k] = static_cast<float>(rng.uniform(-5, 5));
      b[k] = static_cast<float>(rng.uniform(-5, 5));
    }
    double naive = 0;
    for (int k = 0; k < dim; ++k)
      naive += (static_cast<double>(a[k]) - b[k]) * (static_cast<double>(a[k]) - b[k]);
    CHECK(distance_sq(a, b, dim) == naive);
    CHECK(distance_sq(a, b, dim) == distance_sq(b, a, dim));
  }
}

TEST_CASE("morton: extremes of the quantization lattice") {
  Aabb b;
  b.min = {0.f, 0.f, 0.f};
  b.max = {1.f, 1.f, 1.f};

  float lo2[2] = {0.f, 0.f};
  float hi2[2] = {1.f, 1.f};
  CHECK(morton_encode(lo2, b, 2) == 0);
  CHECK(morton_encode(hi2, b, 2) == (1ull << 62) - 1);  // all 62 used bits

  float lo3[3] = {0.f, 0.f, 0.f};
  float hi3[3] = {1.f, 1.f, 1.f};
  CHECK(morton_encode(lo3, b, 3) == 0);
  CHECK(morton_encode(hi3, b, 3) == (1ull << 63) - 1);  // all 63 used bits
}

TEST_CASE("morton: zero-width axis normalizes to 0") {
  Aabb b;
  b.min = {0.f, 5.f, 0.f};
  b.max = {1.f, 5.f, 0.f};
  float p[2] = {0.f, 5.f};
  CHECK(morton_encode(p, b, 2) == 0);
}

TEST_CASE("morton: equals bitwise reference on random points") {
  SplitMix64 rng(23);
  Aabb b;
  b.min = {-2.f, 0.f, 1.f};
  b.max = {3.f, 10.f, 4.f};
  for (int t = 0; t < 500; ++t) {
    int dim = (t % 2) ? 2 : 3;
    float p[3];
    for (int k = 0; k < dim; ++k)
      p[k] = static_cast<float>(rng.uniform(b.min[k], b.max[k]));
    CHECK(morton_encode(p, b, dim) == testutil::morton_reference(p, b, dim));
    CHECK(morton_encode(p, b, dim) == morton_encode(p, b, dim));  // deterministic
  }
}

TEST_CASE("morton: same quantization cell iff equal code") {
  Aabb b;
  b.min = {0.f, 0.f, 0.f};
  b.max = {1.f, 1.f, 1.f};
  int bits = morton_bits_per_axis(2);
  double cell = 1.0 / static_cast<double>(1ull << bits);
  // Two points inside one cell.
  float p[2] = {static_cast<float>(0.25 + 0.1 * cell), 0.5f};
  float q[2] = {static_cast<float>(0.25 + 0.4 * cell), 0.5f};
  CHECK(morton_encode(p, b, 2) == morton_encode(q, b, 2));
  // Far enough along one axis to land in a different cell.
  float r[2] = {static_cast<float>(0.25 + 1000 * cell), 0.5f};
  CHECK(morton_encode(p, b, 2) != morton_encode(r, b, 2));
}
