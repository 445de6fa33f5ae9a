#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "datagen.hpp"
#include "dense_grid.hpp"
#include "oracle.hpp"

using namespace treeclust;

TEST_CASE("gaussian_blobs: deterministic per seed") {
  PointSet a = gaussian_blobs(3, 100, 2, 5.f, 0.5f, 42);
  PointSet b = gaussian_blobs(3, 100, 2, 5.f, 0.5f, 42);
  CHECK(a.coords == b.coords);
  PointSet c = gaussian_blobs(3, 100, 2, 5.f, 0.5f, 43);
  CHECK(a.coords != c.coords);
}

TEST_CASE("gaussian_blobs: k=1 concentrates near one center") {
  PointSet ps = gaussian_blobs(1, 500, 3, 5.f, 0.2f, 9);
  Aabb b = compute_bounds(ps);
  for (int k = 0; k < 3; ++k) CHECK(b.max[k] - b.min[k] < 3.f);  // ~14 sigma
}

TEST_CASE("gaussian_blobs: oracle recovers the blob count") {
  PointSet ps = gaussian_blobs(3, 150, 2, 25.f, 0.5f, 123);
  Clustering c = dbscan_bruteforce(ps, {1.5f, 4});
  std::set<std::int32_t> clusters;
  for (auto l : c.label)
    if (l != kNoise) clusters.insert(l);
  CHECK(clusters.size() == 3);
}

TEST_CASE("uniform_noise: inside bounds, deterministic, mostly noise at tiny eps") {
  Aabb bounds;
  bounds.min = {0.f, 0.f, 0.f};
  bounds.max = {10.f, 4.f, 0.f};
  PointSet one = uniform_noise(1, 2, bounds, 5);
  CHECK(one.point(0)[0] >= 0.f);
  CHECK(one.point(0)[0] <= 10.f);

  PointSet a = uniform_noise(2000, 2, bounds, 6);
  PointSet b = uniform_noise(2000, 2, bounds, 6);
  CHECK(a.coords == b.coords);
  for (std::int64_t i = 0; i < a.size(); ++i) {
    CHECK(a.point(i)[0] <= 10.f);
    CHECK(a.point(i)[1] <= 4.f);
  }

  Clustering c = dbscan_bruteforce(a, {0.001f, 3});
  std::int64_t noise = 0;
  for (auto l : c.label) noise += l == kNoise;
  CHECK(noise > a.size() * 95 / 100);
}

TEST_CASE("dense_lattice: corners, connectivity, dense occupancy") {
  PointSet corners = dense_lattice(2, 2, 1.f);
  CHECK(corners.size() == 4);

  PointSet lat = dense_lattice(20, 2, 1.f);
  CHECK(lat.size() == 400);
  Clustering c = dbscan_bruteforce(lat, {1.f, 2}, 10000);
  for (auto l : c.label) CHECK(l == 0);

  // Spacing well under eps/sqrt(d): nearly all points land in dense cells
  // (only cells clipped at the boundary can fall below minpts).
  PointSet fine = dense_lattice(30, 2, 0.25f);
  DenseGrid fine_grid = build_grid(fine, 1.f, 4);
  CHECK(static_cast<double>(fine_grid.dense_point_count()) / fine.size() >= 0.9);
}
