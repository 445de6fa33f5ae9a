#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_map>

#include "datagen.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace treeclust;

TEST_CASE("bruteforce: empty eps-graph is all noise") {
  PointSet ps(2, {0.f, 0.f, 5.f, 5.f, 9.f, 0.f});
  Clustering c = dbscan_bruteforce(ps, {0.1f, 2});
  for (std::int64_t i = 0; i < ps.size(); ++i) {
    CHECK(c.label[i] == kNoise);
    CHECK(c.is_core[i] == 0);
  }
}

TEST_CASE("bruteforce: one mutual blob is one all-core cluster") {
  PointSet ps;
  ps.dim = 2;
  for (int i = 0; i < 6; ++i) {
    ps.coords.push_back(0.01f * i);
    ps.coords.push_back(0.f);
  }
  Clustering c = dbscan_bruteforce(ps, {1.f, 5});
  for (std::int64_t i = 0; i < ps.size(); ++i) {
    CHECK(c.is_core[i] == 1);
    CHECK(c.label[i] == c.label[0]);
  }
}

TEST_CASE("bruteforce: finds the generator's blob count") {
  PointSet ps = gaussian_blobs(3, 120, 2, 20.f, 0.5f, 77);
  Clustering c = dbscan_bruteforce(ps, {1.5f, 5});
  std::set<std::int32_t> clusters;
  for (std::int64_t i = 0; i < ps.size(); ++i)
    if (c.label[i] != kNoise) clusters.insert(c.label[i]);
  CHECK(clusters.size() == 3);
}

TEST_CASE("bruteforce: refuses inputs above the cap") {
  PointSet ps;
  ps.dim = 2;
  for (int i = 0; i < 20; ++i) {
    ps.coords.push_back(static_cast<float>(i));
    ps.coords.push_back(0.f);
  }
  CHECK_THROWS_AS(dbscan_bruteforce(ps, {1.f, 2}, 10), std::invalid_argument);
}

TEST_CASE("check_equivalence: reflexive and renaming-invariant") {
  auto [points, params] = testutil::random_instance(5, 100, 400);
  Clustering a = dbscan_bruteforce(points, params);
  CHECK(check_equivalence(a, a, points, params).pass);

  // Rename every cluster id bijectively.
  Clustering b = a;
  std::unordered_map<std::int32_t, std::int32_t> rename;
  for (auto& l : b.label) {
    if (l == kNoise) continue;
    auto [it, ins] = rename.emplace(l, 1000000 + static_cast<std::int32_t>(rename.size()));
    l = it->second;
  }
  CHECK(check_equivalence(a, b, points, params).pass);
  CHECK(check_equivalence(b, a, points, params).pass);
}

TEST_CASE("check_equivalence: detects divergence") {
  // One tight clump (all core) plus an isolated noise point.
  PointSet points;
  points.dim = 2;
  for (int i = 0; i < 6; ++i) {
    points.coords.push_back(0.05f * i);
    points.coords.push_back(0.f);
  }
  points.coords.push_back(50.f);
  points.coords.push_back(50.f);
  DbscanParams params{1.f, 5};
  Clustering a = dbscan_bruteforce(points, params);
  REQUIRE(a.is_core[0] == 1);
  REQUIRE(a.label[6] == kNoise);

  SUBCASE("corrupted core flag") {
    Clustering b = a;
    for (std::size_t i = 0; i < b.is_core.size(); ++i)
      if (b.is_core[i]) {
        b.is_core[i] = 0;
        break;
      }
    auto rep = check_equivalence(a, b, points, params);
    CHECK_FALSE(rep.pass);
    CHECK(rep.message.find("core flags") != std::string::npos);
  }

  SUBCASE("noise flipped to a cluster") {
    Clustering b = a;
    for (std::size_t i = 0; i < b.label.size(); ++i)
      if (b.label[i] == kNoise) {
        b.label[i] = 0;
        break;
      }
    CHECK_FALSE(check_equivalence(a, b, points, params).pass);
  }
}

TEST_CASE("check_equivalence: border may take either adjacent cluster, not a distant one") {
  // Two blobs with a midpoint border plus a third far-away cluster.
  constexpr float eps = 1.f;
  PointSet ps;
  ps.dim = 2;
  auto add = [&](float x, float y) {
    ps.coords.push_back(x);
    ps.coords.push_back(y);
  };
  add(-0.75f, 0.f);
  for (int i = 0; i < 4; ++i) add(-1.05f - 0.1f * i, 0.f);
  add(0.75f, 0.f);
  for (int i = 0; i < 4; ++i) add(1.05f + 0.1f * i, 0.f);
  add(0.f, 0.f);  // border at index 10
  for (int i = 0; i < 5; ++i) add(50.f + 0.1f * i, 0.f);  // distant cluster

  DbscanParams params{eps, 5};
  Clustering a = dbscan_bruteforce(ps, params);
  REQUIRE(a.is_core[10] == 0);
  REQUIRE(a.label[10] != kNoise);

  Clustering other_side = a;
  other_side.label[10] =
      (a.label[10] == a.label[0]) ? a.label[5] : a.label[0];
  CHECK(check_equivalence(a, other_side, ps, params).pass);

  Clustering distant = a;
  distant.label[10] = a.label[11];  // not density-reachable from the border
  auto rep = check_equivalence(a, distant, ps, params);
  CHECK_FALSE(rep.pass);
  CHECK(rep.message.find("border") != std::string::npos);
}
