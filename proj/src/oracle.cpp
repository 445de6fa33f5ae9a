#include "oracle.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace treeclust {

Clustering dbscan_bruteforce(const PointSet& points, DbscanParams params,
                             std::int64_t cap) {
  points.validate();
  params.validate();
  std::int64_t n = points.size();
  if (n > cap) {
    std::ostringstream os;
    os << "dbscan_bruteforce: n=" << n << " exceeds cap=" << cap;
    throw std::invalid_argument(os.str());
  }
  int dim = points.dim;
  double eps2 = static_cast<double>(params.eps) * params.eps;

  auto neighbors = [&](std::int64_t x) {
    std::vector<std::int64_t> result;
    const float* p = points.point(x);
    for (std::int64_t j = 0; j < n; ++j)
      if (distance_sq(p, points.point(j), dim) <= eps2) result.push_back(j);
    return result;  // includes x itself
  };

  Clustering out;
  out.label.assign(n, kNoise);
  out.is_core.assign(n, 0);
  std::vector<std::uint8_t> visited(n, 0);

  for (std::int64_t x = 0; x < n; ++x) {
    if (visited[x]) continue;
    visited[x] = 1;
    std::vector<std::int64_t> seeds = neighbors(x);
    if (static_cast<int>(seeds.size()) < params.minpts) continue;  // noise for now
    out.is_core[x] = 1;
    auto cid = static_cast<std::int32_t>(x);
    out.label[x] = cid;
    std::deque<std::int64_t> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      std::int64_t y = queue.front();
      queue.pop_front();
      if (!visited[y]) {
        visited[y] = 1;
        std::vector<std::int64_t> more = neighbors(y);
        if (static_cast<int>(more.size()) >= params.minpts) {
          out.is_core[y] = 1;
          queue.insert(queue.end(), more.begin(), more.end());
        }
      }
      if (out.label[y] == kNoise) out.label[y] = cid;
    }
  }
  return out;
}

namespace {

std::string index_message(const char* what, std::int64_t i) {
  std::ostringstream os;
  os << what << " (first divergence at point " << i << ")";
  return os.str();
}

// Every non-noise border point must share a label with some core point
// within eps of it.
bool borders_valid(const Clustering& c, const PointSet& points,
                   DbscanParams params, std::int64_t* bad_index) {
  std::int64_t n = points.size();
  int dim = points.dim;
  double eps2 = static_cast<double>(params.eps) * params.eps;

  std::vector<std::int64_t> borders;
  for (std::int64_t i = 0; i < n; ++i)
    if (!c.is_core[i] && c.label[i] != kNoise) borders.push_back(i);
  if (borders.empty()) return true;

  if (n <= kDefaultOracleCap) {
    for (std::int64_t i : borders) {
      bool ok = false;
      for (std::int64_t j = 0; j < n && !ok; ++j)
        ok = c.is_core[j] && c.label[j] == c.label[i] &&
             distance_sq(points.point(i), points.point(j), dim) <= eps2;
      if (!ok) {
        *bad_index = i;
        return false;
      }
    }
    return true;
  }

  Bvh bvh = build_point_bvh(points);
  for (std::int64_t i : borders) {
    const float* p = points.point(i);
    bool ok = false;
    bvh.query_sphere(p, params.eps, [&](std::int32_t, const Primitive& prim) {
      std::int32_t j = prim.id;
      if (c.is_core[j] && c.label[j] == c.label[i] &&
          distance_sq(p, points.point(j), dim) <= eps2) {
        ok = true;
        return false;
      }
      return true;
    });
    if (!ok) {
      *bad_index = i;
      return false;
    }
  }
  return true;
}

}  // namespace

EquivalenceReport check_equivalence(const Clustering& a, const Clustering& b,
                                    const PointSet& points,
                                    DbscanParams params) {
  EquivalenceReport report;
  auto fail = [&](std::string msg) {
    report.pass = false;
    report.message = std::move(msg);
    return report;
  };

  std::int64_t n = points.size();
  if (static_cast<std::int64_t>(a.label.size()) != n ||
      static_cast<std::int64_t>(b.label.size()) != n)
    return fail("clustering sizes differ from point set");

  for (std::int64_t i = 0; i < n; ++i)
    if (a.is_core[i] != b.is_core[i])
      return fail(index_message("core flags differ", i));

  for (std::int64_t i = 0; i < n; ++i)
    if ((a.label[i] == kNoise) != (b.label[i] == kNoise))
      return fail(index_message("noise sets differ", i));

  // Core partitions must agree up to a bijective relabeling.
  std::unordered_map<std::int32_t, std::int32_t> a_to_b, b_to_a;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!a.is_core[i]) continue;
    auto [ita, inserted_a] = a_to_b.emplace(a.label[i], b.label[i]);
    if (!inserted_a && ita->second != b.label[i])
      return fail(index_message("core partitions differ", i));
    auto [itb, inserted_b] = b_to_a.emplace(b.label[i], a.label[i]);
    if (!inserted_b && itb->second != a.label[i])
      return fail(index_message("core partitions differ", i));
  }

  std::int64_t bad = -1;
  if (!borders_valid(a, points, params, &bad))
    return fail(index_message("first clustering has an invalid border label", bad));
  if (!borders_valid(b, points, params, &bad))
    return fail(index_message("second clustering has an invalid border label", bad));

  report.message = "PASS";
  return report;
}

}  // namespace treeclust
