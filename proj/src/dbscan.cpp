#include "dbscan.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace treeclust {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void DbscanParams::validate() const {
  if (!(eps > 0.f) || !std::isfinite(eps))
    throw std::invalid_argument("eps must be positive and finite");
  if (minpts < 2) throw std::invalid_argument("minpts must be >= 2");
}

Bvh build_point_bvh(const PointSet& points) {
  std::vector<Primitive> prims;
  prims.reserve(points.size());
  for (std::int64_t i = 0; i < points.size(); ++i)
    prims.push_back({Primitive::Kind::SinglePoint, static_cast<std::int32_t>(i),
                     Aabb::point(points.point(i), points.dim)});
  return Bvh(std::move(prims), points.dim);
}

void fdbscan_mark_cores(const Bvh& bvh, const PointSet& points,
                        DbscanParams params, CoreFlags& flags, int threads,
                        Counters& counters) {
  double eps2 = static_cast<double>(params.eps) * params.eps;
  int dim = points.dim;
  parallel_for(bvh.leaf_count(), threads, [&](std::int64_t b, std::int64_t e) {
    std::uint64_t dists = 0;
    for (std::int64_t r = b; r < e; ++r) {
      std::int32_t i = bvh.leaf(static_cast<std::int32_t>(r)).id;
      const float* p = points.point(i);
      int count = 0;
      // The query's own leaf is visited too, so the point counts itself.
      bvh.query_sphere(p, params.eps, [&](std::int32_t, const Primitive& prim) {
        ++dists;
        if (distance_sq(p, points.point(prim.id), dim) <= eps2)
          if (++count >= params.minpts) return false;  // early exit
        return true;
      });
      if (count >= params.minpts) flags.set(i);
    }
    counters.distance_evaluations.fetch_add(dists, std::memory_order_relaxed);
  });
}

void fdbscan_main_phase(const Bvh& bvh, const PointSet& points,
                        DbscanParams params, CoreFlags& flags,
                        UnionFind& labels, int threads, Counters& counters) {
  double eps2 = static_cast<double>(params.eps) * params.eps;
  int dim = points.dim;
  bool force_core = params.minpts == 2;
  parallel_for(bvh.leaf_count(), threads, [&](std::int64_t b, std::int64_t e) {
    std::uint64_t dists = 0, pairs = 0;
    for (std::int64_t rr = b; rr < e; ++rr) {
      auto r = static_cast<std::int32_t>(rr);
      std::int32_t i = bvh.leaf(r).id;
      const float* p = points.point(i);
      // Leaves with rank < r are masked out and the self leaf is skipped, so
      // every unordered within-eps pair is resolved exactly once.
      bvh.query_sphere_masked(
          p, params.eps, r, [&](std::int32_t s, const Primitive& prim) {
            if (s == r) return true;
            ++dists;
            if (distance_sq(p, points.point(prim.id), dim) <= eps2) {
              ++pairs;
              resolve_pair(i, prim.id, flags, labels, force_core);
            }
            return true;
          });
    }
    counters.distance_evaluations.fetch_add(dists, std::memory_order_relaxed);
    counters.pair_resolutions.fetch_add(pairs, std::memory_order_relaxed);
  });
}

void union_dense_cells(const DenseGrid& grid, UnionFind& labels,
                       CoreFlags& flags, int threads) {
  // Every point of a dense cell is a core point of the same cluster; no
  // distances are computed here.
  parallel_for(static_cast<std::int64_t>(grid.cells.size()), threads,
               [&](std::int64_t b, std::int64_t e) {
                 for (std::int64_t c = b; c < e; ++c) {
                   const DenseGrid::Cell& cell = grid.cells[c];
                   if (!cell.dense) continue;
                   std::int32_t first = grid.perm[cell.begin];
                   flags.set(first);
                   for (std::int32_t k = cell.begin + 1; k < cell.end; ++k) {
                     std::int32_t j = grid.perm[k];
                     flags.set(j);
                     labels.unite(first, j);
                   }
                 }
               });
}

void densebox_mark_cores(const Bvh& bvh, const DenseGrid& grid,
                         const PointSet& points, DbscanParams params,
                         CoreFlags& flags, int threads, Counters& counters) {
  double eps2 = static_cast<double>(params.eps) * params.eps;
  int dim = points.dim;
  parallel_for(points.size(), threads, [&](std::int64_t b, std::int64_t e) {
    std::uint64_t dists = 0;
    for (std::int64_t i = b; i < e; ++i) {
      if (grid.cells[grid.cell_of_point[i]].dense) continue;  // already core
      const float* p = points.point(i);
      int count = 0;
      bvh.query_sphere(p, params.eps, [&](std::int32_t, const Primitive& prim) {
        if (prim.kind == Primitive::Kind::SinglePoint) {
          ++dists;
          if (distance_sq(p, points.point(prim.id), dim) <= eps2) ++count;
        } else {
          const DenseGrid::Cell& cell = grid.cells[prim.id];
          for (std::int32_t k = cell.begin; k < cell.end; ++k) {
            ++dists;
            if (distance_sq(p, points.point(grid.perm[k]), dim) <= eps2)
              if (++count >= params.minpts) break;
          }
        }
        return count < params.minpts;  // early exit
      });
      if (count >= params.minpts) flags.set(i);
    }
    counters.distance_evaluations.fetch_add(dists, std::memory_order_relaxed);
  });
}

void densebox_main_phase(const Bvh& bvh, const DenseGrid& grid,
                         const PointSet& points, DbscanParams params,
                         CoreFlags& flags, UnionFind& labels, int threads,
                         Counters& counters) {
  double eps2 = static_cast<double>(params.eps) * params.eps;
  int dim = points.dim;
  bool force_core = params.minpts == 2;

  // Leaf rank of each point's own primitive; pairs across two primitives are
  // resolved only by the side with the lower rank (masked traversal), the
  // same each-pair-once scheme as the point-only main phase.
  std::vector<std::int32_t> own_rank(points.size());
  for (std::int32_t s = 0; s < bvh.leaf_count(); ++s) {
    const Primitive& prim = bvh.leaf(s);
    if (prim.kind == Primitive::Kind::SinglePoint) {
      own_rank[prim.id] = s;
    } else {
      const DenseGrid::Cell& cell = grid.cells[prim.id];
      for (std::int32_t k = cell.begin; k < cell.end; ++k)
        own_rank[grid.perm[k]] = s;
    }
  }

  parallel_for(points.size(), threads, [&](std::int64_t b, std::int64_t e) {
    std::uint64_t dists = 0, pairs = 0;
    for (std::int64_t ii = b; ii < e; ++ii) {
      auto i = static_cast<std::int32_t>(ii);
      std::int32_t r = own_rank[i];
      const float* p = points.point(i);
      bvh.query_sphere_masked(
          p, params.eps, r, [&](std::int32_t s, const Primitive& prim) {
            if (s == r) return true;
            if (prim.kind == Primitive::Kind::SinglePoint) {
              ++dists;
              if (distance_sq(p, points.point(prim.id), dim) <= eps2) {
                ++pairs;
                resolve_pair(i, prim.id, flags, labels, force_core);
              }
            } else {
              // One member within eps suffices: every member of a dense box
              // is a core point of one cluster, so a single link connects to
              // all of them.
              const DenseGrid::Cell& cell = grid.cells[prim.id];
              for (std::int32_t k = cell.begin; k < cell.end; ++k) {
                std::int32_t j = grid.perm[k];
                ++dists;
                if (distance_sq(p, points.point(j), dim) <= eps2) {
                  ++pairs;
                  resolve_pair(i, j, flags, labels, force_core);
                  break;
                }
              }
            }
            return true;
          });
    }
    counters.distance_evaluations.fetch_add(dists, std::memory_order_relaxed);
    counters.pair_resolutions.fetch_add(pairs, std::memory_order_relaxed);
  });
}

Clustering finalize_labels(UnionFind& labels, const CoreFlags& flags,
                           int threads) {
  std::int32_t n = labels.size();
  labels.flatten(threads);
  Clustering out;
  out.label.resize(n);
  out.is_core.resize(n);
  parallel_for(n, threads, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      bool core = flags.get(i);
      out.is_core[i] = core ? 1 : 0;
      std::int32_t root = labels.parent(static_cast<std::int32_t>(i));
      // A non-core point still sitting in its own slot was never claimed.
      out.label[i] = (core || root != i) ? root : kNoise;
    }
  });
  return out;
}

Clustering dbscan_run(const PointSet& points, DbscanParams params,
                      Algorithm algorithm, int threads, RunStats* stats) {
  points.validate();
  params.validate();
  if (points.size() > std::numeric_limits<std::int32_t>::max())
    throw std::invalid_argument("dbscan_run: more than 2^31-1 points");
  auto n = static_cast<std::int32_t>(points.size());

  RunStats local_stats;
  RunStats& st = stats ? *stats : local_stats;
  st = RunStats{};
  Counters counters;

  auto t0 = std::chrono::steady_clock::now();
  DenseGrid grid;
  std::unique_ptr<Bvh> bvh;
  if (algorithm == Algorithm::Fdbscan) {
    bvh = std::make_unique<Bvh>(build_point_bvh(points));
  } else {
    grid = build_grid(points, params.eps, params.minpts);
    bvh = std::make_unique<Bvh>(make_mixed_primitives(grid, points), points.dim);
    st.dense_point_fraction =
        static_cast<double>(grid.dense_point_count()) / n;
  }
  st.build_seconds = seconds_since(t0);

  UnionFind labels(n);
  CoreFlags flags(n);

  t0 = std::chrono::steady_clock::now();
  st.preprocess_skipped = params.minpts == 2;
  if (!st.preprocess_skipped) {
    if (algorithm == Algorithm::Fdbscan)
      fdbscan_mark_cores(*bvh, points, params, flags, threads, counters);
    else
      densebox_mark_cores(*bvh, grid, points, params, flags, threads, counters);
  }
  st.preprocess_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (algorithm == Algorithm::Fdbscan) {
    fdbscan_main_phase(*bvh, points, params, flags, labels, threads, counters);
  } else {
    union_dense_cells(grid, labels, flags, threads);
    densebox_main_phase(*bvh, grid, points, params, flags, labels, threads,
                        counters);
  }
  st.main_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  Clustering out = finalize_labels(labels, flags, threads);
  st.finalize_seconds = seconds_since(t0);

  st.pair_resolutions = counters.pair_resolutions.load();
  st.distance_evaluations = counters.distance_evaluations.load();
  for (std::int32_t i = 0; i < n; ++i) {
    if (out.label[i] == kNoise)
      ++st.noise_count;
    else if (out.label[i] == i)
      ++st.cluster_count;
    if (out.is_core[i]) ++st.core_count;
  }
  return out;
}

}  // namespace treeclust
