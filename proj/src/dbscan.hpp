#ifndef TREECLUST_DBSCAN_HPP
#define TREECLUST_DBSCAN_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "bvh.hpp"
#include "dense_grid.hpp"
#include "geometry.hpp"
#include "union_find.hpp"

namespace treeclust {

inline constexpr std::int32_t kNoise = -1;

struct DbscanParams {
  float eps = 0.f;
  int minpts = 2;

  void validate() const;
};

enum class Algorithm { Fdbscan, DenseBox };

struct Clustering {
  std::vector<std::int32_t> label;    // representative point index, or kNoise
  std::vector<std::uint8_t> is_core;  // 1 iff |N_eps(i)| >= minpts
};

struct RunStats {
  double build_seconds = 0;
  double preprocess_seconds = 0;
  double main_seconds = 0;
  double finalize_seconds = 0;
  bool preprocess_skipped = false;
  double dense_point_fraction = 0;  // fraction of points inside dense cells
  std::uint64_t pair_resolutions = 0;
  std::uint64_t distance_evaluations = 0;
  std::int64_t cluster_count = 0;
  std::int64_t core_count = 0;
  std::int64_t noise_count = 0;
};

// Runs the two-phase disjoint-set DBSCAN: index build, core-point
// preprocessing (skipped when minpts == 2), pairwise main phase, flatten,
// label finalization.
Clustering dbscan_run(const PointSet& points, DbscanParams params,
                      Algorithm algorithm, int threads = 1,
                      RunStats* stats = nullptr);

// --- building blocks, exposed for direct testing ---

class CoreFlags {
 public:
  explicit CoreFlags(std::int64_t n)
      : n_(n), flags_(std::make_unique<std::atomic<std::uint8_t>[]>(n)) {
    for (std::int64_t i = 0; i < n; ++i)
      flags_[i].store(0, std::memory_order_relaxed);
  }
  std::int64_t size() const { return n_; }
  bool get(std::int64_t i) const {
    return flags_[i].load(std::memory_order_relaxed) != 0;
  }
  void set(std::int64_t i) { flags_[i].store(1, std::memory_order_relaxed); }

 private:
  std::int64_t n_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> flags_;
};

struct Counters {
  std::atomic<std::uint64_t> pair_resolutions{0};
  std::atomic<std::uint64_t> distance_evaluations{0};
};

// Symmetric resolution of a within-eps pair. core-core unions; core-border
// claims the border with a single compare-exchange so that no second cluster
// can later union through it (no bridging). force_core implements the
// minpts == 2 case where every within-eps pair consists of core points.
inline void resolve_pair(std::int32_t i, std::int32_t j, CoreFlags& flags,
                         UnionFind& labels, bool force_core = false) {
  bool core_i, core_j;
  if (force_core) {
    flags.set(i);
    flags.set(j);
    core_i = core_j = true;
  } else {
    core_i = flags.get(i);
    core_j = flags.get(j);
  }
  if (core_i && core_j)
    labels.unite(i, j);
  else if (core_i && labels.is_unclaimed(j))
    labels.claim(j, labels.find(i));
  else if (core_j && labels.is_unclaimed(i))
    labels.claim(i, labels.find(j));
}

Bvh build_point_bvh(const PointSet& points);

void fdbscan_mark_cores(const Bvh& bvh, const PointSet& points,
                        DbscanParams params, CoreFlags& flags, int threads,
                        Counters& counters);
void fdbscan_main_phase(const Bvh& bvh, const PointSet& points,
                        DbscanParams params, CoreFlags& flags,
                        UnionFind& labels, int threads, Counters& counters);

void union_dense_cells(const DenseGrid& grid, UnionFind& labels,
                       CoreFlags& flags, int threads);
void densebox_mark_cores(const Bvh& bvh, const DenseGrid& grid,
                         const PointSet& points, DbscanParams params,
                         CoreFlags& flags, int threads, Counters& counters);
void densebox_main_phase(const Bvh& bvh, const DenseGrid& grid,
                         const PointSet& points, DbscanParams params,
                         CoreFlags& flags, UnionFind& labels, int threads,
                         Counters& counters);

Clustering finalize_labels(UnionFind& labels, const CoreFlags& flags,
                           int threads);

}  // namespace treeclust

#endif
