#ifndef TREECLUST_UNION_FIND_HPP
#define TREECLUST_UNION_FIND_HPP

#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>

#include "parallel.hpp"

namespace treeclust {

// Synchronization-free disjoint sets over a flat parent array. find() applies
// intermediate pointer jumping (every visited node is redirected to its
// grandparent), unite() hooks the higher-indexed root under the lower one with
// a compare-exchange, so final representatives are the minimum index of each
// component regardless of thread schedule.
class UnionFind {
 public:
  explicit UnionFind(std::int32_t n)
      : n_(n), parent_(std::make_unique<std::atomic<std::int32_t>[]>(n)) {
    assert(n >= 1);
    for (std::int32_t i = 0; i < n; ++i)
      parent_[i].store(i, std::memory_order_relaxed);
  }

  std::int32_t size() const { return n_; }

  std::int32_t parent(std::int32_t i) const {
    return parent_[i].load(std::memory_order_relaxed);
  }

  // True while i has never been hooked anywhere (still its own root slot).
  bool is_unclaimed(std::int32_t i) const { return parent(i) == i; }

  std::int32_t find(std::int32_t i) {
    std::int32_t cur = parent(i);
    if (cur != i) {
      std::int32_t prev = i;
      std::int32_t next = parent(cur);
      while (cur != next) {
        parent_[prev].store(next, std::memory_order_relaxed);
        prev = cur;
        cur = next;
        next = parent(cur);
      }
    }
    return cur;
  }

  void unite(std::int32_t i, std::int32_t j) {
    while (true) {
      i = find(i);
      j = find(j);
      if (i == j) return;
      if (i > j) std::swap(i, j);
      // Hook higher root j under lower root i; retry from new roots on
      // contention.
      std::int32_t expected = j;
      if (parent_[j].compare_exchange_strong(expected, i,
                                             std::memory_order_relaxed))
        return;
    }
  }

  // One-shot claim of a border point: succeeds only if i is still unclaimed,
  // in which case i is hooked under root. Never makes i a representative of
  // anything, so a claimed border cannot bridge two clusters.
  bool claim(std::int32_t i, std::int32_t root) {
    std::int32_t expected = i;
    return parent_[i].compare_exchange_strong(expected, root,
                                              std::memory_order_relaxed);
  }

  // Requires quiescence (no unions in flight). Afterwards every node points
  // directly at its root.
  void flatten(int threads = 1) {
    parallel_for(n_, threads, [this](std::int64_t b, std::int64_t e) {
      for (std::int64_t i = b; i < e; ++i) {
        std::int32_t cur = static_cast<std::int32_t>(i);
        std::int32_t p = parent(cur);
        while (p != parent(p)) p = parent(p);
        parent_[i].store(p, std::memory_order_relaxed);
      }
    });
  }

 private:
  std::int32_t n_;
  std::unique_ptr<std::atomic<std::int32_t>[]> parent_;
};

}  // namespace treeclust

#endif
