#ifndef TREECLUST_ORACLE_HPP
#define TREECLUST_ORACLE_HPP

#include <cstdint>
#include <string>

#include "dbscan.hpp"
#include "geometry.hpp"

namespace treeclust {

inline constexpr std::int64_t kDefaultOracleCap = 10000;

// Reference DBSCAN: full O(n^2) neighbor scans and sequential breadth-first
// cluster expansion, border points assigned to the first encountered cluster.
// Refuses inputs above the cap.
Clustering dbscan_bruteforce(const PointSet& points, DbscanParams params,
                             std::int64_t cap = kDefaultOracleCap);

struct EquivalenceReport {
  bool pass = true;
  std::string message;  // first divergence when pass == false
};

// Two clusterings are equivalent iff core flags match exactly, noise sets
// match exactly, core partitions match up to cluster relabeling, and every
// border point is assigned to a cluster that contains a core point within eps
// of it (border identity is allowed to differ).
EquivalenceReport check_equivalence(const Clustering& a, const Clustering& b,
                                    const PointSet& points, DbscanParams params);

}  // namespace treeclust

#endif
