#ifndef TREECLUST_BVH_HPP
#define TREECLUST_BVH_HPP

#include <cstdint>
#include <vector>

#include "geometry.hpp"

namespace treeclust {

// A BVH leaf: either one dataset point or the box of a dense grid cell.
struct Primitive {
  enum class Kind : std::uint8_t { SinglePoint, DenseBox };
  Kind kind;
  std::int32_t id;  // point index or dense-cell index
  Aabb bounds;      // degenerate for SinglePoint
};

// Flat linear BVH built from Morton-sorted primitive centroids (Karras-style
// radix-tree topology). Immutable after construction; queries are safe from
// any number of concurrent threads.
//
// Leaves are identified by their rank, i.e. position in Morton order. Every
// internal node stores the maximum leaf rank of its subtree so that a masked
// query can hide all leaves with rank < min_rank, which is what makes the
// each-pair-once main phase possible.
class Bvh {
 public:
  // Ties between equal Morton codes are broken by original primitive index,
  // so the leaf order is a strict total order and builds are deterministic.
  explicit Bvh(std::vector<Primitive> primitives, int dim);

  std::int32_t leaf_count() const { return static_cast<std::int32_t>(leaves_.size()); }
  const Primitive& leaf(std::int32_t rank) const { return leaves_[rank]; }

  // Invokes visitor(rank, primitive) for every leaf whose box intersects the
  // closed ball. Visitor returns false to terminate this query early.
  template <typename Visitor>
  void query_sphere(const float* center, double radius, Visitor&& visit) const {
    query_sphere_masked(center, radius, 0, visit);
  }

  // Same, but subtrees whose max leaf rank < min_rank are never entered.
  template <typename Visitor>
  void query_sphere_masked(const float* center, double radius,
                           std::int32_t min_rank, Visitor&& visit) const {
    double r2 = radius * radius;
    std::int32_t m = leaf_count();
    if (m == 1) {
      if (min_rank <= 0 && box_distance_sq(center, leaves_[0].bounds, dim_) <= r2)
        visit(std::int32_t{0}, leaves_[0]);
      return;
    }
    std::int32_t stack[kMaxDepth];
    int top = 0;
    stack[top++] = 0;  // root
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      for (std::int32_t child : {node.left, node.right}) {
        if (child < 0) {
          std::int32_t rank = ~child;
          if (rank < min_rank) continue;
          if (box_distance_sq(center, leaves_[rank].bounds, dim_) <= r2)
            if (!visit(rank, leaves_[rank])) return;
        } else {
          const Node& c = nodes_[child];
          if (c.max_rank < min_rank) continue;
          if (box_distance_sq(center, c.box, dim_) <= r2) stack[top++] = child;
        }
      }
    }
  }

  // Test access.
  std::int32_t internal_count() const { return static_cast<std::int32_t>(nodes_.size()); }
  const Aabb& node_box(std::int32_t i) const { return nodes_[i].box; }
  std::int32_t node_left(std::int32_t i) const { return nodes_[i].left; }
  std::int32_t node_right(std::int32_t i) const { return nodes_[i].right; }
  std::int32_t node_max_rank(std::int32_t i) const { return nodes_[i].max_rank; }

 private:
  // Effective keys are (morton code, leaf index): depth is bounded by the
  // 64+32 bit key length, so a fixed stack suffices.
  static constexpr int kMaxDepth = 128;

  struct Node {
    Aabb box;
    std::int32_t left;   // >= 0: internal node index; < 0: ~leaf_rank
    std::int32_t right;
    std::int32_t max_rank;
  };

  int delta(std::int32_t i, std::int32_t j) const;
  void build_topology();
  void refit();

  int dim_;
  std::vector<Primitive> leaves_;
  std::vector<std::uint64_t> codes_;  // Morton code per leaf, sorted
  std::vector<Node> nodes_;
};

}  // namespace treeclust

#endif
