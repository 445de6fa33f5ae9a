#include "bvh.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace treeclust {

Bvh::Bvh(std::vector<Primitive> primitives, int dim) : dim_(dim) {
  if (primitives.empty())
    throw std::invalid_argument("Bvh: need at least one primitive");

  // Scene bounds over centroids drive the Morton quantization.
  Aabb scene = Aabb::empty();
  std::vector<std::uint64_t> codes(primitives.size());
  std::vector<float> centroid(3);
  for (const Primitive& p : primitives) {
    p.bounds.centroid(centroid.data(), dim);
    scene.grow(centroid.data(), dim);
  }
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    primitives[i].bounds.centroid(centroid.data(), dim);
    codes[i] = morton_encode(centroid.data(), scene, dim);
  }

  std::vector<std::int32_t> order(primitives.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    if (codes[a] != codes[b]) return codes[a] < codes[b];
    return a < b;
  });

  leaves_.reserve(primitives.size());
  codes_.reserve(primitives.size());
  for (std::int32_t idx : order) {
    leaves_.push_back(primitives[idx]);
    codes_.push_back(codes[idx]);
  }

  if (leaf_count() > 1) {
    build_topology();
    refit();
  }
}

// Length of the common prefix of the keys at leaf positions i and j, with the
// leaf index appended as tie-break bits for equal Morton codes.
int Bvh::delta(std::int32_t i, std::int32_t j) const {
  if (j < 0 || j >= leaf_count()) return -1;
  std::uint64_t ci = codes_[i];
  std::uint64_t cj = codes_[j];
  if (ci != cj) return std::countl_zero(ci ^ cj);
  return 64 + std::countl_zero(static_cast<std::uint32_t>(i) ^
                               static_cast<std::uint32_t>(j));
}

void Bvh::build_topology() {
  std::int32_t m = leaf_count();
  nodes_.resize(m - 1);
  for (std::int32_t i = 0; i < m - 1; ++i) {
    int d = (delta(i, i + 1) > delta(i, i - 1)) ? 1 : -1;
    int delta_min = delta(i, i - d);

    std::int32_t lmax = 2;
    while (delta(i, i + lmax * d) > delta_min) lmax *= 2;
    std::int32_t l = 0;
    for (std::int32_t t = lmax / 2; t >= 1; t /= 2)
      if (delta(i, i + (l + t) * d) > delta_min) l += t;
    std::int32_t j = i + l * d;

    int delta_node = delta(i, j);
    std::int32_t s = 0;
    std::int32_t t = l;
    do {
      t = (t + 1) / 2;
      if (delta(i, i + (s + t) * d) > delta_node) s += t;
    } while (t > 1);
    std::int32_t gamma = i + s * d + std::min(d, 0);

    std::int32_t lo = std::min(i, j);
    std::int32_t hi = std::max(i, j);
    nodes_[i].left = (lo == gamma) ? ~gamma : gamma;
    nodes_[i].right = (hi == gamma + 1) ? ~(gamma + 1) : gamma + 1;
  }
}

void Bvh::refit() {
  std::int32_t m = leaf_count();
  std::vector<std::int32_t> parent(m - 1, -1);
  for (std::int32_t i = 0; i < m - 1; ++i) {
    if (nodes_[i].left >= 0) parent[nodes_[i].left] = i;
    if (nodes_[i].right >= 0) parent[nodes_[i].right] = i;
  }

  auto child_box = [&](std::int32_t c) -> const Aabb& {
    return c < 0 ? leaves_[~c].bounds : nodes_[c].box;
  };
  auto child_max_rank = [&](std::int32_t c) {
    return c < 0 ? ~c : nodes_[c].max_rank;
  };
  auto fill = [&](std::int32_t i) {
    Aabb box = child_box(nodes_[i].left);
    box.grow(child_box(nodes_[i].right), dim_);
    nodes_[i].box = box;
    nodes_[i].max_rank = std::max(child_max_rank(nodes_[i].left),
                                  child_max_rank(nodes_[i].right));
  };

  // Bottom-up: a node is filled once both its children are done. An internal
  // node is ready after two arrivals from below; leaves seed the walk.
  std::vector<std::uint8_t> arrivals(m - 1, 0);
  auto ascend = [&](std::int32_t node) {
    while (node >= 0) {
      if (++arrivals[node] < 2) return;
      fill(node);
      node = parent[node];
    }
  };
  for (std::int32_t i = 0; i < m - 1; ++i) {
    if (nodes_[i].left < 0) ascend(i);
    if (nodes_[i].right < 0) ascend(i);
  }
}

}  // namespace treeclust
