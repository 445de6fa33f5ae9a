#ifndef TREECLUST_GEOMETRY_HPP
#define TREECLUST_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace treeclust {

// A set of n points in dim ∈ {2,3} dimensions, stored row-major as 32-bit
// floats. Distances are accumulated in doubles.
struct PointSet {
  int dim = 0;
  std::vector<float> coords;

  PointSet() = default;
  PointSet(int d, std::vector<float> c) : dim(d), coords(std::move(c)) {}

  std::int64_t size() const {
    return dim == 0 ? 0 : static_cast<std::int64_t>(coords.size()) / dim;
  }
  const float* point(std::int64_t i) const { return coords.data() + i * dim; }
  float* point(std::int64_t i) { return coords.data() + i * dim; }

  void validate() const {
    if (dim != 2 && dim != 3)
      throw std::invalid_argument("PointSet: dimension must be 2 or 3");
    if (coords.empty() || coords.size() % dim != 0)
      throw std::invalid_argument("PointSet: coordinate count not a multiple of dim");
    for (float c : coords)
      if (!std::isfinite(c))
        throw std::invalid_argument("PointSet: non-finite coordinate");
  }
};

struct Aabb {
  std::array<float, 3> min{0.f, 0.f, 0.f};
  std::array<float, 3> max{0.f, 0.f, 0.f};

  static Aabb empty() {
    Aabb b;
    b.min.fill(std::numeric_limits<float>::max());
    b.max.fill(std::numeric_limits<float>::lowest());
    return b;
  }
  static Aabb point(const float* p, int dim) {
    Aabb b;
    for (int k = 0; k < dim; ++k) b.min[k] = b.max[k] = p[k];
    return b;
  }
  void grow(const float* p, int dim) {
    for (int k = 0; k < dim; ++k) {
      min[k] = std::min(min[k], p[k]);
      max[k] = std::max(max[k], p[k]);
    }
  }
  void grow(const Aabb& o, int dim) {
    for (int k = 0; k < dim; ++k) {
      min[k] = std::min(min[k], o.min[k]);
      max[k] = std::max(max[k], o.max[k]);
    }
  }
  void centroid(float* out, int dim) const {
    for (int k = 0; k < dim; ++k) out[k] = 0.5f * (min[k] + max[k]);
  }
};

inline double distance_sq(const float* a, const float* b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    s += d * d;
  }
  return s;
}

// Squared distance from a point to the closed box (0 if inside).
inline double box_distance_sq(const float* p, const Aabb& box, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    double d = 0.0;
    if (p[k] < box.min[k])
      d = static_cast<double>(box.min[k]) - static_cast<double>(p[k]);
    else if (p[k] > box.max[k])
      d = static_cast<double>(p[k]) - static_cast<double>(box.max[k]);
    s += d * d;
  }
  return s;
}

inline Aabb compute_bounds(const PointSet& points) {
  if (points.size() == 0)
    throw std::invalid_argument("compute_bounds: empty point set");
  Aabb b = Aabb::point(points.point(0), points.dim);
  for (std::int64_t i = 1; i < points.size(); ++i) b.grow(points.point(i), points.dim);
  return b;
}

namespace detail {

// Spreads the low 32 bits of x so bit k lands at position 2k.
inline std::uint64_t expand_bits_2(std::uint64_t x) {
  x &= 0xffffffffull;
  x = (x | (x << 16)) & 0x0000ffff0000ffffull;
  x = (x | (x << 8)) & 0x00ff00ff00ff00ffull;
  x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

// Spreads the low 21 bits of x so bit k lands at position 3k.
inline std::uint64_t expand_bits_3(std::uint64_t x) {
  x &= 0x1fffffull;
  x = (x | (x << 32)) & 0x001f00000000ffffull;
  x = (x | (x << 16)) & 0x001f0000ff0000ffull;
  x = (x | (x << 8)) & 0x100f00f00f00f00full;
  x = (x | (x << 4)) & 0x10c30c30c30c30c3ull;
  x = (x | (x << 2)) & 0x1249249249249249ull;
  return x;
}

}  // namespace detail

// Bits per axis: 31 in 2D, 21 in 3D (the code fits one 64-bit word).
inline int morton_bits_per_axis(int dim) { return dim == 2 ? 31 : 21; }

inline std::uint32_t morton_quantize(float v, float lo, float hi, int bits) {
  std::uint64_t cells = 1ull << bits;
  double w = static_cast<double>(hi) - static_cast<double>(lo);
  if (w <= 0.0) return 0;
  double t = (static_cast<double>(v) - static_cast<double>(lo)) / w;
  if (t < 0.0) t = 0.0;
  auto q = static_cast<std::uint64_t>(t * static_cast<double>(cells));
  if (q >= cells) q = cells - 1;
  return static_cast<std::uint32_t>(q);
}

// Axis-major interleave: bit b of axis a lands at position b*dim + a.
inline std::uint64_t morton_encode(const float* p, const Aabb& bounds, int dim) {
  int bits = morton_bits_per_axis(dim);
  if (dim == 2) {
    std::uint64_t x = morton_quantize(p[0], bounds.min[0], bounds.max[0], bits);
    std::uint64_t y = morton_quantize(p[1], bounds.min[1], bounds.max[1], bits);
    return detail::expand_bits_2(x) | (detail::expand_bits_2(y) << 1);
  }
  std::uint64_t x = morton_quantize(p[0], bounds.min[0], bounds.max[0], bits);
  std::uint64_t y = morton_quantize(p[1], bounds.min[1], bounds.max[1], bits);
  std::uint64_t z = morton_quantize(p[2], bounds.min[2], bounds.max[2], bits);
  return detail::expand_bits_3(x) | (detail::expand_bits_3(y) << 1) |
         (detail::expand_bits_3(z) << 2);
}

}  // namespace treeclust

#endif
