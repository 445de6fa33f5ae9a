#ifndef TREECLUST_DATAGEN_HPP
#define TREECLUST_DATAGEN_HPP

#include <cstdint>

#include "geometry.hpp"

namespace treeclust {

// k isotropic Gaussian blobs with centers at least `separation` apart,
// per_blob points each. Deterministic per seed. Throws if center placement
// keeps failing the separation constraint.
PointSet gaussian_blobs(int k, std::int64_t per_blob, int dim, float separation,
                        float sigma, std::uint64_t seed);

PointSet uniform_noise(std::int64_t n, int dim, const Aabb& bounds,
                       std::uint64_t seed);

// Regular grid of side^dim points with the given spacing.
PointSet dense_lattice(std::int64_t side, int dim, float spacing);

}  // namespace treeclust

#endif
