#include "datagen.hpp"

#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace treeclust {

PointSet gaussian_blobs(int k, std::int64_t per_blob, int dim, float separation,
                        float sigma, std::uint64_t seed) {
  if (k < 1 || per_blob < 1) throw std::invalid_argument("gaussian_blobs: k and per_blob must be >= 1");
  if (dim != 2 && dim != 3) throw std::invalid_argument("gaussian_blobs: dim must be 2 or 3");
  SplitMix64 rng(seed);

  // Rejection-sample centers in a domain wide enough for k separated blobs.
  double domain = static_cast<double>(separation) * (k + 1);
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(k) * dim);
  constexpr int kMaxRetries = 10000;
  for (int c = 0; c < k; ++c) {
    int attempt = 0;
    while (true) {
      if (++attempt > kMaxRetries)
        throw std::runtime_error("gaussian_blobs: could not place separated centers");
      double cand[3];
      for (int a = 0; a < dim; ++a) cand[a] = rng.uniform(0.0, domain);
      bool ok = true;
      for (int o = 0; o < c && ok; ++o) {
        double d2 = 0;
        for (int a = 0; a < dim; ++a) {
          double d = cand[a] - centers[o * dim + a];
          d2 += d * d;
        }
        ok = d2 >= static_cast<double>(separation) * separation;
      }
      if (ok) {
        for (int a = 0; a < dim; ++a) centers.push_back(cand[a]);
        break;
      }
    }
  }

  PointSet out;
  out.dim = dim;
  out.coords.reserve(static_cast<std::size_t>(k) * per_blob * dim);
  for (int c = 0; c < k; ++c)
    for (std::int64_t i = 0; i < per_blob; ++i)
      for (int a = 0; a < dim; ++a)
        out.coords.push_back(static_cast<float>(centers[c * dim + a] +
                                                sigma * rng.normal()));
  return out;
}

PointSet uniform_noise(std::int64_t n, int dim, const Aabb& bounds,
                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("uniform_noise: n must be >= 1");
  if (dim != 2 && dim != 3) throw std::invalid_argument("uniform_noise: dim must be 2 or 3");
  SplitMix64 rng(seed);
  PointSet out;
  out.dim = dim;
  out.coords.reserve(static_cast<std::size_t>(n) * dim);
  for (std::int64_t i = 0; i < n; ++i)
    for (int a = 0; a < dim; ++a)
      out.coords.push_back(
          static_cast<float>(rng.uniform(bounds.min[a], bounds.max[a])));
  return out;
}

PointSet dense_lattice(std::int64_t side, int dim, float spacing) {
  if (side < 2) throw std::invalid_argument("dense_lattice: side must be >= 2");
  if (dim != 2 && dim != 3) throw std::invalid_argument("dense_lattice: dim must be 2 or 3");
  PointSet out;
  out.dim = dim;
  std::int64_t n = side;
  for (int a = 1; a < dim; ++a) n *= side;
  out.coords.reserve(static_cast<std::size_t>(n) * dim);
  std::int64_t idx[3] = {0, 0, 0};
  for (std::int64_t i = 0; i < n; ++i) {
    for (int a = 0; a < dim; ++a)
      out.coords.push_back(static_cast<float>(idx[a] * static_cast<double>(spacing)));
    for (int a = 0; a < dim; ++a) {
      if (++idx[a] < side) break;
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace treeclust
