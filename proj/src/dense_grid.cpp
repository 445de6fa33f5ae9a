#include "dense_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace treeclust {

namespace {

std::int64_t cell_coord(float v, float origin, double h, std::int64_t extent) {
  auto c = static_cast<std::int64_t>(
      std::floor((static_cast<double>(v) - static_cast<double>(origin)) / h));
  // Points on the top boundary fall into the last cell.
  if (c < 0) c = 0;
  if (c >= extent) c = extent - 1;
  return c;
}

}  // namespace

DenseGrid build_grid(const PointSet& points, float eps, int minpts) {
  if (!(eps > 0.f)) throw std::invalid_argument("build_grid: eps must be positive");
  std::int64_t n = points.size();
  int dim = points.dim;
  Aabb bounds = compute_bounds(points);

  DenseGrid grid;
  grid.dim = dim;
  grid.cell_length = static_cast<double>(eps) / std::sqrt(static_cast<double>(dim));
  std::uint64_t total_check = 1;
  for (int k = 0; k < dim; ++k) {
    grid.origin[k] = bounds.min[k];
    double width = static_cast<double>(bounds.max[k]) - static_cast<double>(bounds.min[k]);
    std::int64_t e = static_cast<std::int64_t>(std::ceil(width / grid.cell_length));
    grid.extents[k] = std::max<std::int64_t>(1, e);
    if (grid.extents[k] > 0 &&
        total_check > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(grid.extents[k]))
      throw std::invalid_argument("build_grid: eps too small for domain (cell id overflow)");
    total_check *= static_cast<std::uint64_t>(grid.extents[k]);
  }

  std::vector<std::uint64_t> cell_id(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const float* p = points.point(i);
    std::uint64_t id = 0;
    for (int k = dim - 1; k >= 0; --k) {
      std::int64_t c = cell_coord(p[k], grid.origin[k], grid.cell_length, grid.extents[k]);
      id = id * static_cast<std::uint64_t>(grid.extents[k]) + static_cast<std::uint64_t>(c);
    }
    cell_id[i] = id;
  }

  grid.perm.resize(n);
  std::iota(grid.perm.begin(), grid.perm.end(), 0);
  std::sort(grid.perm.begin(), grid.perm.end(), [&](std::int32_t a, std::int32_t b) {
    if (cell_id[a] != cell_id[b]) return cell_id[a] < cell_id[b];
    return a < b;
  });

  grid.cell_of_point.resize(n);
  for (std::int64_t i = 0; i < n;) {
    std::int64_t j = i;
    while (j < n && cell_id[grid.perm[j]] == cell_id[grid.perm[i]]) ++j;
    DenseGrid::Cell cell;
    cell.id = cell_id[grid.perm[i]];
    cell.begin = static_cast<std::int32_t>(i);
    cell.end = static_cast<std::int32_t>(j);
    cell.dense = (j - i) >= minpts;
    auto cell_index = static_cast<std::int32_t>(grid.cells.size());
    for (std::int64_t k = i; k < j; ++k) grid.cell_of_point[grid.perm[k]] = cell_index;
    grid.cells.push_back(cell);
    i = j;
  }
  return grid;
}

std::vector<Primitive> make_mixed_primitives(const DenseGrid& grid,
                                             const PointSet& points) {
  std::vector<Primitive> prims;
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const DenseGrid::Cell& cell = grid.cells[c];
    if (cell.dense) {
      Aabb box = Aabb::point(points.point(grid.perm[cell.begin]), points.dim);
      for (std::int32_t k = cell.begin + 1; k < cell.end; ++k)
        box.grow(points.point(grid.perm[k]), points.dim);
      prims.push_back({Primitive::Kind::DenseBox, static_cast<std::int32_t>(c), box});
    } else {
      for (std::int32_t k = cell.begin; k < cell.end; ++k) {
        std::int32_t i = grid.perm[k];
        prims.push_back({Primitive::Kind::SinglePoint, i,
                         Aabb::point(points.point(i), points.dim)});
      }
    }
  }
  return prims;
}

}  // namespace treeclust
