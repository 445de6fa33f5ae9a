#ifndef TREECLUST_DENSE_GRID_HPP
#define TREECLUST_DENSE_GRID_HPP

#include <cstdint>
#include <vector>

#include "bvh.hpp"
#include "geometry.hpp"

namespace treeclust {

// Sparse regular grid with cell length eps/sqrt(d), so the diagonal of any
// cell is at most eps and all points sharing a cell are mutual neighbors.
// Only non-empty cells are materialized; points are permuted so each cell's
// members are contiguous in `perm`.
struct DenseGrid {
  struct Cell {
    std::uint64_t id;     // flattened cell coordinates, row-major
    std::int32_t begin;   // range into perm
    std::int32_t end;
    bool dense;           // end - begin >= minpts
  };

  int dim = 0;
  double cell_length = 0.0;
  std::array<float, 3> origin{};
  std::array<std::int64_t, 3> extents{};
  std::vector<std::int32_t> perm;           // point indices grouped by cell
  std::vector<Cell> cells;                  // sorted by id
  std::vector<std::int32_t> cell_of_point;  // index into cells, per point

  std::int64_t dense_point_count() const {
    std::int64_t c = 0;
    for (const Cell& cell : cells)
      if (cell.dense) c += cell.end - cell.begin;
    return c;
  }
};

DenseGrid build_grid(const PointSet& points, float eps, int minpts);

// One DenseBox per dense cell (tight box of its members) plus one SinglePoint
// per point outside dense cells. DenseBox primitive ids index into grid.cells.
std::vector<Primitive> make_mixed_primitives(const DenseGrid& grid,
                                             const PointSet& points);

}  // namespace treeclust

#endif
