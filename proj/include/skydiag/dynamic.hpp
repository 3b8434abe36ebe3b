#pragma once

#include "skydiag/grid.hpp"

namespace skydiag {

// Per-subcell dynamic skyline: map every point by its per-axis distance to
// the subcell representative, then keep the skyline of the mapped points.
CellResultGrid dbase(const Dataset& ds, const SubcellGrid& grid, int threads = 1);

// Same output, but each subcell only considers the global skyline of the
// coarse cell containing it.
CellResultGrid dsubset(const Dataset& ds, const SubcellGrid& grid, const CellGrid& cell_grid,
                       const CellResultGrid& global_results, int threads = 1);

// Same output via neighbor steps: each subcell re-filters the previous
// subcell's result plus the contributor points of the crossed line.
CellResultGrid dscan(const Dataset& ds, const SubcellGrid& grid);

}  // namespace skydiag
