#pragma once

#include "skydiag/grid.hpp"

namespace skydiag {

enum class QuadrantAlgo { Base, Graph, Scan };

// Per-cell first-orthant skyline, each cell computed independently at its
// representative. Any d >= 2.
CellResultGrid qbase(const Dataset& ds, const CellGrid& grid, int threads = 1);

// Incremental sweep over the directed skyline graph: crossing a grid line
// removes every point on it and promotes children left without a parent.
// Output identical to qbase.
CellResultGrid qgraph(const Dataset& ds, const CellGrid& grid);

// Neighbor-recurrence sweep. A cell whose upper-right corner hosts points
// yields exactly those points; otherwise the cell is the signed multiset
// sum of its +1 neighbors (skyline-wrapped for d > 2).
CellResultGrid qscan(const Dataset& ds, const CellGrid& grid);

// Arrangement of downward and leftward half-open rays; emits each skyline
// polyomino directly with its boundary vertex chain. 2D only; the output
// partition matches merge_equal_results(qbase) piece for piece.
DiagramPartition qsweep(const Dataset& ds);

// Union of the 2^d per-orthant quadrant results per cell, computed by
// reflecting coordinates axis-wise and reusing the chosen backend.
CellResultGrid global_cells(const Dataset& ds, const CellGrid& grid,
                            QuadrantAlgo algo = QuadrantAlgo::Scan, int threads = 1);

}  // namespace skydiag
