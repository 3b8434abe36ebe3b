#pragma once

#include "skydiag/grid.hpp"

namespace skydiag {

// Axis-aligned tiling of a 2D result grid where every tile's result union
// holds at most delta points. Cut indices include both ends: vpls
// partitions columns (axis 0), hpls rows (axis 1).
struct ApproxDiagram {
    long long delta = 0;
    std::vector<int> vpls;  // first 0, last = column count
    std::vector<int> hpls;  // first 0, last = row count
    std::vector<ResultSet> tiles;  // [row_band * col_bands + col_band]

    int col_bands() const { return static_cast<int>(vpls.size()) - 1; }
    int row_bands() const { return static_cast<int>(hpls.size()) - 1; }
    const ResultSet& tile(int row_band, int col_band) const {
        return tiles[static_cast<std::size_t>(row_band) * col_bands() + col_band];
    }
};

// Per-cell result sizes with row/column totals, the weighting TDP cuts on.
struct WeightGrid {
    int cols = 0, rows = 0;
    std::vector<long long> cell;  // [row * cols + col]
    std::vector<long long> col_total, row_total;
};

WeightGrid make_weight_grid(const CellResultGrid& results);

// Greedy bottom-up merging: per segment, every row extends while its union
// stays within delta; the cut lands after the smallest extent; columns are
// banded and the same pass runs over rows. Throws InfeasibleDeltaError when
// a single cell already exceeds delta.
ApproxDiagram bum(const CellResultGrid& results, long long delta);

// Top-down partitioning: double a common per-axis cut count until feasible,
// then binary-search the smallest count; cuts sit at weighted quantiles of
// the row/column totals, snapped to unused grid boundaries.
ApproxDiagram tdp(const CellResultGrid& results, long long delta);

// Mean over cells of |cell result| / |containing tile union|; empty cell in
// an empty tile counts as exact (ratio 1).
double precision(const ApproxDiagram& approx, const CellResultGrid& results);

// Stored point ids across tiles plus cut coordinates.
long long space_cost(const ApproxDiagram& approx);
// Stored point ids across polyomino pieces plus grid line coordinates.
long long space_cost(const DiagramPartition& part);

}  // namespace skydiag
