#include "skydiag/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skydiag {

namespace {

struct Grid2d {
    int cols = 0, rows = 0;
    const CellResultGrid* g = nullptr;

    const ResultSet& at(int col, int row) const {
        return g->cells[static_cast<std::size_t>(row) * cols + col];
    }
};

Grid2d as_2d(const CellResultGrid& results) {
    if (results.dims.size() != 2)
        throw UnsupportedDimensionError("approximate diagrams require a 2D result grid");
    return {results.dims[0], results.dims[1], &results};
}

void check_single_cells(const Grid2d& grid, long long delta) {
    if (delta < 1) throw InfeasibleDeltaError("delta must be >= 1");
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c)
            if (static_cast<long long>(grid.at(c, r).size()) > delta)
                throw InfeasibleDeltaError("cell (" + std::to_string(c) + "," +
                                           std::to_string(r) + ") holds " +
                                           std::to_string(grid.at(c, r).size()) +
                                           " points, more than delta");
}

void union_into(ResultSet& acc, const ResultSet& more) {
    if (more.empty()) return;
    ResultSet merged;
    merged.reserve(acc.size() + more.size());
    std::set_union(acc.begin(), acc.end(), more.begin(), more.end(),
                   std::back_inserter(merged));
    acc.swap(merged);
}

// Greedy cuts along one direction: lanes extend independently while their
// running union holds at most delta points; each segment ends at the
// smallest feasible extent over all lanes.
template <typename CellFn>
std::vector<int> greedy_cuts(int segments_len, int lanes, long long delta, CellFn cell) {
    std::vector<int> cuts{0};
    int start = 0;
    while (start < segments_len) {
        int smallest = segments_len - 1;
        for (int lane = 0; lane < lanes && smallest >= start; ++lane) {
            ResultSet u;
            int last = start - 1;
            for (int pos = start; pos <= smallest; ++pos) {
                union_into(u, cell(lane, pos));
                if (static_cast<long long>(u.size()) > delta) break;
                last = pos;
            }
            smallest = std::min(smallest, last);
        }
        if (smallest < start)
            throw InternalConsistencyError("greedy segment cannot advance");
        cuts.push_back(smallest + 1);
        start = smallest + 1;
    }
    return cuts;
}

ResultSet band_union(const Grid2d& grid, int c0, int c1, int r0, int r1) {
    ResultSet u;
    for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) union_into(u, grid.at(c, r));
    return u;
}

ApproxDiagram assemble(const Grid2d& grid, long long delta, std::vector<int> vpls,
                       std::vector<int> hpls) {
    ApproxDiagram out;
    out.delta = delta;
    out.vpls = std::move(vpls);
    out.hpls = std::move(hpls);
    out.tiles.reserve(static_cast<std::size_t>(out.col_bands()) * out.row_bands());
    for (int rb = 0; rb + 1 < static_cast<int>(out.hpls.size()); ++rb)
        for (int cb = 0; cb + 1 < static_cast<int>(out.vpls.size()); ++cb)
            out.tiles.push_back(band_union(grid, out.vpls[cb], out.vpls[cb + 1],
                                           out.hpls[rb], out.hpls[rb + 1]));
    return out;
}

}  // namespace

WeightGrid make_weight_grid(const CellResultGrid& results) {
    Grid2d grid = as_2d(results);
    WeightGrid w;
    w.cols = grid.cols;
    w.rows = grid.rows;
    w.cell.resize(static_cast<std::size_t>(grid.cols) * grid.rows);
    w.col_total.assign(grid.cols, 0);
    w.row_total.assign(grid.rows, 0);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c) {
            long long s = static_cast<long long>(grid.at(c, r).size());
            w.cell[static_cast<std::size_t>(r) * grid.cols + c] = s;
            w.col_total[c] += s;
            w.row_total[r] += s;
        }
    return w;
}

ApproxDiagram bum(const CellResultGrid& results, long long delta) {
    Grid2d grid = as_2d(results);
    check_single_cells(grid, delta);

    std::vector<int> vpls =
        greedy_cuts(grid.cols, grid.rows, delta,
                    [&](int lane, int pos) -> const ResultSet& { return grid.at(pos, lane); });

    // Row pass over the column-banded grid.
    const int bands = static_cast<int>(vpls.size()) - 1;
    ResultSet scratch;
    std::vector<int> hpls =
        greedy_cuts(grid.rows, bands, delta, [&](int lane, int pos) -> const ResultSet& {
            scratch.clear();
            for (int c = vpls[lane]; c < vpls[lane + 1]; ++c) union_into(scratch, grid.at(c, pos));
            return scratch;
        });

    return assemble(grid, delta, std::move(vpls), std::move(hpls));
}

namespace {

// p-2 interior cuts at weighted quantiles of the lane totals, snapped to
// the nearest unused boundary; unusable targets are dropped.
std::vector<int> quantile_cuts(const std::vector<long long>& totals, int p) {
    const int len = static_cast<int>(totals.size());
    std::vector<long long> prefix(len + 1, 0);
    for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + totals[i];
    const long long total = prefix[len];

    std::vector<int> cuts{0, len};
    std::vector<char> used(len + 1, 0);
    used[0] = used[len] = 1;
    for (int k = 1; k <= p - 2; ++k) {
        double target = static_cast<double>(total) * k / (p - 1);
        int best = -1;
        double best_dist = 0;
        for (int b = 1; b < len; ++b) {
            if (used[b]) continue;
            double dist = std::abs(static_cast<double>(prefix[b]) - target);
            if (best < 0 || dist < best_dist) {
                best = b;
                best_dist = dist;
            }
        }
        if (best < 0) break;  // every boundary in use
        used[best] = 1;
        cuts.push_back(best);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

bool tiles_fit(const Grid2d& grid, const std::vector<int>& vpls, const std::vector<int>& hpls,
               long long delta) {
    for (std::size_t rb = 0; rb + 1 < hpls.size(); ++rb)
        for (std::size_t cb = 0; cb + 1 < vpls.size(); ++cb) {
            ResultSet u = band_union(grid, vpls[cb], vpls[cb + 1], hpls[rb], hpls[rb + 1]);
            if (static_cast<long long>(u.size()) > delta) return false;
        }
    return true;
}

}  // namespace

ApproxDiagram tdp(const CellResultGrid& results, long long delta) {
    Grid2d grid = as_2d(results);
    check_single_cells(grid, delta);
    WeightGrid w = make_weight_grid(results);

    auto cuts_for = [&](int p) {
        return std::pair(quantile_cuts(w.col_total, p), quantile_cuts(w.row_total, p));
    };
    auto feasible = [&](int p) {
        auto [v, h] = cuts_for(p);
        return tiles_fit(grid, v, h, delta);
    };

    const int p_cap = std::max(grid.cols, grid.rows) + 1;
    int p = 2;
    while (p < p_cap && !feasible(p)) p *= 2;
    if (p >= p_cap) {
        p = p_cap;
        if (!feasible(p))
            throw InfeasibleDeltaError("no partition satisfies delta even with per-cell tiles");
    }
    // Smallest feasible count in (p/2, p].
    int lo = p / 2 + 1, hi = p;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto [v, h] = cuts_for(std::max(2, lo));
    return assemble(grid, delta, std::move(v), std::move(h));
}

double precision(const ApproxDiagram& approx, const CellResultGrid& results) {
    Grid2d grid = as_2d(results);
    double sum = 0;
    std::size_t count = 0;
    for (int rb = 0; rb < approx.row_bands(); ++rb)
        for (int cb = 0; cb < approx.col_bands(); ++cb) {
            const ResultSet& u = approx.tile(rb, cb);
            for (int r = approx.hpls[rb]; r < approx.hpls[rb + 1]; ++r)
                for (int c = approx.vpls[cb]; c < approx.vpls[cb + 1]; ++c) {
                    std::size_t cell = grid.at(c, r).size();
                    sum += u.empty() ? 1.0 : static_cast<double>(cell) / u.size();
                    ++count;
                }
        }
    return count == 0 ? 1.0 : sum / static_cast<double>(count);
}

long long space_cost(const ApproxDiagram& approx) {
    long long ids = 0;
    for (const ResultSet& t : approx.tiles) ids += static_cast<long long>(t.size());
    return ids + static_cast<long long>(approx.vpls.size() + approx.hpls.size());
}

long long space_cost(const DiagramPartition& part) {
    long long ids = 0;
    for (const DiagramClass& cls : part.classes)
        ids += static_cast<long long>(cls.result.size() * cls.pieces.size());
    long long lines = 0;
    for (const Axis& ax : part.axes) lines += static_cast<long long>(ax.lines.size());
    return ids + lines;
}

}  // namespace skydiag
