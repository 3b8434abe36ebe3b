#include "skydiag/dynamic.hpp"

#include <algorithm>
#include <cstdlib>

#include "skydiag/core.hpp"
#include "skydiag/parallel.hpp"

namespace skydiag {

namespace {

std::vector<std::size_t> make_strides(const std::vector<int>& dims) {
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t a = 1; a < dims.size(); ++a)
        stride[a] = stride[a - 1] * static_cast<std::size_t>(dims[a - 1]);
    return stride;
}

CellIndex decode(std::size_t flat, const std::vector<int>& dims,
                 const std::vector<std::size_t>& stride) {
    CellIndex idx(dims.size());
    for (std::size_t a = 0; a < dims.size(); ++a)
        idx[a] = static_cast<int>(flat / stride[a] % static_cast<std::size_t>(dims[a]));
    return idx;
}

// Dynamic skyline of the given scaled points at a scaled representative.
ResultSet mapped_skyline(std::span<const Point> scaled, const QueryPoint& rep) {
    std::vector<Point> mapped;
    mapped.reserve(scaled.size());
    for (const Point& p : scaled) {
        Point t{p.id, p.coords};
        for (std::size_t a = 0; a < rep.coords.size(); ++a)
            t.coords[a] = std::llabs(p.coords[a] - rep.coords[a]);
        mapped.push_back(std::move(t));
    }
    return skyline(mapped);
}

}  // namespace

CellResultGrid dbase(const Dataset& ds, const SubcellGrid& grid, int threads) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const std::vector<Point> pts = scale_points(ds);
    const auto stride = make_strides(out.dims);
    parallel_for(out.cells.size(), threads, [&](std::size_t f) {
        CellIndex idx = decode(f, out.dims, stride);
        out.cells[f] = mapped_skyline(pts, representative(grid.axes, idx));
    });
    return out;
}

CellResultGrid dsubset(const Dataset& ds, const SubcellGrid& grid, const CellGrid& cell_grid,
                       const CellResultGrid& global_results, int threads) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const std::vector<Point> pts = scale_points(ds);
    std::vector<const Point*> by_id(ds.size());
    for (const Point& p : pts) by_id[p.id] = &p;
    const auto stride = make_strides(out.dims);

    parallel_for(out.cells.size(), threads, [&](std::size_t f) {
        CellIndex idx = decode(f, out.dims, stride);
        QueryPoint rep = representative(grid.axes, idx);
        // Cell lines are a subset of the subcell lines, so the subcell's
        // representative pins down the containing cell exactly.
        CellIndex cell = locate_scaled(cell_grid.axes, rep.coords);
        for (std::size_t a = 0; a < cell.size(); ++a)
            if (cell[a] < 0 || cell[a] >= global_results.dims[a])
                throw InternalConsistencyError("dsubset: containing cell out of range");
        const ResultSet& candidates = global_results.at(cell);
        std::vector<Point> member_pts;
        member_pts.reserve(candidates.size());
        for (PointId id : candidates) member_pts.push_back(*by_id[id]);
        out.cells[f] = mapped_skyline(member_pts, rep);
    });
    return out;
}

CellResultGrid dscan(const Dataset& ds, const SubcellGrid& grid) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const std::vector<Point> pts = scale_points(ds);
    std::vector<const Point*> by_id(ds.size());
    for (const Point& p : pts) by_id[p.id] = &p;
    const auto stride = make_strides(out.dims);
    const std::size_t d = out.dims.size();

    std::vector<Point> pool;
    for (std::size_t f = 0; f < out.cells.size(); ++f) {
        CellIndex idx = decode(f, out.dims, stride);
        // Predecessor: decrement the highest nonzero axis. The first row is
        // produced by steps along axis 0, every later row by steps upward
        // from the row start, matching the sweep order of the 2D case.
        int axis = -1;
        for (std::size_t a = d; a-- > 0;)
            if (idx[a] > 0) { axis = static_cast<int>(a); break; }
        if (axis < 0) {
            out.cells[f] = mapped_skyline(pts, representative(grid.axes, idx));
            continue;
        }
        const std::size_t prev = f - stride[axis];
        const int crossed_line = idx[axis] - 1;

        pool.clear();
        std::vector<char> in_pool(ds.size(), 0);
        for (PointId id : out.cells[prev]) {
            pool.push_back(*by_id[id]);
            in_pool[id] = 1;
        }
        for (const ContributorPair& pr : grid.contributors[axis][crossed_line]) {
            for (PointId id : {pr.a, pr.b}) {
                if (in_pool[id]) continue;
                in_pool[id] = 1;
                pool.push_back(*by_id[id]);
            }
        }
        out.cells[f] = mapped_skyline(pool, representative(grid.axes, idx));
    }
    return out;
}

}  // namespace skydiag
