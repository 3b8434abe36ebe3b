#include "skydiag/quadrant.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

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

// First-orthant skyline of the scaled points at an interior representative.
ResultSet first_orthant_at(const std::vector<Point>& scaled_sorted, const QueryPoint& rep) {
    const std::size_t d = rep.coords.size();
    ResultSet out;
    if (d == 2) {
        // Points pre-sorted on (x, y, id); one pass keeps the running min y.
        Coord min_y = 0;
        bool have = false;
        Coord hold_x = 0, hold_y = 0;
        for (const Point& p : scaled_sorted) {
            if (p.coords[0] <= rep.coords[0] || p.coords[1] <= rep.coords[1]) continue;
            if (!have || p.coords[1] < min_y) {
                have = true;
                min_y = p.coords[1];
                hold_x = p.coords[0];
                hold_y = p.coords[1];
                out.push_back(p.id);
            } else if (p.coords[0] == hold_x && p.coords[1] == hold_y) {
                out.push_back(p.id);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Point> inside;
    for (const Point& p : scaled_sorted) {
        bool in = true;
        for (std::size_t a = 0; a < d; ++a)
            if (p.coords[a] <= rep.coords[a]) { in = false; break; }
        if (in) inside.push_back(p);
    }
    return skyline(inside);
}

std::vector<Point> sorted_scaled(const Dataset& ds) {
    std::vector<Point> pts = scale_points(ds);
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        if (a.coords != b.coords) return a.coords < b.coords;
        return a.id < b.id;
    });
    return pts;
}

}  // namespace

CellResultGrid qbase(const Dataset& ds, const CellGrid& grid, int threads) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const std::vector<Point> pts = sorted_scaled(ds);
    const auto stride = make_strides(out.dims);
    parallel_for(out.cells.size(), threads, [&](std::size_t f) {
        CellIndex idx = decode(f, out.dims, stride);
        out.cells[f] = first_orthant_at(pts, representative(grid.axes, idx));
    });
    return out;
}

// ---------------------------------------------------------------------------
// qgraph

namespace {

struct DsgSweepState {
    std::vector<char> removed;
    std::vector<int> parents_left;
    std::set<PointId> roots;
};

struct DsgSweep {
    const DirectedSkylineGraph* dsg = nullptr;
    // line_points[axis][line]: ids whose scaled coordinate equals the line.
    std::vector<std::vector<std::vector<PointId>>> line_points;
    CellResultGrid* out = nullptr;
    std::vector<std::size_t> stride;
    std::vector<int> dims;

    void remove_line(DsgSweepState& s, int axis, int line) const {
        for (PointId u : line_points[axis][line]) remove_point(s, u);
    }

    void remove_point(DsgSweepState& s, PointId u) const {
        if (s.removed[u]) return;
        s.removed[u] = 1;
        s.roots.erase(u);
        for (PointId c : dsg->children[u]) {
            if (s.removed[c]) continue;
            if (--s.parents_left[c] == 0) s.roots.insert(c);
        }
    }

    void sweep(int axis, DsgSweepState& s, std::size_t base) {
        if (axis == 0) {
            for (int i = 0; i < dims[0]; ++i) {
                if (i > 0) remove_line(s, 0, i - 1);
                out->cells[base + static_cast<std::size_t>(i)] =
                    ResultSet(s.roots.begin(), s.roots.end());
            }
            return;
        }
        for (int i = 0; i < dims[axis]; ++i) {
            if (i > 0) remove_line(s, axis, i - 1);
            DsgSweepState snapshot = s;  // one copy per row/slab
            sweep(axis - 1, snapshot, base + static_cast<std::size_t>(i) * stride[axis]);
        }
    }
};

}  // namespace

CellResultGrid qgraph(const Dataset& ds, const CellGrid& grid) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    DirectedSkylineGraph dsg = build_dsg(ds.points);

    DsgSweep sweep;
    sweep.dsg = &dsg;
    sweep.out = &out;
    sweep.dims = out.dims;
    sweep.stride = make_strides(out.dims);
    sweep.line_points.resize(grid.axes.size());
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
        const std::vector<Coord>& lines = grid.axes[a].lines;
        sweep.line_points[a].resize(lines.size());
        for (const Point& p : ds.points) {
            Coord v = p.coords[a] * kScale;
            std::size_t k = static_cast<std::size_t>(
                std::lower_bound(lines.begin(), lines.end(), v) - lines.begin());
            sweep.line_points[a][k].push_back(p.id);
        }
    }

    DsgSweepState state;
    state.removed.assign(ds.size(), 0);
    state.parents_left.resize(ds.size());
    for (const Point& p : ds.points) {
        state.parents_left[p.id] = static_cast<int>(dsg.parents[p.id].size());
        if (dsg.parents[p.id].empty()) state.roots.insert(p.id);
    }
    sweep.sweep(static_cast<int>(out.dims.size()) - 1, state, 0);
    return out;
}

// ---------------------------------------------------------------------------
// qscan

namespace {

struct CoordVecHash {
    std::size_t operator()(const std::vector<Coord>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Coord c : v) {
            h ^= static_cast<std::size_t>(c);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

CellResultGrid qscan(const Dataset& ds, const CellGrid& grid) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const std::size_t d = out.dims.size();
    const auto stride = make_strides(out.dims);

    std::unordered_map<std::vector<Coord>, ResultSet, CoordVecHash> corner_points;
    for (const Point& p : ds.points) {
        std::vector<Coord> key(p.coords);
        for (Coord& c : key) c *= kScale;
        corner_points[key].push_back(p.id);
    }
    for (auto& [key, ids] : corner_points) std::sort(ids.begin(), ids.end());

    std::vector<Point> by_id(ds.size());
    for (const Point& p : ds.points) by_id[p.id] = p;

    std::vector<Coord> corner(d);
    std::vector<std::pair<PointId, int>> acc;  // (id, signed multiplicity)
    for (std::size_t f = out.cells.size(); f-- > 0;) {
        CellIndex idx = decode(f, out.dims, stride);
        bool boundary = false;
        for (std::size_t a = 0; a < d; ++a)
            if (idx[a] == out.dims[a] - 1) { boundary = true; break; }
        if (boundary) continue;  // beyond the last line: empty

        for (std::size_t a = 0; a < d; ++a) corner[a] = grid.axes[a].lines[idx[a]];
        if (auto it = corner_points.find(corner); it != corner_points.end()) {
            out.cells[f] = it->second;
            continue;
        }

        acc.clear();
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            std::size_t nf = f;
            for (std::size_t a = 0; a < d; ++a)
                if (mask >> a & 1) nf += stride[a];
            int sign = __builtin_popcount(mask) % 2 == 1 ? 1 : -1;
            for (PointId id : out.cells[nf]) acc.emplace_back(id, sign);
        }
        std::sort(acc.begin(), acc.end());
        ResultSet cell;
        for (std::size_t i = 0; i < acc.size();) {
            PointId id = acc[i].first;
            int count = 0;
            while (i < acc.size() && acc[i].first == id) count += acc[i++].second;
            if (count > 1)
                throw InternalConsistencyError("qscan: multiset multiplicity above one");
            // A skyline member of this cell always sums to exactly +1. A
            // dominated point can sum to -1 when both bounding line points
            // dominate it and nothing nearer does; it is simply not a
            // member, so negative counts are dropped.
            if (count == 1) cell.push_back(id);
        }
        if (d > 2) {
            std::vector<Point> members;
            members.reserve(cell.size());
            for (PointId id : cell) members.push_back(by_id[id]);
            cell = skyline(members);
        }
        out.cells[f] = std::move(cell);
    }
    return out;
}

// ---------------------------------------------------------------------------
// qsweep

namespace {

// Vertex of the ray arrangement. vi/hi index the deduplicated vertical and
// horizontal lines; -1 stands for the left/bottom viewport boundary.
struct SweepVertex {
    int vi = -1;
    int hi = -1;
};

struct SweepArrangement {
    std::vector<Coord> xs, ys;              // line coordinates, scaled
    std::vector<Coord> top_y;               // topmost point on each vertical line
    std::vector<Coord> right_x;             // rightmost point on each horizontal line
    std::vector<std::vector<int>> cross_on_v;  // per vi: hi list, ascending
    std::vector<std::vector<int>> cross_on_h;  // per hi: vi list, ascending
    Coord bx = 0, by = 0;

    Coord x_of(const SweepVertex& g) const { return g.vi < 0 ? bx : xs[g.vi]; }
    Coord y_of(const SweepVertex& g) const { return g.hi < 0 ? by : ys[g.hi]; }
};

int col_of(const SweepArrangement&, int vi) { return vi < 0 ? 0 : vi + 1; }
int row_of(const SweepArrangement&, int hi) { return hi < 0 ? 0 : hi + 1; }

SweepVertex left_of(const SweepArrangement& ar, const SweepVertex& g) {
    const std::vector<int>& vs = ar.cross_on_h[g.hi];
    auto it = std::lower_bound(vs.begin(), vs.end(), g.vi);
    if (it == vs.begin()) return {-1, g.hi};
    return {*std::prev(it), g.hi};
}

SweepVertex lower_of(const SweepArrangement& ar, const SweepVertex& g) {
    if (g.vi < 0) {
        // Left boundary: every horizontal ray ends here.
        return {-1, g.hi - 1};
    }
    const std::vector<int>& hs = ar.cross_on_v[g.vi];
    auto it = std::lower_bound(hs.begin(), hs.end(), g.hi);
    // Skip rays that end exactly on this line: they poke in from the left
    // and the boundary runs straight past them. A turning corner needs the
    // horizontal segment to continue right of the line.
    while (it != hs.begin()) {
        int hi = *std::prev(it);
        if (ar.right_x[hi] > ar.xs[g.vi]) return {g.vi, hi};
        --it;
    }
    return {g.vi, -1};
}

SweepVertex right_of(const SweepArrangement& ar, const SweepVertex& g) {
    if (g.hi < 0) {
        // Bottom boundary: every vertical ray has a foot here.
        return {g.vi + 1, -1};
    }
    const std::vector<int>& vs = ar.cross_on_h[g.hi];
    // Turning corners: a vertical segment reaching strictly above the walk
    // height (the face's closing edge), or the walked segment's own right
    // endpoint, where the boundary wraps around and descends. Segments
    // topping out exactly at this height are passed over.
    for (auto it = std::upper_bound(vs.begin(), vs.end(), g.vi); it != vs.end(); ++it) {
        if (ar.top_y[*it] > ar.ys[g.hi]) return {*it, g.hi};
        if (ar.xs[*it] == ar.right_x[g.hi]) return {*it, g.hi};
    }
    throw InternalConsistencyError("qsweep: open polyomino boundary");
}

}  // namespace

DiagramPartition qsweep(const Dataset& ds) {
    if (ds.dim != 2) throw UnsupportedDimensionError("qsweep supports d = 2 only");
    CellGrid grid = build_cell_grid(ds);
    const std::vector<int> dims = grid.dims();
    const std::size_t total = static_cast<std::size_t>(dims[0]) * dims[1];

    if (ds.points.empty()) {
        CellResultGrid empty = CellResultGrid::empty_like(dims);
        return merge_equal_results(DiagramKind::Quadrant, grid.axes, empty);
    }

    SweepArrangement ar;
    ar.xs = grid.axes[0].lines;
    ar.ys = grid.axes[1].lines;
    ar.top_y.assign(ar.xs.size(), 0);
    ar.right_x.assign(ar.ys.size(), 0);
    auto x_index = [&](Coord v) {
        return static_cast<int>(std::lower_bound(ar.xs.begin(), ar.xs.end(), v) - ar.xs.begin());
    };
    auto y_index = [&](Coord v) {
        return static_cast<int>(std::lower_bound(ar.ys.begin(), ar.ys.end(), v) - ar.ys.begin());
    };
    {
        std::vector<char> seen_x(ar.xs.size(), 0), seen_y(ar.ys.size(), 0);
        for (const Point& p : ds.points) {
            Coord px = p.coords[0] * kScale, py = p.coords[1] * kScale;
            int vi = x_index(px), hi = y_index(py);
            if (!seen_x[vi] || py > ar.top_y[vi]) ar.top_y[vi] = py, seen_x[vi] = 1;
            if (!seen_y[hi] || px > ar.right_x[hi]) ar.right_x[hi] = px, seen_y[hi] = 1;
        }
    }
    // Rays extend to a boundary just below/left of everything (0 in the
    // common all-positive case).
    ar.bx = std::min<Coord>(0, ar.xs.front() - kScale);
    ar.by = std::min<Coord>(0, ar.ys.front() - kScale);

    ar.cross_on_v.resize(ar.xs.size());
    ar.cross_on_h.resize(ar.ys.size());
    for (std::size_t vi = 0; vi < ar.xs.size(); ++vi) {
        for (std::size_t hi = 0; hi < ar.ys.size(); ++hi) {
            if (ar.ys[hi] <= ar.top_y[vi] && ar.xs[vi] <= ar.right_x[hi]) {
                ar.cross_on_v[vi].push_back(static_cast<int>(hi));
                ar.cross_on_h[hi].push_back(static_cast<int>(vi));
            }
        }
    }

    const std::vector<Point> pts = sorted_scaled(ds);

    // Each crossing is the upper-right corner of exactly one polyomino.
    struct Piece {
        ResultSet result;
        std::vector<std::size_t> cells;
        std::vector<std::array<Coord, 2>> chain;
    };
    std::vector<Piece> pieces;
    std::vector<char> covered(total, 0);

    for (std::size_t hi = 0; hi < ar.ys.size(); ++hi) {
        for (int vi : ar.cross_on_h[hi]) {
            SweepVertex g0{vi, static_cast<int>(hi)};
            Piece piece;
            piece.chain.push_back({ar.x_of(g0), ar.y_of(g0)});
            SweepVertex g = left_of(ar, g0);
            piece.chain.push_back({ar.x_of(g), ar.y_of(g)});
            const int top_row = row_of(ar, g0.hi);
            int left_col = col_of(ar, g.vi);
            while (g.vi != g0.vi) {
                SweepVertex low = lower_of(ar, g);
                piece.chain.push_back({ar.x_of(low), ar.y_of(low)});
                SweepVertex right = right_of(ar, low);
                piece.chain.push_back({ar.x_of(right), ar.y_of(right)});
                // Slab between this step and the top edge.
                for (int c = left_col; c < col_of(ar, right.vi); ++c)
                    for (int r = row_of(ar, low.hi); r < top_row; ++r) {
                        std::size_t f = static_cast<std::size_t>(r) * dims[0] + c;
                        piece.cells.push_back(f);
                        covered[f] = 1;
                    }
                left_col = col_of(ar, right.vi);
                g = right;
            }
            std::sort(piece.cells.begin(), piece.cells.end());
            QueryPoint rep{{ar.x_of(g0) - 1, ar.y_of(g0) - 1}};
            piece.result = first_orthant_at(pts, rep);
            pieces.push_back(std::move(piece));
        }
    }

    // Everything not covered is the region beyond the rays; its result is
    // empty and it is face-connected, but split defensively anyway.
    CellResultGrid cell_results = CellResultGrid::empty_like(dims);
    std::vector<int> owner(total, -1);
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t f : pieces[i].cells) {
            owner[f] = static_cast<int>(i);
            cell_results.cells[f] = pieces[i].result;
        }

    DiagramPartition part;
    part.kind = DiagramKind::Quadrant;
    part.dims = dims;
    part.axes = grid.axes;
    part.cell_class.assign(total, -1);

    std::map<ResultSet, int> class_of;
    auto class_for = [&](const ResultSet& r) {
        auto [it, inserted] = class_of.try_emplace(r, static_cast<int>(part.classes.size()));
        if (inserted) {
            DiagramClass c;
            c.id = it->second;
            c.result = r;
            part.classes.push_back(std::move(c));
        }
        return it->second;
    };

    for (Piece& piece : pieces) {
        int cid = class_for(piece.result);
        DiagramClass& cls = part.classes[cid];
        std::vector<int> refs;
        refs.reserve(piece.cells.size());
        for (std::size_t f : piece.cells) {
            refs.push_back(static_cast<int>(cls.cells.size()));
            cls.cells.push_back(f);
            part.cell_class[f] = cid;
        }
        cls.pieces.push_back(std::move(refs));
        cls.chains.push_back(std::move(piece.chain));
    }

    // Residual pieces (uncovered cells), grouped by face adjacency.
    for (std::size_t f = 0; f < total; ++f) {
        if (covered[f]) continue;
        int cid = class_for(ResultSet{});
        DiagramClass& cls = part.classes[cid];
        std::vector<int> refs;
        std::vector<std::size_t> stack{f};
        covered[f] = 1;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            refs.push_back(static_cast<int>(cls.cells.size()));
            cls.cells.push_back(cur);
            part.cell_class[cur] = cid;
            int c = static_cast<int>(cur % static_cast<std::size_t>(dims[0]));
            int r = static_cast<int>(cur / static_cast<std::size_t>(dims[0]));
            const int dc[4] = {1, -1, 0, 0}, dr[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int nc = c + dc[k], nr = r + dr[k];
                if (nc < 0 || nc >= dims[0] || nr < 0 || nr >= dims[1]) continue;
                std::size_t nf = static_cast<std::size_t>(nr) * dims[0] + nc;
                if (covered[nf]) continue;
                covered[nf] = 1;
                stack.push_back(nf);
            }
        }
        std::sort(refs.begin(), refs.end(), [&](int a, int b) {
            return cls.cells[a] < cls.cells[b];
        });
        cls.pieces.push_back(std::move(refs));
        cls.chains.push_back({});
    }

    for (DiagramClass& cls : part.classes)
        if (cls.chains.size() != cls.pieces.size()) cls.chains.resize(cls.pieces.size());
    return part;
}

// ---------------------------------------------------------------------------
// global_cells

CellResultGrid global_cells(const Dataset& ds, const CellGrid& grid, QuadrantAlgo algo,
                            int threads) {
    const int d = ds.dim;
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    const auto stride = make_strides(out.dims);

    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Dataset reflected = ds;
        reflected.domain.reset();
        for (Point& p : reflected.points)
            for (int a = 0; a < d; ++a)
                if (mask >> a & 1) p.coords[a] = -p.coords[a];
        CellGrid rgrid = build_cell_grid(reflected);

        CellResultGrid part;
        switch (algo) {
            case QuadrantAlgo::Base: part = qbase(reflected, rgrid, threads); break;
            case QuadrantAlgo::Graph: part = qgraph(reflected, rgrid); break;
            case QuadrantAlgo::Scan: part = qscan(reflected, rgrid); break;
        }

        // Reflected cell k maps back to dims-1-k on flipped axes.
        const auto rstride = make_strides(part.dims);
        for (std::size_t rf = 0; rf < part.cells.size(); ++rf) {
            if (part.cells[rf].empty()) continue;
            CellIndex idx = decode(rf, part.dims, rstride);
            std::size_t f = 0;
            for (int a = 0; a < d; ++a) {
                int orig = mask >> a & 1 ? out.dims[a] - 1 - idx[a] : idx[a];
                f += static_cast<std::size_t>(orig) * stride[a];
            }
            ResultSet merged;
            std::set_union(out.cells[f].begin(), out.cells[f].end(), part.cells[rf].begin(),
                           part.cells[rf].end(), std::back_inserter(merged));
            out.cells[f] = std::move(merged);
        }
    }
    return out;
}

}  // namespace skydiag
