#include "skydiag/grid.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace skydiag {

namespace {

std::size_t count_cells(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const Axis& ax : axes) n *= ax.lines.size() + 1;
    return n;
}

std::vector<int> axis_dims(const std::vector<Axis>& axes) {
    std::vector<int> d;
    d.reserve(axes.size());
    for (const Axis& ax : axes) d.push_back(static_cast<int>(ax.lines.size()) + 1);
    return d;
}

}  // namespace

std::size_t CellGrid::cell_count() const { return count_cells(axes); }
std::vector<int> CellGrid::dims() const { return axis_dims(axes); }
std::size_t SubcellGrid::cell_count() const { return count_cells(axes); }
std::vector<int> SubcellGrid::dims() const { return axis_dims(axes); }

CellGrid build_cell_grid(const Dataset& ds) {
    if (ds.dim < 2) throw DimensionMismatchError("build_cell_grid: d >= 2 required");
    CellGrid g;
    g.dim = ds.dim;
    g.axes.resize(ds.dim);
    for (int a = 0; a < ds.dim; ++a) {
        std::vector<Coord>& lines = g.axes[a].lines;
        lines.reserve(ds.points.size());
        for (const Point& p : ds.points) lines.push_back(p.coords[a] * kScale);
        std::sort(lines.begin(), lines.end());
        lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    }
    return g;
}

SubcellGrid build_subcell_grid(const Dataset& ds) {
    if (ds.dim < 2) throw DimensionMismatchError("build_subcell_grid: d >= 2 required");
    SubcellGrid g;
    g.dim = ds.dim;
    g.axes.resize(ds.dim);
    g.contributors.resize(ds.dim);
    const std::size_t n = ds.points.size();
    for (int a = 0; a < ds.dim; ++a) {
        // Bisector of the pair (i,j) sits at 2*(ci+cj); i == j gives the
        // point line 4*ci.
        std::map<Coord, std::vector<ContributorPair>> by_line;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Coord line = 2 * (ds.points[i].coords[a] + ds.points[j].coords[a]);
                PointId ai = ds.points[i].id, bj = ds.points[j].id;
                if (ai > bj) std::swap(ai, bj);
                by_line[line].push_back({ai, bj});
            }
        }
        for (auto& [line, pairs] : by_line) {
            std::sort(pairs.begin(), pairs.end(), [](const ContributorPair& x, const ContributorPair& y) {
                return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            g.axes[a].lines.push_back(line);
            g.contributors[a].push_back(std::move(pairs));
        }
    }
    return g;
}

std::vector<Point> scale_points(const Dataset& ds) {
    std::vector<Point> out = ds.points;
    for (Point& p : out)
        for (Coord& c : p.coords) c *= kScale;
    return out;
}

QueryPoint representative(const std::vector<Axis>& axes, const CellIndex& cell) {
    if (cell.size() != axes.size())
        throw DimensionMismatchError("representative: index arity mismatch");
    QueryPoint q;
    q.coords.resize(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const std::vector<Coord>& lines = axes[a].lines;
        int k = cell[a];
        if (k < 0 || k > static_cast<int>(lines.size()))
            throw std::out_of_range("representative: cell index out of range");
        if (lines.empty())
            q.coords[a] = 1;
        else if (k == 0)
            q.coords[a] = lines.front() - 1;
        else
            q.coords[a] = lines[k - 1] + 1;
    }
    return q;
}

CellIndex locate_scaled(const std::vector<Axis>& axes, std::span<const Coord> scaled) {
    if (scaled.size() != axes.size())
        throw DimensionMismatchError("locate: query arity mismatch");
    CellIndex idx(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const std::vector<Coord>& lines = axes[a].lines;
        idx[a] = static_cast<int>(std::upper_bound(lines.begin(), lines.end(), scaled[a]) -
                                  lines.begin());
    }
    return idx;
}

CellIndex locate(const std::vector<Axis>& axes, const QueryPoint& raw_q) {
    std::vector<Coord> scaled(raw_q.coords.size());
    for (std::size_t a = 0; a < scaled.size(); ++a) scaled[a] = raw_q.coords[a] * kScale;
    return locate_scaled(axes, scaled);
}

CellResultGrid CellResultGrid::empty_like(const std::vector<int>& dims) {
    CellResultGrid g;
    g.dims = dims;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    g.cells.resize(total);
    return g;
}

std::size_t CellResultGrid::flat(const CellIndex& idx) const {
    std::size_t f = 0, stride = 1;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        f += static_cast<std::size_t>(idx[a]) * stride;
        stride *= static_cast<std::size_t>(dims[a]);
    }
    return f;
}

const char* to_string(DiagramKind kind) {
    switch (kind) {
        case DiagramKind::Quadrant: return "quadrant";
        case DiagramKind::Global: return "global";
        case DiagramKind::Dynamic: return "dynamic";
    }
    return "quadrant";
}

DiagramKind diagram_kind_from_string(const std::string& s) {
    if (s == "quadrant") return DiagramKind::Quadrant;
    if (s == "global") return DiagramKind::Global;
    if (s == "dynamic") return DiagramKind::Dynamic;
    throw SchemaError("unknown diagram kind '" + s + "'");
}

std::size_t DiagramPartition::cell_count() const {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
}

DiagramPartition merge_equal_results(DiagramKind kind, const std::vector<Axis>& axes,
                                     const CellResultGrid& results) {
    DiagramPartition part;
    part.kind = kind;
    part.dims = results.dims;
    part.axes = axes;
    const std::size_t total = results.cells.size();
    part.cell_class.assign(total, -1);

    std::map<ResultSet, int> class_of;
    for (std::size_t f = 0; f < total; ++f) {
        auto [it, inserted] = class_of.try_emplace(results.cells[f],
                                                   static_cast<int>(part.classes.size()));
        if (inserted) {
            DiagramClass c;
            c.id = it->second;
            c.result = results.cells[f];
            part.classes.push_back(std::move(c));
        }
        part.cell_class[f] = it->second;
        part.classes[it->second].cells.push_back(f);
    }

    // Strides for face-adjacency walks.
    const std::size_t d = results.dims.size();
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t a = 1; a < d; ++a)
        stride[a] = stride[a - 1] * static_cast<std::size_t>(results.dims[a - 1]);

    for (DiagramClass& cls : part.classes) {
        std::map<std::size_t, int> pos;  // flat -> position in cls.cells
        for (std::size_t i = 0; i < cls.cells.size(); ++i) pos[cls.cells[i]] = static_cast<int>(i);
        std::vector<char> visited(cls.cells.size(), 0);
        for (std::size_t i = 0; i < cls.cells.size(); ++i) {
            if (visited[i]) continue;
            std::vector<int> piece;
            std::queue<int> q;
            q.push(static_cast<int>(i));
            visited[i] = 1;
            while (!q.empty()) {
                int cur = q.front();
                q.pop();
                piece.push_back(cur);
                std::size_t f = cls.cells[cur];
                for (std::size_t a = 0; a < d; ++a) {
                    int ia = static_cast<int>(f / stride[a] % static_cast<std::size_t>(results.dims[a]));
                    for (int step : {-1, 1}) {
                        int ja = ia + step;
                        if (ja < 0 || ja >= results.dims[a]) continue;
                        std::size_t nf = step == 1 ? f + stride[a] : f - stride[a];
                        auto it = pos.find(nf);
                        if (it == pos.end() || visited[it->second]) continue;
                        visited[it->second] = 1;
                        q.push(it->second);
                    }
                }
            }
            std::sort(piece.begin(), piece.end());
            cls.pieces.push_back(std::move(piece));
        }
        cls.chains.assign(cls.pieces.size(), {});
    }
    return part;
}

}  // namespace skydiag
