#include "skydiag/diagram.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace skydiag {

using nlohmann::json;

namespace {

std::vector<std::size_t> make_strides(const std::vector<int>& dims) {
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t a = 1; a < dims.size(); ++a)
        stride[a] = stride[a - 1] * static_cast<std::size_t>(dims[a - 1]);
    return stride;
}

}  // namespace

ResultSet SkylineDiagram::query(const QueryPoint& raw_q) const {
    if (raw_q.coords.size() != static_cast<std::size_t>(dim))
        throw DimensionMismatchError("query point arity differs from diagram dimension");
    CellIndex idx = locate(partition.axes, raw_q);
    const auto stride = make_strides(partition.dims);
    std::size_t f = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        f += static_cast<std::size_t>(idx[a]) * stride[a];
    int cls = partition.cell_class[f];
    return partition.classes[cls].result;
}

ResultSet ApproxSkylineDiagram::query(const QueryPoint& raw_q) const {
    if (raw_q.coords.size() != static_cast<std::size_t>(dim))
        throw DimensionMismatchError("query point arity differs from diagram dimension");
    CellIndex idx = locate(axes, raw_q);
    auto band = [](const std::vector<int>& cuts, int cell) {
        auto it = std::upper_bound(cuts.begin(), cuts.end(), cell);
        return static_cast<int>(it - cuts.begin()) - 1;
    };
    return tiling.tile(band(tiling.hpls, idx[1]), band(tiling.vpls, idx[0]));
}

namespace {

json points_to_json(const Dataset& ds) {
    json arr = json::array();
    for (const Point& p : ds.points) arr.push_back({{"id", p.id}, {"coords", p.coords}});
    return arr;
}

json axes_to_json(const std::vector<Axis>& axes) {
    json arr = json::array();
    for (const Axis& ax : axes) arr.push_back(ax.lines);
    return arr;
}

json base_to_json(DiagramKind kind, int dim, const Dataset& ds, const std::vector<Axis>& axes) {
    return json{{"version", 1},
                {"kind", to_string(kind)},
                {"d", dim},
                {"scale", kScale},
                {"points", points_to_json(ds)},
                {"axes", axes_to_json(axes)}};
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

const json& field(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + name + "'");
    return *it;
}

void check_fields(const json& obj, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* name : allowed)
            if (it.key() == name) { ok = true; break; }
        if (!ok) throw SchemaError("unknown field '" + it.key() + "'");
    }
}

template <typename T>
T as(const json& j, const char* name) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw SchemaError(std::string("field '") + name + "' has the wrong type");
    }
}

}  // namespace

void save_diagram(const SkylineDiagram& d, const std::string& path) {
    json j = base_to_json(d.kind, d.dim, d.dataset, d.partition.axes);
    json classes = json::array();
    const auto stride = make_strides(d.partition.dims);
    for (const DiagramClass& cls : d.partition.classes) {
        json cells = json::array();
        for (std::size_t f : cls.cells) {
            json idx = json::array();
            for (std::size_t a = 0; a < d.partition.dims.size(); ++a)
                idx.push_back(f / stride[a] % static_cast<std::size_t>(d.partition.dims[a]));
            cells.push_back(idx);
        }
        classes.push_back(
            {{"id", cls.id}, {"result", cls.result}, {"cells", cells}, {"pieces", cls.pieces}});
    }
    j["classes"] = classes;
    write_json(j, path);
}

void save_diagram(const ApproxSkylineDiagram& d, const std::string& path) {
    json j = base_to_json(d.kind, d.dim, d.dataset, d.axes);
    j["delta"] = d.tiling.delta;
    j["vpls"] = d.tiling.vpls;
    j["hpls"] = d.tiling.hpls;
    json tiles = json::array();
    for (int rb = 0; rb < d.tiling.row_bands(); ++rb)
        for (int cb = 0; cb < d.tiling.col_bands(); ++cb)
            tiles.push_back({{"row", rb}, {"col", cb}, {"union", d.tiling.tile(rb, cb)}});
    j["tiles"] = tiles;
    write_json(j, path);
}

namespace {

void load_base(const json& j, DiagramKind& kind, int& dim, Dataset& ds, std::vector<Axis>& axes) {
    if (as<long long>(field(j, "version"), "version") != 1)
        throw SchemaError("unsupported version, expected 1");
    kind = diagram_kind_from_string(as<std::string>(field(j, "kind"), "kind"));
    dim = as<int>(field(j, "d"), "d");
    if (dim < 2) throw SchemaError("field 'd' must be >= 2");
    if (as<Coord>(field(j, "scale"), "scale") != kScale)
        throw SchemaError("field 'scale' must be 4");

    ds.dim = dim;
    for (const json& pj : field(j, "points")) {
        check_fields(pj, {"id", "coords"});
        Point p;
        p.id = as<PointId>(field(pj, "id"), "id");
        p.coords = as<std::vector<Coord>>(field(pj, "coords"), "coords");
        if (p.coords.size() != static_cast<std::size_t>(dim))
            throw SchemaError("field 'coords' arity differs from 'd'");
        ds.points.push_back(std::move(p));
    }
    for (const json& aj : field(j, "axes")) {
        Axis ax;
        ax.lines = as<std::vector<Coord>>(aj, "axes");
        if (!std::is_sorted(ax.lines.begin(), ax.lines.end()))
            throw SchemaError("field 'axes' lines must be increasing");
        axes.push_back(std::move(ax));
    }
    if (axes.size() != static_cast<std::size_t>(dim))
        throw SchemaError("field 'axes' arity differs from 'd'");
}

SkylineDiagram load_exact(const json& j) {
    SkylineDiagram d;
    load_base(j, d.kind, d.dim, d.dataset, d.partition.axes);
    d.partition.kind = d.kind;
    for (const Axis& ax : d.partition.axes)
        d.partition.dims.push_back(static_cast<int>(ax.lines.size()) + 1);
    const auto stride = make_strides(d.partition.dims);
    std::size_t total = 1;
    for (int dd : d.partition.dims) total *= static_cast<std::size_t>(dd);
    d.partition.cell_class.assign(total, -1);

    for (const json& cj : field(j, "classes")) {
        check_fields(cj, {"id", "result", "cells", "pieces"});
        DiagramClass cls;
        cls.id = as<int>(field(cj, "id"), "id");
        cls.result = as<ResultSet>(field(cj, "result"), "result");
        for (const json& idxj : field(cj, "cells")) {
            auto idx = as<std::vector<long long>>(idxj, "cells");
            if (idx.size() != d.partition.dims.size())
                throw SchemaError("field 'cells' index arity differs from 'd'");
            std::size_t f = 0;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                if (idx[a] < 0 || idx[a] >= d.partition.dims[a])
                    throw SchemaError("field 'cells' index out of range");
                f += static_cast<std::size_t>(idx[a]) * stride[a];
            }
            if (d.partition.cell_class[f] != -1)
                throw SchemaError("field 'cells' assigns a cell twice");
            d.partition.cell_class[f] = cls.id;
            cls.cells.push_back(f);
        }
        cls.pieces = as<std::vector<std::vector<int>>>(field(cj, "pieces"), "pieces");
        for (const auto& piece : cls.pieces)
            for (int ref : piece)
                if (ref < 0 || static_cast<std::size_t>(ref) >= cls.cells.size())
                    throw SchemaError("field 'pieces' reference out of range");
        cls.chains.assign(cls.pieces.size(), {});
        if (cls.id != static_cast<int>(d.partition.classes.size()))
            throw SchemaError("field 'id' classes must be dense and ordered");
        d.partition.classes.push_back(std::move(cls));
    }
    for (int c : d.partition.cell_class)
        if (c < 0) throw SchemaError("field 'classes' does not cover every cell");
    return d;
}

ApproxSkylineDiagram load_approx(const json& j) {
    ApproxSkylineDiagram d;
    load_base(j, d.kind, d.dim, d.dataset, d.axes);
    if (d.dim != 2) throw SchemaError("approximate diagrams are two-dimensional");
    d.tiling.delta = as<long long>(field(j, "delta"), "delta");
    d.tiling.vpls = as<std::vector<int>>(field(j, "vpls"), "vpls");
    d.tiling.hpls = as<std::vector<int>>(field(j, "hpls"), "hpls");
    auto check_cuts = [&](const std::vector<int>& cuts, int cells, const char* name) {
        if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != cells ||
            !std::is_sorted(cuts.begin(), cuts.end()) ||
            std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end())
            throw SchemaError(std::string("field '") + name + "' is not a strict cut sequence");
    };
    check_cuts(d.tiling.vpls, static_cast<int>(d.axes[0].lines.size()) + 1, "vpls");
    check_cuts(d.tiling.hpls, static_cast<int>(d.axes[1].lines.size()) + 1, "hpls");

    d.tiling.tiles.assign(static_cast<std::size_t>(d.tiling.col_bands()) * d.tiling.row_bands(),
                          {});
    std::vector<char> seen(d.tiling.tiles.size(), 0);
    for (const json& tj : field(j, "tiles")) {
        check_fields(tj, {"row", "col", "union"});
        int rb = as<int>(field(tj, "row"), "row");
        int cb = as<int>(field(tj, "col"), "col");
        if (rb < 0 || rb >= d.tiling.row_bands() || cb < 0 || cb >= d.tiling.col_bands())
            throw SchemaError("field 'tiles' band out of range");
        std::size_t k = static_cast<std::size_t>(rb) * d.tiling.col_bands() + cb;
        if (seen[k]) throw SchemaError("field 'tiles' assigns a band twice");
        seen[k] = 1;
        d.tiling.tiles[k] = as<ResultSet>(field(tj, "union"), "union");
    }
    for (char s : seen)
        if (!s) throw SchemaError("field 'tiles' does not cover every band");
    return d;
}

}  // namespace

AnyDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("top level must be an object");
    static constexpr const char* kBase[] = {"version", "kind", "d", "scale", "points", "axes"};
    if (j.contains("classes")) {
        check_fields(j, {"version", "kind", "d", "scale", "points", "axes", "classes"});
        return load_exact(j);
    }
    if (j.contains("tiles")) {
        check_fields(j, {"version", "kind", "d", "scale", "points", "axes", "delta", "vpls",
                         "hpls", "tiles"});
        return load_approx(j);
    }
    (void)kBase;
    throw SchemaError("missing field 'classes' (exact) or 'tiles' (approximate)");
}

namespace {

bool same_points(const Dataset& a, const Dataset& b) {
    return a.dim == b.dim && a.points == b.points;
}

}  // namespace

bool same_structure(const SkylineDiagram& a, const SkylineDiagram& b) {
    if (a.kind != b.kind || a.dim != b.dim || !same_points(a.dataset, b.dataset)) return false;
    if (a.partition.axes != b.partition.axes || a.partition.dims != b.partition.dims) return false;
    if (a.partition.cell_class != b.partition.cell_class) return false;
    if (a.partition.classes.size() != b.partition.classes.size()) return false;
    for (std::size_t i = 0; i < a.partition.classes.size(); ++i) {
        const DiagramClass& x = a.partition.classes[i];
        const DiagramClass& y = b.partition.classes[i];
        if (x.id != y.id || x.result != y.result || x.cells != y.cells || x.pieces != y.pieces)
            return false;
    }
    return true;
}

bool same_structure(const ApproxSkylineDiagram& a, const ApproxSkylineDiagram& b) {
    return a.kind == b.kind && a.dim == b.dim && same_points(a.dataset, b.dataset) &&
           a.axes == b.axes && a.tiling.delta == b.tiling.delta && a.tiling.vpls == b.tiling.vpls &&
           a.tiling.hpls == b.tiling.hpls && a.tiling.tiles == b.tiling.tiles;
}

}  // namespace skydiag
