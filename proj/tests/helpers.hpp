#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "skydiag/core.hpp"
#include "skydiag/gen.hpp"
#include "skydiag/grid.hpp"

namespace testutil {

using namespace skydiag;

inline Dataset make_dataset(const std::vector<std::vector<Coord>>& coords) {
    Dataset ds;
    ds.dim = coords.empty() ? 2 : static_cast<int>(coords[0].size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        ds.points.push_back({static_cast<PointId>(i), coords[i]});
    return ds;
}

// Eleven hotel-style points with all-distinct coordinates per axis; the
// fixture the quadrant/global/dynamic hand-checked answers below refer to.
inline Dataset sample11() {
    return make_dataset({{2, 130},
                         {35, 120},
                         {12, 125},
                         {45, 110},
                         {50, 97},
                         {8, 95},
                         {55, 88},
                         {17, 100},
                         {30, 90},
                         {22, 85},
                         {14, 76}});
}

// Variant placement used for the neighbor-recurrence hand checks.
inline Dataset scan11() {
    return make_dataset({{2, 124},
                         {35, 110},
                         {12, 118},
                         {52, 105},
                         {26, 101},
                         {8, 98},
                         {46, 95},
                         {17, 92},
                         {40, 88},
                         {22, 85},
                         {14, 76}});
}

// Four points whose per-axis values and pairwise sums are all distinct.
inline Dataset four_points() {
    return make_dataset({{2, 18}, {30, 25}, {8, 9}, {12, 3}});
}

// O(n^2) pairwise oracle, independent of the library's sweep paths.
inline ResultSet brute_skyline(const std::vector<Point>& pts, const Direction& dir) {
    ResultSet out;
    for (const Point& p : pts) {
        bool dominated = false;
        for (const Point& q : pts) {
            if (&p == &q) continue;
            bool le = true, strict = false;
            for (std::size_t a = 0; a < dir.size(); ++a) {
                Coord x = q.coords[a] * dir[a], y = p.coords[a] * dir[a];
                if (x > y) { le = false; break; }
                if (x < y) strict = true;
            }
            if (le && strict) { dominated = true; break; }
        }
        if (!dominated) out.push_back(p.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ResultSet brute_skyline(const std::vector<Point>& pts) {
    if (pts.empty()) return {};
    return brute_skyline(pts, all_min_direction(static_cast<int>(pts[0].coords.size())));
}

inline ResultSet brute_quadrant(const std::vector<Point>& pts, const QueryPoint& q,
                                const Direction& orthant) {
    std::vector<Point> inside;
    for (const Point& p : pts) {
        bool in = true;
        for (std::size_t a = 0; a < orthant.size(); ++a)
            if ((p.coords[a] - q.coords[a]) * orthant[a] <= 0) { in = false; break; }
        if (in) inside.push_back(p);
    }
    return brute_skyline(inside, orthant);
}

inline ResultSet brute_global(const std::vector<Point>& pts, const QueryPoint& q) {
    const int d = static_cast<int>(q.coords.size());
    std::set<PointId> ids;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Direction orthant(d, 1);
        for (int a = 0; a < d; ++a)
            if (mask >> a & 1) orthant[a] = -1;
        for (PointId id : brute_quadrant(pts, q, orthant)) ids.insert(id);
    }
    return ResultSet(ids.begin(), ids.end());
}

// Def.-style dynamic oracle: direct |p - q| dominance over all pairs.
inline ResultSet brute_dynamic(const std::vector<Point>& pts, const QueryPoint& q) {
    auto dist = [&](const Point& p, std::size_t a) {
        return std::llabs(p.coords[a] - q.coords[a]);
    };
    ResultSet out;
    for (const Point& p : pts) {
        bool dominated = false;
        for (const Point& r : pts) {
            if (&p == &r) continue;
            bool le = true, strict = false;
            for (std::size_t a = 0; a < q.coords.size(); ++a) {
                if (dist(r, a) > dist(p, a)) { le = false; break; }
                if (dist(r, a) < dist(p, a)) strict = true;
            }
            if (le && strict) { dominated = true; break; }
        }
        if (!dominated) out.push_back(p.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Dataset random_dataset(long long n, int dim, bool distinct, long long s,
                              std::uint64_t seed) {
    GenConfig cfg;
    cfg.dist = Distribution::Inde;
    cfg.n = n;
    cfg.dim = dim;
    cfg.domain = s;
    cfg.distinct = distinct;
    cfg.seed = seed;
    return generate(cfg);
}

// Pieces of a partition as a canonical value: each piece's sorted flat
// cells keyed with its result, independent of class and piece numbering.
inline std::set<std::pair<ResultSet, std::vector<std::size_t>>> canonical_pieces(
    const DiagramPartition& part) {
    std::set<std::pair<ResultSet, std::vector<std::size_t>>> out;
    for (const DiagramClass& cls : part.classes) {
        for (const auto& piece : cls.pieces) {
            std::vector<std::size_t> cells;
            cells.reserve(piece.size());
            for (int ref : piece) cells.push_back(cls.cells[ref]);
            std::sort(cells.begin(), cells.end());
            out.emplace(cls.result, std::move(cells));
        }
    }
    return out;
}

}  // namespace testutil
