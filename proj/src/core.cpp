#include "skydiag/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace skydiag {

void Dataset::validate() const {
    if (dim < 2) throw DimensionMismatchError("dataset dimension must be >= 2");
    std::vector<char> seen(points.size(), 0);
    for (const Point& p : points) {
        if (p.coords.size() != static_cast<std::size_t>(dim))
            throw DimensionMismatchError("point arity differs from dataset dimension");
        if (p.id < 0 || static_cast<std::size_t>(p.id) >= points.size() || seen[p.id])
            throw std::invalid_argument("point ids must be dense 0..n-1 and unique");
        seen[p.id] = 1;
        if (domain) {
            for (int a = 0; a < dim; ++a)
                if (p.coords[a] < 0 || p.coords[a] >= (*domain)[a])
                    throw std::invalid_argument("coordinate outside declared domain");
        }
    }
}

Direction all_min_direction(int dim) { return Direction(static_cast<std::size_t>(dim), 1); }

bool dominates(const Point& a, const Point& b, const Direction& dir) {
    if (a.coords.size() != b.coords.size() || a.coords.size() != dir.size())
        throw DimensionMismatchError("dominates: dimension mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < dir.size(); ++i) {
        Coord x = a.coords[i] * dir[i];
        Coord y = b.coords[i] * dir[i];
        if (x > y) return false;
        if (x < y) strict = true;
    }
    return strict;
}

bool dominates(const Point& a, const Point& b) {
    if (a.coords.size() != b.coords.size())
        throw DimensionMismatchError("dominates: dimension mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] > b.coords[i]) return false;
        if (a.coords[i] < b.coords[i]) strict = true;
    }
    return strict;
}

namespace {

struct WorkPoint {
    std::vector<Coord> c;
    PointId id;
};

bool lex_less(const WorkPoint& a, const WorkPoint& b) {
    if (a.c != b.c) return a.c < b.c;
    return a.id < b.id;
}

// Smaller-is-better skyline over working rows. Rows get sorted.
ResultSet skyline_work(std::vector<WorkPoint>& work) {
    ResultSet out;
    if (work.empty()) return out;
    std::sort(work.begin(), work.end(), lex_less);
    const std::size_t d = work[0].c.size();
    if (d == 2) {
        Coord min_y = work[0].c[1] + 1;
        const std::vector<Coord>* holder = nullptr;
        for (const WorkPoint& w : work) {
            if (w.c[1] < min_y) {
                min_y = w.c[1];
                holder = &w.c;
                out.push_back(w.id);
            } else if (holder && w.c == *holder) {
                out.push_back(w.id);  // duplicate of the current minimum
            }
        }
    } else {
        // A lex-earlier point is never dominated by a lex-later one, so the
        // buffer only grows.
        std::vector<const WorkPoint*> buf;
        for (const WorkPoint& w : work) {
            bool dominated = false;
            for (const WorkPoint* s : buf) {
                bool le = true, strict = false;
                for (std::size_t i = 0; i < d; ++i) {
                    if (s->c[i] > w.c[i]) { le = false; break; }
                    if (s->c[i] < w.c[i]) strict = true;
                }
                if (le && strict) { dominated = true; break; }
            }
            if (!dominated) {
                buf.push_back(&w);
                out.push_back(w.id);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<WorkPoint> make_work(std::span<const Point> pts, const Direction* dir) {
    std::vector<WorkPoint> work;
    work.reserve(pts.size());
    for (const Point& p : pts) {
        WorkPoint w{p.coords, p.id};
        if (dir) {
            if (p.coords.size() != dir->size())
                throw DimensionMismatchError("skyline: direction arity mismatch");
            for (std::size_t i = 0; i < w.c.size(); ++i) w.c[i] *= (*dir)[i];
        }
        work.push_back(std::move(w));
    }
    return work;
}

}  // namespace

ResultSet skyline(std::span<const Point> pts) {
    auto work = make_work(pts, nullptr);
    return skyline_work(work);
}

ResultSet skyline(std::span<const Point> pts, const Direction& dir) {
    auto work = make_work(pts, &dir);
    return skyline_work(work);
}

SkylineLayers skyline_layers(std::span<const Point> pts) {
    SkylineLayers out;
    std::vector<Point> alive(pts.begin(), pts.end());
    while (!alive.empty()) {
        ResultSet layer = skyline(alive);
        out.layers.push_back(layer);
        std::vector<Point> next;
        next.reserve(alive.size() - layer.size());
        for (const Point& p : alive)
            if (!std::binary_search(layer.begin(), layer.end(), p.id)) next.push_back(p);
        alive.swap(next);
    }
    return out;
}

DirectedSkylineGraph build_dsg(std::span<const Point> pts) {
    const std::size_t n = pts.size();
    DirectedSkylineGraph g;
    g.children.assign(n, {});
    g.parents.assign(n, {});
    if (n == 0) return g;

    std::vector<const Point*> by_id(n);
    for (const Point& p : pts) by_id[p.id] = &p;

    const std::size_t words = (n + 63) / 64;
    // dominators[i] bit j set iff j dominates i; dominated[j] is the transpose.
    std::vector<std::uint64_t> dominators(n * words, 0), dominated(n * words, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates(*by_id[j], *by_id[i])) {
                dominators[i * words + j / 64] |= 1ull << (j % 64);
                dominated[j * words + i / 64] |= 1ull << (i % 64);
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(dominators[i * words + j / 64] >> (j % 64) & 1)) continue;
            bool direct = true;
            for (std::size_t w = 0; w < words; ++w) {
                if (dominated[j * words + w] & dominators[i * words + w]) {
                    direct = false;
                    break;
                }
            }
            if (direct) {
                g.children[j].push_back(static_cast<PointId>(i));
                g.parents[i].push_back(static_cast<PointId>(j));
            }
        }
    }

    // Peel layers off the dominator counts.
    std::vector<int> cnt(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int c = 0;
        for (std::size_t w = 0; w < words; ++w) c += __builtin_popcountll(dominators[i * words + w]);
        cnt[i] = c;
    }
    std::vector<char> removed(n, 0);
    std::size_t left = n;
    while (left > 0) {
        ResultSet layer;
        for (std::size_t i = 0; i < n; ++i)
            if (!removed[i] && cnt[i] == 0) layer.push_back(static_cast<PointId>(i));
        for (PointId i : layer) {
            removed[i] = 1;
            for (std::size_t k = 0; k < n; ++k)
                if (dominated[static_cast<std::size_t>(i) * words + k / 64] >> (k % 64) & 1) --cnt[k];
        }
        left -= layer.size();
        g.layers.layers.push_back(std::move(layer));
    }
    return g;
}

std::vector<Point> map_to_query(std::span<const Point> pts, const QueryPoint& q) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) {
        if (p.coords.size() != q.coords.size())
            throw DimensionMismatchError("map_to_query: dimension mismatch");
        Point t{p.id, p.coords};
        for (std::size_t i = 0; i < q.coords.size(); ++i)
            t.coords[i] = std::llabs(p.coords[i] - q.coords[i]) + q.coords[i];
        out.push_back(std::move(t));
    }
    return out;
}

ResultSet dynamic_skyline(std::span<const Point> pts, const QueryPoint& q) {
    auto mapped = map_to_query(pts, q);
    return skyline(mapped);
}

ResultSet quadrant_skyline(std::span<const Point> pts, const QueryPoint& q,
                           const Direction& orthant) {
    if (orthant.size() != q.coords.size())
        throw DimensionMismatchError("quadrant_skyline: orthant arity mismatch");
    std::vector<Point> inside;
    for (const Point& p : pts) {
        if (p.coords.size() != q.coords.size())
            throw DimensionMismatchError("quadrant_skyline: dimension mismatch");
        // Strictly inside: points on an axis of q belong to no orthant.
        bool in = true;
        for (std::size_t a = 0; a < orthant.size(); ++a) {
            if ((p.coords[a] - q.coords[a]) * orthant[a] <= 0) {
                in = false;
                break;
            }
        }
        if (in) inside.push_back(p);
    }
    // Flip so that closer-to-q is smaller on every axis.
    Direction dir = orthant;
    return skyline(inside, dir);
}

ResultSet global_skyline(std::span<const Point> pts, const QueryPoint& q) {
    const int d = static_cast<int>(q.coords.size());
    ResultSet out;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Direction orthant(d, 1);
        for (int a = 0; a < d; ++a)
            if (mask >> a & 1) orthant[a] = -1;
        ResultSet part = quadrant_skyline(pts, q, orthant);
        ResultSet merged;
        std::set_union(out.begin(), out.end(), part.begin(), part.end(),
                       std::back_inserter(merged));
        out.swap(merged);
    }
    return out;
}

}  // namespace skydiag
