#pragma once

#include <span>

#include "skydiag/types.hpp"

namespace skydiag {

// True iff a is no worse than b on every axis (after per-axis direction
// flip) and strictly better on at least one. Throws DimensionMismatchError
// when arities differ.
bool dominates(const Point& a, const Point& b, const Direction& dir);
bool dominates(const Point& a, const Point& b);

// Non-dominated points under smaller-is-better on every axis. d=2 runs a
// sort-on-x, min-y sweep; higher d filters against a maintained skyline
// buffer. Duplicate coordinate vectors are mutually non-dominating and all
// retained.
ResultSet skyline(std::span<const Point> pts);
ResultSet skyline(std::span<const Point> pts, const Direction& dir);

// Repeated peeling: layer k is the skyline of everything not in layers < k.
SkylineLayers skyline_layers(std::span<const Point> pts);

// Dominance DAG reduced to direct links: edge p->c iff p dominates c with
// no s such that p dominates s and s dominates c.
DirectedSkylineGraph build_dsg(std::span<const Point> pts);

// t[j] = |p[j] - q[j]| + q[j] per axis, ids preserved.
std::vector<Point> map_to_query(std::span<const Point> pts, const QueryPoint& q);

// Skyline of the mapped points, reported as original ids.
ResultSet dynamic_skyline(std::span<const Point> pts, const QueryPoint& q);

// Points strictly inside the orthant of q given by the sign vector, then
// skyline under that orthant's direction.
ResultSet quadrant_skyline(std::span<const Point> pts, const QueryPoint& q,
                           const Direction& orthant);

// Union of quadrant_skyline over all 2^d orthants.
ResultSet global_skyline(std::span<const Point> pts, const QueryPoint& q);

}  // namespace skydiag
