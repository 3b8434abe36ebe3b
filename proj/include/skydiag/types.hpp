#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skydiag {

using Coord = std::int64_t;
using PointId = std::int32_t;

// Sorted, duplicate-free list of point ids. Every skyline answer is one.
using ResultSet = std::vector<PointId>;

struct Point {
    PointId id = 0;
    std::vector<Coord> coords;

    bool operator==(const Point&) const = default;
};

struct Dataset {
    int dim = 2;
    std::vector<Point> points;
    // Per-axis domain size; when set, coordinates lie in [0, domain[a]).
    std::optional<std::vector<Coord>> domain;

    std::size_t size() const { return points.size(); }

    // Checks dense ids 0..n-1, coordinate arity, and domain bounds.
    void validate() const;
};

struct QueryPoint {
    std::vector<Coord> coords;

    bool operator==(const QueryPoint&) const = default;
};

// Per-axis sign vector: +1 smaller-is-better, -1 larger-is-better.
using Direction = std::vector<int>;

Direction all_min_direction(int dim);

struct SkylineLayers {
    std::vector<ResultSet> layers;  // layer 1 first
};

// Skyline layers plus direct-dominance links (dominance with no
// dominating intermediate). children/parents are indexed by point id.
struct DirectedSkylineGraph {
    SkylineLayers layers;
    std::vector<std::vector<PointId>> children;
    std::vector<std::vector<PointId>> parents;
};

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InfeasibleDeltaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace skydiag
