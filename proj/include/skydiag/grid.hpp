#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "skydiag/types.hpp"

namespace skydiag {

// All grid lines live in a x4-scaled integer space: point lines sit at 4a,
// pairwise bisectors at 2(a+b). Every line coordinate is even, so the
// interior representative (left line + 1) is exact and never collides with
// a point coordinate.
inline constexpr Coord kScale = 4;

struct Axis {
    std::vector<Coord> lines;  // strictly increasing, scaled

    bool operator==(const Axis&) const = default;
};

struct CellGrid {
    int dim = 2;
    std::vector<Axis> axes;

    int cells_on_axis(int a) const { return static_cast<int>(axes[a].lines.size()) + 1; }
    std::size_t cell_count() const;
    std::vector<int> dims() const;
};

// Unordered contributor pair, a <= b; a == b marks a point line.
struct ContributorPair {
    PointId a = 0;
    PointId b = 0;

    bool operator==(const ContributorPair&) const = default;
};

struct SubcellGrid {
    int dim = 2;
    std::vector<Axis> axes;
    // contributors[axis][line]: every pair whose bisector or point line
    // coincides with that line.
    std::vector<std::vector<std::vector<ContributorPair>>> contributors;

    int cells_on_axis(int a) const { return static_cast<int>(axes[a].lines.size()) + 1; }
    std::size_t cell_count() const;
    std::vector<int> dims() const;
};

using CellIndex = std::vector<int>;

CellGrid build_cell_grid(const Dataset& ds);
SubcellGrid build_subcell_grid(const Dataset& ds);

// Dataset coordinates lifted into the scaled space (coords * 4).
std::vector<Point> scale_points(const Dataset& ds);

// Fixed interior point of a cell in scaled space: left line + 1 per axis,
// or min line - 1 for the leftmost unbounded span. Throws on bad indices.
QueryPoint representative(const std::vector<Axis>& axes, const CellIndex& cell);

// Half-open span lookup of a raw (unscaled) query. A query exactly on a
// line belongs to the span on the line's right.
CellIndex locate(const std::vector<Axis>& axes, const QueryPoint& raw_q);
// Same lookup for coordinates already in the scaled space.
CellIndex locate_scaled(const std::vector<Axis>& axes, std::span<const Coord> scaled);

// One ResultSet per cell, flattened with axis 0 varying fastest.
struct CellResultGrid {
    std::vector<int> dims;
    std::vector<ResultSet> cells;

    static CellResultGrid empty_like(const std::vector<int>& dims);
    std::size_t flat(const CellIndex& idx) const;
    const ResultSet& at(const CellIndex& idx) const { return cells[flat(idx)]; }
    ResultSet& at(const CellIndex& idx) { return cells[flat(idx)]; }

    bool operator==(const CellResultGrid&) const = default;
};

enum class DiagramKind { Quadrant, Global, Dynamic };

const char* to_string(DiagramKind kind);
DiagramKind diagram_kind_from_string(const std::string& s);

struct DiagramClass {
    int id = 0;
    ResultSet result;
    std::vector<std::size_t> cells;        // flat cell indices, sorted
    std::vector<std::vector<int>> pieces;  // 4-connected groups, as indices into cells
    // Boundary vertex chains per piece (scaled coords); filled by the 2D
    // sweep only, empty otherwise.
    std::vector<std::vector<std::array<Coord, 2>>> chains;
};

struct DiagramPartition {
    DiagramKind kind = DiagramKind::Quadrant;
    std::vector<int> dims;
    std::vector<Axis> axes;
    std::vector<DiagramClass> classes;
    std::vector<int> cell_class;  // flat cell -> class id

    std::size_t cell_count() const;
};

// Groups cells by identical ResultSet and splits each class into
// 4-connected pieces.
DiagramPartition merge_equal_results(DiagramKind kind, const std::vector<Axis>& axes,
                                     const CellResultGrid& results);

}  // namespace skydiag
