#include <doctest.h>

#include "helpers.hpp"
#include "skydiag/core.hpp"
#include "skydiag/dynamic.hpp"
#include "skydiag/quadrant.hpp"

using namespace skydiag;
using namespace testutil;

namespace {

CellResultGrid brute_subcells(const Dataset& ds, const SubcellGrid& grid) {
    CellResultGrid out = CellResultGrid::empty_like(grid.dims());
    std::vector<Point> scaled = scale_points(ds);
    for (int i = 0; i < out.dims[0]; ++i)
        for (int j = 0; j < out.dims[1]; ++j)
            out.at({i, j}) = brute_dynamic(scaled, representative(grid.axes, {i, j}));
    return out;
}

}  // namespace

TEST_CASE("dbase single point") {
    Dataset one = make_dataset({{6, 2}});
    SubcellGrid grid = build_subcell_grid(one);
    CellResultGrid cells = dbase(one, grid);
    for (const ResultSet& r : cells.cells) CHECK(r == ResultSet{0});
}

TEST_CASE("dbase on the four-point sample") {
    Dataset ds = four_points();
    SubcellGrid grid = build_subcell_grid(ds);
    CellResultGrid cells = dbase(ds, grid);
    CHECK(cells.at({4, 2}) == ResultSet{2});
    CHECK(cells.at({4, 1}) == ResultSet{2, 3});

    // The crossed line between those rows is the bisector of the pair.
    CHECK(grid.axes[1].lines[1] == 2 * (9 + 3));
    CHECK(grid.contributors[1][1] == std::vector<ContributorPair>{{2, 3}});

    // Subcell results stay inside their cell's global result.
    CellGrid coarse = build_cell_grid(ds);
    CellResultGrid global = global_cells(ds, coarse);
    QueryPoint rep = representative(grid.axes, {3, 1});
    CellIndex cell = locate_scaled(coarse.axes, rep.coords);
    CHECK(cell == CellIndex{1, 1});
    CHECK(cells.at({3, 1}) == ResultSet{2, 3});
    CHECK(global.at(cell) == ResultSet{0, 2, 3});
}

TEST_CASE("dsubset degenerates to dbase when the global set is everything") {
    // Duplicate points never dominate each other, so every cell's global
    // set is the whole dataset.
    Dataset ds = make_dataset({{5, 5}, {5, 5}});
    SubcellGrid grid = build_subcell_grid(ds);
    CellGrid coarse = build_cell_grid(ds);
    CellResultGrid global = global_cells(ds, coarse);
    for (const ResultSet& r : global.cells) CHECK(r == ResultSet{0, 1});
    CHECK(dsubset(ds, grid, coarse, global) == dbase(ds, grid));

    Dataset anti = make_dataset({{1, 9}, {9, 1}});
    SubcellGrid agrid = build_subcell_grid(anti);
    CellGrid acoarse = build_cell_grid(anti);
    CHECK(dsubset(anti, agrid, acoarse, global_cells(anti, acoarse)) == dbase(anti, agrid));
}

TEST_CASE("dscan crossing with contributors already present") {
    // Crossing a line whose contributors are already in the skyline keeps
    // membership when no relative order flips against them.
    Dataset ds = make_dataset({{1, 9}, {9, 1}});
    SubcellGrid grid = build_subcell_grid(ds);
    CellResultGrid cells = dscan(ds, grid);
    CHECK(cells == dbase(ds, grid));
}

TEST_CASE("three dynamic backends agree with the definition oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        long long n = 1 + static_cast<long long>(seed % 6) * 2;
        Dataset ds = random_dataset(n, 2, false, 32, 6000 + seed);
        SubcellGrid grid = build_subcell_grid(ds);
        CellGrid coarse = build_cell_grid(ds);
        CellResultGrid global = global_cells(ds, coarse);
        CellResultGrid base = dbase(ds, grid);
        CHECK(base == dsubset(ds, grid, coarse, global));
        CHECK(base == dscan(ds, grid));
        CHECK(base == brute_subcells(ds, grid));
    }
}

TEST_CASE("subset law against the containing cell") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Dataset ds = random_dataset(8, 2, false, 24, 7000 + seed);
        SubcellGrid grid = build_subcell_grid(ds);
        CellGrid coarse = build_cell_grid(ds);
        CellResultGrid global = global_cells(ds, coarse);
        CellResultGrid dyn = dbase(ds, grid);
        for (int i = 0; i < dyn.dims[0]; ++i)
            for (int j = 0; j < dyn.dims[1]; ++j) {
                QueryPoint rep = representative(grid.axes, {i, j});
                const ResultSet& g = global.at(locate_scaled(coarse.axes, rep.coords));
                const ResultSet& d = dyn.at({i, j});
                CHECK(std::includes(g.begin(), g.end(), d.begin(), d.end()));
            }
    }
}

TEST_CASE("adjacent subcells differ only by crossed-line contributors") {
    Dataset ds = random_dataset(7, 2, false, 24, 8100);
    SubcellGrid grid = build_subcell_grid(ds);
    CellResultGrid cells = dbase(ds, grid);
    for (int axis = 0; axis < 2; ++axis) {
        for (int i = 0; i + 1 < cells.dims[0]; ++i)
            for (int j = 0; j + 1 < cells.dims[1]; ++j) {
                CellIndex a{i, j}, b{i, j};
                b[axis] += 1;
                std::set<PointId> allowed;
                for (const ContributorPair& pr : grid.contributors[axis][a[axis]]) {
                    allowed.insert(pr.a);
                    allowed.insert(pr.b);
                }
                ResultSet diff;
                std::set_symmetric_difference(cells.at(a).begin(), cells.at(a).end(),
                                              cells.at(b).begin(), cells.at(b).end(),
                                              std::back_inserter(diff));
                for (PointId id : diff) CHECK(allowed.count(id) == 1);
            }
    }
}

TEST_CASE("dbase is parallel-safe") {
    Dataset ds = random_dataset(8, 2, false, 24, 8200);
    SubcellGrid grid = build_subcell_grid(ds);
    CHECK(dbase(ds, grid, 1) == dbase(ds, grid, 4));
}
