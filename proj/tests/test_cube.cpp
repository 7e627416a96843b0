#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubeavoid/cube.hpp"
#include "cubeavoid/rng.hpp"
#include "cubeavoid/starting.hpp"
#include "cubeavoid/structure.hpp"

using namespace cubeavoid;

TEST_CASE("[cube] is_latin accepts the starting cube and rejects a duplicated symbol") {
    LatinCube cube = starting_latin_cube(2);
    CHECK(is_latin(cube));

    LatinCube broken = cube;
    broken.set(1, 2, 1, broken.at(1, 1, 1));  // duplicate in row R_{1,1}
    CHECK_FALSE(is_latin(broken));
}

TEST_CASE("[cube] swaps preserve Latinness over every catalog subcube") {
    for (int t : {2, 3}) {
        StructureIndex idx = StructureIndex::build(t);
        for (int id = 0; id < idx.subcube_count(); ++id) {
            LatinCube swapped = swap_on(idx.cube(), idx.subcube(id));
            REQUIRE(is_latin(swapped));
        }
    }
}

TEST_CASE("[cube] conflicts") {
    LatinCube cube = starting_latin_cube(2);

    SUBCASE("empty forbidden array means no conflicts") {
        ForbiddenCube empty(4, 0);
        CHECK(conflicts(cube, empty).empty());
    }
    SUBCASE("single forbidden entry hitting the cube") {
        ForbiddenCube f(4, 1);
        f.add(1, 1, 1, cube.at(1, 1, 1));
        auto c = conflicts(cube, f);
        REQUIRE(c.size() == 1);
        CHECK(c[0] == Cell{1, 1, 1});
    }
    SUBCASE("forbidding every entry makes all n^3 cells conflicts") {
        ForbiddenCube f(4, 1);
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                for (int k = 1; k <= 4; ++k) f.add(i, j, k, cube.at(i, j, k));
        f.validate();  // one symbol per cell, once per line
        CHECK(conflicts(cube, f).size() == 64);
    }
    SUBCASE("order mismatch is an error") {
        ForbiddenCube f(6, 0);
        CHECK_THROWS_AS(conflicts(cube, f), std::invalid_argument);
    }
}

TEST_CASE("[cube] swap_on exchanges the two symbols on the eight cells") {
    LatinCube cube = starting_latin_cube(2);
    Subcube sc = Subcube::canonical(1, 3, 1, 3, 1, 3);
    REQUIRE(is_subcube_of(cube, sc));

    LatinCube swapped = swap_on(cube, sc);
    CHECK(swapped.at(1, 1, 1) == 3);
    CHECK(swapped.at(1, 3, 1) == 1);
    CHECK(is_latin(swapped));

    SUBCASE("swapping twice restores the cube") {
        CHECK(swap_on(swapped, sc) == cube);
    }
    SUBCASE("cells outside the subcube are untouched") {
        int changed = 0;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                for (int k = 1; k <= 4; ++k)
                    if (swapped.at(i, j, k) != cube.at(i, j, k)) ++changed;
        CHECK(changed == 8);
    }
    SUBCASE("non-subcubes are rejected") {
        CHECK_THROWS_AS(swap_on(cube, Subcube::canonical(1, 2, 1, 3, 1, 3)),
                        std::invalid_argument);
    }
    SUBCASE("swapping the subcube around a sole conflict removes it") {
        ForbiddenCube f(4, 1);
        f.add(1, 1, 1, 1);  // the starting cube holds 1 there
        REQUIRE(conflicts(cube, f).size() == 1);
        CHECK(conflicts(swapped, f).empty());
    }
}

TEST_CASE("[cube] apply_isotopy") {
    LatinCube cube = starting_latin_cube(2);

    SUBCASE("identity leaves the cube unchanged") {
        CHECK(apply_isotopy(cube, Isotopy::identity(4)) == cube);
    }
    SUBCASE("a symbol transposition relabels entries") {
        Isotopy iso = Isotopy::identity(4);
        std::swap(iso.symbols[0], iso.symbols[1]);  // (1 2)
        CHECK(apply_isotopy(cube, iso).at(1, 1, 1) == 2);
    }
    SUBCASE("sigma then its inverse round-trips") {
        SplitMix64 g(99);
        Isotopy iso;
        iso.rows = random_permutation(4, g);
        iso.cols = random_permutation(4, g);
        iso.files = random_permutation(4, g);
        iso.symbols = random_permutation(4, g);
        CHECK(apply_isotopy(apply_isotopy(cube, iso), iso.inverse()) == cube);
    }
}

TEST_CASE("[cube] random isotopies preserve Latinness") {
    SplitMix64 g(2024);
    for (int n : {4, 6, 8}) {
        LatinCube cube = starting_latin_cube(n / 2);
        for (int trial = 0; trial < 334; ++trial) {
            Isotopy iso;
            iso.rows = random_permutation(n, g);
            iso.cols = random_permutation(n, g);
            iso.files = random_permutation(n, g);
            iso.symbols = random_permutation(n, g);
            REQUIRE(is_latin(apply_isotopy(cube, iso)));
        }
    }
}

TEST_CASE("[cube] per-row conflict counts bound the aggregate") {
    // sum of per-row counts equals the total, so total <= n^2 * max_row
    LatinCube cube = starting_latin_cube(3);
    ForbiddenCube f(6, 2);
    SplitMix64 g(7);
    for (int draws = 0; draws < 40; ++draws) {
        int i = 1 + static_cast<int>(g.below(6)), j = 1 + static_cast<int>(g.below(6)),
            k = 1 + static_cast<int>(g.below(6));
        f.add(i, j, k, 1 + static_cast<int>(g.below(6)));
    }
    auto all = conflicts(cube, f);
    std::size_t total = 0;
    std::size_t max_row = 0;
    for (int i = 1; i <= 6; ++i)
        for (int k = 1; k <= 6; ++k) {
            std::size_t row = 0;
            for (const Cell& c : all)
                if (c.i == i && c.k == k) ++row;
            total += row;
            max_row = std::max(max_row, row);
        }
    CHECK(total == all.size());
    CHECK(all.size() <= max_row * 36);
}

TEST_CASE("[cube] forbidden array validation") {
    SUBCASE("per-cell bound") {
        ForbiddenCube f(4, 1);
        f.add(1, 1, 1, 1);
        f.add(1, 1, 1, 2);
        CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    }
    SUBCASE("row multiplicity bound") {
        ForbiddenCube f(4, 1);
        f.add(1, 1, 1, 3);
        f.add(1, 2, 1, 3);  // symbol 3 twice in row R_{1,1}
        CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    }
    SUBCASE("column multiplicity bound") {
        ForbiddenCube f(4, 1);
        f.add(1, 2, 1, 3);
        f.add(4, 2, 1, 3);
        CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    }
    SUBCASE("file multiplicity bound") {
        ForbiddenCube f(4, 1);
        f.add(1, 2, 1, 3);
        f.add(1, 2, 4, 3);
        CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    }
    SUBCASE("a partial-Latin-cube pattern at m=1 is valid") {
        LatinCube cube = starting_latin_cube(2);
        ForbiddenCube f(4, 1);
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) f.add(i, j, 1, cube.at(i, j, 1));
        CHECK_NOTHROW(f.validate());
    }
}

TEST_CASE("[cube] subcube canonical form and isotopy plumbing") {
    CHECK_THROWS_AS(Subcube::canonical(1, 1, 2, 3, 2, 3), std::invalid_argument);
    Subcube sc = Subcube::canonical(3, 1, 4, 1, 3, 1);
    CHECK(sc == Subcube::canonical(1, 3, 1, 4, 1, 3));

    Isotopy a = Isotopy::identity(4), b = Isotopy::identity(4);
    std::swap(a.rows[0], a.rows[2]);
    std::swap(b.symbols[1], b.symbols[3]);
    Isotopy ab = Isotopy::compose(a, b);
    LatinCube cube = starting_latin_cube(2);
    CHECK(apply_isotopy(apply_isotopy(cube, a), b) == apply_isotopy(cube, ab));
    CHECK_FALSE(Isotopy{{1, 1, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}.valid(4));
}
