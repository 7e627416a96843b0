#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubeavoid/starting.hpp"

using namespace cubeavoid;

TEST_CASE("[starting] mod-t representative convention") {
    CHECK(reduce_mod(0, 2) == 2);
    CHECK(reduce_mod(4, 2) == 2);
    CHECK(reduce_mod(5, 2) == 1);
    CHECK(reduce_mod(-1, 3) == 2);
    CHECK(reduce_mod(3, 3) == 3);
    CHECK(reduce_mod(7, 1) == 1);
}

TEST_CASE("[starting] square of order 4, row by row") {
    LatinSquare sq = starting_square(2);
    const Symbol expected[4][4] = {
        {1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}};
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) CHECK(sq.at(i, j) == expected[i - 1][j - 1]);
    CHECK(sq.is_latin());
}

TEST_CASE("[starting] square of order 2 is forced") {
    LatinSquare sq = starting_square(1);
    CHECK(sq.at(1, 1) == 1);
    CHECK(sq.at(1, 2) == 2);
    CHECK(sq.at(2, 1) == 2);
    CHECK(sq.at(2, 2) == 1);
}

TEST_CASE("[starting] t = 0 is rejected") {
    CHECK_THROWS_AS(starting_square(0), std::invalid_argument);
    CHECK_THROWS_AS(starting_latin_cube(0), std::invalid_argument);
}

TEST_CASE("[starting] every square quadrant carries one symbol class") {
    for (int t : {2, 3, 4}) {
        LatinSquare sq = starting_square(t);
        const int n = 2 * t;
        for (int ih = 0; ih < 2; ++ih)
            for (int jh = 0; jh < 2; ++jh) {
                std::set<Symbol> syms;
                for (int i = 1 + ih * t; i <= t + ih * t; ++i)
                    for (int j = 1 + jh * t; j <= t + jh * t; ++j) syms.insert(sq.at(i, j));
                REQUIRE(static_cast<int>(syms.size()) == t);
                bool low = *syms.begin() <= t;
                CHECK((*syms.rbegin() <= t) == low);
                (void)n;
            }
    }
}

TEST_CASE("[starting] cube entries match hand evaluation at t=2") {
    LatinCube cube = starting_latin_cube(2);
    CHECK(cube.at(1, 1, 1) == 1);
    CHECK(cube.at(2, 1, 1) == 2);
    CHECK(cube.at(1, 1, 3) == 3);
    CHECK(cube.at(3, 3, 3) == 3);
}

TEST_CASE("[starting] cubes are Latin for t = 1..8") {
    for (int t = 1; t <= 8; ++t) CHECK(is_latin(starting_latin_cube(t)));
}

TEST_CASE("[starting] every file layer is a relabeling of the starting square") {
    for (int t : {2, 3, 4}) {
        const int n = 2 * t;
        LatinSquare sq = starting_square(t);
        LatinCube cube = starting_latin_cube(t);
        for (int k = 1; k <= n; ++k) {
            // the relabeling is fixed by the first row of the layer
            std::vector<Symbol> relabel(n + 1, 0);
            for (int j = 1; j <= n; ++j) relabel[sq.at(1, j)] = cube.at(1, j, k);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    REQUIRE(cube.at(i, j, k) == relabel[sq.at(i, j)]);
        }
    }
}

TEST_CASE("[starting] octants") {
    SUBCASE("coordinates map to the right case") {
        CHECK(octant_of({1, 1, 1}, 2).case_index == 1);
        CHECK(octant_of({3, 1, 3}, 2).case_index == 2);
        CHECK(octant_of({3, 3, 1}, 2).case_index == 3);
        CHECK(octant_of({1, 3, 3}, 2).case_index == 4);
        CHECK(octant_of({1, 3, 1}, 2).case_index == 5);
        CHECK(octant_of({3, 3, 3}, 2).case_index == 6);
        CHECK(octant_of({3, 1, 1}, 2).case_index == 7);
        CHECK(octant_of({1, 1, 3}, 2).case_index == 8);
        CHECK_THROWS_AS(octant_of({5, 1, 1}, 2), std::out_of_range);
    }
    SUBCASE("opposite is an all-flip involution without fixed points") {
        for (int i : {1, 3})
            for (int j : {1, 3})
                for (int k : {1, 3}) {
                    OctantId o = octant_of({i, j, k}, 2);
                    OctantId p = opposite(o);
                    CHECK(p.i_high != o.i_high);
                    CHECK(p.j_high != o.j_high);
                    CHECK(p.k_high != o.k_high);
                    CHECK(opposite(p) == o);
                    CHECK(p.case_index != o.case_index);
                }
    }
    SUBCASE("opposite octants use different symbol classes at t=2") {
        LatinCube cube = starting_latin_cube(2);
        CHECK(cube.at(1, 1, 1) <= 2);   // low octant uses S1
        CHECK(cube.at(3, 3, 3) > 2);    // its opposite uses S2
    }
}

TEST_CASE("[starting] orientation is assigned by case, not by value") {
    CHECK(orientation_of({1, 1, 1}, 2) == Orientation::minus_form);
    CHECK(orientation_of({3, 1, 1}, 2) == Orientation::plus_form);
    for (int t : {2, 3}) {
        const int n = 2 * t;
        LatinCube cube = starting_latin_cube(t);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    // the assigned form reproduces the entry mod t
                    Symbol s = cube.at(i, j, k);
                    int form = orientation_of({i, j, k}, t) == Orientation::plus_form
                                   ? i - j + k
                                   : j - i + k;
                    REQUIRE(reduce_mod(s, t) == reduce_mod(form, t));
                }
    }
}
