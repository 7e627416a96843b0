#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubeavoid/rng.hpp"
#include "cubeavoid/structure.hpp"

using namespace cubeavoid;

TEST_CASE("[structure] subcubes through (1,1,1) at t=2") {
    StructureIndex idx = StructureIndex::build(2);
    auto scs = idx.subcubes_through({1, 1, 1});
    REQUIRE(scs.size() == 2);
    CHECK(scs[0] == Subcube::canonical(1, 3, 1, 3, 1, 3));
    CHECK(scs[1] == Subcube::canonical(1, 4, 1, 4, 1, 4));
    CHECK(idx.cube().at(1, 3, 1) == 3);
    CHECK(idx.cube().at(1, 4, 1) == 4);
}

TEST_CASE("[structure] every cell lies on exactly t mixed subcubes") {
    for (int t : {2, 3}) {
        StructureIndex idx = StructureIndex::build(t);
        const int n = 2 * t;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    auto scs = idx.subcubes_through({i, j, k});
                    REQUIRE(static_cast<int>(scs.size()) == t);
                    for (const Subcube& sc : scs) {
                        REQUIRE(sc.contains({i, j, k}));
                        REQUIRE(is_subcube_of(idx.cube(), sc));
                    }
                }
    }
}

TEST_CASE("[structure] half transversal-set of (1,1,1) at t=2") {
    StructureIndex idx = StructureIndex::build(2);
    auto hs = idx.half_transversal_set({1, 1, 1});
    REQUIRE(hs.size() == 2);
    CHECK(hs[0] == Cell{3, 3, 3});
    CHECK(hs[1] == Cell{4, 4, 4});
    CHECK(idx.cube().at(3, 3, 3) == 3);
    CHECK(idx.cube().at(4, 4, 4) == 4);

    SUBCASE("symmetry: the determining cell sits in the sets its members determine") {
        for (const Cell& m : hs) {
            auto back = idx.half_transversal_set(m);
            CHECK(std::binary_search(back.begin(), back.end(), Cell{1, 1, 1}));
        }
    }
}

TEST_CASE("[structure] transversal-set of (1,1,1) at t=2 is the main diagonal") {
    StructureIndex idx = StructureIndex::build(2);
    auto ts = idx.transversal_set_of({1, 1, 1});
    REQUIRE(ts.size() == 4);
    CHECK(ts[0] == Cell{1, 1, 1});
    CHECK(ts[1] == Cell{2, 2, 2});
    CHECK(ts[2] == Cell{3, 3, 3});
    CHECK(ts[3] == Cell{4, 4, 4});

    SUBCASE("all members resolve to the same set") {
        for (const Cell& m : ts) CHECK(idx.ts_id(m) == idx.ts_id({1, 1, 1}));
    }
}

TEST_CASE("[structure] row block of R_{1,1} at t=2") {
    StructureIndex idx = StructureIndex::build(2);
    int blk = idx.row_block_of(1, 1);
    std::set<std::pair<int, int>> rows;
    for (int i = 1; i <= 4; ++i)
        for (int k = 1; k <= 4; ++k)
            if (idx.row_block_of(i, k) == blk) rows.insert({i, k});
    CHECK(rows == std::set<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
}

TEST_CASE("[structure] half column block counts at t=2") {
    StructureIndex idx = StructureIndex::build(2);
    CHECK(idx.first_hcb_count() == 16);   // 4n
    CHECK(idx.second_hcb_count() == 16);
    // each block holds exactly t = 2 half columns
    std::vector<int> members(16, 0);
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            for (int ih : {1, 3}) ++members[idx.first_hcb_of({ih, j, k})];
    for (int cnt : members) CHECK(cnt == 2);  // t half columns, counted once per half
}

TEST_CASE("[structure] catalog counts are the published totals") {
    for (int t : {2, 3}) {
        StructureIndex idx = StructureIndex::build(t);
        CatalogCounts c = idx.counts();
        const int n = 2 * t;
        CHECK(c.subcubes == t * t * t * t);
        CHECK(c.transversal_sets == n * n);
        CHECK(c.first_half_column_blocks == 4 * n);
        CHECK(c.second_half_column_blocks == 4 * n);
        CHECK(c.first_half_transversal_blocks == 4 * n);
        CHECK(c.second_half_transversal_blocks == 4 * n);
        CHECK(c.first_half_symbol_row_blocks == 4 * n);
        CHECK(c.second_half_symbol_row_blocks == 4 * n);
    }
}

TEST_CASE("[structure] exhaustive property verification passes for t = 2 and 3") {
    for (int t : {2, 3}) {
        StructureReport report = verify_properties(t);
        for (const auto& check : report.checks) {
            INFO(check.name << ": " << check.detail);
            CHECK(check.pass);
        }
    }
}

TEST_CASE("[structure] verification modes and bounds") {
    CHECK_THROWS_AS(verify_properties(5), std::invalid_argument);
    StructureReport sampled = verify_properties(5, VerifyMode::sampled);
    CHECK(sampled.all_pass());
}

TEST_CASE("[structure] corrupted cubes fail the intrinsic checks") {
    StructureIndex idx = StructureIndex::build(2);

    SUBCASE("transposing one entry pair breaks Latinness") {
        LatinCube bad = idx.cube();
        Symbol a = bad.at(1, 1, 1), b = bad.at(1, 2, 1);
        bad.set(1, 1, 1, b);
        bad.set(1, 2, 1, a);
        StructureReport report = verify_intrinsic(bad);
        CHECK_FALSE(report.all_pass());
    }
    SUBCASE("a subcube swap keeps Latinness but breaks the cycle structure") {
        LatinCube swapped = swap_on(idx.cube(), idx.subcube(0));
        REQUIRE(is_latin(swapped));
        StructureReport report = verify_intrinsic(swapped);
        bool cycle_or_count_failed = false;
        for (const auto& check : report.checks)
            if (!check.pass &&
                (check.name == "four-cycles-per-cell" || check.name == "subcube-count-per-cell"))
                cycle_or_count_failed = true;
        CHECK(cycle_or_count_failed);
    }
}

TEST_CASE("[structure] carried index translates structures through an isotopy") {
    StructureIndex idx = StructureIndex::build(3);
    SplitMix64 g(4711);
    Isotopy sigma;
    sigma.rows = random_permutation(6, g);
    sigma.cols = random_permutation(6, g);
    sigma.files = random_permutation(6, g);
    sigma.symbols = random_permutation(6, g);
    CarriedIndex carried(idx, sigma);
    LatinCube image = apply_isotopy(idx.cube(), sigma);

    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j)
            for (int k = 1; k <= 6; ++k) {
                Cell pre{i, j, k};
                Cell post = carried.post(pre);
                CHECK(carried.pre(post) == pre);
                CHECK(carried.ts_id(post) == idx.ts_id(pre));
                CHECK(carried.first_hcb_of(post) == idx.first_hcb_of(pre));
                // the image subcubes are the images of the base subcubes
                auto base = idx.subcubes_through(pre);
                for (Subcube& sc : base) sc = apply_isotopy(sc, sigma);
                std::sort(base.begin(), base.end());
                CHECK(carried.subcubes_through(post) == base);
            }

    SUBCASE("image subcubes satisfy the defining equalities in the image cube") {
        for (int id = 0; id < idx.subcube_count(); ++id)
            CHECK(is_subcube_of(image, apply_isotopy(idx.subcube(id), sigma)));
    }

    SUBCASE("carried row blocks equal the definitional grouping on the image cube") {
        // group image rows by their symbol sequences, straight from the definition
        std::map<std::vector<Symbol>, std::vector<std::pair<int, int>>> groups;
        for (int i = 1; i <= 6; ++i)
            for (int k = 1; k <= 6; ++k) {
                std::vector<Symbol> seq(6);
                for (int j = 1; j <= 6; ++j) seq[j - 1] = image.at(i, j, k);
                groups[seq].push_back({i, k});
            }
        REQUIRE(groups.size() == 6);
        for (const auto& [seq, rows] : groups) {
            REQUIRE(rows.size() == 6);
            int blk = carried.row_block_of(rows[0].first, rows[0].second);
            for (auto [i, k] : rows) CHECK(carried.row_block_of(i, k) == blk);
        }
    }

    SUBCASE("carried symbol-column blocks are a valid partition on the image cube") {
        // within each column layer the block's cells carry one symbol, and the
        // block's (i,k) positions repeat across all column layers
        for (int blk = 0; blk < 6; ++blk) {
            std::set<std::pair<int, int>> positions;
            for (int i = 1; i <= 6; ++i)
                for (int k = 1; k <= 6; ++k)
                    if (carried.symcol_block_of({i, 1, k}) == blk) positions.insert({i, k});
            CHECK(positions.size() == 6);
            for (int j = 1; j <= 6; ++j) {
                std::set<Symbol> syms;
                for (auto [i, k] : positions) {
                    CHECK(carried.symcol_block_of({i, j, k}) == blk);
                    syms.insert(image.at(i, j, k));
                }
                CHECK(syms.size() == 1);
            }
        }
    }
}
