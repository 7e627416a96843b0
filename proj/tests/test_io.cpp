#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cubeavoid/io.hpp"
#include "cubeavoid/oracle.hpp"
#include "cubeavoid/starting.hpp"

using namespace cubeavoid;
namespace io = cubeavoid::io;

TEST_CASE("[io] latin cube files round-trip") {
    LatinCube cube = starting_latin_cube(2);
    io::json j = io::latin_to_json(cube);
    CHECK(j["kind"] == "latin");
    CHECK(j["n"] == 4);
    CHECK(j["cells"][0][0][0] == 1);  // cells[i-1][j-1][k-1]
    LatinCube back = io::latin_from_json(j);
    CHECK(back == cube);

    SUBCASE("the isotopy record survives the round trip") {
        Isotopy iso = Isotopy::identity(4);
        std::swap(iso.rows[0], iso.rows[3]);
        io::json with = io::latin_to_json(cube, &iso);
        std::optional<Isotopy> out;
        io::latin_from_json(with, &out);
        REQUIRE(out.has_value());
        CHECK(out->rows == iso.rows);
    }
    SUBCASE("bad symbols are rejected") {
        io::json bad = j;
        bad["cells"][0][0][0] = 9;
        CHECK_THROWS_AS(io::latin_from_json(bad), std::runtime_error);
    }
}

TEST_CASE("[io] forbidden cube files round-trip and validate") {
    ForbiddenCube f = generate_instance({4, 2, DensityModel::per_cell_uniform, 8});
    io::json j = io::forbidden_to_json(f);
    CHECK(j["kind"] == "forbidden");
    CHECK(j["m"] == 2);
    ForbiddenCube back = io::forbidden_from_json(j);
    CHECK(io::canonical_dump(io::forbidden_to_json(back)) == io::canonical_dump(j));

    SUBCASE("validation can be waived for non-conforming arrays") {
        ForbiddenCube loose(4, 1);
        loose.add(1, 1, 1, 1);
        loose.add(1, 2, 1, 1);  // symbol 1 twice in a row: breaks m = 1
        io::json jl = io::forbidden_to_json(loose);
        CHECK_THROWS_AS(io::forbidden_from_json(jl), std::invalid_argument);
        CHECK_NOTHROW(io::forbidden_from_json(jl, /*validate=*/false));
    }
}

TEST_CASE("[io] canonical serialization is stable") {
    LatinCube cube = starting_latin_cube(1);
    std::string first = io::canonical_dump(io::latin_to_json(cube));
    std::string second = io::canonical_dump(io::latin_to_json(starting_latin_cube(1)));
    CHECK(first == second);
    CHECK(first ==
          "{\"cells\":[[[1,2],[2,1]],[[2,1],[1,2]]],\"kind\":\"latin\",\"n\":2}\n");

    // parse-then-serialize is byte-identical
    io::json parsed = io::json::parse(first);
    CHECK(io::canonical_dump(io::latin_to_json(io::latin_from_json(parsed))) == first);
}

TEST_CASE("[io] parameter expressions") {
    CHECK(io::parse_param_value("0.45") == doctest::Approx(0.45));
    CHECK(io::parse_param_value("6*2^-27") == 6.0 * std::exp2(-27));
    CHECK(io::parse_param_value("2^-13") == std::exp2(-13));
    CHECK(io::parse_param_value("1/2-38*2^-27") == 0.5 - 38.0 * std::exp2(-27));
    CHECK(io::parse_param_value("1/3") == doctest::Approx(1.0 / 3.0));
    CHECK(io::parse_param_value(" 2^-6 ") == std::exp2(-6));
    CHECK_THROWS_AS(io::parse_param_value("abc"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_param_value("1/0"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_param_value("3*4"), std::runtime_error);
}

TEST_CASE("[io] presets and params json") {
    Params paper = io::params_preset("paper");
    CHECK(paper.alpha == 0.5 - 38.0 * std::exp2(-27));
    CHECK(paper.kappa == 6.0 * std::exp2(-27));
    CHECK_THROWS_AS(io::params_preset("nope"), std::runtime_error);

    io::json j = io::params_to_json(paper);
    Params back = io::params_from_json(j);
    CHECK(back.alpha == paper.alpha);
    CHECK(back.theta == paper.theta);

    io::json strings{{"alpha", "1/2-38*2^-27"}, {"gamma", "2^-27"}, {"kappa", "6*2^-27"},
                     {"epsilon", "2^-6"}, {"theta", "2^-13"}};
    Params parsed = io::params_from_json(strings);
    CHECK(parsed.alpha == paper.alpha);
    CHECK(parsed.gamma == paper.gamma);
    CHECK(parsed.kappa == paper.kappa);
    CHECK(parsed.epsilon == paper.epsilon);
    CHECK(parsed.theta == paper.theta);
}

TEST_CASE("[io] report serialization shapes") {
    StructureReport report = verify_properties(2);
    io::json j = io::structure_report_to_json(report);
    CHECK(j["t"] == 2);
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].is_array());
    CHECK(j["checks"].size() == report.checks.size());

    ForbiddenCube f(4, 4);
    for (Symbol s = 1; s <= 4; ++s) f.add(1, 1, 1, s);
    SolveResult res = solve(f, Params::desk(), 1, 2, 5);
    REQUIRE_FALSE(res.ok);
    io::json fail = io::solve_failure_to_json(res);
    CHECK(fail["ok"] == false);
    CHECK(fail["restarts"].size() == 2);
    CHECK(fail["restarts"][0]["phase"] == "isotopy");
}
