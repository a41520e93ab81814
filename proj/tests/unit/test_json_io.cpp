#include <doctest.h>

#include <nlohmann/json.hpp>

#include "share_sense/error.hpp"
#include "share_sense/json_io.hpp"
#include "support/toy.hpp"

using namespace share_sense;

TEST_CASE("instance round trip keeps infinite limits") {
    SharingProblem problem = share_sense::testing::toy_problem();
    problem.agents[1].upper[0] = ExtendedReal::infinity();
    const SharingProblem back = parse_instance(instance_to_json(problem));
    CHECK(back.resources == 1);
    CHECK(back.inequality_rows == 1);
    CHECK(back.budget == problem.budget);
    REQUIRE(back.agents.size() == 2);
    CHECK(back.agents[0].upper[0].value() == 2.0);
    CHECK(back.agents[1].upper[0].is_infinite());
    CHECK(back.agents[1].cost == problem.agents[1].cost);
}

TEST_CASE("malformed instances") {
    CHECK_THROWS_AS(parse_instance("{"), Error);
    CHECK_THROWS_AS(parse_instance(R"({"p":1,"n0":1,"b":[1]})"), Error);
    CHECK_THROWS_AS(parse_instance(R"({"p":1,"n0":1,"b":[1],"agents":[{"c":[1],"d":["big"],"A":[[1]]}]})"), Error);
}

TEST_CASE("solution dump") {
    const AssembledLp lp = assemble(share_sense::testing::toy_problem());
    const PrimalSolution s = solve_primal(lp);
    const auto doc = nlohmann::json::parse(solution_to_json(s, std::nullopt));
    CHECK(doc["objective"].get<double>() == doctest::Approx(-7.0));
    CHECK(doc["partition"]["B"][0] == 2);
    CHECK(doc["flags"]["degenerate"] == false);
    CHECK_FALSE(doc.contains("dual"));
}

TEST_CASE("cargo config round trip") {
    const std::string text = R"({"m": 50, "trials": 3, "beta": 1e-6,
        "d_dist": {"type": "truncated_gaussian", "mu": 110, "sigma2": 3096},
        "W": 20000, "V": 30, "seed": 9})";
    const CargoConfig cfg = parse_cargo_config(text);
    CHECK(cfg.m == 50);
    CHECK(cfg.arrival_count() == 2500);
    CHECK(cfg.demand == DemandShape::kTruncatedGaussian);
    CHECK(cfg.p_min == 20.0);
    const CargoConfig back = parse_cargo_config(cargo_config_to_json(cfg));
    CHECK(back.sigma2 == 3096.0);
    CHECK(back.seed == 9u);

    CHECK_THROWS_AS(parse_cargo_config(R"({"m": 5, "d_dist": {"type": "uniform", "d_min": 1, "d_max": 2}})"), Error);
}
