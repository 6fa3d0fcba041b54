#include "doctest.h"
#include "nodallab/verify.hpp"

using namespace nodallab;

TEST_CASE("claim ids are validated") {
    RunConfig cfg;
    cfg.claims = {"Thm9.9"};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_claim("nope", RunConfig{}), std::invalid_argument);
    CHECK(supported_claims().size() == 15);
}

TEST_CASE("config ranges") {
    RunConfig cfg;
    cfg.deltas = {0.5, 0.3};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.deltas = {0.1, 1.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.bc = "robin";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(domain_from_config(RunConfig{}, "hexagon"), std::invalid_argument);
}

TEST_CASE("claims reject domains outside their hypotheses") {
    RunConfig cfg;
    cfg.domain = "rect";
    CHECK_THROWS_AS(run_claim("Thm1.3", cfg), std::invalid_argument);
    CHECK_THROWS_AS(run_claim("Lem1.2", cfg), std::invalid_argument);
    cfg.domain = "sphere";
    CHECK_THROWS_AS(run_claim("Thm1.8", cfg), std::invalid_argument);
}

TEST_CASE("explicit claim verdicts follow their rows") {
    RunConfig cfg;
    cfg.domain = "rect";
    cfg.count = 20;
    const auto out = run_claim("Thm1.8", cfg);
    REQUIRE(out.claims.size() == 2);
    for (const auto& c : out.claims) {
        CHECK(c.verdict == "pass");
        CHECK(c.rows.size() == 20);
        CHECK_FALSE(c.fit);
    }
}

TEST_CASE("a failing row fails the claim") {
    RunConfig cfg;
    const auto out = run_claim("Chiti-eq", cfg);
    REQUIRE(out.claims.size() == 1);
    bool any_bad = false;
    for (const auto& r : out.claims[0].rows) any_bad = any_bad || !r.pass;
    CHECK(out.claims[0].verdict == (any_bad ? "fail" : "pass"));
}

TEST_CASE("fitted claims are reported with a fit") {
    RunConfig cfg;
    const auto out = run_claim("Cor1.6", cfg);
    REQUIRE(out.claims.size() == 1);
    CHECK(out.claims[0].verdict == "reported");
    REQUIRE(out.claims[0].fit);
    CHECK(out.claims[0].fit->slope == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("constants table layout") {
    const auto t = constants_table({2, 3}, {1.0, 2.0});
    CHECK(t.rows.size() == 4);
    CHECK(std::get<std::string>(t.rows[0][4]).empty());
    CHECK(std::get<double>(t.rows[1][4]) == 0.0);
    CHECK(std::get<std::string>(t.rows[1][5]).empty());
    CHECK(std::get<double>(t.rows[3][5]) == 0.0);
    CHECK_THROWS_AS(constants_table({1}, {2.0}), std::invalid_argument);
}
