#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "a2sat/compression.hpp"
#include "a2sat/generator.hpp"
#include "a2sat/oracle.hpp"

using namespace a2sat;

TEST_CASE("generated instances honor their parameters") {
    GenParams p{.seed = 41, .n_vars = 5, .n_clauses = 10, .planted_k = 3};
    GenResult g = generate(p);

    SECTION("shape") {
        CHECK(g.doc.n_vars == 5);
        CHECK(g.doc.clauses.size() == 10);
        CHECK(g.doc.l_lits.empty());
        CHECK_FALSE(g.doc.pivot.has_value());
        CHECK(g.planted_positions.size() == 3);
        CHECK(std::is_sorted(g.planted_positions.begin(), g.planted_positions.end()));
        CHECK(g.planted_positions.back() < 10);
    }
    SECTION("the hidden assignment separates planted from kept") {
        REQUIRE(g.hidden.size() == 5);
        for (std::uint32_t i = 0; i < g.doc.clauses.size(); ++i) {
            bool planted = std::binary_search(g.planted_positions.begin(),
                                              g.planted_positions.end(), i);
            CAPTURE(i);
            CHECK(g.hidden.satisfies(g.doc.clauses[i]) == !planted);
        }
    }
    SECTION("clauses are distinct without allow_repeats") {
        std::vector<Clause> sorted = g.doc.clauses;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
    SECTION("deleting the planted positions leaves a satisfiable rest") {
        std::vector<Clause> rest;
        for (std::uint32_t i = 0; i < g.doc.clauses.size(); ++i)
            if (!std::binary_search(g.planted_positions.begin(),
                                    g.planted_positions.end(), i))
                rest.push_back(g.doc.clauses[i]);
        CHECK(brute_swrt(rest, LitSet()));
    }
}

TEST_CASE("generation is reproducible") {
    GenParams p{.seed = 7, .n_vars = 4, .n_clauses = 8, .planted_k = 2};
    GenResult a = generate(p);
    GenResult b = generate(p);
    CHECK(a.doc == b.doc);
    CHECK(a.planted_positions == b.planted_positions);
    REQUIRE(a.hidden.size() == b.hidden.size());
    CHECK(std::equal(a.hidden.lits().begin(), a.hidden.lits().end(),
                     b.hidden.lits().begin()));
    CHECK(render_input(a.doc) == render_input(b.doc));

    GenParams other = p;
    other.seed = 8;
    CHECK_FALSE(generate(other).doc == a.doc);
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(generate({.seed = 1, .n_vars = 0, .n_clauses = 1}), PreconditionError);
    CHECK_THROWS_AS(generate({.seed = 1, .n_vars = 2, .n_clauses = -1}), PreconditionError);
    CHECK_THROWS_AS(generate({.seed = 1, .n_vars = 2, .n_clauses = 2, .planted_k = -1}),
                    PreconditionError);
    CHECK_THROWS_AS(generate({.seed = 1, .n_vars = 2, .n_clauses = 1, .planted_k = 2}),
                    PreconditionError);
    // one variable offers a single satisfied unit, so three need repeats
    CHECK_THROWS_AS(generate({.seed = 1, .n_vars = 1, .n_clauses = 3}), PreconditionError);
    GenResult g = generate({.seed = 1, .n_vars = 1, .n_clauses = 3, .allow_repeats = true});
    REQUIRE(g.doc.clauses.size() == 3);
    CHECK(g.doc.clauses[0] == g.doc.clauses[1]);
    CHECK(g.doc.clauses[1] == g.doc.clauses[2]);
}

TEST_CASE("planted instances solve within the planted budget") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        GenResult g = generate({.seed = seed, .n_vars = 6, .n_clauses = 12, .planted_k = 2});
        AsatResult r = solve_2asat(g.doc.clauses, 2);
        CAPTURE(seed);
        REQUIRE(r.is_found());
        CHECK(r.positions().size() <= 2);
    }
}
