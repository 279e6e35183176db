#include <catch2/catch_amalgamated.hpp>

#include "a2sat/oracle.hpp"
#include "a2sat/sat.hpp"
#include "support.hpp"

using namespace a2sat;
using testsup::Rng;

namespace {
Lit pos(int v) { return Lit(v, true); }
Lit neg(int v) { return Lit(v, false); }

LitSet set_of(std::initializer_list<Lit> lits) {
    LitSet l;
    for (Lit x : lits)
        l.add(x);
    return l;
}

// unsatisfiable: all four sign patterns over two variables
Formula make_fa() {
    return build_formula({mk_clause(pos(0), pos(1)), mk_clause(neg(0), pos(1)),
                          mk_clause(pos(0), neg(1)), mk_clause(neg(0), neg(1))});
}
} // namespace

TEST_CASE("assignment-enumeration satisfiability") {
    CHECK(brute_swrt(build_formula({mk_clause(pos(0), pos(1))}), set_of({neg(0)})));
    CHECK_FALSE(brute_swrt(build_formula({mk_clause(pos(0), pos(0))}), set_of({neg(0)})));
    CHECK_FALSE(brute_swrt(make_fa(), LitSet()));
    CHECK(brute_swrt(Formula(), set_of({pos(0), neg(1)})));
    // forced literals over variables absent from the formula do not bind
    CHECK(brute_swrt(build_formula({mk_clause(pos(0), pos(0))}), set_of({neg(5)})));

    SECTION("variable guard") {
        std::vector<Clause> wide;
        for (int v = 0; v < 25; ++v)
            wide.push_back(mk_clause(pos(v), pos(v)));
        CHECK_THROWS_AS(brute_swrt(wide, LitSet()), TooLargeError);
    }
}

TEST_CASE("subset-enumeration deletion search") {
    SECTION("size first, then lexicographic positions") {
        std::vector<Clause> ms = {mk_clause(pos(0), pos(0)), mk_clause(pos(0), pos(0)),
                                  mk_clause(neg(0), neg(0))};
        auto r = brute_min_deletion(ms, LitSet(), 1);
        REQUIRE(r.has_value());
        CHECK(*r == std::vector<std::uint32_t>{2});
        CHECK_FALSE(brute_min_deletion(ms, LitSet(), 0).has_value());
        CHECK_FALSE(brute_min_deletion(ms, LitSet(), -1).has_value());
    }
    SECTION("satisfiable input deletes nothing") {
        std::vector<Clause> one = {mk_clause(pos(0), pos(1))};
        auto r = brute_min_deletion(one, LitSet(), 1);
        REQUIRE(r.has_value());
        CHECK(r->empty());
    }
    SECTION("unbounded form always answers") {
        Formula fa = make_fa();
        auto positions = brute_scs_positions(fa.clauses(), LitSet());
        CHECK(positions == std::vector<std::uint32_t>{0});
    }
    SECTION("clause guard") {
        std::vector<Clause> many(13, mk_clause(pos(0), pos(1)));
        CHECK_THROWS_AS(brute_min_deletion(many, LitSet(), 2), TooLargeError);
    }
}

TEST_CASE("deletion oracle on pinned instances") {
    SECTION("one deletion repairs the full sign square") {
        BruteScs r = brute_scs(make_fa(), LitSet(), std::nullopt);
        CHECK(r.size == 1);
        REQUIRE(r.witness.size() == 1);
        Formula fa = make_fa();
        CHECK(brute_swrt(fa.without(r.witness), LitSet()));
    }
    SECTION("satisfiable formula") {
        BruteScs r = brute_scs(build_formula({mk_clause(pos(0), pos(1))}), LitSet(),
                               std::nullopt);
        CHECK(r == BruteScs{});
    }
    SECTION("pivot joins the forced set") {
        Formula f = build_formula({mk_clause(neg(0), pos(1))});
        BruteScs with_pivot = brute_scs(f, set_of({pos(0)}), neg(1));
        CHECK(with_pivot.size == 1);
        REQUIRE(with_pivot.witness.size() == 1);
        CHECK(with_pivot.witness[0] == mk_clause(neg(0), pos(1)));
        CHECK(brute_scs(f, set_of({pos(0)}), std::nullopt).size == 0);
    }
}

TEST_CASE("path-enumeration separation") {
    SECTION("single connecting clause") {
        Formula f = build_formula({mk_clause(neg(0), pos(1))});
        CHECK(brute_separator(f, set_of({neg(0)}), pos(1)) == BruteSeparation{1, 1});
    }
    SECTION("two clause-disjoint routes") {
        Formula f = build_formula({mk_clause(neg(0), pos(2)), mk_clause(neg(2), pos(1)),
                                   mk_clause(neg(0), pos(3)), mk_clause(neg(3), pos(1))});
        CHECK(brute_separator(f, set_of({neg(0)}), pos(1)) == BruteSeparation{2, 2});
    }
    SECTION("no route at all") {
        Formula f = build_formula({mk_clause(neg(0), pos(1))});
        CHECK(brute_separator(f, set_of({neg(1)}), pos(0)) == BruteSeparation{0, 0});
    }
    SECTION("clause guard") {
        std::vector<Clause> cs;
        for (int v = 0; v < 11; ++v)
            cs.push_back(mk_clause(neg(v), pos(v + 1)));
        CHECK_THROWS_AS(brute_separator(build_formula(cs), set_of({neg(0)}), pos(11)),
                        TooLargeError);
    }
    SECTION("duality between separators and disjoint paths") {
        Rng rng(0x5e7a7a70);
        int rounds = 0;
        int exact = 0;
        while (rounds < 120) {
            Formula f = testsup::rand_formula(rng, 4, 7);
            LitSet sources = testsup::rand_litset(rng, 4, 2);
            if (sources.size() == 0)
                continue;
            Lit sink = testsup::rand_lit(rng, 4);
            BruteSeparation r = brute_separator(f, sources, sink);
            CAPTURE(rounds);
            // weak duality holds for every input
            CHECK(r.min_separator >= r.max_disjoint_paths);
            CHECK(r.max_disjoint_paths >= 0);
            CHECK(r.min_separator <= static_cast<int>(f.size()));
            // equality needs satisfiability w.r.t. the negated sources and a
            // sink variable outside them
            LitSet l = sources.negated();
            if (swrt(f, l) && !l.contains_var(sink.var())) {
                CHECK(r.min_separator == r.max_disjoint_paths);
                ++exact;
            }
            ++rounds;
        }
        CHECK(exact >= 20);
    }
}
