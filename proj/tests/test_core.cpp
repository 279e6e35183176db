#include <catch2/catch_amalgamated.hpp>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"

using namespace a2sat;

namespace {
Lit pos(int v) { return Lit(v, true); }
Lit neg(int v) { return Lit(v, false); }
} // namespace

TEST_CASE("literal codes and negation") {
    Lit a = pos(3);
    CHECK(a.var() == 3);
    CHECK(a.positive());
    CHECK(a.neg().neg() == a);
    CHECK(a.neg() == neg(3));
    CHECK(Lit::from_code(a.code()) == a);
    CHECK(pos(0).code() == 0);
    CHECK(neg(0).code() == 1);
    CHECK(pos(1).code() == 2);
    CHECK(pos(0) < neg(0));
    CHECK(neg(0) < pos(1));
}

TEST_CASE("clause construction is commutative and canonical") {
    CHECK(mk_clause(pos(0), pos(1)) == mk_clause(pos(1), pos(0)));
    Clause unit = mk_clause(neg(2), neg(2));
    CHECK(unit.unit());
    CHECK(unit.a() == neg(2));
    CHECK(unit.b() == neg(2));
    CHECK(mk_clause(pos(0), neg(1)) == mk_clause(neg(1), pos(0)));
    Clause c = mk_clause(neg(1), pos(0));
    CHECK(c.a() == pos(0)); // lower code first
    CHECK(c.b() == neg(1));
    CHECK(c.contains(pos(0)));
    CHECK(c.contains(neg(1)));
    CHECK_FALSE(c.contains(pos(1)));
    CHECK(c.other(pos(0)) == neg(1));
    CHECK(c.max_var() == 1);
}

TEST_CASE("formula construction") {
    Formula f = build_formula({mk_clause(pos(0), pos(1)), mk_clause(neg(0), pos(1))});
    CHECK(f.size() == 2);
    CHECK(f.contains(mk_clause(pos(1), neg(0))));

    SECTION("duplicates are rejected with the later index") {
        try {
            build_formula({mk_clause(pos(0), pos(1)), mk_clause(pos(1), pos(0))});
            FAIL("expected DuplicateClauseError");
        } catch (const DuplicateClauseError &e) {
            CHECK(e.index == 1);
        }
    }

    SECTION("empty formula") {
        Formula e = build_formula({});
        CHECK(e.empty());
        CHECK(e.vars().empty());
    }
}

TEST_CASE("formula difference preserves order") {
    std::vector<Clause> cs = {mk_clause(pos(0), pos(1)), mk_clause(neg(0), pos(1)),
                              mk_clause(pos(0), neg(1)), mk_clause(neg(0), neg(1))};
    Formula f(cs);
    std::vector<Clause> gone = {cs[2], cs[0]};
    Formula rest = f.without(gone);
    REQUIRE(rest.size() == 2);
    CHECK(rest.clauses()[0] == cs[1]);
    CHECK(rest.clauses()[1] == cs[3]);
    // removing a clause not present changes nothing
    Formula same = f.without(std::vector<Clause>{mk_clause(pos(5), pos(6))});
    CHECK(same == f);
}

TEST_CASE("literal sets stay consistent") {
    LitSet l;
    l.add(pos(0));
    l.add(pos(0)); // no-op
    CHECK(l.size() == 1);
    CHECK(l.contains(pos(0)));
    CHECK(l.contains_var(0));
    CHECK_THROWS_AS(l.add(neg(0)), ContradictionError);
    LitSet ext = l.with(neg(4));
    CHECK(ext.size() == 2);
    CHECK(l.size() == 1);
    LitSet flipped = ext.negated();
    CHECK(flipped.contains(neg(0)));
    CHECK(flipped.contains(pos(4)));
    ext.remove(neg(4));
    CHECK(ext.size() == 1);
    CHECK_THROWS_AS(ext.remove(neg(4)), Error);
}

TEST_CASE("assignments hold one polarity per variable") {
    CHECK_THROWS_AS(Assignment({pos(0), neg(0)}), ContradictionError);
    Assignment a({pos(0), neg(1)});
    CHECK(a.contains(pos(0)));
    CHECK_FALSE(a.contains(pos(1)));
    CHECK(a.satisfies(mk_clause(pos(0), pos(1))));
    CHECK_FALSE(a.satisfies(mk_clause(neg(0), pos(1))));
}

TEST_CASE("combination stepper walks subsets in lexicographic order") {
    std::vector<int> idx = {0, 1};
    int count = 1;
    while (detail::next_combination(idx, 5))
        ++count;
    CHECK(count == 10); // C(5,2)
    // exhaustion leaves the final combination in place
    CHECK(idx == std::vector<int>{3, 4});
}
