#include <catch2/catch_amalgamated.hpp>

#include "a2sat/oracle.hpp"
#include "a2sat/solver.hpp"
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

Formula make_fd() {
    return build_formula({mk_clause(neg(0), pos(1)), mk_clause(neg(1), neg(0))});
}
} // namespace

TEST_CASE("clause selection") {
    SECTION("walk from the annotation set") {
        Formula f = build_formula({mk_clause(neg(0), pos(1))});
        SelectedClause sel = select_clause(f, set_of({pos(0)}), neg(1));
        CHECK(sel.clause == mk_clause(neg(0), pos(1)));
        CHECK(sel.first == neg(0));
        CHECK(sel.second == pos(1));
        CHECK(sel.from_l_walk);
    }
    SECTION("walk through the negated pivot") {
        Formula fd = make_fd();
        SelectedClause sel = select_clause(fd, LitSet(), pos(0));
        CHECK_FALSE(sel.from_l_walk);
        // the selected clause is the first on the walk with both literals in
        // the reference model, oriented lower literal first
        auto p = satisfying_assignment(fd, LitSet());
        REQUIRE(p.has_value());
        CHECK(p->contains(sel.first));
        CHECK(p->contains(sel.second));
        CHECK(sel.first == sel.clause.a());
        CHECK(sel.second == sel.clause.b());
        if (p->contains(pos(1)))
            CHECK(sel.clause == mk_clause(neg(0), pos(1)));
        else
            CHECK(sel.clause == mk_clause(neg(1), neg(0)));
    }
    SECTION("unreachable clauses are never selected") {
        Formula fd = make_fd();
        SelectedClause base = select_clause(fd, LitSet(), pos(0));
        Formula wider = build_formula({mk_clause(neg(0), pos(1)), mk_clause(neg(1), neg(0)),
                                       mk_clause(neg(2), pos(3))});
        SelectedClause again = select_clause(wider, LitSet(), pos(0));
        CHECK(again.clause == base.clause);
        CHECK(again.first == base.first);
        CHECK(again.second == base.second);
    }
    SECTION("selection needs an unsatisfiable extended instance") {
        Formula f = build_formula({mk_clause(neg(0), pos(1))});
        CHECK_THROWS_AS(select_clause(f, set_of({pos(0)}), pos(1)), PreconditionError);
    }
}

TEST_CASE("culprit search on pinned instances") {
    Formula f = build_formula({mk_clause(neg(0), pos(1))});
    LitSet l = set_of({pos(0)});

    SECTION("single clause must go") {
        CsResult r = find_cs(f, l, neg(1), 1);
        REQUIRE(r.is_found());
        REQUIRE(r.clauses().size() == 1);
        CHECK(r.clauses()[0] == mk_clause(neg(0), pos(1)));
    }
    SECTION("no budget, no answer") {
        CHECK_FALSE(find_cs(f, l, neg(1), 0).is_found());
    }
    SECTION("either clause of the two-clause cycle") {
        Formula fd = make_fd();
        CsResult r = find_cs(fd, LitSet(), pos(0), 1);
        REQUIRE(r.is_found());
        REQUIRE(r.clauses().size() == 1);
        CHECK(fd.contains(r.clauses()[0]));
        CHECK(swrt(fd.without(r.clauses()), set_of({pos(0)})));
    }
    SECTION("already satisfiable means the empty set") {
        CsResult r = find_cs(f, l, pos(1), 0);
        REQUIRE(r.is_found());
        CHECK(r.clauses().empty());
    }
    SECTION("bundled instance form agrees") {
        AslasatInstance inst{f, l, neg(1), 1};
        CHECK(find_cs(inst) == find_cs(f, l, neg(1), 1));
    }
    SECTION("invalid instances are rejected") {
        CHECK_THROWS_AS(find_cs(f, l, neg(0), 1), InvalidInstanceError);
        CHECK_THROWS_AS(find_cs(f, l, neg(1), -1), PreconditionError);
        Formula contra =
            build_formula({mk_clause(pos(0), pos(0)), mk_clause(neg(0), neg(0))});
        CHECK_THROWS_AS(find_cs(contra, LitSet(), pos(1), 1), InvalidInstanceError);
    }
    SECTION("depth guard trips instead of deep recursion") {
        // k < |F|, so the search must branch past the root
        SolveOptions opts;
        opts.depth_guard = 0;
        CHECK_THROWS_AS(find_cs(make_fd(), LitSet(), pos(0), 1, nullptr, opts), Error);
    }
}

TEST_CASE("culprit search statistics") {
    Formula f = build_formula({mk_clause(neg(0), pos(1))});
    LitSet l = set_of({pos(0)});
    SearchStats st;
    CsResult r = find_cs(f, l, neg(1), 1, &st);
    REQUIRE(r.is_found());
    CHECK(st.k == 1);
    CHECK(st.nodes >= 1);
    CHECK(st.leaves >= 1);
    CHECK(st.leaves <= st.nodes);
    // alpha = |Var(F) \ Var(L)| + k = 1 + 1; beta = max(0, 2k - SepSize) = 1
    CHECK(st.root_alpha == 2);
    CHECK(st.root_beta == 1);
    CHECK(testsup::stats_bounds_ok(st));
}

TEST_CASE("culprit search matches the exhaustive oracle") {
    Rng rng(0xca11ab1e);
    SolveOptions opts;
    opts.verify_measures = true; // assert the measure laws at every node
    for (int round = 0; round < 150; ++round) {
        auto inst = testsup::rand_valid_aslasat(rng, 5, 8, 2);
        BruteScs ref = brute_scs(inst.f, inst.l, inst.pivot);
        for (int k = 0; k <= 3; ++k) {
            SearchStats st;
            CsResult r = find_cs(inst.f, inst.l, inst.pivot, k, &st, opts);
            bool want = ref.size <= static_cast<std::size_t>(k);
            CAPTURE(round, k, ref.size);
            REQUIRE(r.is_found() == want);
            if (r.is_found()) {
                CHECK(r.clauses().size() <= static_cast<std::size_t>(k));
                for (const Clause &c : r.clauses())
                    CHECK(inst.f.contains(c));
                CHECK(swrt(inst.f.without(r.clauses()), inst.l.with(inst.pivot)));
            }
            CHECK(st.k == k);
            CHECK(testsup::stats_bounds_ok(st));
        }
    }
}
