#pragma once

// Shared helpers for the test binaries: a deterministic rng, enumeration of
// small clause universes, and random instance builders. Everything is seeded
// so failures reproduce.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"
#include "a2sat/sat.hpp"
#include "a2sat/solver.hpp"

namespace testsup {

using namespace a2sat;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    int below(int n) { return static_cast<int>(g() % static_cast<std::uint64_t>(n)); }
    bool coin() { return below(2) == 0; }
};

inline Lit rand_lit(Rng &r, int n_vars) { return Lit(r.below(n_vars), r.coin()); }

inline Clause rand_clause(Rng &r, int n_vars) {
    return mk_clause(rand_lit(r, n_vars), rand_lit(r, n_vars));
}

/// Every canonical clause over variables 0..n_vars-1: units, tautologies and
/// two-variable clauses. For n_vars = 2 this is 10 clauses, for 3 it is 21.
inline std::vector<Clause> all_canonical_clauses(int n_vars) {
    std::vector<Clause> out;
    for (int a = 0; a < 2 * n_vars; ++a)
        for (int b = a; b < 2 * n_vars; ++b)
            out.push_back(mk_clause(Lit::from_code(a), Lit::from_code(b)));
    return out;
}

/// Random formula with distinct clauses.
inline Formula rand_formula(Rng &r, int n_vars, int max_clauses) {
    std::set<Clause> picked;
    int want = r.below(max_clauses + 1);
    for (int tries = 0; tries < 200 && static_cast<int>(picked.size()) < want; ++tries)
        picked.insert(rand_clause(r, n_vars));
    return Formula(std::vector<Clause>(picked.begin(), picked.end()));
}

/// Random clause multiset with at least one forced repeat when slots >= 2.
inline std::vector<Clause> rand_multiset(Rng &r, int n_vars, int slots) {
    std::vector<Clause> out;
    for (int i = 0; i < slots; ++i)
        out.push_back(rand_clause(r, n_vars));
    if (slots >= 2) {
        int i = r.below(slots);
        int j = r.below(slots - 1);
        if (j >= i)
            ++j;
        out[i] = out[j];
    }
    return out;
}

inline bool has_repeat(std::vector<Clause> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

/// Random consistent literal set over variables 0..n_vars-1.
inline LitSet rand_litset(Rng &r, int n_vars, int max_size) {
    LitSet l;
    int want = r.below(max_size + 1);
    for (int i = 0; i < want; ++i) {
        Lit x = rand_lit(r, n_vars);
        if (!l.contains_var(x.var()))
            l.add(x);
    }
    return l;
}

/// Random valid annotated instance: SWRT(F, L) holds and the pivot variable
/// is outside Var(L). Rejection-sampled, deterministic per rng state.
struct ValidInstance {
    Formula f;
    LitSet l;
    Lit pivot;
};

inline ValidInstance rand_valid_aslasat(Rng &r, int n_vars, int max_clauses, int max_l) {
    for (;;) {
        Formula f = rand_formula(r, n_vars, max_clauses);
        LitSet l = rand_litset(r, n_vars, max_l);
        Lit pivot = rand_lit(r, n_vars);
        if (validate_aslasat(f, l, pivot) == InstanceCheck::ok)
            return {std::move(f), l, pivot};
    }
}

/// Exact integer form of the leaf bounds: leaves^2 <= 5^root_beta and
/// root_beta <= 2k (so sqrt(5)^beta <= 5^k), plus the depth bound.
inline bool stats_bounds_ok(const SearchStats &st) {
    if (st.max_depth > st.root_alpha)
        return false;
    if (st.root_beta > 2 * st.k)
        return false;
    if (st.root_beta < 0 || st.root_beta > 54)
        return false;
    unsigned __int128 pow5 = 1;
    for (int i = 0; i < st.root_beta; ++i)
        pow5 *= 5;
    unsigned __int128 sq = static_cast<unsigned __int128>(st.leaves) * st.leaves;
    return sq <= pow5;
}

} // namespace testsup
