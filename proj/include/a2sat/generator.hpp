#pragma once

/// Deterministic random instance generator with a planted deletion set.
///
/// A hidden assignment is drawn first. All clauses except `planted_k` of them
/// are satisfied by it, so deleting the planted clauses always suffices and
/// the deletion optimum is at most `planted_k`. Identical parameters produce
/// byte-identical documents: the only entropy source is a seeded mt19937_64,
/// reduced with fixed modulo arithmetic (bias is irrelevant here, stability
/// across platforms is what matters).

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/dimacs.hpp"
#include "a2sat/formula.hpp"

namespace a2sat {

struct GenParams {
    std::uint64_t seed = 0;
    int n_vars = 0;
    int n_clauses = 0;
    int planted_k = 0;
    bool allow_repeats = false;
};

struct GenResult {
    InputDoc doc;                                // no annotations, clauses only
    Assignment hidden;                           // satisfies all non-planted clauses
    std::vector<std::uint32_t> planted_positions; // 0-based, ascending
};

namespace detail {

inline std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t n) { return rng() % n; }

template <typename T> void shuffle_vec(std::mt19937_64 &rng, std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded(rng, i)]);
}

} // namespace detail

/// Generates an instance per `p`. Throws PreconditionError when the
/// parameters are inconsistent (planted_k > n_clauses, no variables, or more
/// distinct clauses requested than exist without --allow-repeats).
inline GenResult generate(const GenParams &p) {
    if (p.n_vars < 1)
        throw PreconditionError("generator needs at least one variable");
    if (p.n_clauses < 0 || p.planted_k < 0)
        throw PreconditionError("clause and deletion counts must be nonnegative");
    if (p.planted_k > p.n_clauses)
        throw PreconditionError("planted deletion count exceeds the clause count");

    std::mt19937_64 rng(p.seed);

    std::vector<Lit> hidden_lits;
    hidden_lits.reserve(p.n_vars);
    for (int v = 0; v < p.n_vars; ++v)
        hidden_lits.push_back(Lit(v, detail::bounded(rng, 2) == 0));
    Assignment hidden(hidden_lits);
    auto agree = [&](int v, bool s) { return s ? hidden_lits[v] : hidden_lits[v].neg(); };

    // pools of distinct non-tautological clauses, split by the hidden
    // assignment: per variable one satisfied and one violated unit, per pair
    // three satisfied combinations and one violated
    std::vector<Clause> sat_pool, bad_pool;
    for (int v = 0; v < p.n_vars; ++v) {
        sat_pool.push_back(mk_clause(agree(v, true), agree(v, true)));
        bad_pool.push_back(mk_clause(agree(v, false), agree(v, false)));
    }
    for (int v = 0; v < p.n_vars; ++v)
        for (int w = v + 1; w < p.n_vars; ++w) {
            for (int s1 = 1; s1 >= 0; --s1)
                for (int s2 = 1; s2 >= 0; --s2)
                    if (s1 || s2)
                        sat_pool.push_back(mk_clause(agree(v, s1 != 0), agree(w, s2 != 0)));
            bad_pool.push_back(mk_clause(agree(v, false), agree(w, false)));
        }

    const int base = p.n_clauses - p.planted_k;
    if (!p.allow_repeats && (static_cast<std::size_t>(base) > sat_pool.size() ||
                             static_cast<std::size_t>(p.planted_k) > bad_pool.size()))
        throw PreconditionError("not enough distinct clauses; pass allow_repeats");

    auto draw = [&](std::vector<Clause> &pool, int count) {
        std::vector<Clause> picked;
        picked.reserve(count);
        if (p.allow_repeats) {
            for (int i = 0; i < count; ++i)
                picked.push_back(pool[detail::bounded(rng, pool.size())]);
        } else {
            detail::shuffle_vec(rng, pool);
            picked.assign(pool.begin(), pool.begin() + count);
        }
        return picked;
    };
    std::vector<Clause> kept = draw(sat_pool, base);
    std::vector<Clause> planted = draw(bad_pool, p.planted_k);

    // interleave and remember where the planted clauses land
    std::vector<std::uint32_t> order(p.n_clauses);
    for (int i = 0; i < p.n_clauses; ++i)
        order[i] = static_cast<std::uint32_t>(i);
    detail::shuffle_vec(rng, order);

    GenResult out;
    out.doc.n_vars = p.n_vars;
    out.doc.clauses.resize(p.n_clauses);
    for (int slot = 0; slot < p.n_clauses; ++slot) {
        std::uint32_t src = order[slot];
        if (src < static_cast<std::uint32_t>(base)) {
            out.doc.clauses[slot] = kept[src];
        } else {
            out.doc.clauses[slot] = planted[src - base];
            out.planted_positions.push_back(static_cast<std::uint32_t>(slot));
        }
    }
    std::sort(out.planted_positions.begin(), out.planted_positions.end());
    out.hidden = std::move(hidden);
    return out;
}

} // namespace a2sat
