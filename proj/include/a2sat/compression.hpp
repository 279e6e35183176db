#pragma once

/// From the annotated branching search to plain clause deletion.
///
/// Layer 1 (solve_i1): delete at most k clauses so the rest is satisfiable
/// w.r.t. an annotation set, for a formula that is satisfiable outright.
/// Solved by merging the annotation literals into two fresh ones (those a
/// reference model already satisfies, and the rest) after a variable split
/// that keeps every clause individually addressable.
///
/// Layer 2 (solve_i2): shrink a known deletion set of size k+1 to one of
/// size at most k, by guessing its intersection with the unknown smaller
/// set and, per kept clause, which literal the unknown set satisfies.
///
/// Driver (solve_2asat): iterative compression over clause prefixes.
/// Multiset inputs are first made duplicate-free by the same variable split.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"
#include "a2sat/sat.hpp"
#include "a2sat/solver.hpp"

namespace a2sat {

/// Receives the statistics of every branching search a higher-level solve
/// actually runs (short-circuited sub-calls report nothing).
using StatsSink = std::function<void(const SearchStats &)>;

/// Positional record of a clause split: position i of the input becomes the
/// pair (a v s_i), (-s_i v b) over the fresh variable s_i = base_var + i.
struct SplitMap {
    struct Entry {
        int split_var = 0;
        Clause pos_half;
        Clause neg_half;
    };

    int base_var = 0;
    std::vector<Entry> entries;

    /// Input position a clause with a split-range variable descends from.
    std::optional<std::uint32_t> origin_of(const Clause &c) const {
        for (Lit x : {c.a(), c.b()}) {
            int v = x.var();
            if (v >= base_var && v < base_var + static_cast<int>(entries.size()))
                return static_cast<std::uint32_t>(v - base_var);
        }
        return std::nullopt;
    }
};

/// Split every clause (a v b) into (a v s_i), (-s_i v b) with a fresh
/// variable per position. The result is equisatisfiable, duplicate-free
/// even for multiset inputs, and deletion-equivalent: removing one half
/// frees its origin clause. With allow_duplicates unset, a repeated input
/// clause raises DuplicateClauseError.
inline std::pair<Formula, SplitMap> split_clauses(std::span<const Clause> clauses,
                                                  bool allow_duplicates = false) {
    if (!allow_duplicates)
        (void)build_formula(clauses); // throws with the offending position
    int base = 0;
    for (const Clause &c : clauses)
        base = std::max(base, c.max_var() + 1);
    SplitMap map;
    map.base_var = base;
    std::vector<Clause> out;
    out.reserve(2 * clauses.size());
    for (std::uint32_t i = 0; i < clauses.size(); ++i) {
        Lit s(base + static_cast<int>(i), true);
        SplitMap::Entry e;
        e.split_var = s.var();
        e.pos_half = mk_clause(clauses[i].a(), s);
        e.neg_half = mk_clause(s.neg(), clauses[i].b());
        out.push_back(e.pos_half);
        out.push_back(e.neg_half);
        map.entries.push_back(e);
    }
    return {Formula(std::move(out)), std::move(map)};
}

/// An instance of the deletion problem rewritten for the branching search:
/// the annotation set collapses to one committed literal, its unsatisfied
/// part to the pivot.
struct I1Reduction {
    AslasatInstance instance;
    Lit merged_sat;   // stands in for annotation literals the model satisfies
    Lit merged_unsat; // stands in for the rest; doubles as the pivot
    SplitMap split;
    LitSet sat_part, unsat_part; // the original literals behind each merge
};

/// Rewrite (f, l, k) for the branching search. Returns nullopt when the
/// reference model of f already respects l, so the empty deletion set works.
/// Throws NotSatisfiableError when f itself is unsatisfiable.
inline std::optional<I1Reduction> reduce_i1(const Formula &f, const LitSet &l, int k) {
    auto model = satisfying_assignment(f, LitSet{});
    if (!model)
        throw NotSatisfiableError("the formula itself is unsatisfiable");
    // only annotation literals over variables of f constrain anything
    LitSet sat_part, unsat_part;
    for (Lit m : l.lits()) {
        if (!std::binary_search(f.vars().begin(), f.vars().end(), m.var()))
            continue;
        if (model->contains(m))
            sat_part.add(m);
        else
            unsat_part.add(m);
    }
    if (unsat_part.empty())
        return std::nullopt;

    auto [split_f, map] = split_clauses(f.clauses(), false);
    const int m = static_cast<int>(f.size());
    Lit merged_sat(map.base_var + m, true);
    Lit merged_unsat(map.base_var + m + 1, true);
    auto substitute = [&](Lit x) {
        if (sat_part.contains(x))
            return merged_sat;
        if (sat_part.contains(x.neg()))
            return merged_sat.neg();
        if (unsat_part.contains(x))
            return merged_unsat;
        if (unsat_part.contains(x.neg()))
            return merged_unsat.neg();
        return x;
    };
    std::vector<Clause> rewritten;
    rewritten.reserve(split_f.size());
    for (const Clause &c : split_f.clauses())
        rewritten.push_back(mk_clause(substitute(c.a()), substitute(c.b())));

    I1Reduction red{AslasatInstance{Formula(std::move(rewritten)), LitSet{merged_sat},
                                    merged_unsat, k},
                    merged_sat,
                    merged_unsat,
                    std::move(map),
                    std::move(sat_part),
                    std::move(unsat_part)};
    if (validate_aslasat(red.instance.f, red.instance.l, red.instance.pivot) !=
        InstanceCheck::ok)
        throw InternalError("rewritten deletion instance is invalid");
    return red;
}

/// Delete at most k clauses of a satisfiable f so the rest is satisfiable
/// w.r.t. l. Returned clauses are in formula order. When stats is given it
/// reports the single underlying search (zeroed if none runs).
inline CsResult solve_i1(const Formula &f, const LitSet &l, int k,
                         SearchStats *stats = nullptr, const SolveOptions &opts = {}) {
    if (k < 0)
        throw PreconditionError("deletion budget must be non-negative");
    if (stats)
        *stats = SearchStats{.k = k};
    auto red = reduce_i1(f, l, k);
    if (!red)
        return CsResult::found({});
    CsResult inner = find_cs(red->instance, stats, opts);
    if (!inner.is_found())
        return CsResult::no();

    std::vector<std::uint32_t> positions;
    for (const Clause &c : inner.clauses()) {
        auto origin = red->split.origin_of(c);
        if (!origin)
            throw InternalError("deletion pick lacks a split origin");
        positions.push_back(*origin);
    }
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    std::vector<Clause> out;
    for (std::uint32_t p : positions)
        out.push_back(f.clauses()[p]);
    if (!swrt(f.without(out), l))
        throw InternalError("deletion set fails verification");
    return CsResult::found(std::move(out));
}

/// Compress a deletion set s of size k+1 for f down to size at most k, or
/// report that none exists. Returned clauses are in formula order.
inline CsResult solve_i2(const Formula &f, std::span<const Clause> s, int k,
                         const StatsSink &sink = {}, const SolveOptions &opts = {}) {
    if (k < 0)
        throw PreconditionError("deletion budget must be non-negative");
    if (s.size() != static_cast<std::size_t>(k) + 1)
        throw ContractViolationError("the known deletion set must have size k+1");
    std::vector<std::uint32_t> s_pos;
    for (const Clause &c : s) {
        bool seen = false;
        for (std::uint32_t i = 0; i < f.size(); ++i)
            if (f.clauses()[i] == c) {
                s_pos.push_back(i);
                seen = true;
                break;
            }
        if (!seen)
            throw ContractViolationError("the known deletion set leaves the formula");
    }
    std::sort(s_pos.begin(), s_pos.end());
    s_pos.erase(std::unique(s_pos.begin(), s_pos.end()), s_pos.end());
    if (s_pos.size() != s.size())
        throw ContractViolationError("the known deletion set repeats a clause");
    std::vector<Clause> s_ordered;
    for (std::uint32_t p : s_pos)
        s_ordered.push_back(f.clauses()[p]);
    Formula rest = f.without(s_ordered);
    if (!swrt(rest, LitSet{}))
        throw ContractViolationError("the known deletion set does not work");

    const int n = static_cast<int>(s_ordered.size());
    std::uint64_t combos = 0;
    std::uint64_t combo_limit = 1; // 3^n; per clause: drop it, or force either literal
    for (int i = 0; i < n && i < 40; ++i)
        combo_limit *= 3;

    std::optional<std::vector<std::uint32_t>> best;
    // guesses for the intersection with the unknown set, by increasing size
    // then lexicographic; the guess itself must fit the budget
    for (int keep_out = 0; keep_out <= k && !best; ++keep_out) {
        std::vector<int> idx(keep_out);
        for (int i = 0; i < keep_out; ++i)
            idx[i] = i;
        do {
            std::vector<char> in_e(n, 0);
            for (int i : idx)
                in_e[i] = 1;
            LitSet forced;
            auto descend = [&](auto &&self, int at) -> bool {
                if (at == n) {
                    if (n < 40 && ++combos > combo_limit)
                        throw InternalError("literal guess enumeration overran its bound");
                    SearchStats st;
                    CsResult sub =
                        solve_i1(rest, forced, k - keep_out, sink ? &st : nullptr, opts);
                    if (sink && st.nodes > 0)
                        sink(st);
                    if (!sub.is_found())
                        return false;
                    std::vector<std::uint32_t> pick;
                    for (int i : idx)
                        pick.push_back(s_pos[i]);
                    for (const Clause &c : sub.clauses())
                        for (std::uint32_t p = 0; p < f.size(); ++p)
                            if (f.clauses()[p] == c) {
                                pick.push_back(p);
                                break;
                            }
                    std::sort(pick.begin(), pick.end());
                    best = std::move(pick);
                    return true;
                }
                if (in_e[at])
                    return self(self, at + 1);
                const Clause &c = s_ordered[at];
                const int options = c.unit() ? 1 : 2;
                for (int li = 0; li < options; ++li) {
                    Lit x = li == 0 ? c.a() : c.b();
                    if (forced.contains(x.neg()))
                        continue; // clashes with an earlier pick
                    bool fresh = !forced.contains(x);
                    if (fresh)
                        forced.add(x);
                    if (self(self, at + 1))
                        return true;
                    if (fresh)
                        forced.remove(x);
                }
                return false;
            };
            if (descend(descend, 0))
                break;
        } while (detail::next_combination(idx, n));
    }
    if (!best)
        return CsResult::no();
    std::vector<Clause> out;
    for (std::uint32_t p : *best)
        out.push_back(f.clauses()[p]);
    if (!swrt(f.without(out), LitSet{}))
        throw InternalError("compressed deletion set fails verification");
    return CsResult::found(std::move(out));
}

/// Outcome of the plain deletion problem over an input clause list:
/// 1-based input positions of a deletion set, or the verdict that none of
/// size at most k exists.
class AsatResult {
  public:
    static AsatResult found(std::vector<std::uint32_t> positions) {
        AsatResult r;
        r.pos_ = std::move(positions);
        return r;
    }

    static AsatResult no() { return AsatResult(); }

    bool is_found() const { return pos_.has_value(); }

    const std::vector<std::uint32_t> &positions() const {
        if (!pos_)
            throw Error("no deletion set to read");
        return *pos_;
    }

    friend bool operator==(const AsatResult &, const AsatResult &) = default;

  private:
    std::optional<std::vector<std::uint32_t>> pos_;
};

namespace detail {

inline bool plain_sat(std::span<const Clause> clauses) {
    TwoSat ts;
    int vl = 0;
    for (const Clause &c : clauses)
        vl = std::max(vl, c.max_var() + 1);
    ts.reset(vl);
    for (const Clause &c : clauses)
        ts.add_clause(c);
    return ts.run();
}

/// Iterative compression over prefixes of a duplicate-free clause list.
/// Returns 0-based positions of a deletion set of size at most k.
inline std::optional<std::vector<std::uint32_t>>
compress_distinct(std::span<const Clause> clauses, int k, const StatsSink &sink,
                  const SolveOptions &opts) {
    std::vector<std::uint32_t> held; // ascending positions, always of size <= k
    std::vector<Clause> prefix;
    for (std::uint32_t i = 0; i < clauses.size(); ++i) {
        prefix.push_back(clauses[i]);
        held.push_back(i);
        if (held.size() > static_cast<std::size_t>(k)) {
            Formula fi(prefix);
            std::vector<Clause> s;
            for (std::uint32_t p : held)
                s.push_back(clauses[p]);
            CsResult shrunk = solve_i2(fi, s, k, sink, opts);
            if (!shrunk.is_found())
                return std::nullopt;
            held.clear();
            for (const Clause &c : shrunk.clauses())
                for (std::uint32_t p = 0; p <= i; ++p)
                    if (clauses[p] == c) {
                        held.push_back(p);
                        break;
                    }
        }
        // invariant: the held set keeps the processed prefix satisfiable
        std::vector<Clause> left;
        std::size_t next = 0;
        for (std::uint32_t p = 0; p <= i; ++p) {
            if (next < held.size() && held[next] == p) {
                ++next;
                continue;
            }
            left.push_back(clauses[p]);
        }
        if (!plain_sat(left))
            throw InternalError("held deletion set fails its prefix");
    }
    return held;
}

} // namespace detail

/// Find at most k positions to delete from the input clause list (a
/// multiset; repeats allowed) so the rest is satisfiable, or report that
/// none exist. Positions are 1-based and ascending.
inline AsatResult solve_2asat(std::span<const Clause> clauses, int k,
                              const StatsSink &sink = {}, const SolveOptions &opts = {}) {
    if (k < 0)
        throw PreconditionError("deletion budget must be non-negative");
    std::vector<Clause> sorted(clauses.begin(), clauses.end());
    std::sort(sorted.begin(), sorted.end());
    bool repeats = false;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) {
            repeats = true;
            break;
        }

    std::optional<std::vector<std::uint32_t>> positions;
    if (!repeats) {
        positions = detail::compress_distinct(clauses, k, sink, opts);
    } else {
        auto [split_f, map] = split_clauses(clauses, true);
        auto raw = detail::compress_distinct(split_f.clauses(), k, sink, opts);
        if (raw) {
            std::vector<std::uint32_t> origins;
            for (std::uint32_t p : *raw)
                origins.push_back(p / 2); // halves sit at positions 2i and 2i+1
            std::sort(origins.begin(), origins.end());
            origins.erase(std::unique(origins.begin(), origins.end()), origins.end());
            positions = std::move(origins);
        }
    }
    if (!positions)
        return AsatResult::no();

    std::vector<Clause> left;
    std::size_t next = 0;
    for (std::uint32_t i = 0; i < clauses.size(); ++i) {
        if (next < positions->size() && (*positions)[next] == i) {
            ++next;
            continue;
        }
        left.push_back(clauses[i]);
    }
    if (!detail::plain_sat(left))
        throw InternalError("deletion set fails verification");
    for (std::uint32_t &p : *positions)
        ++p;
    return AsatResult::found(std::move(*positions));
}

} // namespace a2sat
