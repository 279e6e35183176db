#pragma once

/// Brute-force reference implementations. Everything here is deliberately
/// independent of the production engines: satisfiability is decided by
/// assignment enumeration, deletion sets by subset enumeration, separators
/// and disjoint path families by explicit path enumeration over clause sets.
/// All entry points guard their input size and throw TooLargeError beyond it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"

namespace a2sat {

namespace detail {

inline std::vector<int> distinct_vars(std::span<const Clause> clauses) {
    std::vector<int> vars;
    for (const Clause &c : clauses) {
        vars.push_back(c.a().var());
        vars.push_back(c.b().var());
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

} // namespace detail

/// Satisfiability with respect to a forced literal set, by enumerating all
/// assignments over the variables occurring in the clauses. Forced literals
/// over other variables do not constrain anything.
inline bool brute_swrt(std::span<const Clause> clauses, const LitSet &forced) {
    std::vector<int> vars = detail::distinct_vars(clauses);
    if (vars.size() > 24)
        throw TooLargeError("brute satisfiability is limited to 24 variables");
    // forced literals whose variable occurs here must be picked as-is
    std::vector<std::pair<int, bool>> pins; // (var index, required sign)
    for (Lit m : forced.lits()) {
        auto it = std::lower_bound(vars.begin(), vars.end(), m.var());
        if (it != vars.end() && *it == m.var())
            pins.emplace_back(static_cast<int>(it - vars.begin()), m.positive());
    }
    const std::uint32_t total = 1u << vars.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        bool ok = true;
        for (auto [vi, sign] : pins)
            if (((mask >> vi & 1) != 0) != sign) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        auto lit_val = [&](Lit x) {
            auto it = std::lower_bound(vars.begin(), vars.end(), x.var());
            return ((mask >> (it - vars.begin()) & 1) != 0) == x.positive();
        };
        for (const Clause &c : clauses)
            if (!lit_val(c.a()) && !lit_val(c.b())) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    }
    return false;
}

inline bool brute_swrt(const Formula &f, const LitSet &forced) {
    return brute_swrt(f.clauses(), forced);
}

/// Smallest set of clause positions (by count, then lexicographic) whose
/// removal leaves the rest satisfiable w.r.t. the forced set, searching
/// subsets of size 0..max_k. Positions, not values: duplicate clauses in a
/// multiset input occupy distinct positions.
inline std::optional<std::vector<std::uint32_t>>
brute_min_deletion(std::span<const Clause> clauses, const LitSet &forced, int max_k) {
    const int m = static_cast<int>(clauses.size());
    if (m > 12)
        throw TooLargeError("brute deletion search is limited to 12 clauses");
    if (max_k < 0)
        return std::nullopt;
    std::vector<Clause> rest;
    for (int size = 0; size <= std::min(max_k, m); ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        do {
            rest.clear();
            std::size_t next = 0;
            for (int i = 0; i < m; ++i) {
                if (next < idx.size() && idx[next] == i) {
                    ++next;
                    continue;
                }
                rest.push_back(clauses[i]);
            }
            if (brute_swrt(rest, forced))
                return std::vector<std::uint32_t>(idx.begin(), idx.end());
        } while (detail::next_combination(idx, m));
    }
    return std::nullopt;
}

/// Smallest deletion set of positions without a budget. Exists whenever the
/// forced set itself is consistent, since deleting everything always works.
inline std::vector<std::uint32_t> brute_scs_positions(std::span<const Clause> clauses,
                                                      const LitSet &forced) {
    auto r = brute_min_deletion(clauses, forced, static_cast<int>(clauses.size()));
    if (!r)
        throw InternalError("unbounded deletion search failed");
    return *r;
}

/// A smallest clause set whose removal makes the rest of the formula
/// satisfiable w.r.t. l_set extended by the pivot (plain satisfiability
/// when the pivot is absent and l_set empty).
struct BruteScs {
    std::size_t size = 0;
    std::vector<Clause> witness;

    friend bool operator==(const BruteScs &, const BruteScs &) = default;
};

inline BruteScs brute_scs(const Formula &f, const LitSet &l_set,
                          std::optional<Lit> pivot) {
    LitSet forced = pivot ? l_set.with(*pivot) : l_set;
    auto positions = brute_scs_positions(f.clauses(), forced);
    BruteScs out;
    out.size = positions.size();
    for (std::uint32_t p : positions)
        out.witness.push_back(f.clauses()[p]);
    return out;
}

/// Exact separator and disjoint-path data between the negation of a source
/// literal set and a sink literal, over walks with pairwise distinct clauses.
struct BruteSeparation {
    int min_separator = 0;
    int max_disjoint_paths = 0;

    friend bool operator==(const BruteSeparation &, const BruteSeparation &) = default;
};

namespace detail {

/// Enumerates the clause sets of all paths (walks with distinct clauses)
/// from any of `starts` to `target` in the implication graph of `clauses`,
/// as bitmasks over clause positions. Memoized per (node, used-set) state.
class PathSets {
  public:
    PathSets(std::span<const Clause> clauses, std::span<const int> starts, int target)
        : target_(target) {
        for (std::uint32_t i = 0; i < clauses.size(); ++i) {
            const Clause &c = clauses[i];
            arcs_.push_back({c.a().neg().code(), c.b().code(), i});
            if (!c.unit())
                arcs_.push_back({c.b().neg().code(), c.a().code(), i});
        }
        std::sort(arcs_.begin(), arcs_.end(),
                  [](const A &x, const A &y) { return x.tail < y.tail; });
        std::set<std::uint32_t> found;
        for (int s : starts)
            for (std::uint32_t d : deltas(s, 0))
                found.insert(d);
        sets_.assign(found.begin(), found.end());
    }

    const std::vector<std::uint32_t> &sets() const { return sets_; }

  private:
    struct A {
        int tail, head;
        std::uint32_t clause;
    };

    const std::vector<std::uint32_t> &deltas(int node, std::uint32_t used) {
        auto key = std::pair<int, std::uint32_t>(node, used);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        std::set<std::uint32_t> out;
        auto lo = std::lower_bound(arcs_.begin(), arcs_.end(), node,
                                   [](const A &a, int n) { return a.tail < n; });
        for (auto a = lo; a != arcs_.end() && a->tail == node; ++a) {
            if (used >> a->clause & 1)
                continue;
            std::uint32_t bit = 1u << a->clause;
            if (a->head == target_) {
                out.insert(bit);
                continue;
            }
            for (std::uint32_t d : deltas(a->head, used | bit))
                out.insert(bit | d);
        }
        if ((work_ += out.size() + 1) > 5'000'000)
            throw TooLargeError("path enumeration blow-up");
        return memo_.emplace(key, std::vector<std::uint32_t>(out.begin(), out.end()))
            .first->second;
    }

    int target_;
    std::vector<A> arcs_;
    std::vector<std::uint32_t> sets_;
    std::map<std::pair<int, std::uint32_t>, std::vector<std::uint32_t>> memo_;
    std::size_t work_ = 0;
};

} // namespace detail

/// Paths here are walks with pairwise distinct clauses that start with a
/// literal of `sources` and end in `sink`; in the implication graph they run
/// from the negations of `sources` to the node of `sink`. Exhaustive:
/// min_separator is the smallest clause set meeting every path,
/// max_disjoint_paths the largest family of pairwise clause-disjoint paths.
inline BruteSeparation brute_separator(const Formula &f, const LitSet &sources, Lit sink) {
    const int m = static_cast<int>(f.size());
    if (m > 10)
        throw TooLargeError("brute separation is limited to 10 clauses");
    std::vector<int> starts;
    for (Lit s : sources.lits())
        starts.push_back(s.neg().code());
    detail::PathSets ps(f.clauses(), starts, sink.code());
    const auto &paths = ps.sets();
    BruteSeparation out;
    if (paths.empty())
        return out;

    // smallest hitting set of the path family
    bool hit_found = false;
    for (int size = 0; size <= m && !hit_found; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        do {
            std::uint32_t s_mask = 0;
            for (int i : idx)
                s_mask |= 1u << i;
            bool hits_all = true;
            for (std::uint32_t q : paths)
                if ((q & s_mask) == 0) {
                    hits_all = false;
                    break;
                }
            if (hits_all) {
                out.min_separator = size;
                hit_found = true;
                break;
            }
        } while (detail::next_combination(idx, m));
    }
    if (!hit_found)
        throw InternalError("hitting-set search failed");

    // largest packing of pairwise disjoint path sets
    std::vector<signed char> memo(std::size_t{1} << m, -1);
    auto pack = [&](auto &&self, std::uint32_t avail) -> int {
        if (memo[avail] >= 0)
            return memo[avail];
        int best = 0;
        for (std::uint32_t q : paths)
            if ((q & avail) == q)
                best = std::max(best, 1 + self(self, avail & ~q));
        return memo[avail] = static_cast<signed char>(best);
    };
    out.max_disjoint_paths = pack(pack, (m == 32 ? ~0u : (1u << m) - 1));
    return out;
}

} // namespace a2sat
