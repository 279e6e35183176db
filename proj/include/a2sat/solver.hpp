#pragma once

/// Branching search for a smallest-enough culprit set: a set of at most k
/// clauses whose removal makes the formula satisfiable with respect to the
/// annotation set extended by the pivot literal.
///
/// Each node first tries the cheap exits (already satisfiable, budget
/// exhausted, whole formula affordable, separator lower bound above budget),
/// then selects a clause on a witness walk and branches on the narrow
/// set of alternatives that selection allows: remove the clause, or commit
/// one of its literals into the annotation set. Committing a neutral literal
/// (one that keeps the instance valid and the separator size unchanged)
/// needs no fallback branch.
///
/// Instrumentation tracks two measures: alpha = |Var(F) \ Var(L)| + k, which
/// strictly decreases along every edge and bounds the tree height, and
/// beta = max(0, 2k - SepSize), which never increases and strictly decreases
/// below every node that is not a lone annotation extension. They imply the
/// asserted bounds leaves^2 <= 5^beta(root) and leaves <= 5^k.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"
#include "a2sat/igraph.hpp"
#include "a2sat/sat.hpp"
#include "a2sat/separation.hpp"

namespace a2sat {

/// An annotated deletion instance: find at most k clauses of f to delete so
/// that the rest is satisfiable w.r.t. l extended by the pivot.
struct AslasatInstance {
    Formula f;
    LitSet l;
    Lit pivot;
    int k = 0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    int max_depth = 0;
    int root_alpha = 0;
    int root_beta = 0;
    int k = 0;
};

struct SolveOptions {
    /// Recursion depth at which the search aborts with an error. The tree
    /// height is bounded by root alpha, so hitting this indicates a bug.
    int depth_guard = 1 << 16;
    /// Recompute the alpha/beta measures at every node and assert their
    /// decrease laws. Expensive; meant for tests.
    bool verify_measures = false;
};

/// Either a culprit clause set or the verdict that none of size <= k exists.
class CsResult {
  public:
    static CsResult found(std::vector<Clause> clauses) {
        CsResult r;
        r.set_ = std::move(clauses);
        return r;
    }

    static CsResult no() { return CsResult(); }

    bool is_found() const { return set_.has_value(); }

    const std::vector<Clause> &clauses() const {
        if (!set_)
            throw Error("no culprit set to read");
        return *set_;
    }

    friend bool operator==(const CsResult &, const CsResult &) = default;

  private:
    std::optional<std::vector<Clause>> set_;
};

/// The clause picked for branching, with its role split. `from_l_walk` tells
/// whether it heads a shortest walk from the negated annotation set to the
/// negated pivot (first literal then lies in that negated set) or lies on a
/// walk from the negated pivot to itself with both literals inside a
/// satisfying assignment.
struct SelectedClause {
    Clause clause;
    Lit first;
    Lit second;
    bool from_l_walk = false;

    friend bool operator==(const SelectedClause &, const SelectedClause &) = default;
};

namespace detail {

class Searcher {
  public:
    Searcher(const Formula &f, const LitSet &l, Lit pivot, int k, const SolveOptions &opts)
        : opts_(opts), pivot_(pivot), k0_(k) {
        clauses_.assign(f.clauses().begin(), f.clauses().end());
        int vl = std::max({f.var_limit(), l.max_var() + 1, pivot.var() + 1});
        vlimit_ = vl;
        nodes_n_ = 2 * vl;
        alive_.assign(clauses_.size(), 1);
        alive_n_ = static_cast<int>(clauses_.size());
        lstate_.assign(vlimit_, 0);
        for (Lit m : l.lits())
            push_l(m);
    }

    std::optional<std::vector<std::uint32_t>> run() {
        rebuild_arcs();
        stats_.k = k0_;
        stats_.root_alpha = alpha_now(k0_);
        stats_.root_beta = beta_now(k0_);
        auto hit = search(k0_, 0, 0, 0, false, false);
        if (hit)
            std::sort(hit->begin(), hit->end());
        check_bounds();
        return hit;
    }

    /// Clause selection alone, for callers that want the branching witness
    /// without searching. Requires the instance to be unsatisfiable w.r.t.
    /// the annotation set extended by the pivot.
    SelectedClause select_only() {
        rebuild_arcs();
        if (swrt_now(true))
            throw PreconditionError("instance is satisfiable w.r.t. the extended set; "
                                    "no clause to select");
        Selection s = select_now();
        return {clauses_[s.clause], s.l1, s.l2, s.via_l_walk};
    }

    const SearchStats &stats() const { return stats_; }

  private:
    struct Selection {
        std::uint32_t clause = 0;
        Lit l1, l2;
        bool via_l_walk = false;
    };

    // ---- annotation-set trail ----

    void push_l(Lit x) {
        if (lstate_[x.var()] != 0)
            throw InternalError("annotation extension revisits variable x" +
                                std::to_string(x.var()));
        lstate_[x.var()] = x.positive() ? 1 : 2;
        ltrail_.push_back(x);
    }

    void pop_l() {
        lstate_[ltrail_.back().var()] = 0;
        ltrail_.pop_back();
    }

    bool l_contains(Lit x) const { return lstate_[x.var()] == (x.positive() ? 1 : 2); }

    /// x belongs to the negation of (annotation set + pivot).
    bool in_neg_extended(Lit x) const { return l_contains(x.neg()) || x.neg() == pivot_; }

    std::vector<int> l_nodes() const {
        std::vector<int> out;
        out.reserve(ltrail_.size());
        for (Lit m : ltrail_)
            out.push_back(m.code());
        std::sort(out.begin(), out.end());
        return out;
    }

    // ---- graph scaffolding over the alive clause set ----

    void rebuild_arcs() {
        arcs_.clear();
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            if (!alive_[i])
                continue;
            const Clause &c = clauses_[i];
            arcs_.push_back({c.a().neg().code(), c.b().code(), i});
            if (!c.unit())
                arcs_.push_back({c.b().neg().code(), c.a().code(), i});
        }
        std::sort(arcs_.begin(), arcs_.end());
        off_.assign(nodes_n_ + 1, 0);
        for (const Arc &a : arcs_)
            ++off_[a.tail + 1];
        for (int i = 0; i < nodes_n_; ++i)
            off_[i + 1] += off_[i];
    }

    bool swrt_now(bool include_pivot) {
        twosat_.reset(vlimit_);
        for (std::uint32_t i = 0; i < clauses_.size(); ++i)
            if (alive_[i])
                twosat_.add_clause(clauses_[i]);
        for (Lit m : ltrail_)
            twosat_.add_unit(m);
        if (include_pivot)
            twosat_.add_unit(pivot_);
        return twosat_.run();
    }

    int flow_bounded(std::span<const int> sources, int sink, int bound) {
        flow_.reset(nodes_n_);
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            if (!alive_[i])
                continue;
            const Clause &c = clauses_[i];
            flow_.add_arc(c.a().neg().code(), c.b().code());
            if (!c.unit())
                flow_.add_arc(c.b().neg().code(), c.a().code());
        }
        return flow_.run_bounded(sources, sink, bound);
    }

    std::optional<std::vector<Arc>> bfs_path(std::vector<int> starts, int target) {
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
        seen_.assign(nodes_n_, 0);
        via_.assign(nodes_n_, Arc{});
        has_via_.assign(nodes_n_, 0);
        queue_.clear();
        for (int s : starts)
            if (!seen_[s]) {
                seen_[s] = 1;
                queue_.push_back(s);
            }
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            int u = queue_[qi];
            for (std::size_t e = off_[u]; e < off_[u + 1]; ++e) {
                const Arc &a = arcs_[e];
                if (a.head == target) {
                    std::vector<Arc> path{a};
                    int cur = u;
                    while (has_via_[cur]) {
                        path.push_back(via_[cur]);
                        cur = via_[cur].tail;
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                if (!seen_[a.head]) {
                    seen_[a.head] = 1;
                    via_[a.head] = a;
                    has_via_[a.head] = 1;
                    queue_.push_back(a.head);
                }
            }
        }
        return std::nullopt;
    }

    // ---- measures ----

    int alpha_now(int k) {
        ++epoch_;
        if (var_epoch_.size() < static_cast<std::size_t>(vlimit_))
            var_epoch_.assign(vlimit_, 0);
        int fresh = 0;
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            if (!alive_[i])
                continue;
            for (Lit x : {clauses_[i].a(), clauses_[i].b()}) {
                int v = x.var();
                if (var_epoch_[v] != epoch_) {
                    var_epoch_[v] = epoch_;
                    if (lstate_[v] == 0)
                        ++fresh;
                }
            }
        }
        return fresh + k;
    }

    int beta_now(int k) {
        int sep = flow_bounded(l_nodes(), pivot_.neg().code(), 2 * k);
        return std::max(0, 2 * k - sep);
    }

    // ---- clause selection ----

    Selection select_now() {
        // a shortest walk from the negated annotation set to the negated
        // pivot, if one exists, donates its first clause
        if (auto arcs = bfs_path(l_nodes(), pivot_.neg().code())) {
            const Arc &head = arcs->front();
            Lit l1 = Lit::from_code(head.tail).neg();
            Lit l2 = Lit::from_code(head.head);
            // a shortest walk cannot start over an annotated variable twice:
            // the second literal's variable is fresh
            if (lstate_[l2.var()] != 0)
                throw InternalError("selection invariant violated");
            return {head.clause, l1, l2, true};
        }
        // otherwise some walk from the negated pivot to itself must exist,
        // and it carries a clause both of whose literals lie in a satisfying
        // assignment that respects the annotation set
        auto arcs = bfs_path({pivot_.code()}, pivot_.neg().code());
        if (!arcs)
            throw InternalError("unsatisfiable instance has no witness walk");
        if (!swrt_now(false))
            throw InternalError("instance lost satisfiability w.r.t. its annotation set");
        for (const Arc &a : *arcs) {
            const Clause &c = clauses_[a.clause];
            if (twosat_.lit_true(c.a()) && twosat_.lit_true(c.b()))
                return {a.clause, c.a(), c.b(), false};
        }
        throw InternalError("no clause on the witness walk is fully satisfied");
    }

    // ---- neutrality ----

    bool neutral_now(Lit cand, int sep_base) {
        if (cand.var() == pivot_.var() || lstate_[cand.var()] != 0)
            throw InternalError("branch candidate clashes with the instance");
        push_l(cand);
        bool valid = swrt_now(false);
        if (!valid) {
            pop_l();
            throw InternalError("branch candidate breaks satisfiability w.r.t. the set");
        }
        int sep = flow_bounded(l_nodes(), pivot_.neg().code(), sep_base);
        pop_l();
        return sep == sep_base;
    }

    // ---- verification ----

    void verify_found(const std::vector<std::uint32_t> &set) {
        for (std::uint32_t i : set) {
            if (!alive_[i])
                throw InternalError("culprit set references a removed clause");
            alive_[i] = 0;
        }
        bool ok = swrt_now(true);
        for (std::uint32_t i : set)
            alive_[i] = 1;
        if (!ok)
            throw InternalError("culprit set fails verification");
    }

    void check_bounds() const {
        auto pow5_fits = [](int e) { return e < 28; }; // 5^28 > 2^64
        if (stats_.max_depth > stats_.root_alpha)
            throw InternalError("search depth exceeded the alpha bound");
        if (pow5_fits(stats_.k)) {
            std::uint64_t p = 1;
            for (int i = 0; i < stats_.k; ++i)
                p *= 5;
            if (stats_.leaves > p)
                throw InternalError("leaf count exceeded the 5^k bound");
        }
        if (stats_.root_beta < 56) {
            unsigned __int128 p = 1;
            for (int i = 0; i < stats_.root_beta; ++i)
                p *= 5;
            unsigned __int128 l2 = static_cast<unsigned __int128>(stats_.leaves) * stats_.leaves;
            if (l2 > p)
                throw InternalError("leaf count exceeded the separator-measure bound");
        }
    }

    // ---- the branching search ----

    std::optional<std::vector<std::uint32_t>> search(int k, int depth, int parent_alpha,
                                                     int parent_beta, bool strict_beta,
                                                     bool have_parent) {
        ++stats_.nodes;
        stats_.max_depth = std::max(stats_.max_depth, depth);
        if (depth > opts_.depth_guard)
            throw Error("search depth guard (" + std::to_string(opts_.depth_guard) +
                        ") exceeded; aborting");
        if (opts_.verify_measures) {
            rebuild_arcs();
            int a = alpha_now(k);
            int b = beta_now(k);
            if (have_parent) {
                if (a >= parent_alpha)
                    throw InternalError("alpha measure failed to decrease");
                if (b > parent_beta || (strict_beta && b >= parent_beta))
                    throw InternalError("beta measure failed to decrease");
            }
        }

        // already satisfiable with the pivot committed: nothing to delete
        if (swrt_now(true)) {
            ++stats_.leaves;
            return std::vector<std::uint32_t>{};
        }
        // out of budget
        if (k == 0) {
            ++stats_.leaves;
            return std::nullopt;
        }
        // the whole formula fits the budget
        if (k >= alive_n_) {
            ++stats_.leaves;
            std::vector<std::uint32_t> all;
            all.reserve(alive_n_);
            for (std::uint32_t i = 0; i < clauses_.size(); ++i)
                if (alive_[i])
                    all.push_back(i);
            verify_found(all);
            return all;
        }
        rebuild_arcs();
        // every culprit set is at least as large as a minimum separator
        // between the negated annotation set and the negated pivot
        int sep = flow_bounded(l_nodes(), pivot_.neg().code(), k);
        if (sep > k) {
            ++stats_.leaves;
            return std::nullopt;
        }

        const int my_alpha = opts_.verify_measures ? alpha_now(k) : 0;
        const int my_beta = opts_.verify_measures ? beta_now(k) : 0;

        Selection s = select_now();
        const bool m1 = in_neg_extended(s.l1);
        const bool m2 = in_neg_extended(s.l2);

        auto remove_branch = [&](bool strict) {
            alive_[s.clause] = 0;
            --alive_n_;
            auto sub = search(k - 1, depth + 1, my_alpha, my_beta, strict, true);
            alive_[s.clause] = 1;
            ++alive_n_;
            if (sub)
                sub->push_back(s.clause);
            return sub;
        };
        auto extend_branch = [&](Lit x, bool strict) {
            push_l(x);
            auto sub = search(k, depth + 1, my_alpha, my_beta, strict, true);
            pop_l();
            return sub;
        };

        std::optional<std::vector<std::uint32_t>> hit;
        if (m1 && m2) {
            // both literals already negated by the extended set: the clause
            // can only be deleted
            hit = remove_branch(true);
        } else if (!m1 && !m2) {
            // full three-way branch: commit either literal, or delete
            hit = extend_branch(s.l1, true);
            if (!hit && s.l2 != s.l1)
                hit = extend_branch(s.l2, true);
            if (!hit)
                hit = remove_branch(true);
        } else {
            Lit cand = m1 ? s.l2 : s.l1;
            if (neutral_now(cand, sep)) {
                // committing a neutral literal costs nothing; no fallback
                hit = extend_branch(cand, false);
            } else {
                hit = extend_branch(cand, true);
                if (!hit)
                    hit = remove_branch(true);
            }
        }
        if (hit)
            verify_found(*hit);
        return hit;
    }

    SolveOptions opts_;
    Lit pivot_;
    int k0_ = 0;
    int vlimit_ = 0;
    int nodes_n_ = 0;
    std::vector<Clause> clauses_;
    std::vector<char> alive_;
    int alive_n_ = 0;
    std::vector<signed char> lstate_; // 0 absent, 1 positive member, 2 negative member
    std::vector<Lit> ltrail_;
    SearchStats stats_;

    TwoSat twosat_;
    MaxFlow flow_;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> off_;
    std::vector<char> seen_, has_via_;
    std::vector<Arc> via_;
    std::vector<int> queue_;
    std::vector<int> var_epoch_;
    int epoch_ = 0;
};

} // namespace detail

/// Pick the branching clause for an annotated instance whose extended set is
/// not yet satisfiable. Deterministic; independent of any deletion budget.
inline SelectedClause select_clause(const Formula &f, const LitSet &l_set, Lit pivot) {
    InstanceCheck chk = validate_aslasat(f, l_set, pivot);
    if (chk != InstanceCheck::ok)
        throw InvalidInstanceError(chk);
    detail::Searcher s(f, l_set, pivot, 0, SolveOptions{});
    return s.select_only();
}

/// Find at most k clauses of f whose removal makes the rest satisfiable
/// w.r.t. l_set extended by the pivot, or report that none exist.
/// The returned clauses are in formula order. Deterministic.
inline CsResult find_cs(const Formula &f, const LitSet &l_set, Lit pivot, int k,
                        SearchStats *stats = nullptr, const SolveOptions &opts = {}) {
    if (k < 0)
        throw PreconditionError("deletion budget must be non-negative");
    InstanceCheck chk = validate_aslasat(f, l_set, pivot);
    if (chk != InstanceCheck::ok)
        throw InvalidInstanceError(chk);
    detail::Searcher s(f, l_set, pivot, k, opts);
    auto hit = s.run();
    if (stats)
        *stats = s.stats();
    if (!hit)
        return CsResult::no();
    if (hit->size() > static_cast<std::size_t>(k))
        throw InternalError("culprit set exceeds the budget");
    std::vector<Clause> out;
    out.reserve(hit->size());
    for (std::uint32_t i : *hit)
        out.push_back(f.clauses()[i]);
    return CsResult::found(std::move(out));
}

inline CsResult find_cs(const AslasatInstance &inst, SearchStats *stats = nullptr,
                        const SolveOptions &opts = {}) {
    return find_cs(inst.f, inst.l, inst.pivot, inst.k, stats, opts);
}

} // namespace a2sat
