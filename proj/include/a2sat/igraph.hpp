#pragma once

/// Implication graph over literal nodes, walks through a formula, and the
/// correspondence between formula walks and graph paths.
///
/// A walk is a non-empty clause sequence where each occurrence designates a
/// first and a second literal and consecutive steps chain: the second literal
/// of a step is the negation of the first literal of the next. A path is a
/// walk whose clauses are pairwise distinct. A walk from l' to l'' in the
/// formula corresponds to a directed path from node -l' to node l'' in the
/// implication graph, arc by arc.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"

namespace a2sat {

/// A directed implication-graph arc. The arc (t, h) represents the clause
/// (-t v h); `clause` indexes the owning formula's clause list.
struct Arc {
    int tail = 0;
    int head = 0;
    std::uint32_t clause = 0;

    friend constexpr auto operator<=>(const Arc &, const Arc &) = default;
};

/// One walk step: a clause occurrence with its role split.
struct WalkStep {
    std::uint32_t clause = 0;
    Lit first;
    Lit second;

    friend constexpr bool operator==(const WalkStep &, const WalkStep &) = default;
};

/// A non-empty chained sequence of walk steps.
class Walk {
  public:
    explicit Walk(std::vector<WalkStep> steps) : steps_(std::move(steps)) {
        if (steps_.empty())
            throw Error("walk must be non-empty");
        for (std::size_t i = 1; i < steps_.size(); ++i)
            if (steps_[i].first != steps_[i - 1].second.neg())
                throw Error("walk steps do not chain at position " + std::to_string(i));
    }

    std::span<const WalkStep> steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }

    Lit first_lit() const { return steps_.front().first; }
    Lit last_lit() const { return steps_.back().second; }

    /// True iff the clauses of the walk are pairwise distinct.
    bool is_path() const {
        std::vector<std::uint32_t> ids;
        ids.reserve(steps_.size());
        for (const WalkStep &s : steps_)
            ids.push_back(s.clause);
        std::sort(ids.begin(), ids.end());
        return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
    }

    friend bool operator==(const Walk &, const Walk &) = default;

  private:
    std::vector<WalkStep> steps_;
};

/// Reversal: reverse the step order and swap each step's roles.
inline Walk reverse(const Walk &w) {
    std::vector<WalkStep> steps(w.steps().rbegin(), w.steps().rend());
    for (WalkStep &s : steps)
        std::swap(s.first, s.second);
    return Walk(std::move(steps));
}

/// The implication graph of a formula: one node per literal of a variable
/// universe covering the formula (plus requested extra variables, which stay
/// isolated), one arc per clause orientation. The two arcs of a unit clause
/// coincide and are stored once. Adjacency is sorted by (tail, head, clause)
/// so traversals break ties toward lower node ids.
class ImplGraph {
  public:
    explicit ImplGraph(const Formula &f, std::span<const int> extra_vars = {})
        : clauses_(f.clauses().begin(), f.clauses().end()) {
        int vl = f.var_limit();
        for (int v : extra_vars)
            vl = std::max(vl, v + 1);
        var_limit_ = vl;
        arcs_.reserve(2 * clauses_.size());
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            const Clause &c = clauses_[i];
            arcs_.push_back({c.a().neg().code(), c.b().code(), i});
            if (!c.unit())
                arcs_.push_back({c.b().neg().code(), c.a().code(), i});
        }
        std::sort(arcs_.begin(), arcs_.end());
        off_.assign(node_count() + 1, 0);
        for (const Arc &a : arcs_)
            ++off_[a.tail + 1];
        for (int i = 0; i < node_count(); ++i)
            off_[i + 1] += off_[i];
    }

    int var_limit() const { return var_limit_; }
    int node_count() const { return 2 * var_limit_; }
    std::size_t arc_count() const { return arcs_.size(); }

    std::span<const Arc> arcs() const { return arcs_; }

    std::span<const Arc> arcs_from(int node) const {
        return {arcs_.data() + off_[node], arcs_.data() + off_[node + 1]};
    }

    std::span<const Clause> clauses() const { return clauses_; }
    const Clause &clause(std::uint32_t idx) const { return clauses_[idx]; }

  private:
    std::vector<Clause> clauses_;
    std::vector<Arc> arcs_; // sorted by (tail, head, clause)
    std::vector<std::size_t> off_;
    int var_limit_ = 0;
};

inline ImplGraph build_igraph(const Formula &f, std::span<const int> extra_vars = {}) {
    return ImplGraph(f, extra_vars);
}

/// Map a walk to its arc image: step (first, second) becomes arc
/// (-first, second) labelled with the same clause.
inline std::vector<Arc> f_walk_to_d_walk(const Walk &w) {
    std::vector<Arc> out;
    out.reserve(w.size());
    for (const WalkStep &s : w.steps())
        out.push_back({s.first.neg().code(), s.second.code(), s.clause});
    return out;
}

/// Inverse map: arc (t, h) becomes the step with first literal -t and second
/// literal h of the arc's clause.
inline Walk d_path_to_f_walk(std::span<const Arc> arcs) {
    std::vector<WalkStep> steps;
    steps.reserve(arcs.size());
    for (const Arc &a : arcs)
        steps.push_back({a.clause, Lit::from_code(a.tail).neg(), Lit::from_code(a.head)});
    return Walk(std::move(steps));
}

namespace detail {

/// Shortest non-empty arc sequence from any of `starts` to `target`,
/// breadth-first with ties resolved toward lower node ids. A start equal to
/// the target is not a hit by itself; the target must be entered via an arc.
inline std::optional<std::vector<Arc>> bfs_arc_path(const ImplGraph &g,
                                                    std::vector<int> starts, int target) {
    if (target < 0 || target >= g.node_count())
        return std::nullopt;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::vector<char> seen(g.node_count(), 0);
    std::vector<Arc> via(g.node_count());
    std::vector<char> has_via(g.node_count(), 0);
    std::vector<int> queue;
    for (int s : starts) {
        if (s < 0 || s >= g.node_count())
            continue;
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    auto chain_from = [&](int node, const Arc &last) {
        std::vector<Arc> path{last};
        int cur = node;
        while (has_via[cur]) {
            path.push_back(via[cur]);
            cur = via[cur].tail;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (const Arc &a : g.arcs_from(u)) {
            if (a.head == target)
                return chain_from(u, a);
            if (!seen[a.head]) {
                seen[a.head] = 1;
                via[a.head] = a;
                has_via[a.head] = 1;
                queue.push_back(a.head);
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Shortest walk whose first literal lies in `sources` and whose last
/// literal is `target`, or nullopt when none exists.
inline std::optional<Walk> shortest_walk(const ImplGraph &g, const LitSet &sources, Lit target) {
    std::vector<int> starts;
    starts.reserve(sources.size());
    for (Lit s : sources.lits())
        starts.push_back(s.neg().code());
    auto arcs = detail::bfs_arc_path(g, std::move(starts), target.code());
    if (!arcs)
        return std::nullopt;
    return d_path_to_f_walk(*arcs);
}

/// Shortest walk from -pivot to -pivot, or nullopt when none exists.
inline std::optional<Walk> find_self_walk(const ImplGraph &g, Lit pivot) {
    auto arcs = detail::bfs_arc_path(g, {pivot.code()}, pivot.neg().code());
    if (!arcs)
        return std::nullopt;
    return d_path_to_f_walk(*arcs);
}

/// Reduce a walk to a path over a subset of its clauses with the same
/// endpoints, by repeatedly cutting the segment between two occurrences of
/// the same clause. Sound when every clause repeats with the same role
/// split, which holds for walks leaving the complement of a literal set the
/// formula is satisfiable with respect to; a repeat with conflicting roles
/// throws PreconditionError.
inline Walk extract_path(const Walk &w) {
    std::vector<WalkStep> steps(w.steps().begin(), w.steps().end());
    for (;;) {
        std::size_t dup_i = steps.size(), dup_j = steps.size();
        for (std::size_t j = 0; j < steps.size() && dup_j == steps.size(); ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (steps[i].clause == steps[j].clause) {
                    dup_i = i;
                    dup_j = j;
                    break;
                }
        if (dup_j == steps.size())
            return Walk(std::move(steps));
        if (steps[dup_i].first != steps[dup_j].first)
            throw PreconditionError("walk repeats clause " +
                                    std::to_string(steps[dup_i].clause) +
                                    " with conflicting roles");
        if (dup_i == 0) {
            steps.erase(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(dup_j));
        } else if (dup_j == steps.size() - 1) {
            steps.resize(dup_i + 1);
        } else {
            steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(dup_i) + 1,
                        steps.begin() + static_cast<std::ptrdiff_t>(dup_j) + 1);
        }
    }
}

} // namespace a2sat
