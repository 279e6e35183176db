#pragma once

/// Bounded clause-separator sizes via unit-capacity maximum flow on the
/// implication graph, and the neutrality test used to collapse branches.
///
/// For a formula satisfiable with respect to the negations of `sources`, the
/// maximum number of clause-disjoint walks from `sources` to `sink` equals
/// the maximum arc-disjoint path packing in the implication graph, which
/// equals the minimum arc cut, which equals the minimum clause separator.
/// That equality chain justifies computing separator sizes by augmenting
/// paths.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"
#include "a2sat/sat.hpp"

namespace a2sat {

/// Result of a bounded separator-size computation: either the exact value
/// (which is <= bound) or the fact that it exceeds the bound.
class SeparatorSize {
  public:
    static SeparatorSize exact(int value, int bound) {
        SeparatorSize s;
        s.bound_ = bound;
        s.value_ = value;
        return s;
    }

    static SeparatorSize exceeds(int bound) {
        SeparatorSize s;
        s.bound_ = bound;
        return s;
    }

    bool is_exact() const { return value_.has_value(); }
    bool exceeds_bound() const { return !value_.has_value(); }
    int bound() const { return bound_; }

    int value() const {
        if (!value_)
            throw Error("separator size exceeds bound " + std::to_string(bound_));
        return *value_;
    }

    friend bool operator==(const SeparatorSize &, const SeparatorSize &) = default;

  private:
    int bound_ = 0;
    std::optional<int> value_;
};

namespace detail {

/// Reusable unit-capacity max-flow engine (shortest augmenting paths).
/// Determinism: adjacency is iterated in arc insertion order.
class MaxFlow {
  public:
    void reset(int node_count) {
        n_ = node_count;
        head_.assign(n_, -1);
        to_.clear();
        cap_.clear();
        next_.clear();
    }

    void add_arc(int u, int v) {
        push_half(u, v, 1);
        push_half(v, u, 0); // residual
    }

    /// Augment until either no path remains or the flow reaches bound + 1.
    /// Returns min(max-flow, bound + 1).
    int run_bounded(std::span<const int> sources, int sink, int bound) {
        int flow = 0;
        while (flow <= bound) {
            if (!augment(sources, sink))
                break;
            ++flow;
        }
        return flow;
    }

  private:
    void push_half(int u, int v, int c) {
        to_.push_back(v);
        cap_.push_back(c);
        next_.push_back(head_[u]);
        head_[u] = static_cast<int>(to_.size()) - 1;
    }

    bool augment(std::span<const int> sources, int sink) {
        par_arc_.assign(n_, -1);
        seen_.assign(n_, 0);
        queue_.clear();
        for (int s : sources) {
            if (!seen_[s]) {
                seen_[s] = 1;
                queue_.push_back(s);
            }
        }
        int hit = -1;
        for (std::size_t qi = 0; qi < queue_.size() && hit < 0; ++qi) {
            int u = queue_[qi];
            for (int e = head_[u]; e >= 0; e = next_[e]) {
                if (cap_[e] <= 0 || seen_[to_[e]])
                    continue;
                seen_[to_[e]] = 1;
                par_arc_[to_[e]] = e;
                if (to_[e] == sink) {
                    hit = sink;
                    break;
                }
                queue_.push_back(to_[e]);
            }
        }
        if (hit < 0)
            return false;
        for (int v = sink; par_arc_[v] >= 0;) {
            int e = par_arc_[v];
            cap_[e] -= 1;
            cap_[e ^ 1] += 1;
            v = to_[e ^ 1];
        }
        return true;
    }

    int n_ = 0;
    std::vector<int> head_, to_, cap_, next_;
    std::vector<int> par_arc_, queue_;
    std::vector<char> seen_;
};

inline constexpr bool kDebugChecks =
#ifdef NDEBUG
    false;
#else
    true;
#endif

} // namespace detail

/// Size of a minimum clause set whose removal leaves no walk from `sources`
/// to `sink`, computed exactly when it is <= bound.
///
/// Requires Var(sink) not to occur in `sources`. Callers must further
/// guarantee that `f` is satisfiable with respect to the negations of
/// `sources`; that guarantee is what ties the flow value to the separator
/// size, and is validated only when `check_preconditions` is set (the
/// default in debug builds).
inline SeparatorSize sep_size_bounded(const Formula &f, const LitSet &sources, Lit sink,
                                      int bound,
                                      bool check_preconditions = detail::kDebugChecks) {
    if (bound < 0)
        throw PreconditionError("separator bound must be non-negative");
    if (sources.contains_var(sink.var()))
        throw PreconditionError("sink variable occurs among the sources");
    if (check_preconditions && !swrt(f, sources.negated()))
        throw PreconditionError("formula is not satisfiable w.r.t. the negated sources");

    int vl = std::max({f.var_limit(), sources.max_var() + 1, sink.var() + 1});
    detail::MaxFlow flow;
    flow.reset(2 * vl);
    for (const Clause &c : f.clauses()) {
        flow.add_arc(c.a().neg().code(), c.b().code());
        if (!c.unit())
            flow.add_arc(c.b().neg().code(), c.a().code());
    }
    std::vector<int> starts;
    starts.reserve(sources.size());
    for (Lit s : sources.lits())
        starts.push_back(s.neg().code());
    int value = flow.run_bounded(starts, sink.code(), bound);
    if (value > bound)
        return SeparatorSize::exceeds(bound);
    return SeparatorSize::exact(value, bound);
}

/// A candidate literal is neutral for the instance (f, l_set, pivot) when
/// adding it to the literal set keeps the instance valid and leaves the
/// minimum separator between the negated literal set and the negated pivot
/// unchanged. Extending the literal set by a neutral literal never increases
/// the size of a smallest culprit set, so such extensions need no fallback
/// branch.
///
/// Both separator sizes must be <= bound for the comparison to be decided;
/// the bounded computation throws PreconditionError otherwise.
inline bool is_neutral(const Formula &f, const LitSet &l_set, Lit pivot, Lit candidate,
                       int bound) {
    if (l_set.contains(candidate.neg()))
        return false;
    if (validate_aslasat(f, l_set.with(candidate), pivot) != InstanceCheck::ok)
        return false;
    SeparatorSize base = sep_size_bounded(f, l_set.negated(), pivot.neg(), bound);
    if (!base.is_exact())
        throw PreconditionError("separator size exceeds the neutrality bound");
    SeparatorSize extended = sep_size_bounded(f, l_set.with(candidate).negated(), pivot.neg(),
                                              base.value());
    return extended.is_exact() && extended.value() == base.value();
}

} // namespace a2sat
