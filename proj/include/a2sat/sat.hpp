#pragma once

/// Satisfiability with respect to a literal set, via strongly connected
/// components of the implication graph, plus deterministic model extraction
/// and instance validation.

#include <optional>
#include <span>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"

namespace a2sat {
namespace detail {

/// Reusable two-literal-clause satisfiability engine.
///
/// Nodes are literal codes over [0, 2*var_limit). Each two-variable clause
/// contributes two implication arcs, a unit clause one. Literal-set members
/// are forced through unit arcs. Tarjan's algorithm emits components in
/// reverse topological order, which drives the model extraction rule: a
/// literal is chosen true iff its component is emitted before the component
/// of its negation.
class TwoSat {
  public:
    void reset(int var_limit) {
        vlimit_ = var_limit;
        n_ = 2 * var_limit;
        tails_.clear();
        heads_.clear();
    }

    void add_clause(const Clause &c) {
        // (a v b) yields arcs -a -> b and -b -> a; they coincide for units
        add_arc(c.a().neg().code(), c.b().code());
        if (!c.unit())
            add_arc(c.b().neg().code(), c.a().code());
    }

    /// Force `l` true: arc -l -> l.
    void add_unit(Lit l) { add_arc(l.neg().code(), l.code()); }

    /// Returns false iff some variable has both its literals in one
    /// component. After a true return, lit_true() reads off a model.
    bool run() {
        build_adjacency();
        tarjan();
        for (int v = 0; v < vlimit_; ++v)
            if (comp_[2 * v] == comp_[2 * v + 1])
                return false;
        return true;
    }

    bool lit_true(Lit l) const { return comp_[l.code()] < comp_[l.neg().code()]; }

  private:
    void add_arc(int tail, int head) {
        tails_.push_back(tail);
        heads_.push_back(head);
    }

    void build_adjacency() {
        off_.assign(n_ + 1, 0);
        for (int t : tails_)
            ++off_[t + 1];
        for (int i = 0; i < n_; ++i)
            off_[i + 1] += off_[i];
        adj_.resize(tails_.size());
        fill_.assign(off_.begin(), off_.end() - 1);
        for (std::size_t i = 0; i < tails_.size(); ++i)
            adj_[fill_[tails_[i]]++] = heads_[i];
    }

    void tarjan() {
        comp_.assign(n_, -1);
        index_.assign(n_, -1);
        low_.assign(n_, 0);
        on_stack_.assign(n_, 0);
        stack_.clear();
        frames_.clear();
        int next_index = 0;
        int next_comp = 0;
        for (int root = 0; root < n_; ++root) {
            if (index_[root] >= 0)
                continue;
            frames_.push_back({root, off_[root]});
            index_[root] = low_[root] = next_index++;
            stack_.push_back(root);
            on_stack_[root] = 1;
            while (!frames_.empty()) {
                auto &[v, it] = frames_.back();
                if (it < off_[v + 1]) {
                    int w = adj_[it++];
                    if (index_[w] < 0) {
                        index_[w] = low_[w] = next_index++;
                        stack_.push_back(w);
                        on_stack_[w] = 1;
                        frames_.push_back({w, off_[w]});
                    } else if (on_stack_[w] && index_[w] < low_[v]) {
                        low_[v] = index_[w];
                    }
                } else {
                    if (low_[v] == index_[v]) {
                        int w;
                        do {
                            w = stack_.back();
                            stack_.pop_back();
                            on_stack_[w] = 0;
                            comp_[w] = next_comp;
                        } while (w != v);
                        ++next_comp;
                    }
                    int done = v;
                    frames_.pop_back();
                    if (!frames_.empty()) {
                        int parent = frames_.back().first;
                        if (low_[done] < low_[parent])
                            low_[parent] = low_[done];
                    }
                }
            }
        }
    }

    int vlimit_ = 0;
    int n_ = 0;
    std::vector<int> tails_, heads_;
    std::vector<int> off_, adj_, fill_;
    std::vector<int> comp_, index_, low_;
    std::vector<char> on_stack_;
    std::vector<int> stack_;
    std::vector<std::pair<int, int>> frames_;
};

inline int joint_var_limit(const Formula &f, const LitSet &l) {
    return std::max(f.var_limit(), l.max_var() + 1);
}

} // namespace detail

/// True iff `f` has a satisfying assignment containing no negation of a
/// member of `l`. Members of `l` on variables outside Var(f) never block
/// satisfiability.
inline bool swrt(const Formula &f, const LitSet &l) {
    detail::TwoSat eng;
    eng.reset(detail::joint_var_limit(f, l));
    for (const Clause &c : f.clauses())
        eng.add_clause(c);
    for (Lit m : l.lits())
        eng.add_unit(m);
    return eng.run();
}

/// A satisfying assignment of `f` avoiding the negations of `l`, or nullopt
/// when none exists. The universe of the result is exactly Var(f); the
/// extraction is deterministic.
inline std::optional<Assignment> satisfying_assignment(const Formula &f, const LitSet &l) {
    detail::TwoSat eng;
    eng.reset(detail::joint_var_limit(f, l));
    for (const Clause &c : f.clauses())
        eng.add_clause(c);
    for (Lit m : l.lits())
        eng.add_unit(m);
    if (!eng.run())
        return std::nullopt;
    std::vector<Lit> chosen;
    chosen.reserve(f.var_count());
    for (int v : f.vars())
        chosen.push_back(Lit(v, eng.lit_true(Lit(v, true))));
    return Assignment(std::move(chosen));
}

/// Validate an annotated instance (f, l, pivot): l must be non-contradictory,
/// the pivot variable must not occur in l, and f must be satisfiable with
/// respect to l.
inline InstanceCheck validate_aslasat(const Formula &f, std::span<const Lit> l_raw, Lit pivot) {
    LitSet l;
    for (Lit m : l_raw) {
        try {
            l.add(m);
        } catch (const ContradictionError &) {
            return InstanceCheck::contradictory_l;
        }
    }
    if (l.contains_var(pivot.var()))
        return InstanceCheck::pivot_var_in_l;
    if (!swrt(f, l))
        return InstanceCheck::not_satisfiable_wrt_l;
    return InstanceCheck::ok;
}

inline InstanceCheck validate_aslasat(const Formula &f, const LitSet &l, Lit pivot) {
    return validate_aslasat(f, l.lits(), pivot);
}

} // namespace a2sat
