#pragma once

/// Literal sets, assignments and duplicate-free clause formulas.

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

#include "a2sat/core.hpp"

namespace a2sat {

/// A non-contradictory set of literals, kept sorted by literal code.
/// Inserting the negation of a member throws ContradictionError.
class LitSet {
  public:
    LitSet() = default;

    LitSet(std::initializer_list<Lit> ls) {
        for (Lit l : ls)
            add(l);
    }

    explicit LitSet(std::span<const Lit> ls) {
        for (Lit l : ls)
            add(l);
    }

    /// Insert a literal; no-op when already present.
    void add(Lit l) {
        if (contains(l))
            return;
        if (contains(l.neg()))
            throw ContradictionError("literal set would contain " + to_string(l) +
                                     " and " + to_string(l.neg()));
        lits_.insert(std::lower_bound(lits_.begin(), lits_.end(), l), l);
    }

    /// Erase a member literal. Throws Error when absent.
    void remove(Lit l) {
        auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
        if (it == lits_.end() || *it != l)
            throw Error("literal set does not contain " + to_string(l));
        lits_.erase(it);
    }

    bool contains(Lit l) const {
        return std::binary_search(lits_.begin(), lits_.end(), l);
    }

    bool contains_var(int var) const {
        return contains(Lit(var, true)) || contains(Lit(var, false));
    }

    /// The set of negations of all members.
    LitSet negated() const {
        LitSet out;
        out.lits_.reserve(lits_.size());
        for (Lit l : lits_)
            out.lits_.push_back(l.neg());
        // negation flips the polarity bit only; re-sort to restore code order
        std::sort(out.lits_.begin(), out.lits_.end());
        return out;
    }

    LitSet with(Lit l) const {
        LitSet out = *this;
        out.add(l);
        return out;
    }

    std::span<const Lit> lits() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }

    /// Largest variable id among members, -1 when empty.
    int max_var() const { return lits_.empty() ? -1 : lits_.back().var(); }

    friend bool operator==(const LitSet &, const LitSet &) = default;

  private:
    std::vector<Lit> lits_;
};

/// A total assignment over a fixed variable universe: exactly one literal
/// per variable of the universe.
class Assignment {
  public:
    Assignment() = default;

    explicit Assignment(std::vector<Lit> lits) : lits_(std::move(lits)) {
        std::sort(lits_.begin(), lits_.end());
        for (std::size_t i = 1; i < lits_.size(); ++i)
            if (lits_[i].var() == lits_[i - 1].var())
                throw ContradictionError("assignment mentions variable x" +
                                         std::to_string(lits_[i].var()) + " twice");
    }

    /// True iff `l` is one of the chosen literals (false when the variable
    /// is outside the universe).
    bool contains(Lit l) const {
        auto it = std::lower_bound(lits_.begin(), lits_.end(), Lit(l.var(), true));
        return it != lits_.end() && *it == l;
    }

    bool has_var(int var) const {
        auto it = std::lower_bound(lits_.begin(), lits_.end(), Lit(var, true));
        return it != lits_.end() && it->var() == var;
    }

    std::span<const Lit> lits() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }

    /// True iff at least one literal of `c` is chosen.
    bool satisfies(const Clause &c) const { return contains(c.a()) || contains(c.b()); }

    friend bool operator==(const Assignment &, const Assignment &) = default;

  private:
    std::vector<Lit> lits_; // sorted by code, one literal per variable
};

/// An ordered list of pairwise distinct clauses.
class Formula {
  public:
    Formula() = default;

    /// Throws DuplicateClauseError carrying the index of the second
    /// occurrence when the input repeats a clause.
    explicit Formula(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
        sorted_ = clauses_;
        std::sort(sorted_.begin(), sorted_.end());
        for (std::size_t i = 1; i < sorted_.size(); ++i)
            if (sorted_[i] == sorted_[i - 1]) {
                // report the later of the two positions in input order
                std::size_t first = clauses_.size();
                for (std::size_t j = 0; j < clauses_.size(); ++j)
                    if (clauses_[j] == sorted_[i]) {
                        if (first == clauses_.size())
                            first = j;
                        else
                            throw DuplicateClauseError(j);
                    }
                throw DuplicateClauseError(first);
            }
        vars_.reserve(clauses_.size() * 2);
        for (const Clause &c : clauses_) {
            vars_.push_back(c.a().var());
            vars_.push_back(c.b().var());
        }
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    }

    std::span<const Clause> clauses() const { return clauses_; }
    std::size_t size() const { return clauses_.size(); }
    bool empty() const { return clauses_.empty(); }

    bool contains(const Clause &c) const {
        return std::binary_search(sorted_.begin(), sorted_.end(), c);
    }

    /// Variables mentioned by at least one clause, ascending.
    std::span<const int> vars() const { return vars_; }
    std::size_t var_count() const { return vars_.size(); }

    /// One past the largest mentioned variable id; 0 for the empty formula.
    int var_limit() const { return vars_.empty() ? 0 : vars_.back() + 1; }

    /// Set difference: drops every clause equal to a member of `removed`,
    /// preserving the order of the remaining clauses.
    Formula without(std::span<const Clause> removed) const {
        std::vector<Clause> rm(removed.begin(), removed.end());
        std::sort(rm.begin(), rm.end());
        std::vector<Clause> kept;
        kept.reserve(clauses_.size());
        for (const Clause &c : clauses_)
            if (!std::binary_search(rm.begin(), rm.end(), c))
                kept.push_back(c);
        return Formula(std::move(kept));
    }

    friend bool operator==(const Formula &lhs, const Formula &rhs) {
        return lhs.clauses_ == rhs.clauses_;
    }

  private:
    std::vector<Clause> clauses_; // input order
    std::vector<Clause> sorted_;  // for membership tests
    std::vector<int> vars_;       // sorted distinct variable ids
};

/// Build a formula from a clause list, rejecting duplicates.
inline Formula build_formula(std::span<const Clause> clauses) {
    return Formula(std::vector<Clause>(clauses.begin(), clauses.end()));
}

inline Formula build_formula(std::initializer_list<Clause> clauses) {
    return Formula(std::vector<Clause>(clauses));
}

} // namespace a2sat
