#pragma once

/// Literals, clauses and the error taxonomy shared by the whole library.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2sat {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A clause list contained the same clause twice where distinctness is required.
class DuplicateClauseError : public Error {
  public:
    explicit DuplicateClauseError(std::size_t index)
        : Error("duplicate clause at index " + std::to_string(index)), index(index) {}
    std::size_t index;
};

/// A literal set would contain both a literal and its negation.
class ContradictionError : public Error {
  public:
    using Error::Error;
};

/// Outcome of checking an annotated instance (formula, literal set, pivot).
enum class InstanceCheck {
    ok,
    contradictory_l,
    not_satisfiable_wrt_l,
    pivot_var_in_l,
};

inline const char *to_string(InstanceCheck c) {
    switch (c) {
    case InstanceCheck::ok: return "ok";
    case InstanceCheck::contradictory_l: return "literal set is contradictory";
    case InstanceCheck::not_satisfiable_wrt_l: return "formula is not satisfiable w.r.t. the literal set";
    case InstanceCheck::pivot_var_in_l: return "pivot variable occurs in the literal set";
    }
    return "?";
}

/// A solver entry point was handed an instance failing its validity check.
class InvalidInstanceError : public Error {
  public:
    explicit InvalidInstanceError(InstanceCheck kind)
        : Error(std::string("invalid instance: ") + to_string(kind)), kind(kind) {}
    InstanceCheck kind;
};

/// The clause-repair reduction requires a satisfiable input formula.
class NotSatisfiableError : public Error {
  public:
    using Error::Error;
};

/// A compression-step input violated its contract.
class ContractViolationError : public Error {
  public:
    using Error::Error;
};

/// A brute-force reference was asked to run beyond its size guard.
class TooLargeError : public Error {
  public:
    using Error::Error;
};

/// A documented caller-side precondition was violated.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
  public:
    using Error::Error;
};

/// Input text could not be parsed; carries a 1-based position.
class ParseError : public Error {
  public:
    ParseError(int line, int col, const std::string &what)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

/// A literal: a dense non-negative variable id plus a polarity.
///
/// Encoded as 2*var for the positive literal and 2*var+1 for the negative
/// one, so ordering by code is (var, polarity) order and negation is a
/// single bit flip.
class Lit {
  public:
    constexpr Lit() = default;
    constexpr Lit(int var, bool positive) : code_(2 * var + (positive ? 0 : 1)) {}

    static constexpr Lit from_code(int code) {
        Lit l;
        l.code_ = code;
        return l;
    }

    constexpr int var() const { return code_ >> 1; }
    constexpr bool positive() const { return (code_ & 1) == 0; }
    constexpr Lit neg() const { return from_code(code_ ^ 1); }
    constexpr int code() const { return code_; }
    constexpr bool valid() const { return code_ >= 0; }

    friend constexpr auto operator<=>(Lit, Lit) = default;

  private:
    int code_ = -1;
};

inline std::string to_string(Lit l) {
    if (!l.valid())
        return "<nil>";
    return (l.positive() ? "x" : "-x") + std::to_string(l.var());
}

/// An unordered pair of literals stored in canonical (lower literal first)
/// order. A unit clause is the pair (l, l).
class Clause {
  public:
    constexpr Clause() = default;
    constexpr Clause(Lit x, Lit y) : a_(x < y ? x : y), b_(x < y ? y : x) {}

    constexpr Lit a() const { return a_; }
    constexpr Lit b() const { return b_; }
    constexpr bool unit() const { return a_ == b_; }
    constexpr bool contains(Lit l) const { return a_ == l || b_ == l; }

    /// The companion of `l` in this clause; `l` itself for a unit clause.
    constexpr Lit other(Lit l) const { return l == a_ ? b_ : a_; }

    constexpr int max_var() const { return b_.var(); }

    friend constexpr auto operator<=>(const Clause &, const Clause &) = default;

  private:
    Lit a_;
    Lit b_;
};

/// Clauses compare and hash as unordered pairs: mk_clause(x, y) == mk_clause(y, x).
constexpr Clause mk_clause(Lit x, Lit y) { return Clause(x, y); }

inline std::string to_string(const Clause &c) {
    return "(" + to_string(c.a()) + " v " + to_string(c.b()) + ")";
}

namespace detail {

/// Advance a size-fixed ascending index combination over {0..n-1} to its
/// lexicographic successor. Returns false after the last one.
inline bool next_combination(std::vector<int> &idx, int n) {
    int r = static_cast<int>(idx.size());
    for (int i = r - 1; i >= 0; --i) {
        if (idx[i] < n - (r - i)) {
            ++idx[i];
            for (int j = i + 1; j < r; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

} // namespace a2sat
