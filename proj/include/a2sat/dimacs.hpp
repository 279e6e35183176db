#pragma once

/// Text interchange format: DIMACS CNF restricted to clauses of one or two
/// literals, extended with annotation lines.
///
///   c <anything>        comment, ignored
///   p cnf <vars> <m>    header, first non-comment line
///   <lit> [<lit>] 0     clause, m of them in total
///   a <lit>... 0        annotation literals (may repeat; accumulated)
///   t <lit> 0           pivot literal, at most once
///
/// External variables are 1-based and signed (DIMACS convention); internal
/// variables are 0-based, so external e maps to variable e-1.

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a2sat/core.hpp"
#include "a2sat/formula.hpp"

namespace a2sat {

/// A parsed input file. Clauses are kept in file order and may repeat (the
/// plain deletion solver accepts multisets); annotated runs require a pivot.
struct InputDoc {
    int n_vars = 0;
    std::vector<Clause> clauses;
    std::vector<Lit> l_lits; // annotation literals in file order
    std::optional<Lit> pivot;

    friend bool operator==(const InputDoc &, const InputDoc &) = default;
};

namespace detail {

/// Splits a line suffix into integer tokens. Columns are 1-based and
/// absolute within the full line; col_offset is the suffix start.
class LineScan {
  public:
    LineScan(std::string_view line, int line_no, int col_offset = 0)
        : line_(line), line_no_(line_no), off_(col_offset) {}

    /// Next integer token, or nullopt at end of line.
    std::optional<long> next_int() {
        skip_ws();
        if (at_ >= line_.size())
            return std::nullopt;
        std::size_t start = at_;
        while (at_ < line_.size() && !is_ws(line_[at_]))
            ++at_;
        std::string_view tok = line_.substr(start, at_ - start);
        long value = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || end != tok.data() + tok.size())
            throw ParseError(line_no_, off_ + static_cast<int>(start) + 1,
                             "expected an integer, got '" + std::string(tok) + "'");
        last_col_ = off_ + static_cast<int>(start) + 1;
        return value;
    }

    int last_col() const { return last_col_; }

    void expect_end(const char *what) {
        skip_ws();
        if (at_ < line_.size())
            throw ParseError(line_no_, off_ + static_cast<int>(at_) + 1,
                             std::string("unexpected trailing input after ") + what);
    }

  private:
    static bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }

    void skip_ws() {
        while (at_ < line_.size() && is_ws(line_[at_]))
            ++at_;
    }

    std::string_view line_;
    int line_no_;
    int off_;
    std::size_t at_ = 0;
    int last_col_ = 1;
};

} // namespace detail

/// Strict parse of the interchange format. Every failure throws ParseError
/// with a 1-based line and column.
inline InputDoc parse_input(std::string_view text) {
    InputDoc doc;
    bool have_header = false;
    long declared_clauses = 0;
    int line_no = 0;
    std::size_t pos = 0;

    auto to_lit = [&](long v, int line, int col) {
        long mag = v < 0 ? -v : v;
        if (mag < 1 || mag > doc.n_vars)
            throw ParseError(line, col,
                             "literal " + std::to_string(v) + " out of range for " +
                                 std::to_string(doc.n_vars) + " variables");
        return Lit(static_cast<int>(mag) - 1, v > 0);
    };

    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (pos > text.size() && line.empty())
            break;

        // blank lines and comments carry no content
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            continue;
        if (line[first] == 'c' &&
            (first + 1 == line.size() || line[first + 1] == ' ' || line[first + 1] == '\t'))
            continue;

        if (!have_header) {
            if (line.substr(first, 6) != "p cnf ")
                throw ParseError(line_no, static_cast<int>(first) + 1,
                                 "expected header 'p cnf <vars> <clauses>'");
            detail::LineScan scan(line.substr(first + 5), line_no,
                                  static_cast<int>(first) + 5);
            auto nv = scan.next_int();
            auto nc = scan.next_int();
            if (!nv || !nc || *nv < 0 || *nc < 0)
                throw ParseError(line_no, static_cast<int>(first) + 1, "malformed header");
            scan.expect_end("the header");
            doc.n_vars = static_cast<int>(*nv);
            declared_clauses = *nc;
            have_header = true;
            continue;
        }

        char kind = line[first];
        if (kind == 'a' || kind == 't') {
            detail::LineScan scan(line.substr(first + 1), line_no,
                                  static_cast<int>(first) + 1);
            std::vector<Lit> lits;
            bool closed = false;
            while (auto v = scan.next_int()) {
                if (*v == 0) {
                    closed = true;
                    break;
                }
                lits.push_back(to_lit(*v, line_no, scan.last_col()));
            }
            if (!closed)
                throw ParseError(line_no, static_cast<int>(first) + 1,
                                 std::string(kind == 'a' ? "annotation" : "pivot") +
                                     " line is not terminated by 0");
            scan.expect_end(kind == 'a' ? "an annotation line" : "the pivot line");
            if (kind == 't') {
                if (doc.pivot)
                    throw ParseError(line_no, static_cast<int>(first) + 1,
                                     "duplicate pivot line");
                if (lits.size() != 1)
                    throw ParseError(line_no, static_cast<int>(first) + 1,
                                     "the pivot line must hold exactly one literal");
                doc.pivot = lits[0];
            } else {
                doc.l_lits.insert(doc.l_lits.end(), lits.begin(), lits.end());
            }
            continue;
        }

        // a clause line
        detail::LineScan scan(line.substr(first), line_no, static_cast<int>(first));
        std::vector<Lit> lits;
        bool closed = false;
        while (auto v = scan.next_int()) {
            if (*v == 0) {
                closed = true;
                break;
            }
            if (lits.size() == 2)
                throw ParseError(line_no, scan.last_col(),
                                 "clause has more than 2 literals");
            lits.push_back(to_lit(*v, line_no, scan.last_col()));
        }
        if (!closed)
            throw ParseError(line_no, static_cast<int>(first) + 1,
                             "clause line is not terminated by 0");
        scan.expect_end("a clause");
        if (lits.empty())
            throw ParseError(line_no, static_cast<int>(first) + 1, "empty clause");
        if (static_cast<long>(doc.clauses.size()) == declared_clauses)
            throw ParseError(line_no, static_cast<int>(first) + 1,
                             "more clauses than the header declares");
        doc.clauses.push_back(lits.size() == 1 ? mk_clause(lits[0], lits[0])
                                               : mk_clause(lits[0], lits[1]));
    }

    if (!have_header)
        throw ParseError(line_no, 1, "missing header 'p cnf <vars> <clauses>'");
    if (static_cast<long>(doc.clauses.size()) != declared_clauses)
        throw ParseError(line_no, 1,
                         "header declares " + std::to_string(declared_clauses) +
                             " clauses but the file holds " +
                             std::to_string(doc.clauses.size()));
    return doc;
}

namespace detail {

inline std::string ext(Lit l) {
    int e = l.var() + 1;
    return std::to_string(l.positive() ? e : -e);
}

} // namespace detail

/// Canonical text form: header, clauses in order (units as one literal),
/// one sorted annotation line when present, then the pivot line.
/// parse_input(render_input(doc)) reproduces doc up to annotation order.
inline std::string render_input(const InputDoc &doc) {
    std::string out = "p cnf " + std::to_string(doc.n_vars) + " " +
                      std::to_string(doc.clauses.size()) + "\n";
    for (const Clause &c : doc.clauses) {
        out += detail::ext(c.a());
        if (!c.unit()) {
            out += ' ';
            out += detail::ext(c.b());
        }
        out += " 0\n";
    }
    if (!doc.l_lits.empty()) {
        std::vector<Lit> sorted(doc.l_lits.begin(), doc.l_lits.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        out += "a";
        for (Lit l : sorted) {
            out += ' ';
            out += detail::ext(l);
        }
        out += " 0\n";
    }
    if (doc.pivot)
        out += "t " + detail::ext(*doc.pivot) + " 0\n";
    return out;
}

} // namespace a2sat
