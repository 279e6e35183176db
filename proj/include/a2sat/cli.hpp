#pragma once

/// Command-line front end as a library: each entry point consumes input text
/// or parameters and yields the exact bytes for stdout/stderr plus the exit
/// code. Keeping this pure makes output stability testable without spawning
/// processes.
///
/// Exit codes: 0 a deletion set was found, 1 proven absent, 2 any error.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "a2sat/compression.hpp"
#include "a2sat/core.hpp"
#include "a2sat/dimacs.hpp"
#include "a2sat/formula.hpp"
#include "a2sat/generator.hpp"
#include "a2sat/oracle.hpp"
#include "a2sat/sat.hpp"
#include "a2sat/solver.hpp"

namespace a2sat {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

struct SolveFlags {
    std::optional<int> k; // required unless sweep; with sweep it caps the scan
    bool verify = false;
    bool stats = false;
    bool sweep = false;
};

namespace detail {

inline std::string index_line(const std::vector<std::uint32_t> &positions) {
    std::string s;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(positions[i]);
    }
    s += '\n';
    return s;
}

inline CliResult fail(const std::string &message) {
    CliResult r;
    r.exit_code = 2;
    r.err = "error: " + message + "\n";
    return r;
}

} // namespace detail

/// Solves the instance in `text`. A pivot line selects the annotated solver
/// (deletion w.r.t. the annotation literals plus the pivot); otherwise the
/// plain deletion solver runs and clause repeats are allowed. Output is
/// "CS <size>" plus one line of ascending 1-based clause indices, or "NO".
inline CliResult run_solve(const std::string &text, const SolveFlags &flags) {
    CliResult r;
    try {
        InputDoc doc = parse_input(text);
        if (!flags.k && !flags.sweep)
            return detail::fail("a deletion budget (-k) is required unless --sweep is given");
        if (flags.k && *flags.k < 0)
            return detail::fail("deletion budget must be non-negative");
        if (!doc.l_lits.empty() && !doc.pivot)
            return detail::fail("annotation literals require a pivot line (t)");

        // statistics aggregated over every search the run performs
        SearchStats agg;
        std::uint64_t searches = 0;
        auto absorb = [&](const SearchStats &st) {
            agg.nodes += st.nodes;
            agg.leaves += st.leaves;
            agg.max_depth = std::max(agg.max_depth, st.max_depth);
            agg.root_alpha = std::max(agg.root_alpha, st.root_alpha);
            agg.root_beta = std::max(agg.root_beta, st.root_beta);
            ++searches;
        };

        const bool annotated = doc.pivot.has_value();
        std::optional<Formula> f;
        LitSet l;
        if (annotated) {
            f.emplace(doc.clauses);
            for (Lit x : doc.l_lits)
                l.add(x);
        }

        auto solve_at = [&](int kk) -> std::optional<std::vector<std::uint32_t>> {
            if (annotated) {
                SearchStats st;
                CsResult res = find_cs(*f, l, *doc.pivot, kk, &st);
                absorb(st);
                if (!res.is_found())
                    return std::nullopt;
                std::vector<std::uint32_t> pos;
                for (const Clause &c : res.clauses())
                    for (std::size_t i = 0; i < doc.clauses.size(); ++i)
                        if (doc.clauses[i] == c) {
                            pos.push_back(static_cast<std::uint32_t>(i) + 1);
                            break;
                        }
                return pos;
            }
            AsatResult res = solve_2asat(doc.clauses, kk, absorb);
            if (!res.is_found())
                return std::nullopt;
            return res.positions();
        };

        int used_k = 0;
        std::optional<std::vector<std::uint32_t>> found;
        if (flags.sweep) {
            // deleting everything always succeeds, so the scan terminates
            int cap = flags.k ? *flags.k : static_cast<int>(doc.clauses.size());
            for (int kk = 0; kk <= cap; ++kk) {
                used_k = kk;
                if ((found = solve_at(kk)))
                    break;
            }
        } else {
            used_k = *flags.k;
            found = solve_at(used_k);
        }

        if (found && flags.verify) {
            std::vector<bool> drop(doc.clauses.size(), false);
            for (std::uint32_t p : *found)
                drop[p - 1] = true;
            std::vector<Clause> rest;
            for (std::size_t i = 0; i < doc.clauses.size(); ++i)
                if (!drop[i])
                    rest.push_back(doc.clauses[i]);
            LitSet forced = annotated ? l.with(*doc.pivot) : LitSet();
            std::vector<Clause> uniq = rest;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            bool ok = swrt(Formula(uniq), forced);
            try {
                ok = ok && brute_swrt(rest, forced);
            } catch (const TooLargeError &) {
                // component-graph check above already decided it
            }
            if (!ok)
                return detail::fail("verification of the reported deletion set failed");
        }

        if (found) {
            r.out = "CS " + std::to_string(found->size()) + "\n" + detail::index_line(*found);
            r.exit_code = 0;
        } else {
            r.out = "NO\n";
            r.exit_code = 1;
        }
        if (flags.stats) {
            nlohmann::json j;
            j["k"] = used_k;
            j["leaves"] = agg.leaves;
            j["max_depth"] = agg.max_depth;
            j["nodes"] = agg.nodes;
            j["root_alpha"] = agg.root_alpha;
            j["root_beta"] = agg.root_beta;
            if (!annotated || flags.sweep)
                j["searches"] = searches;
            r.out += "c stats " + j.dump() + "\n";
        }
        return r;
    } catch (const Error &e) {
        return detail::fail(e.what());
    }
}

/// Emits a generated instance in interchange format, prefixed by one comment
/// line recording the parameters.
inline CliResult run_gen(const GenParams &p) {
    CliResult r;
    try {
        GenResult g = generate(p);
        r.out = "c gen seed=" + std::to_string(p.seed) + " vars=" + std::to_string(p.n_vars) +
                " clauses=" + std::to_string(p.n_clauses) +
                " planted=" + std::to_string(p.planted_k) +
                (p.allow_repeats ? " repeats" : "") + "\n" + render_input(g.doc);
        return r;
    } catch (const Error &e) {
        return detail::fail(e.what());
    }
}

/// Runs one of the exhaustive reference oracles on the input.
///   scs   smallest deletion set w.r.t. the annotation literals (and pivot,
///         when present): "SCS <size>" plus an index line as in run_solve
///   sep   minimum separator and maximum clause-disjoint path count for the
///         walks the solver bounds, from the negated annotation set to the
///         negated pivot: "SEP <min> <paths>"
///   swrt  satisfiability w.r.t. the annotation literals (and pivot, when
///         present): "SWRT true" or "SWRT false"
inline CliResult run_oracle(const std::string &kind, const std::string &text) {
    CliResult r;
    try {
        InputDoc doc = parse_input(text);
        LitSet l;
        for (Lit x : doc.l_lits)
            l.add(x);
        if (kind == "scs") {
            LitSet forced = doc.pivot ? l.with(*doc.pivot) : l;
            auto pos = brute_scs_positions(doc.clauses, forced);
            for (std::uint32_t &p : pos)
                ++p;
            r.out = "SCS " + std::to_string(pos.size()) + "\n" + detail::index_line(pos);
        } else if (kind == "sep") {
            if (!doc.pivot)
                return detail::fail("the sep oracle needs a pivot line (t)");
            Formula f(doc.clauses);
            BruteSeparation s = brute_separator(f, l.negated(), doc.pivot->neg());
            r.out = "SEP " + std::to_string(s.min_separator) + " " +
                    std::to_string(s.max_disjoint_paths) + "\n";
        } else if (kind == "swrt") {
            LitSet forced = doc.pivot ? l.with(*doc.pivot) : l;
            bool sat = brute_swrt(doc.clauses, forced);
            r.out = std::string("SWRT ") + (sat ? "true" : "false") + "\n";
        } else {
            return detail::fail("unknown oracle '" + kind + "' (expected scs, sep or swrt)");
        }
        return r;
    } catch (const Error &e) {
        return detail::fail(e.what());
    }
}

} // namespace a2sat
