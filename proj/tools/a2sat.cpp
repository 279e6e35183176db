// Command-line driver. All solving, generation and oracle logic lives in the
// headers; this file only maps arguments and files onto those entry points.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "a2sat/cli.hpp"

namespace {

bool read_file(const std::string &path, std::string &text) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return true;
}

int emit(const a2sat::CliResult &r) {
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"bounded clause deletion for 2-CNF"};
    app.require_subcommand(1);

    std::string solve_path;
    int k = 0;
    a2sat::SolveFlags flags;
    auto *solve = app.add_subcommand("solve", "decide whether deleting at most k clauses "
                                              "makes the input satisfiable");
    solve->add_option("--cnf", solve_path, "input file")->required();
    auto *k_opt = solve->add_option("-k,--budget", k, "deletion budget");
    solve->add_flag("--verify", flags.verify, "recheck a reported deletion set");
    solve->add_flag("--stats", flags.stats, "append a search statistics line");
    solve->add_flag("--sweep", flags.sweep, "scan k = 0,1,... and report the optimum "
                                            "(a given -k caps the scan)");

    a2sat::GenParams gp;
    auto *gen = app.add_subcommand("gen", "emit a random instance with a planted deletion set");
    gen->add_option("--seed", gp.seed, "generator seed")->required();
    gen->add_option("--vars", gp.n_vars, "variable count")->required();
    gen->add_option("--clauses", gp.n_clauses, "clause count")->required();
    gen->add_option("--planted-k", gp.planted_k, "planted deletion count")->required();
    gen->add_flag("--allow-repeats", gp.allow_repeats, "allow repeated clauses");

    std::string oracle_kind, oracle_path;
    auto *oracle = app.add_subcommand("oracle", "run an exhaustive reference oracle");
    oracle->add_option("mode", oracle_kind, "scs, sep or swrt")
        ->required()
        ->check(CLI::IsMember({"scs", "sep", "swrt"}));
    oracle->add_option("--cnf", oracle_path, "input file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (solve->parsed()) {
        std::string text;
        if (!read_file(solve_path, text)) {
            std::cerr << "error: cannot read '" << solve_path << "'\n";
            return 2;
        }
        if (k_opt->count() > 0)
            flags.k = k;
        return emit(a2sat::run_solve(text, flags));
    }
    if (gen->parsed())
        return emit(a2sat::run_gen(gp));
    std::string text;
    if (!read_file(oracle_path, text)) {
        std::cerr << "error: cannot read '" << oracle_path << "'\n";
        return 2;
    }
    return emit(a2sat::run_oracle(oracle_kind, text));
}
