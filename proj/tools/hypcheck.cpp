#include <iostream>

#include <CLI11.hpp>

#include "hypcheck/cli.hpp"

namespace cli = hypcheck::cli;

int main(int argc, char** argv)
{
    CLI::App app{"hypcheck: digit-sum lemmas, trace tables and classification for hypergeometric sheaves"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    std::string mode = "exact";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_option("--out", cfg.out, "output file or directory");
    };

    auto* verify = app.add_subcommand("verify-digit-lemma", "exhaustive digit-sum lemma checks for r <= r_max");
    verify->add_option("--family", cfg.family, "3x13, 4x5 or 28")->required();
    verify->add_option("--r-max", cfg.r_max, "largest r (default 24 for 3x13, 14 otherwise)");
    add_common(verify);

    auto* trace = app.add_subcommand("trace-table", "full trace table over F_{p^k} with checks");
    trace->add_option("--family", cfg.family, "3x13, 4x5 or 28")->required();
    trace->add_option("--field-degree", cfg.field_degree, "k with q = p^k")->required();
    trace->add_option("--mode", mode, "exact, float or both");
    add_common(trace);

    auto* classify = app.add_subcommand("classify", "classification report");
    classify->add_option("--family", cfg.family, "3x13, 4x5 or 28");
    classify->add_option("--p", cfg.p, "characteristic of a custom spec");
    classify->add_option("--A", cfg.A, "A of a custom spec");
    classify->add_option("--B", cfg.B, "B of a custom A x B spec (omit for A^x)");
    add_common(classify);

    auto* repro = app.add_subcommand("reproduce-all", "run every acceptance criterion and write a manifest");
    repro->add_option("--seed", cfg.seed, "seed for fuzz cases");
    add_common(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::usage;
    }
    return cli::guarded(
        [&] {
            cfg.mode = cli::parse_mode(mode);
            if (*verify)
                return cli::verify_digit_lemma(cfg, std::cout);
            if (*trace)
                return cli::trace_table(cfg, std::cout);
            if (*classify)
                return cli::classify(cfg, std::cout);
            return cli::reproduce_all(cfg, std::cout);
        },
        std::cerr);
}
