#pragma once

// Command implementations behind the hypcheck executable. Each returns the
// process exit code: 0 ok, 1 counterexample, 2 usage error, 3 resource cap.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "acceptance.hpp"
#include "exp_sums.hpp"
#include "finite_field.hpp"
#include "hyp_params.hpp"
#include "kubert.hpp"

namespace hypcheck::cli {

enum exit_code : int { ok = 0, counterexample = 1, usage = 2, resource_cap = 3 };

inline constexpr const char* cache_env = "HYPCHECK_CACHE_DIR";

enum class Mode { exact, floating, both };

struct RunConfig {
    std::string family = "3x13";
    std::optional<unsigned> r_max;
    unsigned field_degree = 4;
    Mode mode = Mode::exact;
    unsigned workers = 1;
    std::string out;
    std::uint64_t seed = 20240601;
    // classify overrides
    std::optional<unsigned> p;
    std::optional<std::int64_t> A;
    std::optional<std::int64_t> B;
};

inline Mode parse_mode(const std::string& s)
{
    if (s == "exact")
        return Mode::exact;
    if (s == "float")
        return Mode::floating;
    if (s == "both")
        return Mode::both;
    throw error(errc::invalid_spec, "mode must be exact, float or both");
}

struct Family {
    unsigned p;
    TraceParams params;
    kubert::DigitFamily digits;
};

inline Family parse_family(const std::string& s)
{
    if (s == "3x13")
        return {2, TraceParams::axb(3, 13), kubert::DigitFamily::f3x13};
    if (s == "4x5")
        return {3, TraceParams::axb(4, 5), kubert::DigitFamily::f4x5};
    if (s == "28")
        return {3, TraceParams::atimes4(7), kubert::DigitFamily::f28};
    throw error(errc::invalid_spec, "family must be 3x13, 4x5 or 28");
}

inline unsigned default_r_max(kubert::DigitFamily f) { return f == kubert::DigitFamily::f3x13 ? 24 : 14; }

inline FieldTable load_field(unsigned p, unsigned k)
{
    if (const char* dir = std::getenv(cache_env); dir && *dir)
        return build_field_cached(p, k, dir);
    return build_field(p, k);
}

/// Writes to cfg.out if set, else to os.
inline void emit(const RunConfig& cfg, std::ostream& os, const nlohmann::json& j)
{
    if (cfg.out.empty()) {
        os << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        throw error(errc::io_error, "cannot write " + cfg.out);
    f << j.dump(2) << '\n';
}

inline int verify_digit_lemma(const RunConfig& cfg, std::ostream& os)
{
    auto fam = parse_family(cfg.family);
    unsigned r_max = cfg.r_max.value_or(default_r_max(fam.digits));
    auto set = kubert::verify_digit_family(fam.digits, r_max, cfg.workers);
    auto j = nlohmann::json(set);
    j["family"] = cfg.family;
    j["r_max"] = r_max;
    emit(cfg, os, j);
    return set.pass() ? ok : counterexample;
}

inline int trace_table(const RunConfig& cfg, std::ostream& os)
{
    auto fam = parse_family(cfg.family);
    auto k = load_field(fam.p, cfg.field_degree);
    if (k.q() > trace_table_max_q)
        throw error(errc::degree_out_of_range, "trace tables are capped at q <= " + std::to_string(trace_table_max_q));
    std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
    std::filesystem::create_directories(dir);
    std::string stem = "trace_" + cfg.family + "_q" + std::to_string(k.q());

    auto write_csv = [&](const auto& table, const std::string& suffix) {
        std::ofstream f(dir / (stem + suffix + ".csv"));
        if (!f)
            throw error(errc::io_error, "cannot write table");
        write_trace_csv(f, table);
    };

    nlohmann::json stats;
    bool pass = true;
    auto judge = [&](const nlohmann::json& s) {
        pass = pass && s["purity_pass"] == true && s["frobenius_pass"] == true;
        if (s["mode"] == "exact")
            pass = pass && s["integrality_pass"] == true && s["galois_pass"] == true;
    };
    std::optional<TraceTable<Cyclotomic>> exact;
    if (cfg.mode != Mode::floating) {
        exact = trace_table_all<Cyclotomic>(k, fam.params, cfg.workers);
        write_csv(*exact, cfg.mode == Mode::both ? "_exact" : "");
        stats = trace_statistics(*exact);
        judge(stats);
    }
    if (cfg.mode != Mode::exact) {
        auto approx = trace_table_all<ApproxComplex>(k, fam.params, cfg.workers);
        write_csv(approx, cfg.mode == Mode::both ? "_float" : "");
        auto fs = trace_statistics(approx);
        judge(fs);
        if (exact) {
            auto agree = cross_mode_check(*exact, approx, acceptance::limits::float_tolerance);
            stats["float"] = fs;
            stats["cross_mode_pass"] = agree.pass();
            pass = pass && agree.pass();
        } else {
            stats = fs;
        }
    }
    std::ofstream sf(dir / (stem + "_stats.json"));
    sf << stats.dump(2) << '\n';
    os << stats.dump(2) << '\n';
    return pass ? ok : counterexample;
}

inline int classify(const RunConfig& cfg, std::ostream& os)
{
    hyp::HypSpec spec;
    if (cfg.p || cfg.A || cfg.B) {
        if (!cfg.p || !cfg.A)
            throw error(errc::invalid_spec, "custom classification needs --p and --A (and --B for A x B)");
        spec = cfg.B ? hyp::build_AxB(*cfg.p, *cfg.A, *cfg.B) : hyp::build_Atimes(*cfg.p, *cfg.A);
    } else if (cfg.family == "3x13") {
        spec = hyp::build_AxB(2, 3, 13);
    } else if (cfg.family == "4x5") {
        spec = hyp::build_AxB(3, 4, 5);
    } else if (cfg.family == "28") {
        spec = hyp::build_Atimes(3, 28);
    } else {
        throw error(errc::invalid_spec, "family must be 3x13, 4x5 or 28");
    }
    emit(cfg, os, hyp::classification_json(spec));
    return ok;
}

namespace detail {

/// Drops timing fields so reruns produce identical manifests.
inline void strip_timings(nlohmann::json& j)
{
    if (j.is_object()) {
        for (const char* key : {"seconds", "elapsed_ms", "budget_seconds"})
            j.erase(key);
        for (auto& [k, v] : j.items())
            strip_timings(v);
    } else if (j.is_array()) {
        for (auto& v : j)
            strip_timings(v);
    }
}

} // namespace detail

inline int reproduce_all(const RunConfig& cfg, std::ostream& os)
{
    acceptance::Options opt{cfg.workers, cfg.seed};
    std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("reproduction") : std::filesystem::path(cfg.out);
    std::filesystem::create_directories(dir);
    nlohmann::json manifest{{"criteria", nlohmann::json::array()}};
    nlohmann::json timings = nlohmann::json::object();
    bool all = true;
    for (int id = 1; id <= static_cast<int>(acceptance::all_criteria().size()); ++id) {
        auto r = acceptance::run_guarded(id, opt);
        os << acceptance::format_line(r) << std::endl;
        all = all && r.pass;
        timings[std::to_string(id)] = r.seconds;
        nlohmann::json j = r;
        detail::strip_timings(j);
        j.erase("summary"); // carries timings
        manifest["criteria"].push_back(j);
    }
    manifest["pass"] = all;
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
    std::ofstream(dir / "timings.json") << timings.dump(2) << '\n';
    os << (all ? "all criteria pass" : "some criteria FAILED") << '\n';
    return all ? ok : counterexample;
}

/// Maps library errors onto exit codes.
template <class F>
int guarded(F&& fn, std::ostream& err)
{
    try {
        return fn();
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_resource_cap() ? resource_cap : usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
}

} // namespace hypcheck::cli
