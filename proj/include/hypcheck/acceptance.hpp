#pragma once

// The reproduction suite: one pass/fail result per acceptance criterion.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exp_sums.hpp"
#include "finite_field.hpp"
#include "hyp_params.hpp"
#include "kubert.hpp"
#include "oracles.hpp"
#include "report.hpp"

namespace hypcheck::acceptance {

namespace limits {
inline constexpr double base_case_seconds = 1.0;
inline constexpr double extension_seconds = 60.0;
inline constexpr double moment_seconds = 600.0;
inline constexpr double float_tolerance = 1e-9;
inline constexpr double moment_constant = 10.0; // |M1 - 1| <= moment_constant / sqrt(q)
inline constexpr unsigned identity_r_base2 = 16;
inline constexpr unsigned identity_r_base3 = 10;
inline constexpr std::uint64_t fuzz_cases = 100000;
} // namespace limits

struct Options {
    unsigned workers = 8;
    std::uint64_t seed = 20240601;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;
    double seconds = 0;
    nlohmann::json data;
};

inline void to_json(nlohmann::json& j, const CriterionResult& c)
{
    j = nlohmann::json{{"id", c.id},         {"title", c.title},     {"pass", c.pass},
                       {"summary", c.summary}, {"seconds", c.seconds}, {"data", c.data}};
}

namespace detail {

inline std::string secs(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
}

inline std::size_t counterexamples(const ReportSet& set)
{
    std::size_t n = 0;
    for (const auto& r : set.parts)
        n += r.counterexamples.size();
    return n;
}

/// Runs the digit family up to r_max and checks counterexamples and a time budget.
inline nlohmann::json timed_family(kubert::DigitFamily fam, unsigned r_max, unsigned workers, double budget,
                                   bool& pass, std::string& summary)
{
    Stopwatch sw;
    ReportSet set{"", {}};
    for (unsigned r = 1; r <= r_max; ++r) {
        switch (fam) {
        case kubert::DigitFamily::f3x13: set.append(kubert::verify_lemma_3x13(r, workers)); break;
        case kubert::DigitFamily::f4x5: set.append(kubert::verify_lemma_4x5(r, workers)); break;
        case kubert::DigitFamily::f28: set.append(kubert::verify_lemma_28(r, workers)); break;
        }
    }
    double s = sw.elapsed_ms() / 1000.0;
    auto ce = counterexamples(set);
    bool ok = set.pass() && s < budget;
    pass = pass && ok;
    summary += "r<=" + std::to_string(r_max) + ": " + std::to_string(set.checked()) + " checks, " +
               std::to_string(ce) + " counterexamples, " + secs(s) + (std::isfinite(budget) ? " (budget " + secs(budget) + "); " : "; ");
    return nlohmann::json{{"r_max", r_max}, {"checked", set.checked()}, {"counterexamples", ce}, {"seconds", s},
                          {"budget_seconds", std::isfinite(budget) ? nlohmann::json(budget) : nlohmann::json()}, {"pass", ok}};
}

inline CriterionResult digit_criterion(int id, std::string title, kubert::DigitFamily fam, unsigned base_r,
                                       unsigned ext_r, bool ext_timed, const Options& opt)
{
    CriterionResult c;
    c.id = id;
    c.title = std::move(title);
    c.pass = true;
    c.data["base"] = timed_family(fam, base_r, 1, limits::base_case_seconds, c.pass, c.summary);
    c.data["extension"] =
        timed_family(fam, ext_r, opt.workers, ext_timed ? limits::extension_seconds : HUGE_VAL, c.pass, c.summary);
    return c;
}

inline void tally(const ReportSet& set, bool& pass, std::uint64_t& checked, std::size_t& ces)
{
    pass = pass && set.pass();
    checked += set.checked();
    ces += counterexamples(set);
}

inline void tally(const VerificationReport& rep, bool& pass, std::uint64_t& checked, std::size_t& ces)
{
    pass = pass && rep.pass();
    checked += rep.checked;
    ces += rep.counterexamples.size();
}

} // namespace detail

inline CriterionResult criterion1(const Options& opt)
{
    return detail::digit_criterion(1, "digit lemma base 2 (3x13), all four variants", kubert::DigitFamily::f3x13, 14,
                                   24, true, opt);
}

inline CriterionResult criterion2(const Options& opt)
{
    return detail::digit_criterion(2, "digit lemma base 3 (4x5), both variants", kubert::DigitFamily::f4x5, 7, 14,
                                   true, opt);
}

inline CriterionResult criterion3(const Options& opt)
{
    return detail::digit_criterion(3, "digit lemma base 3 (28)", kubert::DigitFamily::f28, 3, 12, false, opt);
}

inline CriterionResult criterion4(const Options& opt)
{
    using kubert::DigitFamily;
    CriterionResult c;
    c.id = 4;
    c.title = "bracket corollaries and V-main inequalities";
    Stopwatch sw;
    bool pass = true;
    std::uint64_t checked = 0;
    std::size_t ces = 0;
    for (unsigned r = 2; r <= 20; r += 2) {
        detail::tally(kubert::vmain_check(DigitFamily::f3x13, r, opt.workers), pass, checked, ces);
        detail::tally(kubert::verify_bracket_corollaries(DigitFamily::f3x13, r, opt.workers), pass, checked, ces);
    }
    for (unsigned r = 1; r <= 12; ++r)
        for (auto fam : {DigitFamily::f4x5, DigitFamily::f28}) {
            if (r >= 2)
                detail::tally(kubert::vmain_check(fam, r, opt.workers), pass, checked, ces);
            detail::tally(kubert::verify_bracket_corollaries(fam, r, opt.workers), pass, checked, ces);
        }
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    c.summary = std::to_string(checked) + " checks (vmain1 and +5: even r<=20; vmain2/3 and +6/+3: r<=12), " +
                std::to_string(ces) + " counterexamples";
    c.data = {{"checked", checked}, {"counterexamples", ces}};
    return c;
}

inline CriterionResult criterion5(const Options& opt)
{
    CriterionResult c;
    c.id = 5;
    c.title = "V-function identity suite";
    Stopwatch sw;
    bool pass = true;
    std::uint64_t checked = 0;
    std::size_t ces = 0;
    for (unsigned r = 1; r <= limits::identity_r_base2; ++r) {
        if (r >= 2)
            detail::tally(kubert::identity_negation(2, r), pass, checked, ces);
        detail::tally(kubert::identity_triplication(r), pass, checked, ces);
        detail::tally(kubert::identity_level_consistency(2, r, 2), pass, checked, ces);
    }
    for (unsigned r = 1; r <= limits::identity_r_base3; ++r) {
        detail::tally(kubert::identity_negation(3, r), pass, checked, ces);
        detail::tally(kubert::identity_duplication(r), pass, checked, ces);
        detail::tally(kubert::identity_level_consistency(3, r, 2), pass, checked, ces);
    }
    // exhaustive repunit scaling for k = 2, 3
    for (unsigned p : {2u, 3u}) {
        unsigned rmax = p == 2 ? limits::identity_r_base2 : limits::identity_r_base3;
        for (unsigned r = 1; r <= rmax; ++r)
            for (unsigned k : {2u, 3u}) {
                if (k * r > (p == 2 ? 62u : 39u))
                    continue;
                VerificationReport rep;
                rep.lemma = "repunit_scaling";
                auto bound = kubert::ipow(p, r) - 1;
                for (std::uint64_t x = 0; x < bound; ++x)
                    rep.record(static_cast<std::int64_t>(x), kubert::repunit_scaling_check(x, r, k, p) ? 0 : 1, 0);
                detail::tally(rep, pass, checked, ces);
            }
    }
    std::uint64_t fuzzed = 0;
    for (unsigned p : {2u, 3u}) {
        auto rep = kubert::repunit_scaling_fuzz(p, limits::fuzz_cases, opt.seed + p);
        fuzzed += rep.checked;
        detail::tally(rep, pass, checked, ces);
    }
    c.pass = pass && fuzzed >= limits::fuzz_cases;
    c.seconds = sw.elapsed_ms() / 1000.0;
    c.summary = std::to_string(checked) + " exact equalities (incl. " + std::to_string(fuzzed) + " fuzz), " +
                std::to_string(ces) + " failures";
    c.data = {{"checked", checked}, {"fuzz", fuzzed}, {"failures", ces}};
    return c;
}

inline CriterionResult criterion6(const Options& opt)
{
    CriterionResult c;
    c.id = 6;
    c.title = "finite-monodromy criteria incl. hand-check sets";
    Stopwatch sw;
    bool pass = true;
    std::uint64_t checked = 0;
    std::size_t ces = 0;
    detail::tally(kubert::check_criterion_AxB(2, 3, 13, 24, opt.workers), pass, checked, ces);
    detail::tally(kubert::check_criterion_AxB(3, 4, 5, 14, opt.workers), pass, checked, ces);
    detail::tally(kubert::check_criterion_Atimes(3, 2, 7, 28, 12, opt.workers), pass, checked, ces);
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    c.summary = "3x13 r<=24 + (1/39)Z, 4x5 r<=14 + (1/20)Z, 28^x r<=12 + (1/28)Z: " + std::to_string(checked) +
                " checks, " + std::to_string(ces) + " counterexamples";
    c.data = {{"checked", checked}, {"counterexamples", ces}};
    return c;
}

namespace detail {

/// Exact table checks shared by the F16/F64 and F9/F81 parts.
inline bool table_checks(const FieldTable& k, const TraceParams& params, double bound, bool need_rational,
                         nlohmann::json& out)
{
    auto exact = trace_table_all<Cyclotomic>(k, params);
    auto approx = trace_table_all<ApproxComplex>(k, params);
    auto q0 = base_field_size(k.p(), params);
    std::vector<VerificationReport> reps{purity_check(exact, bound, 0.0), frobenius_invariance_check(exact, q0),
                                         galois_invariance_check(exact), integrality_check(exact),
                                         cross_mode_check(exact, approx, limits::float_tolerance)};
    if (need_rational)
        reps.push_back(rationality_check(exact));
    bool ok = true;
    nlohmann::json j{{"q", k.q()}, {"family", to_string(params.family)}, {"A", params.A}, {"B", params.B}};
    for (const auto& r : reps) {
        j[r.lemma] = r.pass();
        ok = ok && r.pass();
    }
    out.push_back(j);
    return ok;
}

} // namespace detail

inline CriterionResult criterion7(const Options&)
{
    CriterionResult c;
    c.id = 7;
    c.title = "trace tables: closed form, rationality, purity, Frobenius, Galois";
    Stopwatch sw;
    bool pass = true;
    c.data["tables"] = nlohmann::json::array();

    // (a) F4: T(s) = psi(1/s)
    auto f4 = build_field(2, 2);
    auto t4 = trace_table_all<Cyclotomic>(f4, TraceParams::axb(3, 13));
    bool closed = true;
    for (std::uint32_t i = 0; i < f4.unit_order(); ++i) {
        elem s = f4.exp(i);
        closed = closed && t4.values[i] == Cyclotomic::root_of_unity(f4.trace(f4.inv(s)), 2);
    }
    c.data["F4_closed_form"] = closed;
    pass = pass && closed;

    // (b) F16, F64
    for (unsigned k : {4u, 6u}) {
        auto f = build_field(2, k);
        pass = detail::table_checks(f, TraceParams::axb(3, 13), 24, true, c.data["tables"]) && pass;
    }
    // (c) F9, F81 for 4x5 and 28^x
    for (unsigned k : {2u, 4u}) {
        auto f = build_field(3, k);
        pass = detail::table_checks(f, TraceParams::axb(4, 5), 12, false, c.data["tables"]) && pass;
        pass = detail::table_checks(f, TraceParams::atimes4(7), 12, false, c.data["tables"]) && pass;
    }
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    c.summary = std::string("F4 closed form ") + (closed ? "ok" : "FAILED") + "; " +
                std::to_string(c.data["tables"].size()) + " exact tables checked, float tolerance 1e-9";
    return c;
}

inline CriterionResult criterion8(const Options& opt)
{
    CriterionResult c;
    c.id = 8;
    c.title = "second moment M1 near 1";
    Stopwatch sw;
    bool pass = true;
    struct Case {
        unsigned p, k;
        TraceParams params;
    };
    for (const auto& cs : {Case{2, 10, TraceParams::axb(3, 13)}, Case{3, 6, TraceParams::axb(4, 5)},
                           Case{3, 6, TraceParams::atimes4(7)}}) {
        Stopwatch one;
        auto f = build_field(cs.p, cs.k);
        auto table = trace_table_all<ApproxComplex>(f, cs.params, opt.workers);
        double m1 = moments(table, 1);
        double s = one.elapsed_ms() / 1000.0;
        double bound = limits::moment_constant / std::sqrt(static_cast<double>(f.q()));
        bool ok = std::abs(m1 - 1.0) <= bound && s < limits::moment_seconds;
        pass = pass && ok;
        c.data.push_back({{"family", to_string(cs.params.family)}, {"A", cs.params.A}, {"B", cs.params.B},
                          {"q", f.q()}, {"M1", m1}, {"bound", bound}, {"seconds", s}, {"pass", ok}});
        char buf[96];
        std::snprintf(buf, sizeof buf, "q=%u M1=%.4f (|M1-1|<=%.3f) %s; ", f.q(), m1, bound, detail::secs(s).c_str());
        c.summary += buf;
    }
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    return c;
}

inline CriterionResult criterion9(const Options&)
{
    CriterionResult c;
    c.id = 9;
    c.title = "classification";
    Stopwatch sw;
    struct Expect {
        hyp::HypSpec spec;
        std::string selfdual;
        std::int64_t N;
        unsigned f;
    };
    std::vector<Expect> cases{{hyp::build_AxB(2, 3, 13), "orthogonal", 23, 11},
                              {hyp::build_AxB(3, 4, 5), "none", 11, 5},
                              {hyp::build_Atimes(3, 28), "none", 11, 5}};
    bool pass = true;
    for (const auto& e : cases) {
        auto prim = hyp::primitivity_verdict(e.spec);
        auto sd = hyp::selfdual_test(e.spec);
        auto im = hyp::inertia_model(e.spec);
        bool ok = prim.verdict == hyp::Verdict::not_induced && hyp::to_string(sd.kind) == e.selfdual &&
                  hyp::det_product_check(e.spec) && im.N == e.N && im.f == e.f && hyp::order_is_minimal(im);
        pass = pass && ok;
        auto j = hyp::classification_json(e.spec);
        j["pass"] = ok;
        c.data.push_back(j);
        c.summary += e.spec.family + "(" + std::to_string(e.spec.p) + ") " + im.group() + (ok ? " ok; " : " FAILED; ");
    }
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    return c;
}

inline CriterionResult criterion10(const Options&)
{
    CriterionResult c;
    c.id = 10;
    c.title = "restructured pipeline equals direct multi-sum";
    Stopwatch sw;
    bool pass = true;
    std::uint64_t compared = 0, mismatches = 0;
    auto compare = [&](const FieldTable& k, const TraceParams& params) {
        auto table = trace_table_all<Cyclotomic>(k, params);
        for (std::uint32_t i = 0; i < k.unit_order(); ++i) {
            ++compared;
            if (!(oracle::trace_direct(k, params, k.exp(i)) == table.values[i]))
                ++mismatches;
        }
    };
    auto f16 = build_field(2, 4);
    compare(f16, TraceParams::axb(3, 13));
    auto f9 = build_field(3, 2);
    compare(f9, TraceParams::axb(4, 5));
    compare(f9, TraceParams::atimes4(7));
    pass = mismatches == 0;
    c.pass = pass;
    c.seconds = sw.elapsed_ms() / 1000.0;
    c.summary = std::to_string(compared) + " points compared (F16: 3x13; F9: 4x5, 28^x), " +
                std::to_string(mismatches) + " mismatches";
    c.data = {{"compared", compared}, {"mismatches", mismatches}};
    return c;
}

inline std::vector<std::function<CriterionResult(const Options&)>> all_criteria()
{
    return {criterion1, criterion2, criterion3, criterion4, criterion5,
            criterion6, criterion7, criterion8, criterion9, criterion10};
}

/// Runs one criterion, turning exceptions into a failed result.
inline CriterionResult run_guarded(int id, const Options& opt)
{
    auto fns = all_criteria();
    Stopwatch sw;
    try {
        auto r = fns.at(static_cast<std::size_t>(id - 1))(opt);
        if (r.seconds == 0)
            r.seconds = sw.elapsed_ms() / 1000.0;
        return r;
    } catch (const std::exception& e) {
        CriterionResult r;
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.summary = std::string("exception: ") + e.what();
        r.seconds = sw.elapsed_ms() / 1000.0;
        return r;
    }
}

inline std::string format_line(const CriterionResult& r)
{
    return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + " -- " + r.summary +
           " (" + detail::secs(r.seconds) + ")";
}

} // namespace hypcheck::acceptance
