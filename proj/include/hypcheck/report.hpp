#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hypcheck {

struct Counterexample {
    std::int64_t x = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// Outcome of an exhaustive check. lhs/rhs/slack are integers over `scale`
/// (1 for digit-sum inequalities, r(p-1) for V-function inequalities).
struct VerificationReport {
    static constexpr std::int64_t slack_cap = 32;

    std::string lemma;
    unsigned p = 0;
    int r = 0;
    std::string variant;
    std::int64_t scale = 1;
    std::uint64_t checked = 0;
    std::vector<Counterexample> counterexamples;
    std::map<std::int64_t, std::uint64_t> slack_histogram;
    double elapsed_ms = 0;

    bool pass() const noexcept { return counterexamples.empty(); }

    /// Records one checked instance of lhs <= rhs.
    void record(std::int64_t x, std::int64_t lhs, std::int64_t rhs)
    {
        ++checked;
        std::int64_t slack = rhs - lhs;
        ++slack_histogram[std::min(slack, slack_cap)];
        if (slack < 0)
            counterexamples.push_back({x, lhs, rhs});
    }

    /// Folds a report for a later chunk of the same range into this one.
    void merge(const VerificationReport& o)
    {
        checked += o.checked;
        for (auto [s, c] : o.slack_histogram)
            slack_histogram[s] += c;
        counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
        std::stable_sort(counterexamples.begin(), counterexamples.end(),
                         [](const Counterexample& a, const Counterexample& b) { return a.x < b.x; });
    }

    /// Payload equality, ignoring timing.
    bool same_payload(const VerificationReport& o) const
    {
        return lemma == o.lemma && p == o.p && r == o.r && variant == o.variant && scale == o.scale &&
               checked == o.checked && counterexamples == o.counterexamples && slack_histogram == o.slack_histogram;
    }
};

inline void to_json(nlohmann::json& j, const VerificationReport& rep)
{
    nlohmann::json ces = nlohmann::json::array();
    for (const auto& c : rep.counterexamples)
        ces.push_back({{"x", c.x}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    nlohmann::json hist = nlohmann::json::object();
    for (auto [s, c] : rep.slack_histogram)
        hist[std::to_string(s)] = c;
    j = nlohmann::json{{"lemma", rep.lemma},
                       {"p", rep.p},
                       {"r", rep.r},
                       {"variant", rep.variant},
                       {"scale", rep.scale},
                       {"checked", rep.checked},
                       {"pass", rep.pass()},
                       {"counterexamples", ces},
                       {"slack_histogram", hist},
                       {"elapsed_ms", rep.elapsed_ms}};
}

/// A named group of reports; passes iff every part passes.
struct ReportSet {
    std::string name;
    std::vector<VerificationReport> parts;

    bool pass() const
    {
        return std::all_of(parts.begin(), parts.end(), [](const auto& r) { return r.pass(); });
    }

    std::uint64_t checked() const
    {
        std::uint64_t n = 0;
        for (const auto& r : parts)
            n += r.checked;
        return n;
    }

    void append(const ReportSet& o) { parts.insert(parts.end(), o.parts.begin(), o.parts.end()); }
};

inline void to_json(nlohmann::json& j, const ReportSet& set)
{
    j = nlohmann::json{{"name", set.name}, {"pass", set.pass()}, {"reports", set.parts}};
}

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace hypcheck
