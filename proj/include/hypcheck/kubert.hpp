#pragma once

// Kubert's V function on (Q/Z)_{prime to p}, the digit-sum brackets [x]_{p,r},
// and exhaustive verifiers for the digit-sum lemmas behind the finite
// monodromy theorems for 3 x 13 (p = 2), 4 x 5 and 28^x (p = 3).
//
// V(a / (p^r - 1)) = [a]_r / (r (p - 1)), with [a]_r the base-p digit sum of
// a reduced into [0, p^r - 1).

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"
#include "parallel.hpp"
#include "qmodz.hpp"
#include "report.hpp"

namespace hypcheck::kubert {

using Rational = boost::rational<std::int64_t>;

inline std::uint64_t ipow(std::uint64_t p, unsigned r)
{
    std::uint64_t v = 1;
    for (unsigned i = 0; i < r; ++i) {
        if (v > std::numeric_limits<std::uint64_t>::max() / p)
            throw error(errc::overflow, "p^r exceeds 64 bits");
        v *= p;
    }
    return v;
}

namespace detail {

inline constexpr std::uint64_t base3_block = 59049; // 3^10

inline const std::array<std::uint8_t, base3_block>& base3_table()
{
    static const auto table = [] {
        std::array<std::uint8_t, base3_block> t{};
        for (std::uint64_t n = 1; n < base3_block; ++n)
            t[n] = static_cast<std::uint8_t>(t[n / 3] + n % 3);
        return t;
    }();
    return table;
}

} // namespace detail

inline unsigned digit_sum(std::uint64_t n, unsigned p)
{
    if (p == 2)
        return static_cast<unsigned>(std::popcount(n));
    if (p == 3) {
        const auto& t = detail::base3_table();
        unsigned s = 0;
        for (; n != 0; n /= detail::base3_block)
            s += t[n % detail::base3_block];
        return s;
    }
    unsigned s = 0;
    for (; n != 0; n /= p)
        s += static_cast<unsigned>(n % p);
    return s;
}

/// [x]_{p,r}: digit sum of x reduced into [0, p^r - 1).
inline unsigned bracket(std::int64_t x, unsigned p, unsigned r)
{
    if (r < 1)
        throw error(errc::r_out_of_range, "bracket needs r >= 1");
    auto mod = static_cast<std::int64_t>(ipow(p, r) - 1);
    auto v = x % mod;
    if (v < 0)
        v += mod;
    return digit_sum(static_cast<std::uint64_t>(v), p);
}

inline unsigned multiplicative_order(std::uint64_t p, std::uint64_t m)
{
    if (m == 1)
        return 1;
    std::uint64_t v = p % m;
    for (unsigned r = 1; r < 4096; ++r, v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * p % m))
        if (v == 1)
            return r;
    throw error(errc::not_coprime, "p is not a unit mod m");
}

/// V at an explicit level: x = a / (p^r - 1).
inline Rational V_at_level(std::int64_t a, unsigned p, unsigned r)
{
    return Rational(bracket(a, p, r), static_cast<std::int64_t>(r) * (p - 1));
}

inline Rational V(const QmodZ& x, unsigned p)
{
    if (x.denominator() % p == 0)
        throw error(errc::divisible_by_p, "V needs a denominator prime to p");
    if (x.is_zero())
        return Rational(0);
    unsigned r = multiplicative_order(p, static_cast<std::uint64_t>(x.denominator()));
    auto full = ipow(p, r) - 1;
    auto a = static_cast<unsigned __int128>(x.numerator()) * (full / static_cast<std::uint64_t>(x.denominator()));
    return Rational(digit_sum(static_cast<std::uint64_t>(a), p), static_cast<std::int64_t>(r) * (p - 1));
}

/// (A_r, B_r): (2^r-1)/3, 2(2^r-1)/3 for even r; (2^{r+1}-1)/3, (2^r-2)/3 for odd r.
inline std::pair<std::uint64_t, std::uint64_t> sequence_AB(unsigned r)
{
    if (r < 1 || r > 62)
        throw error(errc::r_out_of_range, "sequence_AB needs 1 <= r <= 62");
    if (r % 2 == 0)
        return {(ipow(2, r) - 1) / 3, 2 * (ipow(2, r) - 1) / 3};
    return {(ipow(2, r + 1) - 1) / 3, (ipow(2, r) - 2) / 3};
}

/// A_r = 2^s A_{r-s} + A_s (s even), A_r = 2^s B_{r-s} + A_s (s odd), and the B analogues.
inline VerificationReport sequence_recurrence_check(unsigned r_max)
{
    VerificationReport rep;
    rep.lemma = "sequence_AB_recurrence";
    rep.p = 2;
    rep.r = static_cast<int>(r_max);
    for (unsigned r = 2; r <= r_max; ++r)
        for (unsigned s = 1; s < r; ++s) {
            auto [ar, br] = sequence_AB(r);
            auto [ars, brs] = sequence_AB(r - s);
            auto [as, bs] = sequence_AB(s);
            bool ok = s % 2 == 0 ? (ar == (ars << s) + as && br == (brs << s) + bs)
                                 : (ar == (brs << s) + as && br == (ars << s) + bs);
            rep.record(static_cast<std::int64_t>(r * 100 + s), ok ? 0 : 1, 0);
        }
    return rep;
}

namespace detail {

/// Runs body(x, parts) over [lo, hi) in contiguous chunks and merges the
/// per-chunk copies of `proto` in chunk order.
template <class Body>
ReportSet run_exhaustive(std::string name, const std::vector<VerificationReport>& proto, std::uint64_t lo,
                         std::uint64_t hi, unsigned workers, Body body)
{
    Stopwatch sw;
    workers = std::max(1u, workers);
    std::vector<std::vector<VerificationReport>> chunks(workers, proto);
    std::uint64_t n = hi > lo ? hi - lo : 0;
    parallel_chunks(n, workers, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
        auto& parts = chunks[c];
        for (std::uint64_t x = lo + b; x < lo + e; ++x)
            body(x, parts);
    });
    ReportSet out{std::move(name), proto};
    for (const auto& parts : chunks)
        for (std::size_t i = 0; i < parts.size(); ++i)
            out.parts[i].merge(parts[i]);
    double ms = sw.elapsed_ms();
    for (auto& p : out.parts)
        p.elapsed_ms = ms;
    return out;
}

inline VerificationReport proto(std::string lemma, unsigned p, unsigned r, std::string variant, std::int64_t scale = 1)
{
    VerificationReport rep;
    rep.lemma = std::move(lemma);
    rep.p = p;
    rep.r = static_cast<int>(r);
    rep.variant = std::move(variant);
    rep.scale = scale;
    return rep;
}

inline void require_r(unsigned r, unsigned lo, unsigned hi)
{
    if (r < lo || r > hi)
        throw error(errc::r_out_of_range,
                    "r = " + std::to_string(r) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace detail

inline constexpr unsigned lemma_3x13_max_r = 30;
inline constexpr unsigned lemma_base3_max_r = 18;

/// [13x+A_r] + [13x+B_r] <= [x] + [x+A_r] + [x+B_r] + c over 0 <= x < 2^r, with
/// c = 4 always, c = 2 unless the leading four digits are 0100/1000/1001 (r >= 4),
/// c = 1 when the leading two digits are 00 (r >= 2), c = 0 when they read 1010 (r >= 4).
inline ReportSet verify_lemma_3x13(unsigned r, unsigned workers = 1)
{
    detail::require_r(r, 1, lemma_3x13_max_r);
    auto [a, b] = sequence_AB(r);
    std::vector<VerificationReport> proto{
        detail::proto("lemma_3x13", 2, r, "main+4"), detail::proto("lemma_3x13", 2, r, "refined+2"),
        detail::proto("lemma_3x13", 2, r, "refined+1"), detail::proto("lemma_3x13", 2, r, "refined+0")};
    return detail::run_exhaustive(
        "lemma_3x13", proto, 0, std::uint64_t{1} << r, workers, [r, a, b](std::uint64_t x, auto& parts) {
            auto lhs = static_cast<std::int64_t>(std::popcount(13 * x + a) + std::popcount(13 * x + b));
            auto rhs = static_cast<std::int64_t>(std::popcount(x) + std::popcount(x + a) + std::popcount(x + b));
            parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + 4);
            if (r >= 4) {
                auto top4 = x >> (r - 4);
                if (top4 != 0b0100 && top4 != 0b1000 && top4 != 0b1001)
                    parts[1].record(static_cast<std::int64_t>(x), lhs, rhs + 2);
                if (top4 == 0b1010)
                    parts[3].record(static_cast<std::int64_t>(x), lhs, rhs);
            }
            if (r >= 2 && x < (std::uint64_t{1} << (r - 2)))
                parts[2].record(static_cast<std::int64_t>(x), lhs, rhs + 1);
        });
}

/// [5x+A] + [10x+A] <= [x] + [x+A] + [2x+A] + 2 over 0 <= x < 3^r, A = (3^r-1)/2;
/// with +0 when the leading two digits are not 10, 11 or 21 (r >= 2).
inline ReportSet verify_lemma_4x5(unsigned r, unsigned workers = 1)
{
    detail::require_r(r, 1, lemma_base3_max_r);
    const std::uint64_t n = ipow(3, r);
    const std::uint64_t a = (n - 1) / 2;
    const std::uint64_t lead = r >= 2 ? ipow(3, r - 2) : 1;
    std::vector<VerificationReport> proto{detail::proto("lemma_4x5", 3, r, "main+2"),
                                          detail::proto("lemma_4x5", 3, r, "refined+0")};
    return detail::run_exhaustive("lemma_4x5", proto, 0, n, workers, [=](std::uint64_t x, auto& parts) {
        auto lhs = static_cast<std::int64_t>(digit_sum(5 * x + a, 3) + digit_sum(10 * x + a, 3));
        auto rhs = static_cast<std::int64_t>(digit_sum(x, 3) + digit_sum(x + a, 3) + digit_sum(2 * x + a, 3));
        parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + 2);
        if (r >= 2) {
            auto top2 = x / lead; // two base-3 digits d1 d0 as 3 d1 + d0
            if (top2 != 3 && top2 != 4 && top2 != 7)
                parts[1].record(static_cast<std::int64_t>(x), lhs, rhs);
        }
    });
}

/// Scope guard: the +0 bound restricted to leading digits 10, 11, 21, where it is not claimed.
inline VerificationReport lemma_4x5_excluded_refinement(unsigned r)
{
    detail::require_r(r, 2, lemma_base3_max_r);
    const std::uint64_t n = ipow(3, r);
    const std::uint64_t a = (n - 1) / 2;
    const std::uint64_t lead = ipow(3, r - 2);
    auto rep = detail::proto("lemma_4x5", 3, r, "refined+0-on-excluded-leading-digits");
    for (std::uint64_t x = 0; x < n; ++x) {
        auto top2 = x / lead;
        if (top2 != 3 && top2 != 4 && top2 != 7)
            continue;
        auto lhs = static_cast<std::int64_t>(digit_sum(5 * x + a, 3) + digit_sum(10 * x + a, 3));
        auto rhs = static_cast<std::int64_t>(digit_sum(x, 3) + digit_sum(x + a, 3) + digit_sum(2 * x + a, 3));
        rep.record(static_cast<std::int64_t>(x), lhs, rhs);
    }
    return rep;
}

/// [14x+A] <= [x] + [2x+A] + 1 over 0 <= x < 3^r, A = (3^r-1)/2.
inline ReportSet verify_lemma_28(unsigned r, unsigned workers = 1)
{
    detail::require_r(r, 1, lemma_base3_max_r);
    const std::uint64_t n = ipow(3, r);
    const std::uint64_t a = (n - 1) / 2;
    std::vector<VerificationReport> proto{detail::proto("lemma_28", 3, r, "main+1")};
    return detail::run_exhaustive("lemma_28", proto, 0, n, workers, [=](std::uint64_t x, auto& parts) {
        auto lhs = static_cast<std::int64_t>(digit_sum(14 * x + a, 3));
        auto rhs = static_cast<std::int64_t>(digit_sum(x, 3) + digit_sum(2 * x + a, 3));
        parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + 1);
    });
}

enum class DigitFamily { f3x13, f4x5, f28 };

inline std::string to_string(DigitFamily f)
{
    switch (f) {
    case DigitFamily::f3x13: return "3x13";
    case DigitFamily::f4x5: return "4x5";
    case DigitFamily::f28: return "28";
    }
    return "?";
}

inline unsigned base_of(DigitFamily f) { return f == DigitFamily::f3x13 ? 2u : 3u; }

namespace detail {

// Bracket inequality over 0 < x < p^r - 1 with a constant slack `extra`.
inline ReportSet bracket_inequality(DigitFamily family, unsigned r, std::int64_t extra, std::string lemma,
                                    unsigned workers)
{
    const unsigned p = base_of(family);
    const std::uint64_t mod = ipow(p, r) - 1;
    auto br = [mod, p](std::uint64_t v) { return static_cast<std::int64_t>(digit_sum(v % mod, p)); };
    std::vector<VerificationReport> proto{detail::proto(lemma, p, r, "+" + std::to_string(extra))};
    switch (family) {
    case DigitFamily::f3x13: {
        auto [a, b] = sequence_AB(r);
        return run_exhaustive(lemma, proto, 1, mod, workers, [=](std::uint64_t x, auto& parts) {
            auto lhs = br(13 * x + a) + br(13 * x + b);
            auto rhs = br(x) + br(x + a) + br(x + b);
            parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + extra);
        });
    }
    case DigitFamily::f4x5: {
        const std::uint64_t a = mod / 2;
        return run_exhaustive(lemma, proto, 1, mod, workers, [=](std::uint64_t x, auto& parts) {
            auto lhs = br(5 * x + a) + br(10 * x + a);
            auto rhs = br(x) + br(x + a) + br(2 * x + a);
            parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + extra);
        });
    }
    case DigitFamily::f28: {
        const std::uint64_t a = mod / 2;
        return run_exhaustive(lemma, proto, 1, mod, workers, [=](std::uint64_t x, auto& parts) {
            auto lhs = br(14 * x + a);
            auto rhs = br(x) + br(2 * x + a);
            parts[0].record(static_cast<std::int64_t>(x), lhs, rhs + extra);
        });
    }
    }
    throw error(errc::invalid_spec, "unknown family");
}

inline void require_family_r(DigitFamily family, unsigned r, unsigned min_r)
{
    require_r(r, min_r, family == DigitFamily::f3x13 ? lemma_3x13_max_r : lemma_base3_max_r);
    if (family == DigitFamily::f3x13 && r % 2 != 0)
        throw error(errc::parity_violation, "the base-2 bracket statements need even r");
}

} // namespace detail

/// The bracket corollaries: slack +5 (3x13, even r), +6 (4x5), +3 (28).
inline ReportSet verify_bracket_corollaries(DigitFamily family, unsigned r, unsigned workers = 1)
{
    detail::require_family_r(family, r, family == DigitFamily::f3x13 ? 2 : 1);
    std::int64_t extra = family == DigitFamily::f3x13 ? 5 : family == DigitFamily::f4x5 ? 6 : 3;
    return detail::bracket_inequality(family, r, extra, "corollary_" + to_string(family), workers);
}

/// (V-main1/2/3): the bracket inequalities with no slack; r even for 3x13, r >= 2 otherwise.
inline ReportSet vmain_check(DigitFamily family, unsigned r, unsigned workers = 1)
{
    detail::require_family_r(family, r, 2);
    const char* name = family == DigitFamily::f3x13 ? "vmain1" : family == DigitFamily::f4x5 ? "vmain2" : "vmain3";
    return detail::bracket_inequality(family, r, 0, name, workers);
}

/// [x (p^{kr}-1)/(p^r-1)]_{kr} = k [x]_r.
inline bool repunit_scaling_check(std::uint64_t x, unsigned r, unsigned k, unsigned p)
{
    if (r < 1 || k < 1)
        throw error(errc::r_out_of_range, "repunit scaling needs r, k >= 1");
    auto small = ipow(p, r) - 1;
    auto big = ipow(p, k * r) - 1;
    if (x >= small)
        throw error(errc::invalid_spec, "x must lie in [0, p^r - 1)");
    auto rep = big / small;
    auto lhs = bracket(static_cast<std::int64_t>(x * rep), p, k * r);
    return lhs == k * bracket(static_cast<std::int64_t>(x), p, r);
}

/// Random (x, r, k) cases with kr within 64-bit range; counterexamples carry x.
inline VerificationReport repunit_scaling_fuzz(unsigned p, std::uint64_t cases, std::uint64_t seed)
{
    auto rep = detail::proto("repunit_scaling_fuzz", p, 0, "seed=" + std::to_string(seed));
    const unsigned max_kr = p == 2 ? 62 : 39;
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < cases; ++i) {
        unsigned r = 1 + static_cast<unsigned>(rng() % 20);
        unsigned kmax = max_kr / r;
        if (kmax == 0)
            continue;
        unsigned k = 1 + static_cast<unsigned>(rng() % kmax);
        std::uint64_t bound = ipow(p, r) - 1;
        std::uint64_t x = bound == 0 ? 0 : rng() % bound;
        if (bound == 0)
            continue;
        rep.record(static_cast<std::int64_t>(x), repunit_scaling_check(x, r, k, p) ? 0 : 1, 0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// V-function identities, evaluated through the reducing V(QmodZ) so that the
// minimal level is recomputed for every argument.

/// V(x) + V(-x) = 1 for x = a/(p^r-1) != 0.
inline VerificationReport identity_negation(unsigned p, unsigned r)
{
    auto rep = detail::proto("V_negation", p, r, "V(x)+V(-x)=1");
    auto m = static_cast<std::int64_t>(ipow(p, r) - 1);
    for (std::int64_t a = 1; a < m; ++a) {
        QmodZ x(a, m);
        rep.record(a, V(x, p) + V(-x, p) == Rational(1) ? 0 : 1, 0);
    }
    return rep;
}

/// p = 2: V(x) + V(x+1/3) + V(x+2/3) = V(3x) + 1.
inline VerificationReport identity_triplication(unsigned r)
{
    auto rep = detail::proto("V_triplication", 2, r, "V(x)+V(x+1/3)+V(x+2/3)=V(3x)+1");
    auto m = static_cast<std::int64_t>(ipow(2, r) - 1);
    const QmodZ third(1, 3), two_thirds(2, 3);
    for (std::int64_t a = 0; a < std::max<std::int64_t>(m, 1); ++a) {
        QmodZ x(a, std::max<std::int64_t>(m, 1));
        bool ok = V(x, 2) + V(x + third, 2) + V(x + two_thirds, 2) == V(x.times(3), 2) + Rational(1);
        rep.record(a, ok ? 0 : 1, 0);
    }
    return rep;
}

/// p = 3: V(x) + V(x+1/2) = V(2x) + 1/2.
inline VerificationReport identity_duplication(unsigned r)
{
    auto rep = detail::proto("V_duplication", 3, r, "V(x)+V(x+1/2)=V(2x)+1/2");
    auto m = static_cast<std::int64_t>(ipow(3, r) - 1);
    const QmodZ half(1, 2);
    for (std::int64_t a = 0; a < m; ++a) {
        QmodZ x(a, m);
        bool ok = V(x, 3) + V(x + half, 3) == V(x.times(2), 3) + Rational(1, 2);
        rep.record(a, ok ? 0 : 1, 0);
    }
    return rep;
}

/// V computed at level r and at level kr (through the repunit) equals the reduced V.
inline VerificationReport identity_level_consistency(unsigned p, unsigned r, unsigned k)
{
    auto rep = detail::proto("V_well_defined", p, r, "levels r and " + std::to_string(k) + "r");
    auto m = ipow(p, r) - 1;
    auto rep_unit = (ipow(p, k * r) - 1) / m;
    for (std::uint64_t a = 0; a < m; ++a) {
        auto reduced = V(QmodZ(static_cast<std::int64_t>(a), static_cast<std::int64_t>(m)), p);
        bool ok = V_at_level(static_cast<std::int64_t>(a), p, r) == reduced &&
                  V_at_level(static_cast<std::int64_t>(a * rep_unit), p, k * r) == reduced;
        rep.record(static_cast<std::int64_t>(a), ok ? 0 : 1, 0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Finite-monodromy criteria, checked in integers at a fixed level r: every V
// value is [.]_r / (r(p-1)), so reports use scale r(p-1).

namespace detail {

/// The hand-check set (1/N)Z lives at level ord_N(p).
inline unsigned hand_level(unsigned p, std::uint64_t n) { return multiplicative_order(p, n); }

} // namespace detail

/// V(ABx) + 1 >= V(Ax) + V(Bx) for nonzero x with denominator dividing p^r - 1,
/// r <= r_max, plus x in (1/AB)Z.
inline ReportSet check_criterion_AxB(unsigned p, std::uint64_t a_par, std::uint64_t b_par, unsigned r_max,
                                     unsigned workers = 1)
{
    if ((a_par * b_par) % p == 0)
        throw error(errc::divisible_by_p, "A B must be prime to p");
    ReportSet out{"criterion_AxB", {}};
    auto run_level = [&](unsigned r, std::uint64_t stride, std::string variant) {
        auto scale = static_cast<std::int64_t>(r * (p - 1));
        auto mod = ipow(p, r) - 1;
        std::vector<VerificationReport> proto{detail::proto("criterion_AxB", p, r, std::move(variant), scale)};
        auto set = detail::run_exhaustive("", proto, 1, mod / stride == 0 ? 1 : mod / stride, workers,
                                          [=](std::uint64_t i, auto& parts) {
                                              std::uint64_t x = i * stride;
                                              auto lhs = static_cast<std::int64_t>(digit_sum(a_par * x % mod, p) +
                                                                                   digit_sum(b_par * x % mod, p));
                                              auto rhs = static_cast<std::int64_t>(
                                                  digit_sum(a_par * b_par % mod * x % mod, p)) + scale;
                                              parts[0].record(static_cast<std::int64_t>(x), lhs, rhs);
                                          });
        out.parts.push_back(set.parts[0]);
    };
    for (unsigned r = 1; r <= r_max; ++r)
        run_level(r, 1, "denominator p^r-1");
    auto n = a_par * b_par;
    unsigned hr = detail::hand_level(p, n);
    run_level(hr, (ipow(p, hr) - 1) / n, "hand-check (1/" + std::to_string(n) + ")Z");
    return out;
}

/// V(Ax) + V(Ax/(p1 p2)) + V(-x) >= V(Ax/p1) + V(Ax/p2) for x with denominator
/// dividing p^r - 1, r <= r_max, plus x in (1/A)Z.
inline ReportSet check_criterion_Atimes(unsigned p, std::uint64_t p1, std::uint64_t p2, std::uint64_t a_par,
                                        unsigned r_max, unsigned workers = 1)
{
    if (a_par % p == 0)
        throw error(errc::divisible_by_p, "A must be prime to p");
    {
        std::uint64_t rest = a_par;
        for (auto q : {p1, p2}) {
            if (q < 2 || rest % q != 0)
                throw error(errc::family_constraint, "A must be divisible by p1 and p2");
            while (rest % q == 0)
                rest /= q;
        }
        if (rest != 1 || p1 == p2)
            throw error(errc::family_constraint, "A must have exactly the prime divisors p1, p2");
    }
    ReportSet out{"criterion_Atimes", {}};
    auto run_level = [&](unsigned r, std::uint64_t stride, std::string variant) {
        auto scale = static_cast<std::int64_t>(r * (p - 1));
        auto mod = ipow(p, r) - 1;
        std::vector<VerificationReport> proto{detail::proto("criterion_Atimes", p, r, std::move(variant), scale)};
        auto count = mod / stride;
        auto set = detail::run_exhaustive("", proto, 0, count, workers, [=](std::uint64_t i, auto& parts) {
            std::uint64_t x = i * stride;
            auto br = [&](std::uint64_t c) { return static_cast<std::int64_t>(digit_sum(c % mod * x % mod, p)); };
            auto big = br(a_par) + br(a_par / (p1 * p2)) + static_cast<std::int64_t>(digit_sum((mod - x) % mod, p));
            auto small = br(a_par / p1) + br(a_par / p2);
            parts[0].record(static_cast<std::int64_t>(x), small, big);
        });
        out.parts.push_back(set.parts[0]);
    };
    for (unsigned r = 1; r <= r_max; ++r)
        run_level(r, 1, "denominator p^r-1");
    unsigned hr = detail::hand_level(p, a_par);
    run_level(hr, (ipow(p, hr) - 1) / a_par, "hand-check (1/" + std::to_string(a_par) + ")Z");
    return out;
}

/// Everything the base-case computations of one family consist of, for r <= r_max.
inline ReportSet verify_digit_family(DigitFamily family, unsigned r_max, unsigned workers = 1)
{
    detail::require_r(r_max, 1, family == DigitFamily::f3x13 ? lemma_3x13_max_r : lemma_base3_max_r);
    ReportSet out{"digit_lemma_" + to_string(family), {}};
    for (unsigned r = 1; r <= r_max; ++r) {
        switch (family) {
        case DigitFamily::f3x13:
            out.append(verify_lemma_3x13(r, workers));
            if (r % 2 == 0) {
                out.append(verify_bracket_corollaries(family, r, workers));
                out.append(vmain_check(family, r, workers));
            }
            break;
        case DigitFamily::f4x5:
            out.append(verify_lemma_4x5(r, workers));
            out.append(verify_bracket_corollaries(family, r, workers));
            if (r >= 2)
                out.append(vmain_check(family, r, workers));
            break;
        case DigitFamily::f28:
            out.append(verify_lemma_28(r, workers));
            out.append(verify_bracket_corollaries(family, r, workers));
            if (r >= 2)
                out.append(vmain_check(family, r, workers));
            break;
        }
    }
    return out;
}

} // namespace hypcheck::kubert
