#pragma once

// Character data of hypergeometric sheaves as residues mod M (chi <-> a/M in
// Q/Z), with the induction, self-duality, determinant and wild-inertia tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "characters.hpp"
#include "errors.hpp"
#include "qmodz.hpp"

namespace hypcheck::hyp {

struct HypSpec {
    unsigned p = 0;
    std::int64_t M = 1;
    std::vector<std::int64_t> upstairs;
    std::vector<std::int64_t> downstairs;
    std::string family = "custom";
    std::int64_t A = 0;
    std::int64_t B = 0;

    std::size_t n() const noexcept { return upstairs.size(); }
    std::size_t m() const noexcept { return downstairs.size(); }

    std::vector<QmodZ> up() const { return as_qmodz(upstairs); }
    std::vector<QmodZ> down() const { return as_qmodz(downstairs); }

    /// Reduces residues and checks gcd(M, p) = 1, n > m and disjointness.
    void validate()
    {
        if (M < 1 || std::gcd<std::int64_t>(M, p) != 1)
            throw error(errc::divisible_by_p, "modulus must be prime to p");
        for (auto* v : {&upstairs, &downstairs})
            for (auto& r : *v)
                r = ((r % M) + M) % M;
        if (n() <= m())
            throw error(errc::invalid_spec, "need n > m");
        for (auto r : downstairs)
            if (std::find(upstairs.begin(), upstairs.end(), r) != upstairs.end())
                throw error(errc::invalid_spec, "upstairs and downstairs share residue " + std::to_string(r));
    }

    /// Builds a spec from Q/Z data; M is the lcm of all denominators.
    static HypSpec from_qmodz(unsigned p, const std::vector<QmodZ>& up, const std::vector<QmodZ>& down)
    {
        HypSpec s;
        s.p = p;
        for (const auto* v : {&up, &down})
            for (const auto& x : *v)
                s.M = std::lcm(s.M, x.denominator());
        for (const auto& x : up)
            s.upstairs.push_back(x.numerator() * (s.M / x.denominator()));
        for (const auto& x : down)
            s.downstairs.push_back(x.numerator() * (s.M / x.denominator()));
        s.validate();
        return s;
    }

private:
    std::vector<QmodZ> as_qmodz(const std::vector<std::int64_t>& v) const
    {
        std::vector<QmodZ> out;
        out.reserve(v.size());
        for (auto r : v)
            out.emplace_back(r, M);
        return out;
    }
};

namespace detail {

inline bool is_power_of(std::int64_t n, std::int64_t p)
{
    if (n < 1)
        return false;
    while (n % p == 0)
        n /= p;
    return n == 1;
}

inline std::vector<QmodZ> sorted(std::vector<QmodZ> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline bool same_multiset(std::vector<QmodZ> a, std::vector<QmodZ> b)
{
    return a.size() == b.size() && sorted(std::move(a)) == sorted(std::move(b));
}

inline std::vector<QmodZ> shifted(const std::vector<QmodZ>& v, const QmodZ& by)
{
    std::vector<QmodZ> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(x + by);
    return out;
}

inline std::vector<QmodZ> distinct(std::vector<QmodZ> v)
{
    v = sorted(std::move(v));
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::vector<QmodZ> concat(std::vector<QmodZ> a, const std::vector<QmodZ>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline void require_prime_to(std::int64_t v, unsigned p, const char* what)
{
    if (v % p == 0)
        throw error(errc::divisible_by_p, std::string(what) + " must be prime to p");
}

} // namespace detail

/// Upstairs: all chi rho with chi^A = rho^B = 1 nontrivial; downstairs: the trivial character.
inline HypSpec build_AxB(unsigned p, std::int64_t A, std::int64_t B)
{
    if (p < 2)
        throw error(errc::unsupported_characteristic, "p must be prime");
    if (A < 3 || B < 3)
        throw error(errc::family_constraint, "need A, B >= 3");
    if (std::gcd(A, B) != 1)
        throw error(errc::not_coprime, "need gcd(A, B) = 1");
    detail::require_prime_to(A, p, "A");
    detail::require_prime_to(B, p, "B");
    HypSpec s;
    s.p = p;
    s.M = A * B;
    s.family = "AxB";
    s.A = A;
    s.B = B;
    for (std::int64_t a = 1; a < A; ++a)
        for (std::int64_t b = 1; b < B; ++b)
            s.upstairs.push_back((a * B + b * A) % s.M);
    s.downstairs = {0};
    s.validate();
    return s;
}

/// Upstairs: the phi(A) characters of exact order A; downstairs: the trivial character.
inline HypSpec build_Atimes(unsigned p, std::int64_t A)
{
    if (A < 7)
        throw error(errc::family_constraint, "need A >= 7");
    detail::require_prime_to(A, p, "A");
    HypSpec s;
    s.p = p;
    s.M = A;
    s.family = "Atimes";
    s.A = A;
    for (std::int64_t a = 1; a < A; ++a)
        if (std::gcd(a, A) == 1)
            s.upstairs.push_back(a);
    s.downstairs = {0};
    s.validate();
    return s;
}

/// The character a/M as a MultChar on a field with M | q - 1.
inline MultChar to_mult_char(const FieldTable& field, std::int64_t residue, std::int64_t M)
{
    if (M < 1 || field.unit_order() % static_cast<std::uint64_t>(M) != 0)
        throw error(errc::order_not_dividing, "M must divide q - 1");
    return MultChar(field, residue * static_cast<std::int64_t>(field.unit_order() / static_cast<std::uint64_t>(M)));
}

inline std::vector<MultChar> upstairs_chars(const HypSpec& s, const FieldTable& field)
{
    std::vector<MultChar> out;
    for (auto r : s.upstairs)
        out.push_back(to_mult_char(field, r, s.M));
    return out;
}

/// All N >= 2 prime to p, dividing gcd(n, m), with both lists stable under every Lambda of order | N.
inline std::vector<std::int64_t> kummer_induction_candidates(const HypSpec& s)
{
    std::vector<std::int64_t> out;
    auto g = std::gcd(static_cast<std::int64_t>(s.n()), static_cast<std::int64_t>(s.m()));
    auto up = s.up();
    auto down = s.down();
    for (std::int64_t N = 2; N <= g; ++N) {
        if (g % N != 0 || N % s.p == 0)
            continue;
        bool stable = true;
        for (std::int64_t k = 1; k < N && stable; ++k) {
            QmodZ lam(k, N);
            stable = detail::same_multiset(detail::shifted(up, lam), up) &&
                     detail::same_multiset(detail::shifted(down, lam), down);
        }
        if (stable)
            out.push_back(N);
    }
    return out;
}

struct BelyiMatch {
    char kind = 'a';
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::int64_t d0 = 0;
    unsigned r = 0;
    QmodZ Lambda;
    QmodZ sigma;

    friend bool operator==(const BelyiMatch&, const BelyiMatch&) = default;
};

inline void to_json(nlohmann::json& j, const BelyiMatch& b)
{
    j = nlohmann::json{{"case", std::string(1, b.kind)}, {"A", b.A},         {"B", b.B},
                       {"d0", b.d0},                     {"r", b.r},         {"Lambda", b.Lambda.str()},
                       {"sigma", b.sigma.str()}};
}

/// Splits v = d0 p^r with p !| d0; r = 0 if p !| v.
inline std::pair<std::int64_t, unsigned> split_p_part(std::int64_t v, unsigned p)
{
    unsigned r = 0;
    while (v != 0 && v % p == 0) {
        v /= p;
        ++r;
    }
    return {v, r};
}

/// Spec data realizing one Belyi case; used for round trips.
inline std::pair<std::vector<QmodZ>, std::vector<QmodZ>> belyi_case_data(char kind, std::int64_t A, std::int64_t B,
                                                                         unsigned p, const QmodZ& Lambda,
                                                                         const QmodZ& sigma)
{
    using detail::concat;
    if (kind == 'a') {
        auto [d0, r] = split_p_part(A + B, p);
        return {concat(Lambda.roots(A), sigma.roots(B)), (Lambda + sigma).divide_by_power(p, r).roots(d0)};
    }
    if (kind == 'b') {
        auto [d0, r] = split_p_part(B, p);
        return {(Lambda + sigma).roots(A + B), concat(Lambda.roots(A), sigma.divide_by_power(p, r).roots(d0))};
    }
    auto [d0, r] = split_p_part(A, p);
    return {(Lambda + sigma).roots(A + B), concat(sigma.roots(B), Lambda.divide_by_power(p, r).roots(d0))};
}

/// Every (case, A, B, Lambda, sigma) whose data reproduces the spec's lists.
/// The upstairs count forces A + B = n, so the search is exhaustive.
inline std::vector<BelyiMatch> belyi_induction_match(const HypSpec& s)
{
    std::vector<BelyiMatch> out;
    const auto n = static_cast<std::int64_t>(s.n());
    const auto m = static_cast<std::int64_t>(s.m());
    const unsigned p = s.p;
    auto up = s.up();
    auto down = s.down();
    auto up_distinct = detail::distinct(up);
    auto down_distinct = detail::distinct(down);

    auto try_match = [&](char kind, std::int64_t A, std::int64_t B, const QmodZ& lam, const QmodZ& sig) {
        auto [u, d] = belyi_case_data(kind, A, B, p, lam, sig);
        if (detail::same_multiset(u, up) && detail::same_multiset(d, down)) {
            auto [d0, r] = split_p_part(kind == 'a' ? A + B : kind == 'b' ? B : A, p);
            BelyiMatch bm{kind, A, B, d0, r, lam, sig};
            if (std::find(out.begin(), out.end(), bm) == out.end())
                out.push_back(bm);
        }
    };

    for (std::int64_t A = 1; A < n; ++A) {
        const std::int64_t B = n - A;
        // (a): A, B prime to p, A + B = d0 p^r, r >= 1, m = d0.
        if (A % p != 0 && B % p != 0) {
            auto [d0, r] = split_p_part(n, p);
            if (r >= 1 && d0 == m) {
                std::vector<QmodZ> lams, sigs;
                for (const auto& x : up_distinct) {
                    lams.push_back(x.times(A));
                    sigs.push_back(x.times(B));
                }
                for (const auto& lam : detail::distinct(lams))
                    for (const auto& sig : detail::distinct(sigs))
                        try_match('a', A, B, lam, sig);
            }
        }
        // (b): A prime to p, B = d0 p^r, m = A + d0.  (c): the mirror image.
        for (char kind : {'b', 'c'}) {
            std::int64_t tame = kind == 'b' ? A : B;
            std::int64_t wild = kind == 'b' ? B : A;
            auto [d0, r] = split_p_part(wild, p);
            if (tame % p == 0 || r < 1 || m != tame + d0)
                continue;
            std::vector<QmodZ> prods, tames;
            for (const auto& x : up_distinct)
                prods.push_back(x.times(n));
            for (const auto& y : down_distinct)
                tames.push_back(y.times(tame));
            for (const auto& prod : detail::distinct(prods))
                for (const auto& t : detail::distinct(tames)) {
                    // t is Lambda in case (b), sigma in case (c)
                    if (kind == 'b')
                        try_match(kind, A, B, t, prod - t);
                    else
                        try_match(kind, A, B, prod - t, t);
                }
        }
    }
    return out;
}

enum class Verdict { not_induced, inconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::not_induced ? "NOT_INDUCED" : "INCONCLUSIVE"; }

struct Primitivity {
    Verdict verdict = Verdict::inconclusive;
    std::string reason;
    std::vector<std::int64_t> kummer;
    std::vector<BelyiMatch> belyi;
    bool tensor_indecomposable_hypotheses = false;
};

/// Type (n, 1) with n not a power of p, or n > m > 1 with n a power of p,
/// plus empty searches, rules out geometric induction.
inline Primitivity primitivity_verdict(const HypSpec& s)
{
    if (s.m() < 1)
        throw error(errc::invalid_spec, "primitivity verdict needs m >= 1");
    Primitivity out;
    out.kummer = kummer_induction_candidates(s);
    out.belyi = belyi_induction_match(s);
    const auto n = static_cast<std::int64_t>(s.n());
    const auto m = static_cast<std::int64_t>(s.m());
    const bool pow_p = detail::is_power_of(n, s.p);
    bool applies = false;
    if (m == 1 && n >= 2 && !pow_p) {
        applies = true;
        out.reason = "type (n,1) with n not a power of p";
    } else if (n > m && m > 1 && pow_p) {
        applies = true;
        out.reason = "type (n,m), n > m > 1, n a power of p";
    } else {
        out.reason = "no primitivity criterion applies";
    }
    if (applies && out.kummer.empty() && out.belyi.empty())
        out.verdict = Verdict::not_induced;
    else if (applies)
        out.reason += "; search found candidates";

    auto d = s.down();
    bool distinct_down = detail::distinct(d).size() == d.size();
    auto [odd, e] = split_p_part(n, s.p);
    bool even_power = odd == 1 && e % 2 == 0; // includes n = 1
    out.tensor_indecomposable_hypotheses =
        n > m && m > 0 && distinct_down && ((n != 4 && !even_power) || (even_power && m > 1));
    return out;
}

enum class Duality { orthogonal, symplectic, none };

inline std::string to_string(Duality d)
{
    switch (d) {
    case Duality::orthogonal: return "orthogonal";
    case Duality::symplectic: return "symplectic";
    case Duality::none: return "none";
    }
    return "?";
}

struct SelfDuality {
    bool is_selfdual = false;
    Duality kind = Duality::none;
    bool upstairs_negation_stable = false;
    bool downstairs_negation_stable = false;
};

/// Both lists must be stable under chi -> chi-bar; the wild part of rank
/// N = n - m is then self dual iff p = 2 or N is even; orthogonal for N odd,
/// symplectic for N even.
inline SelfDuality selfdual_test(const HypSpec& s)
{
    SelfDuality out;
    auto neg = [](std::vector<QmodZ> v) {
        for (auto& x : v)
            x = -x;
        return v;
    };
    auto up = s.up();
    auto down = s.down();
    out.upstairs_negation_stable = detail::same_multiset(neg(up), up);
    out.downstairs_negation_stable = detail::same_multiset(neg(down), down);
    auto N = s.n() - s.m();
    if (!out.upstairs_negation_stable || !out.downstairs_negation_stable)
        return out;
    if (N % 2 == 0) {
        out.is_selfdual = true;
        out.kind = Duality::symplectic;
    } else if (s.p == 2) {
        out.is_selfdual = true;
        out.kind = Duality::orthogonal;
    }
    return out;
}

/// prod chi_i is trivial.
inline bool det_product_check(const HypSpec& s)
{
    std::int64_t sum = 0;
    for (auto r : s.upstairs)
        sum = (sum + r) % s.M;
    return sum == 0;
}

struct InertiaModel {
    std::vector<std::int64_t> tame;
    std::int64_t N = 0;
    unsigned f = 0;
    unsigned p = 0;
    /// "trivial", "chi2" or "neither": which value prod chi_i / prod rho_j takes.
    std::string product_case;
    bool product_normalized = false;

    std::string group() const
    {
        return "C" + std::to_string(p) + "^" + std::to_string(f) + " x| C" + std::to_string(N);
    }
};

/// N = n - m, f = ord_N(p), image of wild inertia (C_p)^f x| C_N.
inline InertiaModel inertia_model(const HypSpec& s)
{
    InertiaModel im;
    im.p = s.p;
    im.tame = s.downstairs;
    im.N = static_cast<std::int64_t>(s.n() - s.m());
    if (im.N % s.p == 0)
        throw error(errc::divisible_by_p, "N = n - m divisible by p");
    im.f = 1;
    if (im.N > 1) {
        std::int64_t v = s.p % im.N;
        while (v != 1) {
            v = v * s.p % im.N;
            ++im.f;
        }
    }
    std::int64_t prod = 0;
    for (auto r : s.upstairs)
        prod += r;
    for (auto r : s.downstairs)
        prod -= r;
    prod = ((prod % s.M) + s.M) % s.M;
    if (prod == 0)
        im.product_case = "trivial";
    else if (s.M % 2 == 0 && prod == s.M / 2)
        im.product_case = "chi2";
    else
        im.product_case = "neither";
    im.product_normalized = im.N % 2 == 1 ? im.product_case == "trivial" : im.product_case == "chi2";
    return im;
}

/// p^f = 1 mod N and p^d != 1 mod N for 0 < d < f.
inline bool order_is_minimal(const InertiaModel& im)
{
    std::int64_t v = 1;
    for (unsigned d = 1; d <= im.f; ++d) {
        v = v * im.p % im.N;
        if ((v == 1 % im.N) != (d == im.f))
            return false;
    }
    return true;
}

inline nlohmann::json classification_json(const HypSpec& s)
{
    auto prim = primitivity_verdict(s);
    auto sd = selfdual_test(s);
    auto im = inertia_model(s);
    nlohmann::json belyi = nlohmann::json::array();
    for (const auto& b : prim.belyi)
        belyi.push_back(b);
    return nlohmann::json{
        {"family", s.family},
        {"p", s.p},
        {"A", s.A},
        {"B", s.B},
        {"n", s.n()},
        {"m", s.m()},
        {"kummer", prim.kummer},
        {"belyi", belyi},
        {"primitivity", to_string(prim.verdict)},
        {"primitivity_reason", prim.reason},
        {"tensor_indecomposable_hypotheses", prim.tensor_indecomposable_hypotheses},
        {"selfdual", to_string(sd.kind)},
        {"det_trivial", det_product_check(s)},
        {"inertia",
         {{"N", im.N}, {"f", im.f}, {"group", im.group()}, {"product_case", im.product_case},
          {"product_normalized", im.product_normalized}}}};
}

} // namespace hypcheck::hyp
