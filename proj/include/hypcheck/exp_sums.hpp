#pragma once

// Trace functions of the descended hypergeometric sheaves H(psi, A x B) and
// H(psi, (4B)^x):
//
//   T(s) = (-1/#K)^c  sum_{t_1..t_c in K^x} psi(-prod t_i / s) prod chi_i(t_i) S(t_i),
//   S(t) = sum_{x in K} psi_K(B x - x^B / t),
//
// where c = A-1 and chi_i runs over the nontrivial characters of order
// dividing A (A x B), or c = 2 with (chi_1, chi_2) = (chi_4, conj chi_4)
// ((4B)^x). All values lie in Q(zeta_L), L = lcm(p, A) resp. lcm(p, 4).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "parallel.hpp"
#include "report.hpp"

namespace hypcheck {

enum class TraceFamily { AxB, Atimes, Pullback };

inline std::string to_string(TraceFamily f)
{
    switch (f) {
    case TraceFamily::AxB: return "AxB";
    case TraceFamily::Atimes: return "Atimes";
    case TraceFamily::Pullback: return "pullback";
    }
    return "?";
}

/// Largest field a full trace table is built over.
inline constexpr std::uint32_t trace_table_max_q = 8192;

struct TraceParams {
    TraceFamily family = TraceFamily::AxB;
    int A = 3;
    int B = 13;

    static TraceParams axb(int a, int b) { return {TraceFamily::AxB, a, b}; }
    /// The (4B)^x family; A is recorded as 4B.
    static TraceParams atimes4(int b) { return {TraceFamily::Atimes, 4 * b, b}; }

    /// Order of the characters in the outer sum.
    int character_modulus() const { return family == TraceFamily::AxB ? A : 4; }
    int outer_count() const { return family == TraceFamily::AxB ? A - 1 : 2; }
    int value_order(unsigned p) const { return std::lcm(static_cast<int>(p), character_modulus()); }
    int rank() const
    {
        if (family == TraceFamily::AxB)
            return (A - 1) * (B - 1);
        int n = A, phi = A;
        for (int d = 2; d <= n; ++d)
            if (n % d == 0) {
                while (n % d == 0)
                    n /= d;
                phi -= phi / d;
            }
        return phi;
    }
};

namespace detail {

inline bool is_prime(int n)
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline unsigned multiplicative_order(std::uint64_t p, std::uint64_t n)
{
    if (n == 1)
        return 1;
    std::uint64_t v = p % n;
    for (unsigned f = 1;; ++f, v = v * p % n)
        if (v == 1)
            return f;
}

template <class V>
V from_counts(const std::array<std::int64_t, 3>& counts, unsigned p, int L)
{
    int step = L / static_cast<int>(p);
    if constexpr (std::is_same_v<V, Cyclotomic>) {
        auto v = Cyclotomic::zero(L);
        for (unsigned c = 0; c < p; ++c)
            if (counts[c] != 0)
                v.add_root(static_cast<std::int64_t>(c) * step, counts[c]);
        return v;
    } else {
        Accumulator<V> acc(L);
        for (unsigned c = 0; c < p; ++c)
            if (counts[c] != 0)
                acc.add(V::root_of_unity(static_cast<std::int64_t>(c) * step, L) * V::integer(counts[c]));
        return acc.result();
    }
}

/// Field data reused by every inner sum: Tr(g^i) and Tr(x) by element.
struct SumContext {
    const FieldTable* field;
    std::vector<std::uint8_t> trace_by_log;

    explicit SumContext(const FieldTable& f) : field(&f), trace_by_log(f.unit_order())
    {
        for (std::uint32_t i = 0; i < f.unit_order(); ++i)
            trace_by_log[i] = f.trace(f.exp(i));
    }
};

/// counts[c] = #{x in K : Tr(B x - x^B / t) = c}, t = g^{log_t}.
inline std::array<std::int64_t, 3> inner_counts(const SumContext& ctx, int b, std::uint32_t log_t)
{
    const auto& f = *ctx.field;
    const std::uint32_t n = f.unit_order();
    const unsigned p = f.p();
    const std::uint64_t bmod = static_cast<std::uint64_t>(b) % p;
    const std::uint64_t bl = static_cast<std::uint64_t>(b) % n;
    std::array<std::int64_t, 3> counts{1, 0, 0}; // x = 0
    for (std::uint32_t i = 0; i < n; ++i) {
        // x = g^i, x^B / t = g^{B i - log_t}
        std::uint64_t e = (bl * i + n - log_t) % n;
        unsigned c = static_cast<unsigned>((bmod * ctx.trace_by_log[i] + p - ctx.trace_by_log[e]) % p);
        ++counts[c];
    }
    return counts;
}

} // namespace detail

/// Validates family constraints against K and returns the outer characters.
inline std::vector<MultChar> outer_characters(const FieldTable& k, const TraceParams& params)
{
    int p = static_cast<int>(k.p());
    if (params.family == TraceFamily::AxB) {
        int a = params.A, b = params.B;
        if (a < 3 || b < 3 || std::gcd(a, b) != 1 || a % p == 0 || b % p == 0)
            throw error(errc::family_constraint, "need gcd(A,B)=1, A,B >= 3, both prime to p");
        if (k.unit_order() % static_cast<std::uint32_t>(a) != 0)
            throw error(errc::order_not_dividing, "A must divide q-1");
        return chars_of_order_dividing(k, static_cast<std::uint32_t>(a), true);
    }
    if (params.family == TraceFamily::Atimes) {
        if (p % 2 == 0)
            throw error(errc::family_constraint, "the (4B)^x descent needs odd p");
        if (!detail::is_prime(params.B) || params.B == 2 || params.B == p || params.A != 4 * params.B)
            throw error(errc::family_constraint, "B must be an odd prime different from p");
        if (k.unit_order() % 4 != 0)
            throw error(errc::order_not_dividing, "4 must divide q-1");
        auto j = static_cast<std::int64_t>(k.unit_order() / 4);
        return {MultChar(k, j), MultChar(k, -j)};
    }
    throw error(errc::invalid_spec, "pullback tables are derived, not evaluated");
}

/// Size of F_p(zeta_A), the field the trace function is defined over.
inline std::uint32_t base_field_size(unsigned p, const TraceParams& params)
{
    auto f = detail::multiplicative_order(p, static_cast<std::uint64_t>(params.character_modulus()));
    std::uint32_t q0 = 1;
    for (unsigned i = 0; i < f; ++i)
        q0 *= p;
    return q0;
}

/// -sum_{x in K} psi_K(-x^B / t + B x).
template <class V = Cyclotomic>
V b0_sum(const FieldTable& k, int b, elem t)
{
    if (t == 0)
        throw error(errc::zero_argument, "b0_sum at t = 0");
    if (b % static_cast<int>(k.p()) == 0)
        throw error(errc::divisible_by_p, "B must be prime to p");
    detail::SumContext ctx(k);
    auto counts = detail::inner_counts(ctx, b, k.log_unchecked(t));
    for (auto& c : counts)
        c = -c;
    return detail::from_counts<V>(counts, k.p(), static_cast<int>(k.p()));
}

/// Kl(a) = sum_{x != 0} psi_K(x + a/x).
template <class V = Cyclotomic>
V kloosterman(const FieldTable& k, elem a)
{
    if (a == 0)
        throw error(errc::zero_argument, "Kloosterman sum at a = 0");
    std::array<std::int64_t, 3> counts{0, 0, 0};
    auto la = static_cast<std::int64_t>(k.log_unchecked(a));
    for (std::uint32_t i = 0; i < k.unit_order(); ++i) {
        unsigned c = (k.trace(k.exp(i)) + k.trace(k.exp(la - i))) % k.p();
        ++counts[c];
    }
    return detail::from_counts<V>(counts, k.p(), static_cast<int>(k.p()));
}

template <class V>
struct TraceTable {
    TraceFamily family = TraceFamily::AxB;
    TraceParams params;
    std::uint32_t pullback_n = 1;
    const FieldTable* field = nullptr;
    /// The literal prefactor (-1/#K)^c as num/den.
    std::int64_t norm_num = 1;
    std::int64_t norm_den = 1;
    /// values[i] = T(g^i).
    std::vector<V> values;

    std::size_t size() const noexcept { return values.size(); }

    const V& at(elem s) const
    {
        if (s == 0)
            throw error(errc::zero_argument, "trace tables are indexed by s in K^x");
        return values[field->log_unchecked(s)];
    }
};

namespace detail {

template <class V>
struct FamilyData {
    int order = 1;
    int count = 0;
    std::int64_t norm_num = 1;
    std::int64_t norm_den = 1;
    /// f[i][t] = chi_i(g^t) S(g^t)
    std::vector<std::vector<V>> factors;
};

template <class V>
FamilyData<V> family_data(const FieldTable& k, const TraceParams& params, unsigned workers)
{
    auto chars = outer_characters(k, params);
    FamilyData<V> d;
    d.order = params.value_order(k.p());
    d.count = static_cast<int>(chars.size());
    const std::uint32_t n = k.unit_order();
    for (int i = 0; i < d.count; ++i) {
        d.norm_num = -d.norm_num;
        d.norm_den = checked_mul(d.norm_den, k.q());
    }

    SumContext ctx(k);
    std::vector<V> s_values(n);
    parallel_chunks(n, workers, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
        for (auto t = lo; t < hi; ++t)
            s_values[t] = from_counts<V>(inner_counts(ctx, params.B, static_cast<std::uint32_t>(t)), k.p(), d.order);
    });

    d.factors.resize(d.count);
    for (int i = 0; i < d.count; ++i) {
        auto& f = d.factors[i];
        f.resize(n);
        for (std::uint32_t t = 0; t < n; ++t)
            f[t] = chars[i].template eval_in<V>(k.exp(t), d.order) * s_values[t];
    }
    return d;
}

/// sum_u psi(-u/s) G(u) for s = g^j, grouping the p additive values.
template <class V>
V outer_pairing(const SumContext& ctx, const std::vector<V>& g, std::uint32_t j, int order)
{
    const auto& f = *ctx.field;
    const std::uint32_t n = f.unit_order();
    const unsigned p = f.p();
    std::array<Accumulator<V>, 3> buckets{Accumulator<V>(order), Accumulator<V>(order), Accumulator<V>(order)};
    for (std::uint32_t u = 0; u < n; ++u) {
        // psi(-u/s) = zeta_p^{-Tr(g^{u-j})}
        unsigned c = (p - ctx.trace_by_log[(u + n - j) % n]) % p;
        buckets[c].add(g[u]);
    }
    Accumulator<V> out(order);
    int step = order / static_cast<int>(p);
    for (unsigned c = 0; c < p; ++c)
        out.add(V::root_of_unity(static_cast<std::int64_t>(c) * step, order) * buckets[c].result());
    return out.result();
}

} // namespace detail

/// Pointwise evaluation of T(s) as the (c)-fold sum over (t_i).
template <class V = Cyclotomic>
V trace_point(const FieldTable& k, const TraceParams& params, elem s)
{
    if (s == 0)
        throw error(errc::zero_argument, "trace at s = 0");
    auto d = detail::family_data<V>(k, params, 1);
    detail::SumContext ctx(k);
    const std::uint32_t n = k.unit_order();
    const std::uint32_t ls = k.log_unchecked(s);

    // Walk all (t_1..t_{c-1}); the last coordinate is folded by outer_pairing,
    // which needs prefix-shifted copies of the last factor.
    Accumulator<V> total(d.order);
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(d.count - 1), 0);
    std::vector<V> shifted(n);
    const auto& last = d.factors[d.count - 1];
    while (true) {
        std::uint64_t lsum = 0;
        V prefix = V::integer(1, d.order);
        for (int i = 0; i + 1 < d.count; ++i) {
            lsum += idx[i];
            prefix *= d.factors[i][idx[i]];
        }
        // sum_{t} psi(-g^{lsum+t}/s) f_last(t) = outer_pairing on u = lsum + t
        for (std::uint32_t t = 0; t < n; ++t)
            shifted[(t + lsum) % n] = last[t];
        total.add(prefix * detail::outer_pairing(ctx, shifted, ls, d.order));

        int pos = 0;
        while (pos < d.count - 1 && ++idx[pos] == n)
            idx[pos++] = 0;
        if (pos == d.count - 1)
            break;
    }
    return total.result().scaled(d.norm_num, d.norm_den);
}

template <class V = Cyclotomic>
V trace_AxB(const FieldTable& k, int a, int b, elem s)
{
    return trace_point<V>(k, TraceParams::axb(a, b), s);
}

template <class V = Cyclotomic>
V trace_Atimes4B(const FieldTable& k, int b, elem s)
{
    return trace_point<V>(k, TraceParams::atimes4(b), s);
}

/// Full table via the u = prod t_i substitution:
///   T(s) = c sum_u psi(-u/s) G(u),  G = f_1 * f_2 * ... (multiplicative convolution).
template <class V = Cyclotomic>
TraceTable<V> trace_table_all(const FieldTable& k, const TraceParams& params, unsigned workers = 1)
{
    if (k.q() > trace_table_max_q)
        throw error(errc::degree_out_of_range, "trace tables are capped at q <= " + std::to_string(trace_table_max_q));
    auto d = detail::family_data<V>(k, params, workers);
    const std::uint32_t n = k.unit_order();

    std::vector<V> g = d.factors[0];
    for (int i = 1; i < d.count; ++i) {
        const auto& f = d.factors[i];
        std::vector<V> next(n);
        parallel_chunks(n, workers, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
            for (auto u = lo; u < hi; ++u) {
                Accumulator<V> acc(d.order);
                for (std::uint32_t t = 0; t < n; ++t)
                    acc.add(g[t] * f[(u + n - t) % n]);
                next[u] = acc.result();
            }
        });
        g = std::move(next);
    }

    detail::SumContext ctx(k);
    TraceTable<V> table;
    table.family = params.family;
    table.params = params;
    table.field = &k;
    table.norm_num = d.norm_num;
    table.norm_den = d.norm_den;
    table.values.resize(n);
    parallel_chunks(n, workers, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
        for (auto j = lo; j < hi; ++j)
            table.values[j] = detail::outer_pairing(ctx, g, static_cast<std::uint32_t>(j), d.order)
                                  .scaled(d.norm_num, d.norm_den);
    });
    return table;
}

/// Value of [x -> x^N]^* at s. At s = 0 the value exists only through the
/// extension to A^1 and is reported symbolically.
template <class V>
struct PullbackValue {
    bool defined_by_extension = false;
    std::optional<V> value;
};

template <class V>
PullbackValue<V> pullback_trace(const TraceTable<V>& table, std::uint32_t n_power, elem s)
{
    if (n_power == 0 || n_power % table.field->p() == 0)
        throw error(errc::divisible_by_p, "pullback exponent must be prime to p");
    if (s == 0)
        return {true, std::nullopt};
    return {false, table.at(table.field->pow(s, n_power))};
}

template <class V>
TraceTable<V> pullback_table(const TraceTable<V>& table, std::uint32_t n_power)
{
    if (n_power == 0 || n_power % table.field->p() == 0)
        throw error(errc::divisible_by_p, "pullback exponent must be prime to p");
    TraceTable<V> out = table;
    out.family = TraceFamily::Pullback;
    out.pullback_n = table.pullback_n * n_power;
    const std::uint64_t n = table.values.size();
    for (std::uint64_t i = 0; i < n; ++i)
        out.values[i] = table.values[(i * n_power) % n];
    return out;
}

/// M_k = mean over s of |T(s)|^{2k}.
template <class V>
double moments(const TraceTable<V>& table, int k)
{
    if (table.values.empty())
        throw error(errc::invalid_spec, "empty table");
    double acc = 0, comp = 0;
    for (const auto& v : table.values) {
        double x = std::pow(std::norm(v.to_complex()), k);
        double t = acc + x;
        comp += std::abs(acc) >= x ? (acc - t) + x : (x - t) + acc;
        acc = t;
    }
    return (acc + comp) / static_cast<double>(table.values.size());
}

template <class V>
double max_abs(const TraceTable<V>& table)
{
    double m = 0;
    for (const auto& v : table.values)
        m = std::max(m, std::abs(v.to_complex()));
    return m;
}

/// Units a mod L with a = 1 mod p: the Galois elements fixing zeta_p.
inline std::vector<int> admissible_galois_elements(int order, unsigned p)
{
    std::vector<int> out;
    for (int a = 1; a < std::max(order, 2); ++a)
        if (std::gcd(a, order) == 1 && (p == 2 || order % static_cast<int>(p) != 0 || a % static_cast<int>(p) == 1))
            out.push_back(a);
    return out;
}

inline void record_check(VerificationReport& rep, std::int64_t x, bool ok)
{
    rep.record(x, ok ? 0 : 1, 0);
}

/// Invariance of every value under Gal(Q(zeta_L)/Q(zeta_p)).
template <class V>
VerificationReport galois_invariance_check(const TraceTable<V>& table)
{
    if constexpr (!std::is_same_v<V, Cyclotomic>) {
        throw error(errc::float_mode_unsupported, "Galois invariance needs exact values");
    } else {
        Stopwatch sw;
        VerificationReport rep;
        rep.lemma = "galois_invariance";
        rep.p = table.field->p();
        rep.variant = to_string(table.family);
        for (std::size_t i = 0; i < table.values.size(); ++i) {
            const auto& v = table.values[i];
            bool ok = true;
            for (int a : admissible_galois_elements(v.order(), rep.p))
                ok = ok && galois_act(v, a, rep.p) == v;
            record_check(rep, static_cast<std::int64_t>(i), ok);
        }
        rep.elapsed_ms = sw.elapsed_ms();
        return rep;
    }
}

/// T(s^{q0}) = T(s) for all s.
template <class V>
VerificationReport frobenius_invariance_check(const TraceTable<V>& table, std::uint32_t q0, double tol = 0)
{
    Stopwatch sw;
    VerificationReport rep;
    rep.lemma = "frobenius_invariance";
    rep.p = table.field->p();
    rep.variant = to_string(table.family);
    const std::uint64_t n = table.values.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto& a = table.values[i];
        const auto& b = table.values[(i * q0) % n];
        bool ok;
        if constexpr (std::is_same_v<V, Cyclotomic>)
            ok = a == b;
        else
            ok = std::abs(a.to_complex() - b.to_complex()) <= tol;
        record_check(rep, static_cast<std::int64_t>(i), ok);
    }
    rep.elapsed_ms = sw.elapsed_ms();
    return rep;
}

/// |T(s)| <= bound under every complex embedding (exact) or the standard one (float).
template <class V>
VerificationReport purity_check(const TraceTable<V>& table, double bound, double tol = 1e-6)
{
    Stopwatch sw;
    VerificationReport rep;
    rep.lemma = "purity_bound";
    rep.p = table.field->p();
    rep.variant = to_string(table.family);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        bool ok = true;
        if constexpr (std::is_same_v<V, Cyclotomic>) {
            for (auto z : table.values[i].embeddings())
                ok = ok && std::abs(z) <= bound + tol;
        } else {
            ok = std::abs(table.values[i].to_complex()) <= bound + tol;
        }
        record_check(rep, static_cast<std::int64_t>(i), ok);
    }
    rep.elapsed_ms = sw.elapsed_ms();
    return rep;
}

/// Exact: value in Q. Float: |Im| below tol.
template <class V>
VerificationReport rationality_check(const TraceTable<V>& table, double tol = 1e-9)
{
    VerificationReport rep;
    rep.lemma = "rationality";
    rep.p = table.field->p();
    rep.variant = to_string(table.family);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        bool ok;
        if constexpr (std::is_same_v<V, Cyclotomic>)
            ok = table.values[i].is_rational();
        else
            ok = std::abs(table.values[i].to_complex().imag()) <= tol;
        record_check(rep, static_cast<std::int64_t>(i), ok);
    }
    return rep;
}

/// (#K)^c T(s) is an algebraic integer.
inline VerificationReport integrality_check(const TraceTable<Cyclotomic>& table)
{
    VerificationReport rep;
    rep.lemma = "denominator_bound";
    rep.p = table.field->p();
    rep.variant = to_string(table.family);
    for (std::size_t i = 0; i < table.values.size(); ++i)
        record_check(rep, static_cast<std::int64_t>(i),
                     table.values[i].scaled(table.norm_den, 1).is_integral());
    return rep;
}

/// Exact vs float agreement within the float path's error bound plus tol.
inline VerificationReport cross_mode_check(const TraceTable<Cyclotomic>& exact, const TraceTable<ApproxComplex>& approx,
                                           double tol = 1e-9)
{
    VerificationReport rep;
    rep.lemma = "exact_float_agreement";
    rep.p = exact.field->p();
    rep.variant = to_string(exact.family);
    for (std::size_t i = 0; i < exact.values.size(); ++i) {
        double diff = std::abs(exact.values[i].to_complex() - approx.values[i].value());
        record_check(rep, static_cast<std::int64_t>(i), diff <= tol && approx.values[i].agrees_with(exact.values[i], 1e-12));
    }
    return rep;
}

template <class V>
void write_trace_csv(std::ostream& os, const TraceTable<V>& table)
{
    if constexpr (std::is_same_v<V, Cyclotomic>) {
        os << "s_log_index,exact\n";
        for (std::size_t i = 0; i < table.values.size(); ++i) {
            std::string js = nlohmann::json(table.values[i]).dump();
            std::string quoted;
            for (char ch : js)
                quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            os << i << ",\"" << quoted << "\"\n";
        }
    } else {
        os << "s_log_index,re,im\n";
        os.precision(17);
        for (std::size_t i = 0; i < table.values.size(); ++i)
            os << i << ',' << table.values[i].value().real() << ',' << table.values[i].value().imag() << '\n';
    }
}

/// {family, p, A, B, q, M1, M2, max_abs, integrality_pass, frobenius_pass, ...}
template <class V>
nlohmann::json trace_statistics(const TraceTable<V>& table)
{
    const auto& k = *table.field;
    auto q0 = base_field_size(k.p(), table.params);
    nlohmann::json j{{"family", to_string(table.params.family)},
                     {"p", k.p()},
                     {"A", table.params.A},
                     {"B", table.params.B},
                     {"q", k.q()},
                     {"M1", moments(table, 1)},
                     {"M2", moments(table, 2)},
                     {"max_abs", max_abs(table)},
                     {"rank", table.params.rank()},
                     {"purity_pass", purity_check(table, table.params.rank()).pass()},
                     {"frobenius_pass", frobenius_invariance_check(table, q0, 1e-9).pass()}};
    if (table.family == TraceFamily::Pullback)
        j["N"] = table.pullback_n;
    if constexpr (std::is_same_v<V, Cyclotomic>) {
        j["mode"] = "exact";
        j["integrality_pass"] = integrality_check(table).pass();
        j["galois_pass"] = galois_invariance_check(table).pass();
        j["rational_pass"] = rationality_check(table).pass();
    } else {
        j["mode"] = "float";
        j["integrality_pass"] = nullptr;
        j["rational_pass"] = rationality_check(table).pass();
    }
    return j;
}

} // namespace hypcheck
