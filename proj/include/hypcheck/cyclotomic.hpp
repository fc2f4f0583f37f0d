#pragma once

// Exact arithmetic in Q(zeta_m) (power basis 1, z, ..., z^{phi(m)-1} reduced
// modulo the m-th cyclotomic polynomial) and a floating twin that carries a
// running error bound. Both model the same value interface so the character
// sum pipelines can be instantiated on either.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace hypcheck {

inline constexpr int default_exact_phi_cap = 256;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw error(errc::overflow, "int64 addition overflow in exact arithmetic");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error(errc::overflow, "int64 multiplication overflow in exact arithmetic");
    return r;
}

inline std::int64_t narrow(__int128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw error(errc::overflow, "coefficient exceeds int64");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
    auto r = a % m;
    return r < 0 ? r + m : r;
}

inline int euler_phi(int m)
{
    int r = m;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            while (m % d == 0)
                m /= d;
            r -= r / d;
        }
    if (m > 1)
        r -= r / m;
    return r;
}

} // namespace detail

/// Structure constants for Q(zeta_m): Phi_m and every power of zeta_m in the basis.
class CyclotomicField {
public:
    explicit CyclotomicField(int m) : order_(m), degree_(detail::euler_phi(m))
    {
        poly_ = cyclotomic_polynomial(m);
        powers_.resize(m);
        std::vector<std::int64_t> v(degree_, 0);
        v[0] = 1;
        for (int k = 0; k < m; ++k) {
            powers_[k] = v;
            // multiply by zeta
            std::int64_t top = v[degree_ - 1];
            for (int j = degree_ - 1; j > 0; --j)
                v[j] = v[j - 1];
            v[0] = 0;
            for (int j = 0; j < degree_; ++j)
                v[j] -= top * poly_[j];
        }
    }

    int order() const noexcept { return order_; }
    int degree() const noexcept { return degree_; }
    /// Phi_m coefficients from constant term up to the leading 1.
    const std::vector<std::int64_t>& polynomial() const noexcept { return poly_; }
    const std::vector<std::int64_t>& power(std::int64_t k) const noexcept
    {
        return powers_[static_cast<std::size_t>(detail::mod_floor(k, order_))];
    }

    static std::vector<std::int64_t> cyclotomic_polynomial(int m)
    {
        // x^m - 1 divided by Phi_d for every proper divisor d.
        std::vector<std::int64_t> num(m + 1, 0);
        num[0] = -1;
        num[m] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d != 0)
                continue;
            auto den = cyclotomic_polynomial(d);
            int dn = static_cast<int>(den.size()) - 1;
            std::vector<std::int64_t> quot(num.size() - dn, 0);
            for (int i = static_cast<int>(num.size()) - 1; i >= dn; --i) {
                std::int64_t c = num[i];
                quot[i - dn] = c;
                for (int j = 0; j <= dn; ++j)
                    num[i - dn + j] -= c * den[j];
            }
            num = std::move(quot);
        }
        return num;
    }

private:
    int order_;
    int degree_;
    std::vector<std::int64_t> poly_;
    std::vector<std::vector<std::int64_t>> powers_;
};

/// Shared, lazily-built Q(zeta_m). Rejects phi(m) > phi_cap.
inline const CyclotomicField& cyclotomic_field(int m, int phi_cap = default_exact_phi_cap)
{
    if (m < 1)
        throw error(errc::invalid_spec, "cyclotomic order must be positive");
    if (detail::euler_phi(m) > phi_cap)
        throw error(errc::exact_cap_exceeded, "phi(" + std::to_string(m) + ") exceeds exact cap");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicField>> registry;
    std::lock_guard lock(mu);
    auto& slot = registry[m];
    if (!slot)
        slot = std::make_unique<CyclotomicField>(m);
    return *slot;
}

/// Exact element of Q(zeta_m): integer numerators over one positive denominator.
class Cyclotomic {
public:
    Cyclotomic() : field_(&cyclotomic_field(1)), num_(1, 0), den_(1) {}

    static Cyclotomic zero(int m = 1) { return Cyclotomic(cyclotomic_field(m)); }

    static Cyclotomic integer(std::int64_t n, int m = 1)
    {
        Cyclotomic c(cyclotomic_field(m));
        c.num_[0] = n;
        return c;
    }

    static Cyclotomic rational(std::int64_t n, std::int64_t d, int m = 1)
    {
        if (d == 0)
            throw error(errc::zero_argument, "zero denominator");
        Cyclotomic c = integer(n, m);
        c.den_ = d;
        c.normalize();
        return c;
    }

    /// zeta_m^k.
    static Cyclotomic root_of_unity(std::int64_t k, int m)
    {
        Cyclotomic c(cyclotomic_field(m));
        c.num_ = c.field_->power(k);
        return c;
    }

    static Cyclotomic from_parts(int m, std::vector<std::int64_t> num, std::int64_t den)
    {
        Cyclotomic c(cyclotomic_field(m));
        if (static_cast<int>(num.size()) != c.field_->degree() || den <= 0)
            throw error(errc::invalid_spec, "malformed cyclotomic payload");
        c.num_ = std::move(num);
        c.den_ = den;
        c.normalize();
        return c;
    }

    int order() const noexcept { return field_->order(); }
    const std::vector<std::int64_t>& numerators() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    bool is_zero() const noexcept
    {
        for (auto c : num_)
            if (c != 0)
                return false;
        return true;
    }

    bool is_rational() const noexcept
    {
        for (std::size_t i = 1; i < num_.size(); ++i)
            if (num_[i] != 0)
                return false;
        return true;
    }

    /// The power basis is an integral basis of Z[zeta_m].
    bool is_integral() const noexcept { return den_ == 1; }

    /// Re-expresses the value in Q(zeta_L), m | L.
    Cyclotomic lift(int L) const
    {
        int m = order();
        if (L == m)
            return *this;
        if (L % m != 0)
            throw error(errc::invalid_spec, "lift target must be a multiple of the order");
        const auto& big = cyclotomic_field(L, std::numeric_limits<int>::max());
        Cyclotomic out(big);
        std::int64_t step = L / m;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0)
                continue;
            const auto& b = big.power(static_cast<std::int64_t>(i) * step);
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0)
                    out.num_[j] = detail::checked_add(out.num_[j], detail::checked_mul(num_[i], b[j]));
        }
        out.den_ = den_;
        return out;
    }

    /// sigma_a : zeta_m -> zeta_m^a.
    Cyclotomic galois(std::int64_t a) const
    {
        int m = order();
        if (std::gcd(detail::mod_floor(a, m), static_cast<std::int64_t>(m)) != 1)
            throw error(errc::not_coprime, "Galois exponent not a unit mod " + std::to_string(m));
        Cyclotomic out(*field_);
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i] == 0)
                continue;
            const auto& b = field_->power(detail::mod_floor(static_cast<std::int64_t>(i) * a, m));
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0)
                    out.num_[j] = detail::checked_add(out.num_[j], detail::checked_mul(num_[i], b[j]));
        }
        out.den_ = den_;
        return out;
    }

    Cyclotomic conj() const { return galois(-1); }

    std::complex<double> to_complex() const { return embedding(1); }

    /// Image under zeta_m -> exp(2 pi i a / m).
    std::complex<double> embedding(std::int64_t a) const
    {
        std::complex<double> z{0, 0};
        double m = order();
        for (std::size_t i = 0; i < num_.size(); ++i)
            if (num_[i] != 0)
                z += static_cast<double>(num_[i]) *
                     std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(detail::mod_floor(
                                                             static_cast<std::int64_t>(i) * a, order())) /
                                         m);
        return z / static_cast<double>(den_);
    }

    /// Images under all complex embeddings.
    std::vector<std::complex<double>> embeddings() const
    {
        std::vector<std::complex<double>> out;
        for (int a = 1; a <= order(); ++a)
            if (std::gcd(a, order()) == 1)
                out.push_back(embedding(a));
        return out;
    }

    /// this += mult * zeta_m^k, without renormalizing. Requires den == 1.
    void add_root(std::int64_t k, std::int64_t mult = 1)
    {
        const auto& b = field_->power(k);
        auto scaled = detail::checked_mul(mult, den_);
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0)
                num_[j] = detail::checked_add(num_[j], detail::checked_mul(scaled, b[j]));
    }

    Cyclotomic& operator+=(const Cyclotomic& o)
    {
        if (o.order() != order()) {
            int L = std::lcm(order(), o.order());
            *this = lift(L);
            return *this += o.lift(L);
        }
        if (den_ == o.den_) {
            for (std::size_t j = 0; j < num_.size(); ++j)
                num_[j] = detail::checked_add(num_[j], o.num_[j]);
        } else {
            std::int64_t g = std::gcd(den_, o.den_);
            std::int64_t a = o.den_ / g, b = den_ / g;
            for (std::size_t j = 0; j < num_.size(); ++j)
                num_[j] = detail::checked_add(detail::checked_mul(num_[j], a), detail::checked_mul(o.num_[j], b));
            den_ = detail::checked_mul(den_, a);
        }
        normalize();
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

    Cyclotomic operator-() const
    {
        Cyclotomic out = *this;
        for (auto& c : out.num_)
            c = -c;
        return out;
    }

    Cyclotomic& operator*=(const Cyclotomic& o)
    {
        if (o.order() != order()) {
            int L = std::lcm(order(), o.order());
            *this = lift(L);
            return *this *= o.lift(L);
        }
        int d = field_->degree();
        std::vector<__int128> prod(2 * d - 1, 0);
        for (int i = 0; i < d; ++i) {
            if (num_[i] == 0)
                continue;
            for (int j = 0; j < d; ++j)
                prod[i + j] += static_cast<__int128>(num_[i]) * o.num_[j];
        }
        const auto& phi = field_->polynomial();
        for (int i = 2 * d - 2; i >= d; --i) {
            __int128 c = prod[i];
            if (c == 0)
                continue;
            for (int j = 0; j < d; ++j)
                prod[i - d + j] -= c * phi[j];
        }
        for (int j = 0; j < d; ++j)
            num_[j] = detail::narrow(prod[j]);
        den_ = detail::checked_mul(den_, o.den_);
        normalize();
        return *this;
    }

    /// Multiplication by the rational n/d.
    Cyclotomic scaled(std::int64_t n, std::int64_t d) const
    {
        if (d == 0)
            throw error(errc::zero_argument, "zero denominator");
        Cyclotomic out = *this;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        for (auto& c : out.num_)
            c = detail::checked_mul(c, n);
        out.den_ = detail::checked_mul(out.den_, d);
        out.normalize();
        return out;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b)
    {
        if (a.order() != b.order()) {
            int L = std::lcm(a.order(), b.order());
            return a.lift(L) == b.lift(L);
        }
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

private:
    explicit Cyclotomic(const CyclotomicField& f) : field_(&f), num_(f.degree(), 0), den_(1) {}

    void normalize()
    {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& c : num_)
                c = -c;
        }
        if (den_ == 1)
            return;
        std::int64_t g = den_;
        for (auto c : num_)
            g = std::gcd(g, c);
        if (g > 1) {
            den_ /= g;
            for (auto& c : num_)
                c /= g;
        }
    }

    const CyclotomicField* field_;
    std::vector<std::int64_t> num_;
    std::int64_t den_;
};

/// Complex double with a rigorous-enough running absolute error bound.
class ApproxComplex {
public:
    static constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;

    ApproxComplex() = default;
    ApproxComplex(std::complex<double> v, double err) : v_(v), err_(err) {}

    static ApproxComplex zero(int = 1) { return {}; }
    static ApproxComplex integer(std::int64_t n, int = 1) { return {{static_cast<double>(n), 0.0}, 0.0}; }
    static ApproxComplex rational(std::int64_t n, std::int64_t d, int = 1)
    {
        double v = static_cast<double>(n) / static_cast<double>(d);
        return {{v, 0.0}, std::abs(v) * unit_roundoff};
    }
    static ApproxComplex root_of_unity(std::int64_t k, int m)
    {
        auto r = detail::mod_floor(k, m);
        return {std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r) / m), 4 * unit_roundoff};
    }

    std::complex<double> value() const noexcept { return v_; }
    std::complex<double> to_complex() const noexcept { return v_; }
    double error_bound() const noexcept { return err_; }

    ApproxComplex& operator+=(const ApproxComplex& o)
    {
        v_ += o.v_;
        err_ += o.err_ + 2 * unit_roundoff * std::abs(v_);
        return *this;
    }
    ApproxComplex& operator-=(const ApproxComplex& o) { return *this += -o; }
    ApproxComplex operator-() const { return {-v_, err_}; }
    ApproxComplex& operator*=(const ApproxComplex& o)
    {
        double e = std::abs(v_) * o.err_ + std::abs(o.v_) * err_ + err_ * o.err_;
        v_ *= o.v_;
        err_ = e + 4 * unit_roundoff * std::abs(v_);
        return *this;
    }
    ApproxComplex scaled(std::int64_t n, std::int64_t d) const
    {
        double s = static_cast<double>(n) / static_cast<double>(d);
        return {v_ * s, err_ * std::abs(s) + 2 * unit_roundoff * std::abs(v_ * s)};
    }
    ApproxComplex conj() const { return {std::conj(v_), err_}; }

    friend ApproxComplex operator+(ApproxComplex a, const ApproxComplex& b) { return a += b; }
    friend ApproxComplex operator-(ApproxComplex a, const ApproxComplex& b) { return a -= b; }
    friend ApproxComplex operator*(ApproxComplex a, const ApproxComplex& b) { return a *= b; }

    /// True when the exact value lies within this value's error bound (plus slack).
    bool agrees_with(const Cyclotomic& exact, double slack = 0) const
    {
        return std::abs(exact.to_complex() - v_) <= err_ + slack + 1e-300;
    }

private:
    std::complex<double> v_{0, 0};
    double err_ = 0;
};

/// Compensated (Neumaier) summation; the generic version is plain accumulation.
template <class V>
class Accumulator {
public:
    explicit Accumulator(int m = 1) : sum_(V::zero(m)) {}
    void add(const V& v) { sum_ += v; }
    V result() const { return sum_; }

private:
    V sum_;
};

template <>
class Accumulator<ApproxComplex> {
public:
    explicit Accumulator(int = 1) {}
    void add(const ApproxComplex& v)
    {
        step(re_, cre_, v.value().real());
        step(im_, cim_, v.value().imag());
        err_ += v.error_bound();
        mag_ += std::abs(v.value());
    }
    ApproxComplex result() const
    {
        return {{re_ + cre_, im_ + cim_}, err_ + 2 * ApproxComplex::unit_roundoff * mag_ + 1e-18 * mag_};
    }

private:
    static void step(double& s, double& c, double x)
    {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0, err_ = 0, mag_ = 0;
};

/// A CycNumber is either exact or floating.
using CycNumber = std::variant<Cyclotomic, ApproxComplex>;

enum class ArithmeticMode { exact, floating, both };

/// Galois action on an exact value that must fix zeta_p.
inline Cyclotomic galois_act(const Cyclotomic& x, std::int64_t a, unsigned p)
{
    int m = x.order();
    if (p != 2 && m % static_cast<int>(p) == 0 && detail::mod_floor(a, p) != 1)
        throw error(errc::not_coprime, "Galois element must fix zeta_p");
    return x.galois(a);
}

inline CycNumber galois_act(const CycNumber& x, std::int64_t a, unsigned p)
{
    if (!std::holds_alternative<Cyclotomic>(x))
        throw error(errc::float_mode_unsupported, "Galois action needs an exact value");
    return galois_act(std::get<Cyclotomic>(x), a, p);
}

inline void to_json(nlohmann::json& j, const Cyclotomic& c)
{
    j = nlohmann::json{{"order", c.order()}, {"numerators", c.numerators()}, {"denominator", c.denominator()}};
}

inline void from_json(const nlohmann::json& j, Cyclotomic& c)
{
    c = Cyclotomic::from_parts(j.at("order").get<int>(), j.at("numerators").get<std::vector<std::int64_t>>(),
                               j.at("denominator").get<std::int64_t>());
}

inline void to_json(nlohmann::json& j, const ApproxComplex& c)
{
    j = nlohmann::json{{"re", c.value().real()}, {"im", c.value().imag()}};
}

inline void to_json(nlohmann::json& j, const CycNumber& c)
{
    std::visit([&j](const auto& v) { to_json(j, v); }, c);
}

} // namespace hypcheck
