#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "finite_field.hpp"

namespace hypcheck {

/// psi_K(x) = zeta_p^{Tr(x)}, with zeta_p = exp(2 pi i / p).
class AddChar {
public:
    explicit AddChar(const FieldTable& field) : field_(&field) {}

    const FieldTable& field() const noexcept { return *field_; }

    /// Exponent c with psi(x) = zeta_p^c.
    unsigned exponent(elem x) const noexcept { return field_->trace(x); }

    template <class V = Cyclotomic>
    V eval(elem x) const
    {
        return V::root_of_unity(exponent(x), static_cast<int>(field_->p()));
    }

private:
    const FieldTable* field_;
};

/// chi_j(g^a) = zeta_{q-1}^{j a}, g the field's Conway generator.
class MultChar {
public:
    MultChar(const FieldTable& field, std::int64_t j)
        : field_(&field), j_(static_cast<std::uint32_t>(detail::mod_floor(j, field.unit_order())))
    {
    }

    const FieldTable& field() const noexcept { return *field_; }
    std::uint32_t exponent() const noexcept { return j_; }

    std::uint32_t order() const noexcept
    {
        auto n = field_->unit_order();
        return n / std::gcd(j_ == 0 ? n : j_, n);
    }

    bool is_trivial() const noexcept { return j_ == 0; }

    /// chi(x) = zeta_order^k; returns k in [0, order).
    std::uint32_t value_exponent(elem x) const
    {
        if (x == 0)
            throw error(errc::char_at_zero, "multiplicative characters are not evaluated at 0");
        auto ord = order();
        auto step = j_ / (field_->unit_order() / ord);
        return static_cast<std::uint32_t>(std::uint64_t{step} * field_->log_unchecked(x) % ord);
    }

    template <class V = Cyclotomic>
    V eval(elem x) const
    {
        return V::root_of_unity(value_exponent(x), static_cast<int>(order()));
    }

    /// Same value expressed as a root of unity of order L (ord | L).
    template <class V = Cyclotomic>
    V eval_in(elem x, int L) const
    {
        return V::root_of_unity(static_cast<std::int64_t>(value_exponent(x)) * (L / static_cast<int>(order())), L);
    }

    MultChar conj() const { return MultChar(*field_, -static_cast<std::int64_t>(j_)); }

    friend MultChar operator*(const MultChar& a, const MultChar& b)
    {
        return MultChar(*a.field_, std::int64_t{a.j_} + b.j_);
    }
    friend bool operator==(const MultChar& a, const MultChar& b)
    {
        return a.field_ == b.field_ && a.j_ == b.j_;
    }

private:
    const FieldTable* field_;
    std::uint32_t j_;
};

/// Characters with chi^N = 1, ascending exponent.
inline std::vector<MultChar> chars_of_order_dividing(const FieldTable& f, std::uint32_t n, bool nontrivial_only)
{
    if (n == 0 || f.unit_order() % n != 0)
        throw error(errc::order_not_dividing, std::to_string(n) + " does not divide " + std::to_string(f.unit_order()));
    std::vector<MultChar> out;
    std::uint32_t step = f.unit_order() / n;
    for (std::uint32_t j = nontrivial_only ? 1 : 0; j < n; ++j)
        out.emplace_back(f, std::int64_t{j} * step);
    return out;
}

/// The phi(A) characters of exact order A, ascending exponent.
inline std::vector<MultChar> chars_of_exact_order(const FieldTable& f, std::uint32_t a)
{
    std::vector<MultChar> out;
    for (auto& c : chars_of_order_dividing(f, a, false))
        if (c.order() == a)
            out.push_back(c);
    return out;
}

/// g(psi, chi) = sum_{x != 0} psi(x) chi(x).
template <class V = Cyclotomic>
V gauss_sum(const AddChar& psi, const MultChar& chi)
{
    const auto& f = psi.field();
    int p = static_cast<int>(f.p());
    int L = std::lcm(p, static_cast<int>(chi.order()));
    Accumulator<V> acc(L);
    if constexpr (std::is_same_v<V, Cyclotomic>) {
        // Count how often each exponent of zeta_L occurs, then expand once.
        std::vector<std::int64_t> counts(L, 0);
        int ord = static_cast<int>(chi.order());
        for (std::uint32_t i = 0; i < f.unit_order(); ++i) {
            elem x = f.exp(i);
            auto k = static_cast<std::int64_t>(psi.exponent(x)) * (L / p) +
                     static_cast<std::int64_t>(chi.value_exponent(x)) * (L / ord);
            ++counts[static_cast<std::size_t>(k % L)];
        }
        auto g = Cyclotomic::zero(L);
        for (int k = 0; k < L; ++k)
            if (counts[k] != 0)
                g.add_root(k, counts[k]);
        return g;
    } else {
        for (std::uint32_t i = 0; i < f.unit_order(); ++i) {
            elem x = f.exp(i);
            acc.add(psi.eval<V>(x) * chi.eval<V>(x));
        }
        return acc.result();
    }
}

/// Checks -g(psi o Tr_{K/k0}, chi o N_{K/k0}) = (-g(psi, chi))^d exactly.
inline bool hasse_davenport_lift_check(const FieldTable& small, const FieldTable& big, const MultChar& chi)
{
    if (chi.field().q() != small.q() || chi.field().p() != small.p())
        throw error(errc::invalid_spec, "character must live on the base field");
    if (big.p() != small.p() || big.k() % small.k() != 0)
        throw error(errc::not_a_subfield, "not an extension");
    unsigned d = big.k() / small.k();

    auto base = -gauss_sum<Cyclotomic>(AddChar(small), chi);
    Cyclotomic rhs = Cyclotomic::integer(1, base.order());
    for (unsigned i = 0; i < d; ++i)
        rhs *= base;

    int p = static_cast<int>(big.p());
    int ord = static_cast<int>(chi.order());
    int L = std::lcm(p, ord);
    std::vector<std::int64_t> counts(L, 0);
    AddChar psi(big);
    for (std::uint32_t i = 0; i < big.unit_order(); ++i) {
        elem x = big.exp(i);
        elem nx = subfield_norm_map(big, small, x);
        auto k = static_cast<std::int64_t>(psi.exponent(x)) * (L / p) +
                 static_cast<std::int64_t>(chi.value_exponent(nx)) * (L / ord);
        ++counts[static_cast<std::size_t>(k % L)];
    }
    auto lhs = Cyclotomic::zero(L);
    for (int k = 0; k < L; ++k)
        if (counts[k] != 0)
            lhs.add_root(k, -counts[k]);
    return lhs == rhs;
}

} // namespace hypcheck
