#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hypcheck {

/// An element a/m of Q/Z, stored reduced with 0 <= a < m (0 is 0/1).
class QmodZ {
public:
    QmodZ() = default;

    QmodZ(std::int64_t a, std::int64_t m)
    {
        if (m <= 0)
            throw error(errc::invalid_spec, "QmodZ denominator must be positive");
        a %= m;
        if (a < 0)
            a += m;
        auto g = std::gcd(a, m);
        a_ = a / g;
        m_ = m / g;
    }

    /// Same, additionally requiring the reduced denominator to be prime to p.
    static QmodZ prime_to(std::int64_t a, std::int64_t m, std::int64_t p)
    {
        QmodZ x(a, m);
        if (x.m_ % p == 0)
            throw error(errc::divisible_by_p, "denominator " + std::to_string(x.m_) + " divisible by p");
        return x;
    }

    std::int64_t numerator() const noexcept { return a_; }
    std::int64_t denominator() const noexcept { return m_; }
    bool is_zero() const noexcept { return a_ == 0; }

    QmodZ operator-() const { return QmodZ(m_ - a_, m_); }

    friend QmodZ operator+(const QmodZ& x, const QmodZ& y)
    {
        auto l = std::lcm(x.m_, y.m_);
        return QmodZ(x.a_ * (l / x.m_) + y.a_ * (l / y.m_), l);
    }
    friend QmodZ operator-(const QmodZ& x, const QmodZ& y) { return x + (-y); }

    /// n * x for an integer n.
    QmodZ times(std::int64_t n) const
    {
        auto r = static_cast<__int128>(a_) * n % m_;
        return QmodZ(static_cast<std::int64_t>(r), m_);
    }

    /// All y with n y = x.
    std::vector<QmodZ> roots(std::int64_t n) const
    {
        std::vector<QmodZ> out;
        out.reserve(static_cast<std::size_t>(n));
        for (std::int64_t k = 0; k < n; ++k)
            out.emplace_back(a_ + k * m_, n * m_);
        return out;
    }

    /// The unique y with p^r y = x; needs gcd(p, m) = 1.
    QmodZ divide_by_power(std::int64_t p, unsigned r) const
    {
        if (std::gcd(p, m_) != 1)
            throw error(errc::divisible_by_p, "p not invertible mod denominator");
        if (m_ == 1)
            return *this;
        // inverse of p mod m by extended Euclid
        std::int64_t t = 0, nt = 1, rr = m_, nr = p % m_;
        while (nr != 0) {
            auto qt = rr / nr;
            t -= qt * nt;
            std::swap(t, nt);
            rr -= qt * nr;
            std::swap(rr, nr);
        }
        QmodZ y = *this;
        for (unsigned i = 0; i < r; ++i)
            y = y.times(t);
        return y;
    }

    friend bool operator==(const QmodZ&, const QmodZ&) = default;
    friend std::strong_ordering operator<=>(const QmodZ& x, const QmodZ& y)
    {
        auto lhs = static_cast<__int128>(x.a_) * y.m_;
        auto rhs = static_cast<__int128>(y.a_) * x.m_;
        if (lhs != rhs)
            return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
        return x.m_ <=> y.m_;
    }

    std::string str() const { return std::to_string(a_) + "/" + std::to_string(m_); }

private:
    std::int64_t a_ = 0;
    std::int64_t m_ = 1;
};

} // namespace hypcheck
