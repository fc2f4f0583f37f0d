#pragma once

// Finite fields F_{p^k}, p in {2, 3}, as Zech-style log/antilog tables over
// the Conway polynomial of degree k. Elements are integers 0..q-1 whose base-p
// digits are the coefficients of 1, t, t^2, ... in F_p[t]/(C_{p,k}(t)).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conway.hpp"
#include "errors.hpp"

namespace hypcheck {

using elem = std::uint32_t;

inline constexpr unsigned max_degree(unsigned p) noexcept
{
    return p == 2 ? 24u : p == 3 ? 15u : 0u;
}

class FieldTable {
public:
    static constexpr std::uint32_t log_of_zero = 0xFFFFFFFFu;

    unsigned p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t unit_order() const noexcept { return q_ - 1; }
    std::span<const std::uint8_t> modulus() const noexcept { return modulus_; }

    elem generator() const noexcept { return antilog_[1 % (q_ - 1)]; }

    std::uint32_t log(elem x) const
    {
        if (x == 0)
            throw error(errc::zero_argument, "log of zero");
        return log_[x];
    }
    std::uint32_t log_unchecked(elem x) const noexcept { return log_[x]; }

    /// g^i for any integer i.
    elem exp(std::int64_t i) const noexcept
    {
        auto n = static_cast<std::int64_t>(q_ - 1);
        auto r = i % n;
        return antilog_[static_cast<std::size_t>(r < 0 ? r + n : r)];
    }

    elem add(elem x, elem y) const noexcept
    {
        if (p_ == 2)
            return x ^ y;
        elem out = 0;
        for (unsigned j = 0; x != 0 || y != 0; ++j) {
            unsigned d = (x % 3 + y % 3) % 3;
            out += d * pow3_[j];
            x /= 3;
            y /= 3;
        }
        return out;
    }

    elem neg(elem x) const noexcept
    {
        if (p_ == 2)
            return x;
        elem out = 0;
        for (unsigned j = 0; x != 0; ++j, x /= 3)
            out += ((3 - x % 3) % 3) * pow3_[j];
        return out;
    }

    elem sub(elem x, elem y) const noexcept { return add(x, neg(y)); }

    elem mul(elem x, elem y) const noexcept
    {
        if (x == 0 || y == 0)
            return 0;
        std::uint32_t s = log_[x] + log_[y];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return antilog_[s];
    }

    elem inv(elem x) const
    {
        if (x == 0)
            throw error(errc::inversion_of_zero, "inverse of 0");
        return exp(-static_cast<std::int64_t>(log_[x]));
    }

    elem div(elem x, elem y) const { return mul(x, inv(y)); }

    /// x^e; 0^0 = 1 and negative powers of 0 throw.
    elem pow(elem x, std::int64_t e) const
    {
        if (x == 0) {
            if (e < 0)
                throw error(errc::inversion_of_zero, "negative power of 0");
            return e == 0 ? 1 : 0;
        }
        auto n = static_cast<std::int64_t>(q_ - 1);
        auto em = e % n;
        auto prod = static_cast<__int128>(log_[x]) * em % n;
        return exp(static_cast<std::int64_t>(prod));
    }

    elem frobenius(elem x) const { return pow(x, p_); }

    /// Absolute trace to F_p, returned as 0..p-1.
    std::uint8_t trace(elem x) const noexcept { return trace_[x]; }

    /// Coefficient of t^j.
    unsigned digit(elem x, unsigned j) const noexcept { return (x / pow_p(j)) % p_; }
    std::uint32_t pow_p(unsigned j) const noexcept { return pow3_.empty() ? (1u << j) : pow3_[j]; }

    std::span<const elem> antilog_table() const noexcept { return antilog_; }
    std::span<const std::uint32_t> log_table() const noexcept { return log_; }
    std::span<const std::uint8_t> trace_table() const noexcept { return trace_; }

    friend bool operator==(const FieldTable& a, const FieldTable& b)
    {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_ && a.antilog_ == b.antilog_ &&
               a.log_ == b.log_ && a.trace_ == b.trace_;
    }

private:
    friend FieldTable build_field(unsigned p, unsigned k);
    friend std::optional<FieldTable> load_field_cache(const std::filesystem::path&, unsigned, unsigned);

    FieldTable() = default;

    void init_shape(unsigned p, unsigned k, std::span<const std::uint8_t> modulus)
    {
        p_ = p;
        k_ = k;
        modulus_.assign(modulus.begin(), modulus.end());
        q_ = 1;
        for (unsigned j = 0; j < k; ++j)
            q_ *= p;
        if (p == 3) {
            pow3_.resize(k + 1);
            std::uint32_t v = 1;
            for (unsigned j = 0; j <= k; ++j, v *= 3)
                pow3_[j] = v;
        }
    }

    // Rebuilds log_ from antilog_; false if antilog_ is not a bijection onto F_q^x.
    bool index_logs()
    {
        log_.assign(q_, log_of_zero);
        for (std::uint32_t i = 0; i + 1 < q_; ++i) {
            elem v = antilog_[i];
            if (v == 0 || v >= q_ || log_[v] != log_of_zero)
                return false;
            log_[v] = i;
        }
        return true;
    }

    // x * t reduced modulo the Conway polynomial.
    elem times_t(elem x) const noexcept
    {
        if (p_ == 2) {
            std::uint64_t v = std::uint64_t{x} << 1;
            if (v & q_) {
                std::uint64_t mask = 0;
                for (unsigned j = 0; j <= k_; ++j)
                    mask |= std::uint64_t{modulus_[j]} << j;
                v ^= mask;
            }
            return static_cast<elem>(v);
        }
        std::uint64_t v = std::uint64_t{x} * 3;
        auto top = static_cast<unsigned>(v / q_);
        auto low = static_cast<elem>(v % q_);
        // t^k = -sum_{j<k} m_j t^j
        for (unsigned c = 0; c < top; ++c)
            low = add(low, neg_low_);
        return low;
    }

    void fill_trace()
    {
        // Tr is F_p-linear, so tabulate it on the basis 1, t, ..., t^{k-1}.
        std::vector<unsigned> basis_trace(k_);
        for (unsigned j = 0; j < k_; ++j) {
            elem y = pow_p(j);
            elem acc = 0;
            for (unsigned i = 0; i < k_; ++i) {
                acc = add(acc, y);
                y = frobenius(y);
            }
            if (acc >= p_)
                throw error(errc::invalid_spec, "trace left the prime field");
            basis_trace[j] = acc;
        }
        trace_.assign(q_, 0);
        if (p_ == 2) {
            std::uint32_t mask = 0;
            for (unsigned j = 0; j < k_; ++j)
                mask |= basis_trace[j] << j;
            for (std::uint32_t x = 0; x < q_; ++x)
                trace_[x] = static_cast<std::uint8_t>(std::popcount(x & mask) & 1);
        } else {
            for (std::uint32_t x = 0; x < q_; ++x) {
                unsigned t = 0;
                elem y = x;
                for (unsigned j = 0; y != 0; ++j, y /= 3)
                    t += (y % 3) * basis_trace[j];
                trace_[x] = static_cast<std::uint8_t>(t % 3);
            }
        }
    }

    unsigned p_ = 0;
    unsigned k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<std::uint32_t> pow3_;
    elem neg_low_ = 0;
    std::vector<elem> antilog_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint8_t> trace_;
};

/// Builds F_{p^k}. Deterministic: the modulus is always the Conway polynomial.
inline FieldTable build_field(unsigned p, unsigned k)
{
    if (p != 2 && p != 3)
        throw error(errc::unsupported_characteristic, "p = " + std::to_string(p));
    if (k < 1 || k > max_degree(p))
        throw error(errc::degree_out_of_range,
                    "k = " + std::to_string(k) + " for p = " + std::to_string(p));
    auto modulus = conway::polynomial(p, k);

    FieldTable f;
    f.init_shape(p, k, *modulus);
    if (p == 3) {
        elem nl = 0;
        for (unsigned j = 0; j < k; ++j)
            nl += ((3 - f.modulus_[j]) % 3) * f.pow3_[j];
        f.neg_low_ = nl;
    }

    f.antilog_.resize(f.q_ - 1);
    if (k == 1) {
        // F_p[t]/(t - r): t is the root r = -m_0.
        elem root = (p - f.modulus_[0]) % p;
        elem v = 1;
        for (std::uint32_t i = 0; i + 1 < f.q_; ++i, v = (v * root) % p)
            f.antilog_[i] = v;
    } else {
        elem v = 1;
        for (std::uint32_t i = 0; i + 1 < f.q_; ++i, v = f.times_t(v))
            f.antilog_[i] = v;
    }
    // t having order exactly q-1 makes every nonzero residue a unit, which
    // also certifies that the modulus is irreducible.
    if (!f.index_logs())
        throw error(errc::invalid_spec, "modulus is not primitive");
    f.fill_trace();
    return f;
}

/// Norm from K down to the subfield k0, returned in k0's own encoding.
/// Relies on Conway compatibility: g_K^{(q-1)/(q0-1)} is g_{k0}.
inline elem subfield_norm_map(const FieldTable& big, const FieldTable& small, elem x)
{
    if (big.p() != small.p() || big.k() % small.k() != 0)
        throw error(errc::not_a_subfield, "F_" + std::to_string(small.q()) + " is not a subfield of F_" +
                                              std::to_string(big.q()));
    if (x == 0)
        return 0;
    return small.exp(big.log_unchecked(x));
}

/// Image of y in k0 under the Conway-compatible embedding k0 -> K.
inline elem embed_subfield(const FieldTable& big, const FieldTable& small, elem y)
{
    if (big.p() != small.p() || big.k() % small.k() != 0)
        throw error(errc::not_a_subfield, "embedding target is not an extension");
    if (y == 0)
        return 0;
    std::uint64_t step = (big.q() - 1) / (small.q() - 1);
    return big.exp(static_cast<std::int64_t>(small.log_unchecked(y) * step));
}

// ---------------------------------------------------------------------------
// Binary table cache. Layout (little-endian):
//   "HYPFLD01" | u32 p | u32 k | (k+1) x u8 modulus | u32 q
//   | (q-1) x u32 antilog | q x u8 trace | u64 FNV-1a of everything before.

namespace detail {

inline constexpr char cache_magic[8] = {'H', 'Y', 'P', 'F', 'L', 'D', '0', '1'};

inline std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t h = 1469598103934665603ull)
{
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

inline void put_u32(std::vector<unsigned char>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

inline std::uint32_t get_u32(const unsigned char* in)
{
    return std::uint32_t{in[0]} | std::uint32_t{in[1]} << 8 | std::uint32_t{in[2]} << 16 |
           std::uint32_t{in[3]} << 24;
}

} // namespace detail

inline std::vector<unsigned char> serialize_field(const FieldTable& f)
{
    std::vector<unsigned char> out(std::begin(detail::cache_magic), std::end(detail::cache_magic));
    detail::put_u32(out, f.p());
    detail::put_u32(out, f.k());
    for (auto c : f.modulus())
        out.push_back(c);
    detail::put_u32(out, f.q());
    out.reserve(out.size() + std::size_t{f.q()} * 5 + 8);
    for (auto v : f.antilog_table())
        detail::put_u32(out, v);
    for (auto t : f.trace_table())
        out.push_back(t);
    std::uint64_t h = detail::fnv1a(out);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<unsigned char>(h >> (8 * i)));
    return out;
}

inline void save_field_cache(const std::filesystem::path& path, const FieldTable& f)
{
    auto bytes = serialize_field(f);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw error(errc::io_error, "cannot write " + path.string());
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

/// Loads a cached table; nullopt if the file is absent or fails validation.
inline std::optional<FieldTable> load_field_cache(const std::filesystem::path& path, unsigned p, unsigned k)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return std::nullopt;
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    auto modulus = conway::polynomial(p, k);
    if (!modulus)
        return std::nullopt;

    std::size_t header = 8 + 4 + 4 + (k + 1) + 4;
    if (bytes.size() < header + 8 || std::memcmp(bytes.data(), detail::cache_magic, 8) != 0)
        return std::nullopt;
    if (detail::get_u32(&bytes[8]) != p || detail::get_u32(&bytes[12]) != k)
        return std::nullopt;
    if (!std::equal(modulus->begin(), modulus->end(), bytes.begin() + 16))
        return std::nullopt;

    FieldTable f;
    f.init_shape(p, k, *modulus);
    if (detail::get_u32(&bytes[16 + k + 1]) != f.q_)
        return std::nullopt;
    std::size_t expected = header + std::size_t{f.q_ - 1} * 4 + f.q_ + 8;
    if (bytes.size() != expected)
        return std::nullopt;
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i)
        h |= std::uint64_t{bytes[expected - 8 + i]} << (8 * i);
    if (detail::fnv1a(std::span(bytes.data(), expected - 8)) != h)
        return std::nullopt;

    if (p == 3) {
        elem nl = 0;
        for (unsigned j = 0; j < k; ++j)
            nl += ((3 - f.modulus_[j]) % 3) * f.pow3_[j];
        f.neg_low_ = nl;
    }
    f.antilog_.resize(f.q_ - 1);
    for (std::uint32_t i = 0; i + 1 < f.q_; ++i)
        f.antilog_[i] = detail::get_u32(&bytes[header + 4 * std::size_t{i}]);
    f.trace_.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header + std::size_t{f.q_ - 1} * 4),
                    bytes.end() - 8);
    if (!f.index_logs())
        return std::nullopt;
    // Spot-check the power recurrence on a fixed stride.
    if (k > 1) {
        std::uint32_t stride = std::max<std::uint32_t>(1, (f.q_ - 1) / 64);
        for (std::uint32_t i = 0; i + 1 < f.q_; i += stride)
            if (f.times_t(f.antilog_[i]) != f.antilog_[(i + 1) % (f.q_ - 1)])
                return std::nullopt;
    }
    return f;
}

/// Cache-aware build: reuse a valid cache file in `dir`, else build and write it.
inline FieldTable build_field_cached(unsigned p, unsigned k, const std::filesystem::path& dir)
{
    auto path = dir / ("F" + std::to_string(p) + "_" + std::to_string(k) + ".fld");
    if (auto cached = load_field_cache(path, p, k))
        return std::move(*cached);
    auto f = build_field(p, k);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!ec)
        save_field_cache(path, f);
    return f;
}

} // namespace hypcheck
