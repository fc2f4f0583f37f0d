#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hypcheck/finite_field.hpp"

using namespace hypcheck;

namespace {

// Independent schoolbook arithmetic on base-p digit vectors modulo the field's modulus.
struct PolyOracle {
    unsigned p, k;
    std::vector<unsigned> mod; // low to high, monic, degree k

    explicit PolyOracle(const FieldTable& f) : p(f.p()), k(f.k())
    {
        for (auto c : f.modulus())
            mod.push_back(c);
    }

    std::vector<unsigned> digits(elem x) const
    {
        std::vector<unsigned> d(k);
        for (unsigned i = 0; i < k; ++i, x /= p)
            d[i] = x % p;
        return d;
    }

    elem pack(const std::vector<unsigned>& d) const
    {
        elem x = 0;
        for (unsigned i = k; i-- > 0;)
            x = x * p + d[i];
        return x;
    }

    elem add(elem x, elem y) const
    {
        auto a = digits(x), b = digits(y);
        for (unsigned i = 0; i < k; ++i)
            a[i] = (a[i] + b[i]) % p;
        return pack(a);
    }

    elem mul(elem x, elem y) const
    {
        auto a = digits(x), b = digits(y);
        std::vector<unsigned> c(2 * k, 0);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        for (unsigned d = 2 * k - 1; d >= k; --d) {
            unsigned lead = c[d];
            if (lead == 0)
                continue;
            for (unsigned i = 0; i <= k; ++i)
                c[d - k + i] = (c[d - k + i] + (p - lead) * mod[i]) % p;
        }
        c.resize(k);
        return pack(c);
    }
};

std::filesystem::path temp_dir(const std::string& name)
{
    auto d = std::filesystem::temp_directory_path() / ("hypcheck_ff_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST(FiniteField, F4ModulusAndGenerator)
{
    auto f = build_field(2, 2);
    EXPECT_EQ(f.q(), 4u);
    std::vector<unsigned> m(f.modulus().begin(), f.modulus().end());
    EXPECT_EQ(m, (std::vector<unsigned>{1, 1, 1}));
    elem w = f.generator();
    EXPECT_EQ(f.mul(w, w), f.add(w, 1));
    EXPECT_EQ(f.mul(w, f.mul(w, w)), 1u);
    EXPECT_EQ(f.pow(w, 13), w);
    EXPECT_EQ(f.trace(w), 1u);
}

TEST(FiniteField, SupportedRangeAndErrors)
{
    EXPECT_THROW(build_field(5, 1), error);
    EXPECT_THROW(build_field(2, 0), error);
    EXPECT_THROW(build_field(2, 25), error);
    EXPECT_THROW(build_field(3, 16), error);
    try {
        build_field(2, 25);
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::degree_out_of_range);
    }
    auto f = build_field(3, 2);
    EXPECT_THROW(f.inv(0), error);
    EXPECT_THROW(f.log(0), error);
    EXPECT_THROW(f.pow(0, -1), error);
    EXPECT_EQ(f.pow(0, 0), 1u);
    EXPECT_EQ(f.inv(1), 1u);
}

TEST(FiniteField, ArithmeticMatchesPolynomialOracle)
{
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 3}, {2, 4}, {2, 8}, {3, 1}, {3, 2}, {3, 3}, {3, 4}}) {
        auto f = build_field(p, k);
        PolyOracle o(f);
        for (elem x = 0; x < f.q(); ++x)
            for (elem y = 0; y < f.q(); ++y) {
                ASSERT_EQ(f.mul(x, y), o.mul(x, y)) << p << "^" << k << " " << x << "*" << y;
                ASSERT_EQ(f.add(x, y), o.add(x, y));
            }
    }
}

TEST(FiniteField, TablesAndGeneratorOrder)
{
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 6}, {2, 10}, {2, 11}, {3, 5}, {3, 6}}) {
        auto f = build_field(p, k);
        std::set<elem> seen;
        for (std::uint32_t i = 0; i < f.unit_order(); ++i) {
            elem x = f.exp(i);
            ASSERT_NE(x, 0u);
            ASSERT_EQ(f.log(x), i);
            seen.insert(x);
        }
        EXPECT_EQ(seen.size(), f.unit_order()) << "generator order";
        EXPECT_EQ(f.generator(), f.exp(1));
    }
}

TEST(FiniteField, FermatExhaustive)
{
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 16}, {3, 10}}) {
        auto f = build_field(p, k);
        PolyOracle o(f);
        for (elem x = 1; x < f.q(); ++x)
            ASSERT_EQ(f.pow(x, f.unit_order()), 1u);
        // square-and-multiply with the oracle on a sample
        for (elem x = 1; x < f.q(); x += 997) {
            elem acc = 1, b = x;
            for (std::uint64_t e = f.unit_order(); e; e >>= 1, b = o.mul(b, b))
                if (e & 1)
                    acc = o.mul(acc, b);
            ASSERT_EQ(acc, 1u);
        }
    }
}

TEST(FiniteField, LargestDegreesBuild)
{
    auto f = build_field(3, 15);
    EXPECT_EQ(f.q(), 14348907u);
    EXPECT_EQ(f.pow(f.generator(), f.unit_order()), 1u);
    EXPECT_NE(f.pow(f.generator(), f.unit_order() / 2), 1u);
}

TEST(FiniteField, TraceIsSumOfConjugates)
{
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 5}, {2, 8}, {3, 2}, {3, 3}, {3, 5}}) {
        auto f = build_field(p, k);
        for (elem x = 0; x < f.q(); ++x) {
            elem s = 0, c = x;
            for (unsigned i = 0; i < k; ++i, c = f.frobenius(c))
                s = f.add(s, c);
            ASSERT_LT(s, p);
            ASSERT_EQ(f.trace(x), s);
        }
    }
    EXPECT_EQ(build_field(3, 2).trace(1), 2u);
    EXPECT_EQ(build_field(2, 7).trace(0), 0u);
}

TEST(FiniteField, TraceAdditiveAndFrobeniusInvariant)
{
    auto f = build_field(3, 4);
    for (elem x = 0; x < f.q(); ++x) {
        EXPECT_EQ(f.trace(f.frobenius(x)), f.trace(x));
        for (elem y = 0; y < f.q(); y += 7)
            ASSERT_EQ(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % 3);
    }
}

TEST(FiniteField, TraceCharacterSumsCancel)
{
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 6}, {3, 4}}) {
        auto f = build_field(p, k);
        std::vector<std::uint32_t> counts(p, 0);
        for (elem x = 0; x < f.q(); ++x)
            ++counts[f.trace(x)];
        for (auto c : counts)
            EXPECT_EQ(c, f.q() / p); // equidistribution <=> sum of zeta_p^Tr vanishes
    }
}

TEST(FiniteField, FrobeniusFixesPrimeFieldOnly)
{
    auto f = build_field(3, 3);
    std::set<elem> image;
    for (elem x = 0; x < f.q(); ++x) {
        image.insert(f.frobenius(x));
        EXPECT_EQ(f.frobenius(x) == x, x < 3);
    }
    EXPECT_EQ(image.size(), f.q());
}

TEST(FiniteField, NormMap)
{
    auto f16 = build_field(2, 4), f4 = build_field(2, 2);
    EXPECT_EQ(subfield_norm_map(f16, f4, 1), 1u);
    elem ng = subfield_norm_map(f16, f4, f16.generator());
    EXPECT_NE(ng, 1u);
    EXPECT_EQ(f4.pow(ng, 3), 1u);
    EXPECT_EQ(ng, f4.generator()); // compatible Conway choices
    for (elem x = 1; x < 16; ++x)
        for (elem y = 1; y < 16; ++y)
            EXPECT_EQ(subfield_norm_map(f16, f4, f16.mul(x, y)),
                      f4.mul(subfield_norm_map(f16, f4, x), subfield_norm_map(f16, f4, y)));

    auto f9 = build_field(3, 2), f3 = build_field(3, 1);
    for (elem x = 1; x < 9; ++x) {
        elem n = f9.pow(x, 4);
        ASSERT_LT(n, 3u);
        EXPECT_EQ(subfield_norm_map(f9, f3, x), n);
    }
    auto f8 = build_field(2, 3);
    EXPECT_THROW(subfield_norm_map(f8, f4, 1), error);
}

TEST(FiniteField, EmbeddingIsAHomomorphism)
{
    auto big = build_field(3, 4), small = build_field(3, 2);
    for (elem x = 0; x < small.q(); ++x) {
        elem ex = embed_subfield(big, small, x);
        EXPECT_EQ(big.pow(ex, 9), ex);
        for (elem y = 0; y < small.q(); ++y) {
            EXPECT_EQ(embed_subfield(big, small, small.mul(x, y)), big.mul(ex, embed_subfield(big, small, y)));
            EXPECT_EQ(embed_subfield(big, small, small.add(x, y)), big.add(ex, embed_subfield(big, small, y)));
        }
    }
}

TEST(FiniteField, DeterministicRebuild)
{
    EXPECT_TRUE(build_field(2, 12) == build_field(2, 12));
    EXPECT_TRUE(build_field(3, 7) == build_field(3, 7));
}

TEST(FiniteFieldCache, RoundTrip)
{
    auto dir = temp_dir("roundtrip");
    auto f = build_field(3, 5);
    save_field_cache(dir / "f.fld", f);
    auto g = load_field_cache(dir / "f.fld", 3, 5);
    ASSERT_TRUE(g.has_value());
    EXPECT_TRUE(*g == f);
    EXPECT_FALSE(load_field_cache(dir / "f.fld", 3, 4).has_value());
    EXPECT_FALSE(load_field_cache(dir / "missing.fld", 3, 5).has_value());
}

TEST(FiniteFieldCache, CorruptionIsRejected)
{
    auto dir = temp_dir("corrupt");
    auto f = build_field(2, 9);
    save_field_cache(dir / "f.fld", f);
    auto size = std::filesystem::file_size(dir / "f.fld");
    {
        std::fstream io(dir / "f.fld", std::ios::in | std::ios::out | std::ios::binary);
        io.seekp(static_cast<std::streamoff>(size / 2));
        char c;
        io.read(&c, 1);
        io.seekp(static_cast<std::streamoff>(size / 2));
        c = static_cast<char>(c ^ 0x5a);
        io.write(&c, 1);
    }
    EXPECT_FALSE(load_field_cache(dir / "f.fld", 2, 9).has_value());
    std::filesystem::resize_file(dir / "f.fld", size - 3);
    EXPECT_FALSE(load_field_cache(dir / "f.fld", 2, 9).has_value());
}

TEST(FiniteFieldCache, CachedBuildWritesAndReuses)
{
    auto dir = temp_dir("cached");
    auto a = build_field_cached(2, 10, dir);
    ASSERT_TRUE(std::filesystem::exists(dir / "F2_10.fld"));
    auto b = build_field_cached(2, 10, dir);
    EXPECT_TRUE(a == b);
    EXPECT_TRUE(a == build_field(2, 10));
}
