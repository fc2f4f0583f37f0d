#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hypcheck/cyclotomic.hpp"

using namespace hypcheck;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, int m)
{
    auto v = Cyclotomic::zero(m);
    for (int k = 0; k < m; ++k)
        v.add_root(k, static_cast<std::int64_t>(rng() % 7) - 3);
    return v.scaled(1, 1 + static_cast<std::int64_t>(rng() % 4));
}

std::complex<double> zeta(std::int64_t k, int m)
{
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / m);
}

} // namespace

TEST(Cyclotomic, CyclotomicPolynomials)
{
    EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
    EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(3), (std::vector<std::int64_t>{1, 1, 1}));
    EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
    EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
    EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(15).size(), 9u);
}

TEST(Cyclotomic, RootsOfUnity)
{
    for (int m : {1, 2, 3, 4, 6, 12, 15, 24}) {
        auto z = Cyclotomic::root_of_unity(1, m);
        auto acc = Cyclotomic::integer(1, m);
        auto sum = Cyclotomic::zero(m);
        for (int k = 0; k < m; ++k) {
            sum += acc;
            acc *= z;
        }
        EXPECT_EQ(acc, Cyclotomic::integer(1, m)) << m;
        if (m > 1) {
            EXPECT_TRUE(sum.is_zero()) << m;
        }
        EXPECT_EQ(Cyclotomic::root_of_unity(m + 1, m), z);
        EXPECT_EQ(Cyclotomic::root_of_unity(-1, m), z.conj());
    }
    EXPECT_EQ(Cyclotomic::root_of_unity(6, 12), Cyclotomic::integer(-1));
}

TEST(Cyclotomic, EqualityAcrossOrders)
{
    EXPECT_EQ(Cyclotomic::root_of_unity(2, 6), Cyclotomic::root_of_unity(1, 3));
    EXPECT_EQ(Cyclotomic::root_of_unity(4, 12), Cyclotomic::root_of_unity(1, 3));
    EXPECT_EQ(Cyclotomic::integer(5, 12), Cyclotomic::integer(5));
    EXPECT_NE(Cyclotomic::root_of_unity(1, 12), Cyclotomic::root_of_unity(1, 3));
    auto mixed = Cyclotomic::root_of_unity(1, 3) + Cyclotomic::root_of_unity(1, 4);
    EXPECT_EQ(mixed.order(), 12);
    EXPECT_LT(std::abs(mixed.to_complex() - (zeta(1, 3) + zeta(1, 4))), 1e-12);
}

TEST(Cyclotomic, RingAxiomsOnRandomTriples)
{
    std::mt19937_64 rng(7);
    for (int m : {6, 12, 15}) {
        for (int i = 0; i < 100; ++i) {
            auto a = random_element(rng, m), b = random_element(rng, m), c = random_element(rng, m);
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_TRUE((a - a).is_zero());
            ASSERT_EQ(a * Cyclotomic::integer(1, m), a);
        }
    }
}

TEST(Cyclotomic, EmbeddingMatchesComplexArithmetic)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto a = random_element(rng, 12), b = random_element(rng, 12);
        EXPECT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-9);
        EXPECT_LT(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), 1e-9);
        EXPECT_LT(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 1e-9);
    }
}

TEST(Cyclotomic, RationalDetection)
{
    EXPECT_TRUE(Cyclotomic::rational(3, 4, 12).is_rational());
    EXPECT_FALSE(Cyclotomic::rational(3, 4, 12).is_integral());
    auto z = Cyclotomic::root_of_unity(1, 6);
    EXPECT_TRUE((z + z.conj()).is_rational());
    EXPECT_FALSE(z.is_rational());
    EXPECT_TRUE(Cyclotomic::rational(8, 4).is_integral());
}

TEST(Cyclotomic, OverflowIsDetected)
{
    auto big = Cyclotomic::integer(std::int64_t{1} << 40, 3);
    EXPECT_THROW(big * big, error);
}

TEST(Cyclotomic, ExactCapIsEnforced)
{
    try {
        Cyclotomic::root_of_unity(1, 1031);
        FAIL() << "expected cap error";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::exact_cap_exceeded);
        EXPECT_TRUE(e.is_resource_cap());
    }
}

TEST(Cyclotomic, GaloisAction)
{
    auto z15 = Cyclotomic::root_of_unity(1, 15);
    EXPECT_EQ(galois_act(z15, 4, 2), Cyclotomic::root_of_unity(4, 15));
    EXPECT_EQ(galois_act(z15, 1, 2), z15);
    EXPECT_EQ(galois_act(Cyclotomic::rational(5, 7, 12), 7, 3), Cyclotomic::rational(5, 7, 12));
    EXPECT_THROW(galois_act(z15, 3, 2), error);                                 // not coprime
    EXPECT_THROW(galois_act(Cyclotomic::root_of_unity(1, 12), 5, 3), error);    // moves zeta_3
    EXPECT_THROW(galois_act(CycNumber(ApproxComplex::integer(1)), 1, 2), error); // float mode

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto a = random_element(rng, 12), b = random_element(rng, 12);
        ASSERT_EQ(galois_act(a * b, 7, 3), galois_act(a, 7, 3) * galois_act(b, 7, 3));
        ASSERT_EQ(galois_act(a + b, 7, 3), galois_act(a, 7, 3) + galois_act(b, 7, 3));
    }
}

TEST(Cyclotomic, FloatTwinAgreesWithinItsBound)
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 1000; ++i) {
        int m = 12;
        std::int64_t j = static_cast<std::int64_t>(rng() % 12), k = static_cast<std::int64_t>(rng() % 12);
        std::int64_t n = static_cast<std::int64_t>(rng() % 50) - 25;
        auto e = Cyclotomic::root_of_unity(j, m) * Cyclotomic::root_of_unity(k, m) + Cyclotomic::integer(n, m);
        auto f = ApproxComplex::root_of_unity(j, m) * ApproxComplex::root_of_unity(k, m) + ApproxComplex::integer(n);
        ASSERT_TRUE(f.agrees_with(e)) << i;
    }
}

TEST(Cyclotomic, CompensatedAccumulation)
{
    Accumulator<ApproxComplex> acc;
    acc.add(ApproxComplex::integer(1 << 30));
    for (int i = 0; i < 1000; ++i)
        acc.add(ApproxComplex::rational(1, 3));
    acc.add(ApproxComplex::integer(-(1 << 30)));
    EXPECT_NEAR(acc.result().value().real(), 1000.0 / 3, 1e-9);
}

TEST(Cyclotomic, JsonRoundTrip)
{
    auto v = Cyclotomic::root_of_unity(5, 12).scaled(-3, 8) + Cyclotomic::integer(2, 12);
    nlohmann::json j = v;
    EXPECT_EQ(j.at("order"), 12);
    EXPECT_EQ(j.at("numerators").size(), 4u);
    EXPECT_EQ(j.get<Cyclotomic>(), v);
    nlohmann::json f = ApproxComplex::integer(2);
    EXPECT_EQ(f.at("re"), 2.0);
}
