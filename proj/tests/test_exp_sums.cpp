#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hypcheck/exp_sums.hpp"
#include "hypcheck/oracles.hpp"

using namespace hypcheck;

namespace {

const TraceParams p3x13 = TraceParams::axb(3, 13);
const TraceParams p4x5 = TraceParams::axb(4, 5);
const TraceParams p28 = TraceParams::atimes4(7);

Cyclotomic psi_of(const FieldTable& f, elem x) { return Cyclotomic::root_of_unity(f.trace(x), static_cast<int>(f.p())); }

// sum over x of psi(B x - x^B / t), straight from field operations
Cyclotomic inner_direct(const FieldTable& f, int b, elem t)
{
    auto s = Cyclotomic::zero(static_cast<int>(f.p()));
    for (elem x = 0; x < f.q(); ++x)
        s += psi_of(f, f.sub(f.mul(static_cast<elem>(b % static_cast<int>(f.p())), x), f.div(f.pow(x, b), t)));
    return s;
}

} // namespace

TEST(B0Sum, F4Examples)
{
    auto f4 = build_field(2, 2);
    EXPECT_EQ(b0_sum(f4, 13, 1), Cyclotomic::integer(-4));
    EXPECT_EQ(b0_sum(f4, 13, f4.generator()), Cyclotomic::integer(0));
    EXPECT_THROW(b0_sum(f4, 13, 0), error);
    EXPECT_THROW(b0_sum(f4, 4, 1), error);
}

TEST(B0Sum, MatchesDirectSum)
{
    for (auto [p, k, b] : std::vector<std::tuple<unsigned, unsigned, int>>{{2, 4, 13}, {2, 6, 13}, {3, 2, 5}, {3, 4, 7}}) {
        auto f = build_field(p, k);
        for (elem t = 1; t < f.q(); ++t)
            ASSERT_EQ(b0_sum(f, b, t), -inner_direct(f, b, t));
    }
}

TEST(Kloosterman, ValuesAndWeilBound)
{
    auto f2 = build_field(2, 1);
    EXPECT_EQ(kloosterman(f2, 1), Cyclotomic::integer(1));
    auto f4 = build_field(2, 2);
    for (elem a = 1; a < 4; ++a)
        EXPECT_TRUE(kloosterman(f4, a).is_rational());
    EXPECT_THROW(kloosterman(f4, 0), error);
    for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 6}, {3, 4}}) {
        auto f = build_field(p, k);
        for (elem a = 1; a < f.q(); ++a) {
            auto kl = kloosterman(f, a);
            auto direct = Cyclotomic::zero(static_cast<int>(p));
            for (elem x = 1; x < f.q(); ++x)
                direct += psi_of(f, f.add(x, f.div(a, x)));
            ASSERT_EQ(kl, direct);
            for (auto z : kl.embeddings())
                ASSERT_LE(std::abs(z), 2 * std::sqrt(static_cast<double>(f.q())) + 1e-9);
        }
    }
}

TEST(TraceAxB, F4ClosedForm)
{
    auto f4 = build_field(2, 2);
    EXPECT_EQ(trace_AxB(f4, 3, 13, 1), Cyclotomic::integer(1));
    auto table = trace_table_all<Cyclotomic>(f4, p3x13);
    ASSERT_EQ(table.size(), 3u);
    for (elem s = 1; s < 4; ++s) {
        EXPECT_EQ(table.at(s), psi_of(f4, f4.inv(s)));
        EXPECT_EQ(trace_AxB(f4, 3, 13, s), table.at(s));
    }
    EXPECT_DOUBLE_EQ(moments(table, 1), 1.0);
}

TEST(TraceAxB, F16RationalWithBoundedDenominator)
{
    auto f16 = build_field(2, 4);
    auto table = trace_table_all<Cyclotomic>(f16, p3x13);
    ASSERT_EQ(table.size(), 15u);
    for (const auto& v : table.values) {
        EXPECT_TRUE(v.is_rational());
        EXPECT_TRUE(v.scaled(256, 1).is_integral());
    }
    EXPECT_TRUE(rationality_check(table).pass());
    EXPECT_TRUE(integrality_check(table).pass());
    EXPECT_TRUE(galois_invariance_check(table).pass());
    EXPECT_TRUE(frobenius_invariance_check(table, 4).pass());
    EXPECT_TRUE(purity_check(table, 24).pass());
}

TEST(TraceAxB, RestructuredEqualsDirectAndPointwise)
{
    auto f16 = build_field(2, 4);
    auto table = trace_table_all<Cyclotomic>(f16, p3x13);
    for (std::uint32_t i = 0; i < f16.unit_order(); ++i) {
        elem s = f16.exp(i);
        EXPECT_EQ(table.values[i], oracle::trace_direct(f16, p3x13, s));
        EXPECT_EQ(table.values[i], trace_point<Cyclotomic>(f16, p3x13, s));
    }
    auto f9 = build_field(3, 2);
    for (const auto& params : {p4x5, p28}) {
        auto t9 = trace_table_all<Cyclotomic>(f9, params);
        for (std::uint32_t i = 0; i < f9.unit_order(); ++i)
            EXPECT_EQ(t9.values[i], trace_point<Cyclotomic>(f9, params, f9.exp(i)));
    }
}

TEST(TraceAxB, Errors)
{
    auto f8 = build_field(2, 3);
    EXPECT_THROW(trace_AxB(f8, 3, 13, 1), error); // 3 does not divide 7
    auto f16 = build_field(2, 4);
    EXPECT_THROW(trace_AxB(f16, 3, 13, 0), error);
    EXPECT_THROW(trace_AxB(f16, 3, 6, 1), error);
    EXPECT_THROW(trace_AxB(f16, 3, 9, 1), error);
    auto f2_14 = build_field(2, 14);
    try {
        trace_table_all<Cyclotomic>(f2_14, p3x13);
        FAIL();
    } catch (const error& e) {
        EXPECT_TRUE(e.is_resource_cap());
    }
}

TEST(TraceAtimes, InnerDoubleSumFactors)
{
    auto f9 = build_field(3, 2);
    for (elem u = 1; u < 9; ++u)
        for (elem v = 1; v < 9; ++v) {
            auto dbl = Cyclotomic::zero(3);
            for (elem x = 0; x < 9; ++x)
                for (elem y = 0; y < 9; ++y) {
                    elem arg = f9.sub(f9.sub(f9.mul(7 % 3, f9.add(x, y)), f9.div(f9.pow(x, 7), u)),
                                      f9.div(f9.pow(y, 7), v));
                    dbl += psi_of(f9, arg);
                }
            ASSERT_EQ(dbl, b0_sum(f9, 7, u) * b0_sum(f9, 7, v));
        }
}

TEST(TraceAtimes, F9AndF81)
{
    auto f9 = build_field(3, 2);
    auto t9 = trace_table_all<Cyclotomic>(f9, p28);
    for (const auto& v : t9.values)
        EXPECT_TRUE(v.scaled(81, 1).is_integral());
    EXPECT_TRUE(galois_invariance_check(t9).pass());
    EXPECT_TRUE(purity_check(t9, 12).pass());

    auto f81 = build_field(3, 4);
    for (const auto& params : {p4x5, p28}) {
        auto t = trace_table_all<Cyclotomic>(f81, params);
        EXPECT_TRUE(frobenius_invariance_check(t, 9).pass());
        EXPECT_TRUE(galois_invariance_check(t).pass());
        EXPECT_TRUE(purity_check(t, 12).pass());
        EXPECT_TRUE(integrality_check(t).pass());
    }
}

TEST(TraceAtimes, Errors)
{
    auto f16 = build_field(2, 4);
    EXPECT_THROW(trace_Atimes4B(f16, 7, 1), error); // p even
    auto f27 = build_field(3, 3);
    EXPECT_THROW(trace_Atimes4B(f27, 7, 1), error); // 4 does not divide 26
    auto f9 = build_field(3, 2);
    EXPECT_THROW(trace_Atimes4B(f9, 9, 1), error);  // not prime
    EXPECT_THROW(trace_Atimes4B(f9, 3, 1), error);  // equals p
    EXPECT_THROW(trace_Atimes4B(f9, 7, 0), error);
}

TEST(TraceTable, WorkerCountDoesNotChangeValues)
{
    auto f = build_field(3, 4);
    auto a = trace_table_all<Cyclotomic>(f, p4x5, 1);
    auto b = trace_table_all<Cyclotomic>(f, p4x5, 3);
    EXPECT_EQ(a.values, b.values);
    auto fa = trace_table_all<ApproxComplex>(f, p4x5, 1);
    auto fb = trace_table_all<ApproxComplex>(f, p4x5, 4);
    for (std::size_t i = 0; i < fa.size(); ++i)
        EXPECT_EQ(fa.values[i].value(), fb.values[i].value());
}

TEST(TraceTable, FloatMatchesExact)
{
    auto f64 = build_field(2, 6);
    auto e = trace_table_all<Cyclotomic>(f64, p3x13);
    auto a = trace_table_all<ApproxComplex>(f64, p3x13);
    EXPECT_TRUE(cross_mode_check(e, a, 1e-9).pass());
    EXPECT_TRUE(rationality_check(a).pass());
    EXPECT_THROW(galois_invariance_check(a), error);
}

TEST(Pullback, Behaviour)
{
    auto f4 = build_field(2, 2);
    auto table = trace_table_all<Cyclotomic>(f4, p3x13);
    auto same = pullback_table(table, 1);
    EXPECT_EQ(same.values, table.values);
    auto pb = pullback_table(table, 39);
    for (const auto& v : pb.values)
        EXPECT_EQ(v, Cyclotomic::integer(1)); // s^39 = 1 on F4^x, T(1) = psi(Tr 1) = +1
    for (elem s = 1; s < 4; ++s) {
        auto r = pullback_trace(table, 39, s);
        ASSERT_FALSE(r.defined_by_extension);
        EXPECT_EQ(*r.value, Cyclotomic::integer(1));
    }
    EXPECT_TRUE(pullback_trace(table, 39, 0).defined_by_extension);
    EXPECT_THROW(pullback_table(table, 4), error);

    auto f16 = build_field(2, 4);
    auto t16 = trace_table_all<Cyclotomic>(f16, p3x13);
    auto p5 = pullback_table(t16, 5);
    for (elem s = 1; s < 16; ++s)
        for (elem z = 1; z < 16; ++z)
            if (f16.pow(z, 5) == 1) {
                EXPECT_EQ(p5.at(s), p5.at(f16.mul(s, z))); // constant on cosets of mu_5
            }
}

TEST(TraceTable, MomentsAndStatistics)
{
    auto f64 = build_field(2, 6);
    auto table = trace_table_all<Cyclotomic>(f64, p3x13);
    EXPECT_GE(moments(table, 1), 0.0);
    EXPECT_LE(max_abs(table), 24.0);
    auto stats = trace_statistics(table);
    for (const char* key : {"family", "p", "A", "B", "q", "M1", "M2", "max_abs", "integrality_pass", "frobenius_pass"})
        EXPECT_TRUE(stats.contains(key)) << key;
    EXPECT_EQ(stats["q"], 64);
    EXPECT_TRUE(stats["frobenius_pass"].get<bool>());

    std::ostringstream csv;
    write_trace_csv(csv, table);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "s_log_index,exact");
    std::ostringstream fcsv;
    write_trace_csv(fcsv, trace_table_all<ApproxComplex>(f64, p3x13));
    EXPECT_EQ(fcsv.str().substr(0, fcsv.str().find('\n')), "s_log_index,re,im");
}
