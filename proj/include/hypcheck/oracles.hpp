#pragma once

// Direct evaluation of the trace formula: the full sum over (t_1..t_c) and
// (x_1..x_c), every term computed with field add/mul/pow/div and Tr. No
// convolution, no log-index shortcuts. Exponential in c; small fields only.

#include <cstdint>
#include <numeric>
#include <vector>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "exp_sums.hpp"
#include "finite_field.hpp"

namespace hypcheck::oracle {

/// T(s) with all c inner sums left unfactored.
inline Cyclotomic trace_direct(const FieldTable& k, const TraceParams& params, elem s)
{
    if (s == 0)
        throw error(errc::zero_argument, "trace at s = 0");
    auto chars = outer_characters(k, params);
    const int c = static_cast<int>(chars.size());
    const int p = static_cast<int>(k.p());
    const int L = params.value_order(k.p());
    const elem b_elem = static_cast<elem>(params.B % p); // B as an element of the prime field

    // One "slot" per outer variable: (t_i, x_i) with t_i != 0.
    std::vector<std::pair<elem, elem>> slots;
    for (elem t = 1; t < k.q(); ++t)
        for (elem x = 0; x < k.q(); ++x)
            slots.emplace_back(t, x);

    std::vector<std::int64_t> counts(static_cast<std::size_t>(L), 0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(c), 0);
    const elem minus_inv_s = k.neg(k.inv(s));
    while (true) {
        elem prod = 1;
        std::int64_t e = 0;
        for (int i = 0; i < c; ++i) {
            auto [t, x] = slots[idx[i]];
            prod = k.mul(prod, t);
            // psi(B x - x^B / t)
            elem arg = k.sub(k.mul(b_elem, x), k.div(k.pow(x, params.B), t));
            e += static_cast<std::int64_t>(k.trace(arg)) * (L / p);
            e += static_cast<std::int64_t>(chars[i].value_exponent(t)) * (L / static_cast<int>(chars[i].order()));
        }
        e += static_cast<std::int64_t>(k.trace(k.mul(prod, minus_inv_s))) * (L / p);
        ++counts[static_cast<std::size_t>(e % L)];

        int pos = 0;
        while (pos < c && ++idx[pos] == slots.size())
            idx[pos++] = 0;
        if (pos == c)
            break;
    }
    auto total = Cyclotomic::zero(L);
    for (int j = 0; j < L; ++j)
        if (counts[j] != 0)
            total.add_root(j, counts[j]);
    std::int64_t num = 1, den = 1;
    for (int i = 0; i < c; ++i) {
        num = -num;
        den *= k.q();
    }
    return total.scaled(num, den);
}

} // namespace hypcheck::oracle
