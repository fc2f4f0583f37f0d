#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace hypcheck::conway {

// Conway polynomials over F_2 (degree 1..24) and F_3 (degree 1..15),
// coefficients listed from the constant term up to the (monic) leading term.

inline constexpr std::array<std::uint8_t, 2> p2_k1{1, 1};
inline constexpr std::array<std::uint8_t, 3> p2_k2{1, 1, 1};
inline constexpr std::array<std::uint8_t, 4> p2_k3{1, 1, 0, 1};
inline constexpr std::array<std::uint8_t, 5> p2_k4{1, 1, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 6> p2_k5{1, 0, 1, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 7> p2_k6{1, 1, 0, 1, 1, 0, 1};
inline constexpr std::array<std::uint8_t, 8> p2_k7{1, 1, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 9> p2_k8{1, 0, 1, 1, 1, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 10> p2_k9{1, 0, 0, 0, 1, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 11> p2_k10{1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 12> p2_k11{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 13> p2_k12{1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 14> p2_k13{1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 15> p2_k14{1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 16> p2_k15{1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 17> p2_k16{1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 18> p2_k17{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 19> p2_k18{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 20> p2_k19{1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 21> p2_k20{1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 22> p2_k21{1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 23> p2_k22{1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 24> p2_k23{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 25> p2_k24{1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1};

inline constexpr std::array<std::uint8_t, 2> p3_k1{1, 1};
inline constexpr std::array<std::uint8_t, 3> p3_k2{2, 2, 1};
inline constexpr std::array<std::uint8_t, 4> p3_k3{1, 2, 0, 1};
inline constexpr std::array<std::uint8_t, 5> p3_k4{2, 0, 0, 2, 1};
inline constexpr std::array<std::uint8_t, 6> p3_k5{1, 2, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 7> p3_k6{2, 2, 1, 0, 2, 0, 1};
inline constexpr std::array<std::uint8_t, 8> p3_k7{1, 0, 2, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 9> p3_k8{2, 2, 2, 0, 1, 2, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 10> p3_k9{1, 1, 2, 2, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 11> p3_k10{2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 12> p3_k11{1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 13> p3_k12{2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 14> p3_k13{1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 15> p3_k14{2, 0, 1, 2, 0, 1, 2, 1, 1, 2, 0, 0, 0, 0, 1};
inline constexpr std::array<std::uint8_t, 16> p3_k15{1, 1, 2, 0, 0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1};

/// Conway polynomial C_{p,k}, or nullopt outside the embedded table.
inline std::optional<std::span<const std::uint8_t>> polynomial(unsigned p, unsigned k)
{
    if (p == 2) {
        switch (k) {
        case 1: return std::span<const std::uint8_t>(p2_k1);
        case 2: return std::span<const std::uint8_t>(p2_k2);
        case 3: return std::span<const std::uint8_t>(p2_k3);
        case 4: return std::span<const std::uint8_t>(p2_k4);
        case 5: return std::span<const std::uint8_t>(p2_k5);
        case 6: return std::span<const std::uint8_t>(p2_k6);
        case 7: return std::span<const std::uint8_t>(p2_k7);
        case 8: return std::span<const std::uint8_t>(p2_k8);
        case 9: return std::span<const std::uint8_t>(p2_k9);
        case 10: return std::span<const std::uint8_t>(p2_k10);
        case 11: return std::span<const std::uint8_t>(p2_k11);
        case 12: return std::span<const std::uint8_t>(p2_k12);
        case 13: return std::span<const std::uint8_t>(p2_k13);
        case 14: return std::span<const std::uint8_t>(p2_k14);
        case 15: return std::span<const std::uint8_t>(p2_k15);
        case 16: return std::span<const std::uint8_t>(p2_k16);
        case 17: return std::span<const std::uint8_t>(p2_k17);
        case 18: return std::span<const std::uint8_t>(p2_k18);
        case 19: return std::span<const std::uint8_t>(p2_k19);
        case 20: return std::span<const std::uint8_t>(p2_k20);
        case 21: return std::span<const std::uint8_t>(p2_k21);
        case 22: return std::span<const std::uint8_t>(p2_k22);
        case 23: return std::span<const std::uint8_t>(p2_k23);
        case 24: return std::span<const std::uint8_t>(p2_k24);
        default: return std::nullopt;
        }
    }
    if (p == 3) {
        switch (k) {
        case 1: return std::span<const std::uint8_t>(p3_k1);
        case 2: return std::span<const std::uint8_t>(p3_k2);
        case 3: return std::span<const std::uint8_t>(p3_k3);
        case 4: return std::span<const std::uint8_t>(p3_k4);
        case 5: return std::span<const std::uint8_t>(p3_k5);
        case 6: return std::span<const std::uint8_t>(p3_k6);
        case 7: return std::span<const std::uint8_t>(p3_k7);
        case 8: return std::span<const std::uint8_t>(p3_k8);
        case 9: return std::span<const std::uint8_t>(p3_k9);
        case 10: return std::span<const std::uint8_t>(p3_k10);
        case 11: return std::span<const std::uint8_t>(p3_k11);
        case 12: return std::span<const std::uint8_t>(p3_k12);
        case 13: return std::span<const std::uint8_t>(p3_k13);
        case 14: return std::span<const std::uint8_t>(p3_k14);
        case 15: return std::span<const std::uint8_t>(p3_k15);
        default: return std::nullopt;
        }
    }
    return std::nullopt;
}

} // namespace hypcheck::conway
