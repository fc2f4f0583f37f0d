#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcheck {

enum class errc {
    unsupported_characteristic,
    degree_out_of_range,
    inversion_of_zero,
    not_a_subfield,
    char_at_zero,
    order_not_dividing,
    not_coprime,
    float_mode_unsupported,
    zero_argument,
    family_constraint,
    divisible_by_p,
    r_out_of_range,
    parity_violation,
    invalid_spec,
    exact_cap_exceeded,
    overflow,
    cache_invalid,
    io_error,
};

constexpr std::string_view to_string(errc e) noexcept
{
    switch (e) {
    case errc::unsupported_characteristic: return "unsupported-characteristic";
    case errc::degree_out_of_range: return "degree-out-of-range";
    case errc::inversion_of_zero: return "inversion-of-zero";
    case errc::not_a_subfield: return "not-a-subfield";
    case errc::char_at_zero: return "char-at-zero";
    case errc::order_not_dividing: return "order-not-dividing-q-1";
    case errc::not_coprime: return "not-coprime";
    case errc::float_mode_unsupported: return "float-mode-unsupported";
    case errc::zero_argument: return "zero-argument";
    case errc::family_constraint: return "family-constraint";
    case errc::divisible_by_p: return "divisible-by-p";
    case errc::r_out_of_range: return "r-out-of-range";
    case errc::parity_violation: return "parity-violation";
    case errc::invalid_spec: return "invalid-spec";
    case errc::exact_cap_exceeded: return "exact-cap-exceeded";
    case errc::overflow: return "overflow";
    case errc::cache_invalid: return "cache-invalid";
    case errc::io_error: return "io-error";
    }
    return "unknown";
}

/// Every precondition failure in the library is reported through this type.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

    /// Resource caps map to their own CLI exit status.
    bool is_resource_cap() const noexcept
    {
        return code_ == errc::degree_out_of_range || code_ == errc::r_out_of_range ||
               code_ == errc::exact_cap_exceeded;
    }

private:
    errc code_;
};

} // namespace hypcheck
