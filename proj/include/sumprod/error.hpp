#pragma once

#include <stdexcept>
#include <string>

namespace sumprod {

// Error codes cover every failure mode a caller can trigger; anything else
// (logic bugs) surfaces as an assertion.
enum class Errc {
    non_prime,
    degree_out_of_range,
    field_too_large,
    division_by_zero,
    length_mismatch,
    empty_input,
    zero_slope_present,
    non_product_family,
    negative_value,
    empty_domain,
    size_too_large,
    bad_descriptor,
    zero_size,
    io_failure,
    invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::non_prime: return "NonPrime";
        case Errc::degree_out_of_range: return "DegreeOutOfRange";
        case Errc::field_too_large: return "FieldTooLarge";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::empty_input: return "EmptyInput";
        case Errc::zero_slope_present: return "ZeroSlopePresent";
        case Errc::non_product_family: return "NonProductFamily";
        case Errc::negative_value: return "NegativeValue";
        case Errc::empty_domain: return "EmptyDomain";
        case Errc::size_too_large: return "SizeTooLarge";
        case Errc::bad_descriptor: return "BadDescriptor";
        case Errc::zero_size: return "ZeroSize";
        case Errc::io_failure: return "IoFailure";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace sumprod
