#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdc {

enum class ErrorKind {
    invalid_length,
    invalid_permutation,
    shape_error,
    modulus_mismatch,
    undefined,
    not_a_unit,
    hypothesis_violated,
    invalid_params,
    construction_bug,
    too_large,
    unsupported_case,
    incomplete_coverage,
    no_shadow,
    not_applicable,
    infeasible,
    needs_more_constraints,
    parse_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sdc
