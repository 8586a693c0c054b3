#include "sdc/error.hpp"

namespace sdc {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_length: return "invalid-length";
        case ErrorKind::invalid_permutation: return "invalid-permutation";
        case ErrorKind::shape_error: return "shape-error";
        case ErrorKind::modulus_mismatch: return "modulus-mismatch";
        case ErrorKind::undefined: return "undefined";
        case ErrorKind::not_a_unit: return "not-a-unit";
        case ErrorKind::hypothesis_violated: return "hypothesis-violated";
        case ErrorKind::invalid_params: return "invalid-params";
        case ErrorKind::construction_bug: return "construction-bug";
        case ErrorKind::too_large: return "too-large";
        case ErrorKind::unsupported_case: return "unsupported-case";
        case ErrorKind::incomplete_coverage: return "incomplete-coverage";
        case ErrorKind::no_shadow: return "no-shadow";
        case ErrorKind::not_applicable: return "not-applicable";
        case ErrorKind::infeasible: return "infeasible";
        case ErrorKind::needs_more_constraints: return "needs-more-constraints";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

}  // namespace sdc
