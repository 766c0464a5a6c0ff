#include "hjfa/error.hpp"

namespace hjfa {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_field: return "invalid-field";
        case ErrorCode::no_square_root: return "no-square-root";
        case ErrorCode::zero_valuation: return "zero-has-no-valuation";
        case ErrorCode::undefined_class: return "undefined-class";
        case ErrorCode::unsupported_field: return "unsupported-field";
        case ErrorCode::odd_valuation: return "odd-valuation";
        case ErrorCode::degenerate_line: return "degenerate-line";
        case ErrorCode::resource_limit: return "resource-limit";
        case ErrorCode::field_too_small: return "field-too-small";
        case ErrorCode::excluded_parameter: return "excluded-parameter";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::not_found: return "not-found";
        case ErrorCode::factorization_limit: return "factorization-limit";
        case ErrorCode::parse: return "parse";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ResourceLimitError::ResourceLimitError(const std::string& what, std::uint64_t reached)
    : Error(ErrorCode::resource_limit, what + " (reached " + std::to_string(reached) + ")"),
      reached_(reached) {}

}  // namespace hjfa
