#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hjfa {

enum class ErrorCode {
    invalid_field,
    no_square_root,
    zero_valuation,
    undefined_class,
    unsupported_field,
    odd_valuation,
    degenerate_line,
    resource_limit,
    field_too_small,
    excluded_parameter,
    precondition,
    not_found,
    factorization_limit,
    parse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a search exceeds a configured budget. `reached()` is the
/// last parameter value (usually N) the search got to.
class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string& what, std::uint64_t reached);

    std::uint64_t reached() const noexcept { return reached_; }

private:
    std::uint64_t reached_;
};

}  // namespace hjfa
