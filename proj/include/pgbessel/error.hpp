#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgb {

enum class ErrorCode {
  invalid_exponent,
  invalid_argument,
  dimension_mismatch,
  shape_mismatch,
  vertex_limit_exceeded,
  no_closed_form,
  oracle_budget_exceeded,
  not_riesz,
  symbol_too_small,
  hypothesis_violated,
  retry_cap_exceeded,
  parse_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pgb
