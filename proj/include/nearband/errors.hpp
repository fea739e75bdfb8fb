#pragma once

#include <stdexcept>
#include <string>

namespace nearband {

/// Stable error codes; the CLI maps these 1:1 onto machine-readable
/// error objects, so the strings are part of the public interface.
enum class ErrorCode {
  invalid_input,
  invalid_argument,
  singular_matrix,
  partition_bounds,
  bandwidth_violation,
  invalid_rank,
  lemma_precondition,
  degenerate_input,
  unbounded_ratio,
  invalid_config,
  generation_failure,
  degenerate_domain,
  invertibility,
  missing_file,
  malformed_matrix_market,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nearband
