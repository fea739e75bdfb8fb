#include "nearband/errors.hpp"

namespace nearband {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::singular_matrix: return "singular-matrix";
    case ErrorCode::partition_bounds: return "partition-bounds";
    case ErrorCode::bandwidth_violation: return "bandwidth-violation";
    case ErrorCode::invalid_rank: return "invalid-rank";
    case ErrorCode::lemma_precondition: return "lemma-precondition";
    case ErrorCode::degenerate_input: return "degenerate-input";
    case ErrorCode::unbounded_ratio: return "unbounded-ratio";
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::generation_failure: return "generation-failure";
    case ErrorCode::degenerate_domain: return "degenerate-domain";
    case ErrorCode::invertibility: return "invertibility";
    case ErrorCode::missing_file: return "missing-file";
    case ErrorCode::malformed_matrix_market: return "malformed-matrix-market";
  }
  return "unknown-error";
}

}  // namespace nearband
