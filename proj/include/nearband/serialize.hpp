#pragma once

#include <string>

#include "json.hpp"
#include "nearband/approx.hpp"
#include "nearband/continuous.hpp"
#include "nearband/errors.hpp"
#include "nearband/experiments.hpp"
#include "nearband/partition.hpp"
#include "nearband/sharp_bound.hpp"

namespace nearband {

nlohmann::json to_json(const Matrix& m);

nlohmann::json to_json(const NullityReport& report);
nlohmann::json to_json(const TruncationResult& result);
nlohmann::json to_json(const NeumannReport& report);
nlohmann::json to_json(const SharpEstimate& estimate);
nlohmann::json to_json(const LemmaCertificate& cert);
nlohmann::json to_json(const ContinuousReport& report);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const RankKResult& result);
nlohmann::json to_json(const std::vector<BandedCheckRow>& rows);

/// B0 is inlined as nested arrays when the system order M is at most
/// 64; otherwise it is written as a Matrix Market file at
/// companion_path and referenced by name.
nlohmann::json to_json(const WorstCaseResult& result, std::size_t order,
                       const std::string& companion_path);

nlohmann::json error_json(const Error& e);

}  // namespace nearband
