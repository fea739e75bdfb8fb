#include "nearband/serialize.hpp"

#include "nearband/matrix_market.hpp"

namespace nearband {

using nlohmann::json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const NullityReport& report) {
  return json{{"nullity_B", report.nullity_B},
              {"nullity_C", report.nullity_C},
              {"rank_B", report.rank_B},
              {"rank_C", report.rank_C},
              {"tolerance", report.tolerance},
              {"theorem_holds", report.theorem_holds},
              {"ill_conditioned", report.ill_conditioned}};
}

json to_json(const TruncationResult& result) {
  return json{{"error", result.error}, {"tail", result.tail}};
}

json to_json(const NeumannReport& report) {
  json j{{"epsilon", report.epsilon},
         {"norm_K0inv", report.norm_K0inv},
         {"valid", report.valid}};
  j["bound"] = report.bound ? json(*report.bound) : json(nullptr);
  j["measured"] = report.measured ? json(*report.measured) : json(nullptr);
  return j;
}

json to_json(const SharpEstimate& estimate) {
  return json{{"sigma_n_A", estimate.sigma_n_A},
              {"sigma_last_D", estimate.sigma_last_D},
              {"first_order", estimate.first_order}};
}

json to_json(const LemmaCertificate& cert) {
  return json{{"residual_B", cert.residual_B},
              {"residual_A", cert.residual_A},
              {"B_tilde_norm", cert.B_tilde_norm},
              {"J_invertible", cert.J_invertible},
              {"Jinv_norm", cert.Jinv_norm}};
}

json to_json(const ContinuousReport& report) {
  return json{{"sigma1", report.sigma1},
              {"sigma2", report.sigma2},
              {"bound", report.bound},
              {"measured", report.measured},
              {"offdiag_rank_n", report.offdiag_rank_n}};
}

json to_json(const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& row : result.rows)
    rows.push_back(json{{"eps", row.eps},
                        {"empirical_sup", row.empirical_sup},
                        {"analytic", row.analytic},
                        {"ratio", row.ratio},
                        {"converged", row.worst_case_converged}});
  json skipped = json::array();
  for (const SkippedEps& s : result.skipped)
    skipped.push_back(json{{"eps", s.eps}, {"reason", s.reason}});
  return json{{"rows", rows},
              {"skipped", skipped},
              {"sigma_n_A", result.sigma_n_A},
              {"sigma_last_D", result.sigma_last_D},
              {"fit",
               {{"slope", result.fit_slope},
                {"constant", result.fit_constant},
                {"valid", result.fit_valid}}}};
}

json to_json(const RankKResult& result) {
  json rows = json::array();
  for (const RankKRow& row : result.rows)
    rows.push_back(json{{"eps", row.eps},
                        {"sample", row.sample},
                        {"ratio", row.ratio},
                        {"sigma_n_A", row.sigma_n_A},
                        {"sigma_last_D", row.sigma_last_D},
                        {"sigma_B", row.sigma_B}});
  json skipped = json::array();
  for (const SkippedEps& s : result.skipped)
    skipped.push_back(json{{"eps", s.eps}, {"reason", s.reason}});
  return json{{"rows", rows}, {"skipped", skipped}};
}

json to_json(const std::vector<BandedCheckRow>& rows) {
  json out = json::array();
  for (const BandedCheckRow& row : rows)
    out.push_back(json{{"n", row.n},
                       {"rank_C", row.rank_C},
                       {"tail_ratio", row.tail_ratio}});
  return out;
}

json to_json(const WorstCaseResult& result, std::size_t order,
             const std::string& companion_path) {
  json j{{"fixed_point_residual", result.fixed_point_residual},
         {"achieved_ratio", result.achieved_ratio},
         {"eq7_value", result.eq7_value},
         {"iterations", result.iterations},
         {"converged", result.converged},
         {"max_iterate_norm", result.max_iterate_norm}};
  if (order <= 64) {
    j["B0"] = to_json(result.B0);
  } else {
    write_matrix_market(result.B0, companion_path);
    j["B0_path"] = companion_path;
  }
  return j;
}

json error_json(const Error& e) {
  return json{{"error", to_string(e.code())}, {"message", e.what()}};
}

}  // namespace nearband
