#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chordlm/evalkit/bootstrap.h"
#include "chordlm/evalkit/predictors.h"
#include "chordlm/evalkit/regression.h"

namespace chordlm::evalkit {

// Per-composition evaluation result for one model configuration.
struct EvalRecord {
  std::string model;
  std::string composition;
  std::string dataset;
  int fold = 0;
  double h = 0;  // mean bits per token
  Predictors predictors;
};

// Report files start with "# key: value" comment lines describing the run;
// `preamble` supplies them (without the leading "# ").
std::string comment_block(const std::vector<std::string>& preamble);

// Results CSV:
//   model,composition,dataset,fold,h_m,n_tokens,n_types,improbable,monophonic,repetition
std::string results_csv(const std::vector<EvalRecord>& records, const std::vector<std::string>& preamble);
std::vector<EvalRecord> read_results_csv(std::string_view content);

struct SummaryRow {
  std::string model;
  double mean_h = 0;
  Interval ci;
  std::int64_t n = 0;
};

// Mean H_m over compositions with its BCa bootstrap interval.
SummaryRow summarize_model(const std::string& model, const std::vector<EvalRecord>& records, int replicates,
                           double level, std::uint64_t seed);

// Summary CSV: model,mean_h,ci_low,ci_high,n
std::string summary_csv(const std::vector<SummaryRow>& rows, const std::vector<std::string>& preamble);

// Stepwise regression of H_m on the five corpus predictors.
RegressionResult regress_records(const std::vector<EvalRecord>& records, const RegressionOptions& options);

// Plain-text table: predictor, standardized beta (final model), cumulative R^2.
std::string regression_report(const std::string& model, const RegressionResult& result);

}  // namespace chordlm::evalkit
