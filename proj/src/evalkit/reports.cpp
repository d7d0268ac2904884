#include "chordlm/evalkit/reports.h"

#include <algorithm>
#include <cstdio>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::evalkit {

std::string comment_block(const std::vector<std::string>& preamble) {
  std::string out;
  for (const std::string& line : preamble) out += "# " + line + "\n";
  return out;
}

std::string results_csv(const std::vector<EvalRecord>& records, const std::vector<std::string>& preamble) {
  std::string out = comment_block(preamble);
  out += "model,composition,dataset,fold,h_m,n_tokens,n_types,improbable,monophonic,repetition\n";
  for (const EvalRecord& r : records) {
    out += r.model + "," + r.composition + "," + r.dataset + "," + std::to_string(r.fold) + "," +
           text::format_double(r.h) + "," + std::to_string(r.predictors.n_tokens) + "," +
           std::to_string(r.predictors.n_types) + "," + text::format_double(r.predictors.improbable) + "," +
           text::format_double(r.predictors.monophonic) + "," + text::format_double(r.predictors.repetition) + "\n";
  }
  return out;
}

std::vector<EvalRecord> read_results_csv(std::string_view content) {
  std::vector<EvalRecord> records;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#' || text::starts_with(line, "model,")) continue;
    auto f = text::split(line, ',');
    if (f.size() != 10) throw InputError("results line " + std::to_string(line_no) + ": expected 10 fields");
    EvalRecord r;
    r.model = f[0];
    r.composition = f[1];
    r.dataset = f[2];
    r.fold = static_cast<int>(text::parse_int(f[3], "fold"));
    r.h = text::parse_double(f[4], "h_m");
    r.predictors.n_tokens = text::parse_int(f[5], "n_tokens");
    r.predictors.n_types = text::parse_int(f[6], "n_types");
    r.predictors.improbable = text::parse_double(f[7], "improbable");
    r.predictors.monophonic = text::parse_double(f[8], "monophonic");
    r.predictors.repetition = text::parse_double(f[9], "repetition");
    records.push_back(std::move(r));
  }
  return records;
}

SummaryRow summarize_model(const std::string& model, const std::vector<EvalRecord>& records, int replicates,
                           double level, std::uint64_t seed) {
  std::vector<double> values;
  for (const EvalRecord& r : records) {
    if (r.model == model) values.push_back(r.h);
  }
  if (values.empty()) throw InputError("no results for model '" + model + "'");
  SummaryRow row;
  row.model = model;
  row.n = static_cast<std::int64_t>(values.size());
  row.mean_h = mean(values);
  row.ci = values.size() >= 2 ? bootstrap_ci(values, replicates, level, seed) : Interval{row.mean_h, row.mean_h};
  return row;
}

std::string summary_csv(const std::vector<SummaryRow>& rows, const std::vector<std::string>& preamble) {
  std::string out = comment_block(preamble);
  out += "model,mean_h,ci_low,ci_high,n\n";
  for (const SummaryRow& r : rows) {
    out += r.model + "," + text::format_fixed(r.mean_h, 6) + "," + text::format_fixed(r.ci.low, 6) + "," +
           text::format_fixed(r.ci.high, 6) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

RegressionResult regress_records(const std::vector<EvalRecord>& records, const RegressionOptions& options) {
  std::vector<std::string> names(std::begin(kPredictorNames), std::end(kPredictorNames));
  std::vector<std::vector<double>> columns(5);
  std::vector<double> y;
  for (const EvalRecord& r : records) {
    columns[0].push_back(static_cast<double>(r.predictors.n_tokens));
    columns[1].push_back(static_cast<double>(r.predictors.n_types));
    columns[2].push_back(r.predictors.improbable);
    columns[3].push_back(r.predictors.monophonic);
    columns[4].push_back(r.predictors.repetition);
    y.push_back(r.h);
  }
  return stepwise_regression(names, columns, y, options);
}

std::string regression_report(const std::string& model, const RegressionResult& result) {
  std::string out = "Model: " + model + "  (N = " + std::to_string(result.n) + ", " + result.criterion + ")\n";
  char line[128];
  std::snprintf(line, sizeof(line), "  %-8s %-12s %10s %8s\n", "step", "predictor", "beta", "R2");
  out += line;
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const RegressionStep& s = result.steps[i];
    auto it = std::find(result.retained.begin(), result.retained.end(), s.predictor);
    std::string beta = "-";
    if (s.action == StepAction::kEnter && it != result.retained.end()) {
      beta = text::format_fixed(result.betas[static_cast<std::size_t>(it - result.retained.begin())], 3);
    }
    std::string name = (s.action == StepAction::kRemove ? "-" : "") + s.predictor;
    std::snprintf(line, sizeof(line), "  %-8zu %-12s %10s %8s\n", i + 1, name.c_str(), beta.c_str(),
                  text::format_fixed(s.r2, 3).c_str());
    out += line;
  }
  if (result.steps.empty()) out += "  (no predictor entered)\n";
  for (const std::string& w : result.warnings) out += "  warning: " + w + "\n";
  return out;
}

}  // namespace chordlm::evalkit
