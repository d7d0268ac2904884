#pragma once

#include <span>
#include <string>
#include <vector>

namespace chordlm::evalkit {

// Ordinary least squares with an intercept. Vectors are indexed intercept
// first, then the columns in the order given.
struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> p_values;  // two-sided t test
  double r2 = 0;
  double rss = 0;
  int df = 0;  // residual degrees of freedom
};

OlsFit ols(std::span<const std::vector<double>> columns, std::span<const double> y);

std::vector<double> zscore(std::span<const double> values);

enum class StepwiseCriterion {
  kPValue,  // enter below p_enter, remove above p_remove
  kAic,     // enter / remove while AIC drops
};

struct RegressionOptions {
  StepwiseCriterion criterion = StepwiseCriterion::kPValue;
  double p_enter = 0.05;
  double p_remove = 0.10;
  int max_steps = 100;
};

std::string describe(const RegressionOptions& options);

enum class StepAction { kEnter, kRemove };

struct RegressionStep {
  StepAction action = StepAction::kEnter;
  std::string predictor;
  double r2 = 0;         // model R^2 after this step
  double criterion = 0;  // entry/removal p-value, or AIC after the step
};

struct RegressionResult {
  std::vector<RegressionStep> steps;
  std::vector<std::string> retained;  // final model, in entry order
  std::vector<double> betas;          // standardized, aligned with `retained`
  double r2 = 0;
  int n = 0;
  std::string criterion;
  std::vector<std::string> warnings;
};

// Stepwise selection on z-scored predictors and outcome. `columns[j]` holds
// predictor `names[j]` for every record. Needs at least 10 records.
RegressionResult stepwise_regression(const std::vector<std::string>& names,
                                     const std::vector<std::vector<double>>& columns,
                                     std::span<const double> outcome, const RegressionOptions& options = {});

}  // namespace chordlm::evalkit
