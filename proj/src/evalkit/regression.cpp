#include "chordlm/evalkit/regression.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::evalkit {
namespace {

constexpr double kPerfectFit = 1e-12;

double two_sided_p(double coef, double se, int df) {
  if (se == 0) return coef == 0 ? 1.0 : 0.0;
  const double t = std::abs(coef / se);
  if (!std::isfinite(t)) return 0.0;
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

double aic(const OlsFit& fit, int n) {
  const double k = static_cast<double>(fit.coefficients.size());
  return n * std::log(fit.rss / n) + 2.0 * k;
}

std::vector<std::vector<double>> select(const std::vector<std::vector<double>>& columns, const std::vector<int>& idx) {
  std::vector<std::vector<double>> out;
  for (int i : idx) out.push_back(columns[static_cast<std::size_t>(i)]);
  return out;
}

// R^2 of `candidate` regressed on the retained columns (0 with none).
double collinearity(const std::vector<std::vector<double>>& columns, const std::vector<int>& retained, int candidate) {
  if (retained.empty()) return 0.0;
  return ols(select(columns, retained), columns[static_cast<std::size_t>(candidate)]).r2;
}

}  // namespace

OlsFit ols(std::span<const std::vector<double>> columns, std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto p = static_cast<Eigen::Index>(columns.size()) + 1;
  if (n <= p) throw InputError("regression needs more records than coefficients");
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    target(i) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 1; j < p; ++j) {
      const auto& col = columns[static_cast<std::size_t>(j - 1)];
      require_invariant(col.size() == y.size(), "regression: column length mismatch");
      x(i, j) = col[static_cast<std::size_t>(i)];
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < p) throw InputError("regression design matrix is rank deficient");
  const Eigen::VectorXd beta = qr.solve(target);
  const Eigen::VectorXd resid = target - x * beta;

  OlsFit fit;
  fit.df = static_cast<int>(n - p);
  fit.rss = resid.squaredNorm();
  const double tss = (target.array() - target.mean()).square().sum();
  fit.r2 = tss > 0 ? std::clamp(1.0 - fit.rss / tss, 0.0, 1.0) : 0.0;

  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov_perm = r_inv * r_inv.transpose();
  const Eigen::MatrixXd cov = qr.colsPermutation() * cov_perm * qr.colsPermutation().transpose();
  const double sigma2 = fit.rss / fit.df;
  for (Eigen::Index j = 0; j < p; ++j) {
    fit.coefficients.push_back(beta(j));
    fit.standard_errors.push_back(std::sqrt(std::max(0.0, sigma2 * cov(j, j))));
    fit.p_values.push_back(two_sided_p(beta(j), fit.standard_errors.back(), fit.df));
  }
  return fit;
}

std::vector<double> zscore(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double m = 0;
  for (double v : values) m += v;
  m /= n;
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / (n - 1));
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(sd > 0 ? (v - m) / sd : 0.0);
  return out;
}

std::string describe(const RegressionOptions& options) {
  if (options.criterion == StepwiseCriterion::kAic) return "stepwise AIC";
  return "stepwise p-value (enter < " + text::format_double(options.p_enter) + ", remove > " +
         text::format_double(options.p_remove) + ")";
}

RegressionResult stepwise_regression(const std::vector<std::string>& names,
                                     const std::vector<std::vector<double>>& columns,
                                     std::span<const double> outcome, const RegressionOptions& options) {
  if (names.size() != columns.size()) throw InvariantError("stepwise: names and columns differ in length");
  if (outcome.size() < 10) throw InputError("stepwise regression needs at least 10 records");
  RegressionResult result;
  result.n = static_cast<int>(outcome.size());
  result.criterion = describe(options);

  const std::vector<double> y = zscore(outcome);
  std::vector<std::vector<double>> z;
  std::vector<int> usable;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != outcome.size()) throw InvariantError("stepwise: column length mismatch");
    z.push_back(zscore(columns[j]));
    if (std::all_of(columns[j].begin(), columns[j].end(), [&](double v) { return v == columns[j][0]; })) {
      result.warnings.push_back(names[j] + " is constant; skipped");
    } else {
      usable.push_back(static_cast<int>(j));
    }
  }
  if (std::all_of(outcome.begin(), outcome.end(), [&](double v) { return v == outcome[0]; })) {
    result.warnings.push_back("outcome is constant; nothing to explain");
    return result;
  }

  std::vector<int> retained;
  std::set<std::vector<int>> visited{retained};
  std::set<int> warned_collinear;
  double current_r2 = 0;
  double current_aic = std::numeric_limits<double>::infinity();
  {
    const double n = static_cast<double>(y.size());
    double rss = 0;
    for (double v : y) rss += v * v;
    current_aic = n * std::log(rss / n) + 2.0;
  }

  auto fit_with = [&](const std::vector<int>& idx) { return ols(select(z, idx), y); };

  bool stop = false;
  for (int step = 0; step < options.max_steps && !stop; ++step) {
    if (current_r2 >= 1.0 - kPerfectFit) break;

    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    OlsFit best_fit;
    for (int j : usable) {
      if (std::find(retained.begin(), retained.end(), j) != retained.end()) continue;
      if (collinearity(z, retained, j) >= 1.0 - 1e-10) {
        if (warned_collinear.insert(j).second) {
          result.warnings.push_back(names[static_cast<std::size_t>(j)] +
                                    " is collinear with the retained predictors; skipped");
        }
        continue;
      }
      auto trial = retained;
      trial.push_back(j);
      OlsFit fit = fit_with(trial);
      const double value = options.criterion == StepwiseCriterion::kAic ? aic(fit, result.n) : fit.p_values.back();
      if (value < best_value) {
        best = j;
        best_value = value;
        best_fit = std::move(fit);
      }
    }
    const bool enter = best >= 0 && (options.criterion == StepwiseCriterion::kAic ? best_value < current_aic
                                                                                 : best_value < options.p_enter);
    if (!enter) break;
    retained.push_back(best);
    if (!visited.insert(retained).second) {
      result.warnings.push_back("stepwise selection cycled; stopped");
      retained.pop_back();
      break;
    }
    current_r2 = best_fit.r2;
    current_aic = aic(best_fit, result.n);
    result.steps.push_back({StepAction::kEnter, names[static_cast<std::size_t>(best)], current_r2,
                            options.criterion == StepwiseCriterion::kAic ? current_aic : best_value});

    // Removal pass.
    while (retained.size() > 1) {
      OlsFit fit = fit_with(retained);
      int worst = -1;
      double worst_value = 0;
      OlsFit reduced_fit;
      if (options.criterion == StepwiseCriterion::kPValue) {
        for (std::size_t i = 0; i < retained.size(); ++i) {
          if (fit.p_values[i + 1] > options.p_remove && fit.p_values[i + 1] > worst_value) {
            worst = static_cast<int>(i);
            worst_value = fit.p_values[i + 1];
          }
        }
        if (worst >= 0) {
          auto reduced = retained;
          reduced.erase(reduced.begin() + worst);
          reduced_fit = fit_with(reduced);
        }
      } else {
        double best_aic = current_aic;
        for (std::size_t i = 0; i < retained.size(); ++i) {
          auto reduced = retained;
          reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
          OlsFit r = fit_with(reduced);
          const double a = aic(r, result.n);
          if (a < best_aic) {
            best_aic = a;
            worst = static_cast<int>(i);
            worst_value = a;
            reduced_fit = std::move(r);
          }
        }
      }
      if (worst < 0) break;
      const std::string removed = names[static_cast<std::size_t>(retained[static_cast<std::size_t>(worst)])];
      auto reduced = retained;
      reduced.erase(reduced.begin() + worst);
      if (!visited.insert(reduced).second) {
        result.warnings.push_back("stepwise selection cycled; stopped");
        stop = true;
        break;
      }
      retained = std::move(reduced);
      current_r2 = reduced_fit.r2;
      current_aic = aic(reduced_fit, result.n);
      result.steps.push_back({StepAction::kRemove, removed, current_r2, worst_value});
    }
  }

  if (!retained.empty()) {
    OlsFit final_fit = fit_with(retained);
    for (std::size_t i = 0; i < retained.size(); ++i) {
      result.retained.push_back(names[static_cast<std::size_t>(retained[i])]);
      result.betas.push_back(final_fit.coefficients[i + 1]);
    }
    result.r2 = final_fit.r2;
  }
  return result;
}

}  // namespace chordlm::evalkit
