#include "chordlm/evalkit/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "chordlm/common/error.h"
#include "chordlm/evalkit/random.h"

namespace chordlm::evalkit {

double mean(std::span<const double> values) {
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::vector<double> bootstrap_means(std::span<const double> values, int replicates, std::uint64_t seed) {
  if (values.empty()) throw InputError("bootstrap of an empty sample");
  if (replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(replicates));
  const std::uint64_t n = values.size();
  for (int b = 0; b < replicates; ++b) {
    double s = 0;
    for (std::uint64_t i = 0; i < n; ++i) s += values[uniform_index(rng, n)];
    out.push_back(s / static_cast<double>(n));
  }
  return out;
}

Interval bca_interval(std::span<const double> values, std::span<const double> replicate_means, double level) {
  if (values.size() < 2) throw InputError("BCa interval needs at least 2 values");
  if (!(level > 0 && level < 1)) throw ConfigError("confidence level must lie in (0, 1)");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    return {values[0], values[0]};
  }
  std::vector<double> sorted(replicate_means.begin(), replicate_means.end());
  std::sort(sorted.begin(), sorted.end());
  const double b = static_cast<double>(sorted.size());
  const double theta = mean(values);

  const boost::math::normal standard;
  const double below = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), theta) - sorted.begin());
  const double share = std::clamp(below / b, 0.5 / b, 1.0 - 0.5 / b);
  const double z0 = boost::math::quantile(standard, share);

  const std::size_t n = values.size();
  const double total = theta * static_cast<double>(n);
  std::vector<double> jack(n);
  double jack_mean = 0;
  for (std::size_t i = 0; i < n; ++i) {
    jack[i] = (total - values[i]) / static_cast<double>(n - 1);
    jack_mean += jack[i];
  }
  jack_mean /= static_cast<double>(n);
  double num = 0, den = 0;
  for (double j : jack) {
    const double d = jack_mean - j;
    num += d * d * d;
    den += d * d;
  }
  const double accel = den > 0 ? num / (6.0 * std::pow(den, 1.5)) : 0.0;

  auto adjusted = [&](double alpha) {
    const double z = boost::math::quantile(standard, alpha);
    const double shifted = z0 + (z0 + z) / (1.0 - accel * (z0 + z));
    return boost::math::cdf(standard, shifted);
  };
  auto pick = [&](double alpha) {
    auto rank = static_cast<long long>(std::ceil(alpha * b)) - 1;
    rank = std::clamp<long long>(rank, 0, static_cast<long long>(sorted.size()) - 1);
    return sorted[static_cast<std::size_t>(rank)];
  };
  const double tail = (1.0 - level) / 2.0;
  return {pick(adjusted(tail)), pick(adjusted(1.0 - tail))};
}

Interval bootstrap_ci(std::span<const double> values, int replicates, double level, std::uint64_t seed) {
  if (values.size() < 2) throw InputError("bootstrap interval needs at least 2 values");
  return bca_interval(values, bootstrap_means(values, replicates, seed), level);
}

}  // namespace chordlm::evalkit
