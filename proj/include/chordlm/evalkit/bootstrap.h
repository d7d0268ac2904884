#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace chordlm::evalkit {

struct Interval {
  double low = 0;
  double high = 0;
};

double mean(std::span<const double> values);

// Means of `replicates` resamples (with replacement, same size) of `values`,
// drawn from a Mersenne Twister seeded with `seed`.
std::vector<double> bootstrap_means(std::span<const double> values, int replicates, std::uint64_t seed);

// Bias-corrected and accelerated interval for the mean, given the replicate
// means. Bias z0 comes from the share of replicates below the sample mean,
// acceleration from the jackknife skewness; each adjusted level alpha picks
// the smallest replicate whose empirical CDF reaches alpha.
Interval bca_interval(std::span<const double> values, std::span<const double> replicate_means, double level);

// Bootstrap + BCa in one call. Needs at least 2 values; a constant sample
// returns the degenerate interval (v, v).
Interval bootstrap_ci(std::span<const double> values, int replicates = 1000, double level = 0.95,
                      std::uint64_t seed = 1);

}  // namespace chordlm::evalkit
