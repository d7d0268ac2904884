#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace chordlm {

// Score time in quarter notes, kept exact so that simultaneity is decided by
// equality rather than by a floating-point tolerance.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

// "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace chordlm
