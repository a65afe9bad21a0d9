#pragma once

// Exact rationals for the enumeration paths. Probabilities are formed as
// integer counts over integer denominators and reduced on construction.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qgs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(const BigInt& num, const BigInt& den) { return Rational(num, den); }
inline Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}
inline std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Compares r <= k * sqrt(x) for k >= 0 and x >= 0 by squaring.
inline bool le_times_sqrt(const Rational& r, const Rational& k, const Rational& x) {
  if (r <= 0) return true;
  return r * r <= k * k * x;
}

}  // namespace qgs
