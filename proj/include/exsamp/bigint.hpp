#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace exsamp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Number of significant bits; 0 for zero.
inline std::size_t bit_length(const BigInt& v) {
  if (v.is_zero()) return 0;
  return boost::multiprecision::msb(v) + 1;
}

inline BigInt pow2(std::size_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

/// Least k with 2^k >= v, for v >= 1.
inline std::size_t ceil_log2(const BigInt& v) {
  if (v <= 1) return 0;
  return bit_length(BigInt(v - 1));
}

/// log2 of a positive integer, accurate for values far beyond double range.
inline double log2_big(const BigInt& v) {
  const std::size_t bits = bit_length(v);
  if (bits <= 52) return std::log2(v.convert_to<double>());
  const std::size_t shift = bits - 53;
  BigInt top = v >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace exsamp
