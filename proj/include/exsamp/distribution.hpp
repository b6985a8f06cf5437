#pragma once

// Rational discrete distributions p_i = c_i / m with exact integer masses.

#include "exsamp/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exsamp {

/// Outcomes are numbered 1..n throughout the library.
using Outcome = std::size_t;

class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RationalDistribution {
 public:
  RationalDistribution(std::vector<BigInt> numerators, BigInt denominator)
      : numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
    if (numerators_.empty()) throw DistributionError("distribution has no outcomes");
    if (denominator_ < 1) throw DistributionError("denominator must be positive");
    BigInt sum = 0;
    for (std::size_t i = 0; i < numerators_.size(); ++i) {
      if (numerators_[i] < 1)
        throw DistributionError("numerator " + std::to_string(i + 1) + " is not positive");
      sum += numerators_[i];
    }
    if (sum != denominator_)
      throw DistributionError("numerators sum to " + sum.str() + ", expected " +
                              denominator_.str());
  }

  std::size_t size() const noexcept { return numerators_.size(); }
  const BigInt& denominator() const noexcept { return denominator_; }
  const std::vector<BigInt>& numerators() const noexcept { return numerators_; }
  const BigInt& numerator(Outcome i) const { return numerators_.at(i - 1); }

  Rational probability(Outcome i) const { return Rational(numerator(i), denominator_); }

 private:
  std::vector<BigInt> numerators_;
  BigInt denominator_;
};

inline RationalDistribution make_distribution(const std::vector<BigInt>& numerators,
                                              const BigInt& denominator) {
  return RationalDistribution(numerators, denominator);
}

inline RationalDistribution make_distribution(std::initializer_list<long long> numerators,
                                              long long denominator) {
  std::vector<BigInt> c;
  for (long long v : numerators) c.emplace_back(v);
  return RationalDistribution(std::move(c), BigInt(denominator));
}

/// Shannon entropy in bits. The only floating-point quantity in this header.
inline double entropy_bits(const RationalDistribution& d) {
  const double log_m = log2_big(d.denominator());
  double h = 0.0;
  for (const BigInt& c : d.numerators()) {
    const double p = to_double(Rational(c, d.denominator()));
    h += p * (log_m - log2_big(c));
  }
  return std::max(h, 0.0);
}

/// Lazily produces the binary digits of p_i by remainder doubling.
class DigitCursor {
 public:
  DigitCursor(const RationalDistribution& d, Outcome i)
      : outcome_(i), modulus_(d.denominator()), remainder_(d.numerator(i)) {
    // p_i = 1 has expansion 0.111..., reduce to r < m.
    if (remainder_ == modulus_) remainder_ = modulus_ - 1, carry_one_ = true;
  }

  /// Returns the digit at level() + 1 and advances.
  int next_digit() {
    ++level_;
    if (carry_one_) return 1;
    remainder_ <<= 1;
    if (remainder_ >= modulus_) {
      remainder_ -= modulus_;
      return 1;
    }
    return 0;
  }

  Outcome outcome() const noexcept { return outcome_; }
  std::size_t level() const noexcept { return level_; }
  const BigInt& remainder() const noexcept { return remainder_; }

 private:
  Outcome outcome_;
  BigInt modulus_;
  BigInt remainder_;
  std::size_t level_ = 0;
  bool carry_one_ = false;
};

/// C_0 = 0, C_i = C_{i-1} + scale * c_i / m. Requires m | scale.
inline std::vector<BigInt> scaled_prefix_sums(const RationalDistribution& d, const BigInt& scale) {
  if (scale < 1 || scale % d.denominator() != 0)
    throw DistributionError("scale " + scale.str() + " is not a positive multiple of " +
                            d.denominator().str());
  const BigInt unit = scale / d.denominator();
  std::vector<BigInt> sums;
  sums.reserve(d.size() + 1);
  sums.emplace_back(0);
  for (const BigInt& c : d.numerators()) sums.push_back(sums.back() + unit * c);
  return sums;
}

/// 1-based index i of the cell [bounds[i-1], bounds[i]) containing u.
/// Empty cells are skipped; u must lie in [bounds.front(), bounds.back()).
inline std::size_t locate_cell(const std::vector<BigInt>& bounds, const BigInt& u) {
  auto it = std::upper_bound(bounds.begin(), bounds.end(), u);
  return static_cast<std::size_t>(it - bounds.begin());
}

}  // namespace exsamp
