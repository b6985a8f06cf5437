#pragma once

// Knuth-Yao DDG tree sampling, walked lazily level by level. The tree is
// never materialized: the leaves on level l are the outcomes whose mass has
// binary digit 1 at position l, and only the count of internal nodes is kept.

#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"
#include "exsamp/sampler_common.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace exsamp {

namespace detail {

// Walks a DDG tree whose per-level leaf digits are produced by `digits_at`.
// Leaves take the top positions of each expanded level, ascending by outcome.
// Returns the 1-based index into the digit vector.
template <BitSource S, class DigitsAt>
std::size_t ddg_walk(S& src, std::size_t cap, DigitsAt&& digits_at, std::vector<char>& digits) {
  std::size_t active = 1;
  std::size_t x = 0;
  for (std::size_t level = 1; level <= cap; ++level) {
    x = 2 * x + (src.next_toss() ? 1 : 0);
    digits_at(level, digits);
    std::size_t leaves = 0;
    for (char dgt : digits) leaves += static_cast<std::size_t>(dgt);
    if (leaves > 2 * active) throw SamplerDefect("DDG level has more leaves than nodes");
    const std::size_t internal = 2 * active - leaves;
    if (x >= internal) {
      std::size_t pos = x - internal;
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (!digits[i]) continue;
        if (pos == 0) return i + 1;
        --pos;
      }
      throw SamplerDefect("DDG leaf position out of range");
    }
    active = internal;
  }
  throw SamplerDefect("DDG walk exceeded level cap " + std::to_string(cap));
}

}  // namespace detail

/// Reusable Knuth-Yao sampler; keeps per-outcome remainders between levels.
class KnuthYaoSampler {
 public:
  explicit KnuthYaoSampler(RationalDistribution d)
      : dist_(std::move(d)), cap_(level_cap(dist_)), remainders_(dist_.size()),
        digits_(dist_.size()) {}

  template <BitSource S>
  Outcome sample(S& src) {
    if (dist_.size() == 1) return 1;
    for (std::size_t i = 0; i < remainders_.size(); ++i) remainders_[i] = dist_.numerators()[i];
    const BigInt& m = dist_.denominator();
    return detail::ddg_walk(
        src, cap_,
        [&](std::size_t, std::vector<char>& out) {
          for (std::size_t i = 0; i < remainders_.size(); ++i) {
            BigInt& r = remainders_[i];
            r <<= 1;
            if (r >= m) {
              r -= m;
              out[i] = 1;
            } else {
              out[i] = 0;
            }
          }
        },
        digits_);
  }

  const RationalDistribution& distribution() const noexcept { return dist_; }

 private:
  RationalDistribution dist_;
  std::size_t cap_;
  std::vector<BigInt> remainders_;
  std::vector<char> digits_;
};

template <BitSource S>
Outcome ky_sample(const RationalDistribution& d, S& src) {
  KnuthYaoSampler sampler(d);
  return sampler.sample(src);
}

/// Leaf count s_l per level for l = 1..levels.
inline std::vector<std::size_t> ky_leaf_counts(const RationalDistribution& d, std::size_t levels) {
  std::vector<DigitCursor> cursors;
  for (Outcome i = 1; i <= d.size(); ++i) cursors.emplace_back(d, i);
  std::vector<std::size_t> counts(levels, 0);
  for (std::size_t l = 0; l < levels; ++l)
    for (DigitCursor& c : cursors) counts[l] += static_cast<std::size_t>(c.next_digit());
  return counts;
}

/// Expected tree depth sum_l l * s_l * 2^-l, bracketed by the exact partial
/// sum up to tail_cut and a bound on the remaining tail.
inline Bracket<Rational> ky_expected_tosses(const RationalDistribution& d, std::size_t tail_cut) {
  if (tail_cut < 1) throw std::invalid_argument("tail_cut must be at least 1");
  if (d.size() == 1) return {Rational(0), Rational(0)};
  const std::vector<std::size_t> counts = ky_leaf_counts(d, tail_cut);
  BigInt numer = 0;  // over 2^tail_cut
  for (std::size_t l = 1; l <= tail_cut; ++l)
    numer += BigInt(l * counts[l - 1]) << (tail_cut - l);
  const Rational lo(numer, pow2(tail_cut));
  const Rational tail(BigInt((tail_cut + 2) * d.size()), pow2(tail_cut - 1));
  return {lo, lo + tail};
}

/// Entropy of the leaf level given outcome i: levels with digit 1 carry
/// conditional mass 2^-l / p_i.
inline Bracket<double> ky_leaf_level_entropy(const RationalDistribution& d, Outcome i,
                                             std::size_t tail_cut) {
  const double p = to_double(d.probability(i));
  const double log_p = log2_big(d.numerator(i)) - log2_big(d.denominator());
  if (d.size() == 1) return {0.0, 0.0};
  DigitCursor cursor(d, i);
  double h = 0.0;
  bool seen_leaf = false;
  for (std::size_t l = 1; l <= tail_cut; ++l) {
    if (!cursor.next_digit()) continue;
    seen_leaf = true;
    const double q = std::exp2(-static_cast<double>(l)) / p;
    h += q * (static_cast<double>(l) + log_p);
  }
  if (!seen_leaf) throw std::invalid_argument("tail_cut precedes the first leaf of the outcome");
  const double tail = (static_cast<double>(tail_cut) + 2.0) *
                      std::exp2(-static_cast<double>(tail_cut)) / p;
  return {h, h + tail};
}

}  // namespace exsamp
