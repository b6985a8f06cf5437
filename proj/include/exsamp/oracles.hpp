#pragma once

// Closed-form resolved laws at a fixed toss budget. These are computed from
// the masses alone and never call into the samplers they are used to check.

#include "exsamp/bigint.hpp"
#include "exsamp/distribution.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace exsamp::oracle {

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) { return a / b; }
inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace detail

/// DDG tree truncated at `depth` levels: outcome i has resolved mass
/// floor(2^depth p_i) / 2^depth.
inline std::vector<Rational> ky_truncated_law(const RationalDistribution& d, std::size_t depth) {
  if (d.size() == 1) return {Rational(1)};
  std::vector<Rational> law;
  const BigInt scale = pow2(depth);
  for (const BigInt& c : d.numerators())
    law.emplace_back(detail::floor_div(scale * c, d.denominator()), scale);
  return law;
}

/// Interval refinement truncated at `depth` tosses: outcome i owns the
/// level-depth dyadic cells lying inside [C_{i-1}/m, C_i/m).
inline std::vector<Rational> hh_truncated_law(const RationalDistribution& d, std::size_t depth) {
  if (d.size() == 1) return {Rational(1)};
  std::vector<Rational> law;
  const BigInt scale = pow2(depth);
  BigInt left = 0;
  for (const BigInt& c : d.numerators()) {
    const BigInt right = left + c;
    const BigInt lo = detail::ceil_div(scale * left, d.denominator());
    const BigInt hi = detail::floor_div(scale * right, d.denominator());
    law.emplace_back(hi > lo ? BigInt(hi - lo) : BigInt(0), scale);
    left = right;
  }
  return law;
}

/// Cell lengths M c_i / m followed by the rejection cell 2^w - M.
inline std::vector<BigInt> amplified_cells(const RationalDistribution& d, std::size_t width) {
  const BigInt range = pow2(width);
  const BigInt accept = (range / d.denominator()) * d.denominator();
  std::vector<BigInt> cells;
  for (const BigInt& c : d.numerators()) cells.push_back(accept / d.denominator() * c);
  cells.push_back(range - accept);
  return cells;
}

/// Whole-width rejection with at most R attempts: (c_i/m)(1 - rho^R),
/// rho = (2^w - M) / 2^w.
inline std::vector<Rational> first_sample_law(const RationalDistribution& d, std::size_t width,
                                              std::size_t attempts) {
  const std::vector<BigInt> cells = amplified_cells(d, width);
  const Rational rho(cells.back(), pow2(width));
  Rational rho_pow = 1;
  for (std::size_t r = 0; r < attempts; ++r) rho_pow *= rho;
  std::vector<Rational> law;
  for (Outcome i = 1; i <= d.size(); ++i) law.push_back(d.probability(i) * (1 - rho_pow));
  return law;
}

/// DDG walk on the dyadized distribution cells / 2^w with the rejection cell
/// routed back to the root, truncated at `depth` tosses:
///   f_i(t) = sum_{l <= min(t,w)} b_l(i) 2^-l + b_l(rej) 2^-l f_i(t - l).
inline std::vector<Rational> dyadized_rejection_law(const RationalDistribution& d,
                                                    std::size_t width, std::size_t depth) {
  const std::size_t n = d.size();
  if (width == 0) return std::vector<Rational>(n, Rational(n == 1 ? 1 : 0));
  const std::vector<BigInt> cells = amplified_cells(d, width);
  auto digit = [&](std::size_t c, std::size_t level) {
    return boost::multiprecision::bit_test(cells[c], width - level);
  };
  std::vector<std::vector<Rational>> f(depth + 1, std::vector<Rational>(n, Rational(0)));
  for (std::size_t t = 1; t <= depth; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      Rational acc = 0;
      for (std::size_t l = 1; l <= std::min(t, width); ++l) {
        const Rational unit(BigInt(1), pow2(l));
        if (digit(i, l)) acc += unit;
        if (digit(n, l)) acc += unit * f[t - l][i];
      }
      f[t][i] = acc;
    }
  }
  return f[depth];
}

}  // namespace exsamp::oracle
