#pragma once

// Interval-algorithm sampling: reveal a uniform real one toss at a time and
// stop once the dyadic interval of revealed bits sits inside one subinterval.

#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"
#include "exsamp/sampler_common.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace exsamp {

/// The interval [numer / 2^level, (numer + 1) / 2^level).
struct FuzzyInterval {
  BigInt numer = 0;
  std::size_t level = 0;

  void refine(bool toss) {
    numer <<= 1;
    if (toss) numer |= 1;
    ++level;
  }
};

class HanHoshiSampler {
 public:
  explicit HanHoshiSampler(RationalDistribution d)
      : dist_(std::move(d)), bounds_(scaled_prefix_sums(dist_, dist_.denominator())),
        cap_(level_cap(dist_)) {}

  /// Outcome whose subinterval contains the interval, or 0 if it straddles.
  Outcome accepting_outcome(const FuzzyInterval& iv) const {
    const BigInt& m = dist_.denominator();
    const BigInt lower = iv.numer * m;
    const Outcome i = locate_cell(bounds_, lower >> iv.level);
    if ((BigInt(iv.numer + 1) * m) <= (bounds_[i] << iv.level)) return i;
    return 0;
  }

  template <BitSource S>
  Outcome sample(S& src) const {
    FuzzyInterval iv;
    while (true) {
      if (const Outcome i = accepting_outcome(iv)) return i;
      if (iv.level >= cap_)
        throw SamplerDefect("interval refinement exceeded level cap " + std::to_string(cap_));
      iv.refine(src.next_toss());
    }
  }

  const RationalDistribution& distribution() const noexcept { return dist_; }
  const std::vector<BigInt>& bounds() const noexcept { return bounds_; }

 private:
  RationalDistribution dist_;
  std::vector<BigInt> bounds_;
  std::size_t cap_;
};

template <BitSource S>
Outcome han_hoshi_sample(const RationalDistribution& d, S& src) {
  return HanHoshiSampler(d).sample(src);
}

}  // namespace exsamp
