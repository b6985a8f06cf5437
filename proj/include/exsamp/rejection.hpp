#pragma once

// Acceptance-rejection over the amplified denominator M' = floor(2^w / m) * m.
// w = ceil(log2 m) gives the classic single-width scheme, w = 2 ceil(log2 m)
// the amplified one whose rejection rate is below 2^-ceil(log2 m).

#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"
#include "exsamp/knuth_yao.hpp"
#include "exsamp/sampler_common.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace exsamp {

class RejectionSampler {
 public:
  RejectionSampler(RationalDistribution d, std::size_t width) : dist_(std::move(d)), width_(width) {
    const BigInt range = pow2(width_);
    if (range < dist_.denominator())
      throw std::invalid_argument("2^w = " + range.str() + " is below the denominator " +
                                  dist_.denominator().str());
    accept_limit_ = (range / dist_.denominator()) * dist_.denominator();
    bounds_ = scaled_prefix_sums(dist_, accept_limit_);
    for (std::size_t i = 1; i < bounds_.size(); ++i) cells_.push_back(bounds_[i] - bounds_[i - 1]);
    cells_.push_back(range - accept_limit_);
    digits_.resize(cells_.size());
  }

  /// Outcome for a drawn U, or 0 if U falls in the rejection cell.
  Outcome classify(const BigInt& u) const {
    return u < accept_limit_ ? locate_cell(bounds_, u) : 0;
  }

  /// Draws all w bits per attempt, retrying on rejection.
  template <BitSource S>
  Outcome sample(S& src) {
    for (std::size_t attempt = 0; attempt < kRetryCap; ++attempt) {
      if (const Outcome i = classify(draw_uniform_pow2(src, width_))) return i;
      ++rejections_;
    }
    throw SamplerDefect("rejection sampler exceeded retry cap");
  }

  /// Walks the DDG tree of the dyadized distribution
  /// (M'c_1/m, ..., M'c_n/m, 2^w - M') / 2^w, restarting on the last outcome.
  template <BitSource S>
  Outcome sample_dyadized(S& src) {
    const std::size_t n = dist_.size();
    for (std::size_t attempt = 0; attempt < kRetryCap; ++attempt) {
      if (width_ == 0) return 1;
      const std::size_t i = detail::ddg_walk(
          src, width_,
          [&](std::size_t level, std::vector<char>& out) {
            for (std::size_t c = 0; c <= n; ++c)
              out[c] = boost::multiprecision::bit_test(cells_[c], width_ - level) ? 1 : 0;
          },
          digits_);
      if (i <= n) return i;
      ++rejections_;
    }
    throw SamplerDefect("dyadized rejection sampler exceeded retry cap");
  }

  const BigInt& accept_limit() const noexcept { return accept_limit_; }
  const std::vector<BigInt>& bounds() const noexcept { return bounds_; }
  std::size_t width() const noexcept { return width_; }
  std::uint64_t rejections() const noexcept { return rejections_; }

 private:
  RationalDistribution dist_;
  std::size_t width_;
  BigInt accept_limit_;
  std::vector<BigInt> bounds_;
  std::vector<BigInt> cells_;  // n outcome cells, then the rejection cell
  std::vector<char> digits_;
  std::uint64_t rejections_ = 0;
};

template <BitSource S>
Outcome rejection_sample(const RationalDistribution& d, S& src, std::size_t width) {
  return RejectionSampler(d, width).sample(src);
}

template <BitSource S>
Outcome dyadized_rejection_sample(const RationalDistribution& d, S& src, std::size_t width) {
  return RejectionSampler(d, width).sample_dyadized(src);
}

}  // namespace exsamp
