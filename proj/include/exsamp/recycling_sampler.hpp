#pragma once

// Exact sampling with entropy recycling. Each step draws U uniform on
// [0, 2^(j+k)), maps it to a cell of the amplified partition
//   [0, M p_1), [M p_1, M (p_1 + p_2)), ..., [M (1 - p_n), M), [M, 2^(j+k)),
// and pushes (cell length, offset in cell) into an ANS. The offset is uniform
// given the cell, so when the ANS product outgrows its capacity the
// accumulator is drained into fair bits that feed later draws ahead of any
// fresh toss. The last cell is the rejection cell.

#include "exsamp/ans.hpp"
#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"
#include "exsamp/report.hpp"
#include "exsamp/sampler_common.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exsamp {

struct RecyclingParams {
  Rational epsilon;
  std::size_t k = 0;         // least k with 2^k >= m
  std::size_t j = 0;         // least j with 2^j >= 1 / epsilon^2
  BigInt accept_limit;       // M = floor(2^(j+k) / m) * m
  std::size_t capacity = 0;  // drain once the ANS product exceeds this many bits

  std::size_t width() const noexcept { return j + k; }
  BigInt range() const { return pow2(width()); }

  /// Capacity is (j+k) * ceil(1/epsilon): each drain-to-drain cycle then
  /// consumes more bits than the previous drain produced, so the recycled
  /// buffer is always empty when the next drain happens.
  static RecyclingParams compute(const RationalDistribution& d, const Rational& epsilon) {
    if (epsilon <= 0 || epsilon > 1)
      throw std::invalid_argument("epsilon must lie in (0, 1], got " + to_string(epsilon));
    RecyclingParams p;
    p.epsilon = epsilon;
    p.k = ceil_log2(d.denominator());
    const BigInt num = boost::multiprecision::numerator(epsilon);
    const BigInt den = boost::multiprecision::denominator(epsilon);
    while ((pow2(p.j) * num * num) < den * den) ++p.j;
    p.accept_limit = (p.range() / d.denominator()) * d.denominator();
    const BigInt inverse_ceil = (den + num - 1) / num;
    p.capacity = p.width() * inverse_ceil.convert_to<std::size_t>();
    return p;
  }

  Rational rejection_mass() const { return Rational(range() - accept_limit, range()); }
};

struct StepResult {
  std::size_t index;  // 1..n for an outcome, n+1 for the rejection cell
  bool accepted;
  BigInt u;
  BigInt cell_length;
  BigInt offset;
};

struct RecyclingCounters {
  std::uint64_t steps = 0;
  std::uint64_t samples = 0;
  std::uint64_t rejections = 0;
  std::uint64_t drains = 0;
  std::uint64_t recycled_bits_used = 0;
  std::size_t max_buffer = 0;
  std::size_t max_product_bits = 0;
};

template <BitSource S>
class RecyclingSampler {
 public:
  RecyclingSampler(RationalDistribution d, const Rational& epsilon, S src)
      : RecyclingSampler(d, RecyclingParams::compute(d, epsilon), std::forward<S>(src)) {}

  RecyclingSampler(RationalDistribution d, RecyclingParams params, S src)
      : dist_(std::move(d)), params_(std::move(params)), src_(std::forward<S>(src)),
        ans_(params_.capacity), buffer_(params_.capacity + params_.width()),
        entropy_(entropy_bits(dist_)), fresh_at_start_(src_.fresh_count()) {
    bounds_ = scaled_prefix_sums(dist_, params_.accept_limit);
    bounds_.push_back(params_.range());
  }

  /// Cell index for a given U in [0, 2^(j+k)).
  std::size_t locate(const BigInt& u) const { return locate_cell(bounds_, u); }

  StepResult step() {
    const std::size_t before = buffer_.dequeued();
    BigInt u = draw_uniform_pow2(buffer_, src_, params_.width());
    counters_.recycled_bits_used += buffer_.dequeued() - before;
    const std::size_t index = locate(u);
    BigInt length = bounds_[index] - bounds_[index - 1];
    BigInt offset = u - bounds_[index - 1];
    ans_.push(length, offset);
    counters_.max_product_bits = std::max(counters_.max_product_bits, bit_length(ans_.product()));

    ++counters_.steps;
    const bool accepted = index <= dist_.size();
    if (accepted)
      ++counters_.samples;
    else
      ++counters_.rejections;

    if (ans_.over_capacity()) {
      if (!buffer_.empty())
        throw SamplerDefect("ANS drain with " + std::to_string(buffer_.size()) +
                            " recycled bits still buffered");
      buffer_.push_all(ans_.drain());
      ++counters_.drains;
      counters_.max_buffer = std::max(counters_.max_buffer, buffer_.size());
    }
    return {index, accepted, std::move(u), std::move(length), std::move(offset)};
  }

  Outcome next_sample() {
    for (std::size_t attempt = 0; attempt < kRetryCap; ++attempt) {
      const StepResult r = step();
      if (r.accepted) return r.index;
    }
    throw SamplerDefect("recycling sampler exceeded retry cap");
  }

  std::uint64_t fresh_tosses() const { return src_.fresh_count() - fresh_at_start_; }

  std::optional<EntropyReport> report() const {
    return make_report(counters_.samples, fresh_tosses(), entropy_, counters_.steps,
                       counters_.rejections, counters_.drains);
  }

  const RationalDistribution& distribution() const noexcept { return dist_; }
  const RecyclingParams& params() const noexcept { return params_; }
  const std::vector<BigInt>& bounds() const noexcept { return bounds_; }
  const AnsState& ans() const noexcept { return ans_; }
  const RecycledBuffer& buffer() const noexcept { return buffer_; }
  const RecyclingCounters& counters() const noexcept { return counters_; }
  S& source() noexcept { return src_; }

 private:
  RationalDistribution dist_;
  RecyclingParams params_;
  S src_;
  std::vector<BigInt> bounds_;  // n + 2 entries, last is 2^(j+k)
  AnsState ans_;
  RecycledBuffer buffer_;
  RecyclingCounters counters_;
  double entropy_;
  std::uint64_t fresh_at_start_;
};

}  // namespace exsamp
