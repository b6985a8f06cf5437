#include "exsamp/enumerate.hpp"
#include "exsamp/han_hoshi.hpp"
#include "exsamp/knuth_yao.hpp"
#include "exsamp/oracles.hpp"
#include "exsamp/rejection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace exsamp {
namespace {

std::vector<RationalDistribution> test_distributions() {
  return {make_distribution({3, 2}, 5),        make_distribution({1, 2, 3}, 6),
          make_distribution({1, 1, 1}, 3),     make_distribution({1, 2}, 3),
          make_distribution({1, 99}, 100),     make_distribution({1, 946}, 947),
          make_distribution({1, 1}, 2),        make_distribution({5, 1, 7, 2, 9}, 24),
          make_distribution({1}, 1)};
}

std::vector<Rational> law_of(const ResolvedLaw& law, std::size_t n) {
  std::vector<Rational> out;
  for (Outcome i = 1; i <= n; ++i) out.push_back(law.mass(i));
  return out;
}

TEST(KnuthYao, TraceExamples) {
  const auto d = make_distribution({3, 2}, 5);
  auto one = TapeSource::from_string("1");
  EXPECT_EQ(ky_sample(d, one), 1u);
  auto zero_one = TapeSource::from_string("01");
  EXPECT_EQ(ky_sample(d, zero_one), 2u);
  TapeSource none;
  EXPECT_EQ(ky_sample(make_distribution({1}, 1), none), 1u);
}

TEST(KnuthYao, ExpectedTossesBracket) {
  // Exactly one leaf per level for both of these: depth sum l 2^-l = 2.
  for (const auto& d : {make_distribution({1, 2}, 3), make_distribution({3, 2}, 5)}) {
    const auto b = ky_expected_tosses(d, 40);
    EXPECT_LE(b.lo, 2);
    EXPECT_GE(b.hi, 2);
    EXPECT_LT(b.hi - b.lo, Rational(1, 1000000));
  }
  const auto half = ky_expected_tosses(make_distribution({1, 1}, 2), 10);
  EXPECT_EQ(half.lo, 1);
  EXPECT_GE(half.hi, 1);
  const auto one = ky_expected_tosses(make_distribution({1}, 1), 10);
  EXPECT_EQ(one.lo, 0);
  EXPECT_EQ(one.hi, 0);
}

TEST(KnuthYao, LeafLevelEntropy) {
  // Geometric closed forms: p = 1/3 -> 8/3 - log2 3, p = 2/3 -> 5/3 + log2(2/3).
  const auto d = make_distribution({1, 2}, 3);
  const double third = 8.0 / 3.0 - std::log2(3.0);
  const double two_thirds = 5.0 / 3.0 + std::log2(2.0 / 3.0);
  const auto b1 = ky_leaf_level_entropy(d, 1, 60);
  const auto b2 = ky_leaf_level_entropy(d, 2, 60);
  EXPECT_LE(b1.lo, third + 1e-12);
  EXPECT_GE(b1.hi, third - 1e-12);
  EXPECT_LE(b2.lo, two_thirds + 1e-12);
  EXPECT_GE(b2.hi, two_thirds - 1e-12);
  EXPECT_NEAR(b1.lo, 1.0817, 1e-4);

  const auto halves = ky_leaf_level_entropy(make_distribution({1, 1}, 2), 1, 30);
  EXPECT_NEAR(halves.lo, 0.0, 1e-15);
  EXPECT_THROW(ky_leaf_level_entropy(make_distribution({1, 946}, 947), 1, 5),
               std::invalid_argument);
}

TEST(HanHoshi, TraceExamples) {
  const auto d = make_distribution({3, 2, 1}, 6);
  auto zero = TapeSource::from_string("0");
  EXPECT_EQ(han_hoshi_sample(d, zero), 1u);
  auto one_zero = TapeSource::from_string("10");
  EXPECT_EQ(han_hoshi_sample(d, one_zero), 2u);
  TapeSource none;
  EXPECT_EQ(han_hoshi_sample(make_distribution({1}, 1), none), 1u);
}

TEST(Rejection, WholeWidthTraceExamples) {
  const auto d = make_distribution({3, 2}, 5);
  RejectionSampler narrow(d, 3);
  EXPECT_EQ(narrow.accept_limit(), 5);
  auto tape = TapeSource::from_string("110011");  // U = 6 (reject), then U = 3
  EXPECT_EQ(narrow.sample(tape), 2u);
  EXPECT_EQ(narrow.rejections(), 1u);

  RejectionSampler wide(d, 5);
  EXPECT_EQ(wide.accept_limit(), 30);
  auto u17 = TapeSource::from_string("10001");
  EXPECT_EQ(wide.sample(u17), 1u);

  auto any = TapeSource::from_string("1");
  EXPECT_EQ(rejection_sample(make_distribution({1}, 1), any, 1), 1u);
  EXPECT_THROW(RejectionSampler(d, 2), std::invalid_argument);
}

TEST(Rejection, DyadizedWalkTraces) {
  // (3/8, 2/8, 3/8) tree: level 2 leaves 1,2,reject; level 3 leaves 1,reject.
  const auto d = make_distribution({3, 2}, 5);
  RejectionSampler s(d, 3);
  auto a = TapeSource::from_string("01");
  EXPECT_EQ(s.sample_dyadized(a), 1u);
  auto b = TapeSource::from_string("10");
  EXPECT_EQ(s.sample_dyadized(b), 2u);
  auto c = TapeSource::from_string("1110");
  EXPECT_EQ(s.sample_dyadized(c), 2u);
  auto e = TapeSource::from_string("00101");
  EXPECT_EQ(s.sample_dyadized(e), 1u);
  EXPECT_EQ(s.rejections(), 2u);
}

TEST(Exactness, KnuthYaoMatchesTruncatedExpansion) {
  for (const auto& d : test_distributions()) {
    KnuthYaoSampler s(d);
    for (std::size_t depth : {0u, 1u, 3u, 8u, 14u}) {
      const auto law = enumerate_sampler(
          [&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, depth);
      EXPECT_EQ(law_of(law, d.size()), oracle::ky_truncated_law(d, depth));
      EXPECT_EQ(law.resolved() + law.unresolved(), 1);
      EXPECT_LE(law.max_leaves_per_level(), 1u);
    }
  }
}

TEST(Exactness, KnuthYaoProportionalAtFullPeriods) {
  // 2^L = 1 mod m makes floor(2^L c_i / m) = c_i (2^L - 1) / m.
  const auto a = make_distribution({3, 2}, 5);
  const auto b = make_distribution({1, 1, 1}, 3);
  for (const auto& [d, depth] : {std::pair{a, std::size_t{8}}, std::pair{b, std::size_t{10}}}) {
    KnuthYaoSampler s(d);
    const auto law =
        enumerate_sampler([&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, depth);
    for (Outcome i = 1; i <= d.size(); ++i)
      EXPECT_EQ(law.mass(i), d.probability(i) * law.resolved());
  }
}

TEST(Exactness, HanHoshiMatchesDyadicCells) {
  for (const auto& d : test_distributions()) {
    const HanHoshiSampler s(d);
    for (std::size_t depth : {0u, 1u, 4u, 9u, 14u}) {
      const auto law = enumerate_sampler(
          [&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, depth);
      EXPECT_EQ(law_of(law, d.size()), oracle::hh_truncated_law(d, depth));
      EXPECT_EQ(law.resolved() + law.unresolved(), 1);
      EXPECT_LE(law.max_leaves_per_level(), 2u);
    }
  }
}

TEST(Exactness, WholeWidthRejectionIsProportional) {
  for (const auto& d : test_distributions()) {
    const std::size_t k = ceil_log2(d.denominator());
    for (std::size_t w : {k, 2 * k}) {
      if (w == 0 || w > 7) continue;
      RejectionSampler s(d, w);
      for (std::size_t attempts : {1u, 2u}) {
        const auto law = enumerate_sampler(
            [&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, attempts * w);
        EXPECT_EQ(law_of(law, d.size()), oracle::first_sample_law(d, w, attempts));
        for (Outcome i = 1; i <= d.size(); ++i)
          EXPECT_EQ(law.mass(i), d.probability(i) * law.resolved());
      }
    }
  }
}

TEST(Exactness, DyadizedRejectionMatchesRecursion) {
  for (const auto& d : test_distributions()) {
    const std::size_t k = ceil_log2(d.denominator());
    for (std::size_t w : {k, 2 * k}) {
      if (w > 20) continue;
      RejectionSampler s(d, w);
      for (std::size_t depth : {0u, 2u, 7u, 13u}) {
        const auto law = enumerate_sampler(
            [&](TapeSource& t) { return OutcomeSequence{s.sample_dyadized(t)}; }, depth);
        EXPECT_EQ(law_of(law, d.size()), oracle::dyadized_rejection_law(d, w, depth));
        EXPECT_EQ(law.resolved() + law.unresolved(), 1);
      }
    }
  }
}

struct Measured {
  double per_sample;
  double entropy;
};

template <class Draw>
Measured measure(const RationalDistribution& d, std::uint64_t seed, Draw&& draw) {
  SeededBitSource src(seed);
  constexpr int kSamples = 100000;
  for (int t = 0; t < kSamples; ++t) draw(src);
  return {static_cast<double>(src.fresh_count()) / kSamples, entropy_bits(d)};
}

TEST(MeasuredCost, WithinTableBounds) {
  constexpr double kSlack = 0.05;
  for (const auto& d : test_distributions()) {
    KnuthYaoSampler ky(d);
    const HanHoshiSampler hh(d);
    const std::size_t k = ceil_log2(d.denominator());
    RejectionSampler rej(d, k), rej2(d, 2 * k);
    const auto a = measure(d, 1, [&](SeededBitSource& s) { return ky.sample(s); });
    const auto b = measure(d, 2, [&](SeededBitSource& s) { return hh.sample(s); });
    const auto c = measure(d, 3, [&](SeededBitSource& s) { return rej.sample_dyadized(s); });
    const auto e = measure(d, 4, [&](SeededBitSource& s) { return rej2.sample_dyadized(s); });
    EXPECT_LE(a.per_sample, a.entropy + 2 + kSlack) << "ky m=" << d.denominator();
    EXPECT_LE(b.per_sample, b.entropy + 3 + kSlack) << "hh m=" << d.denominator();
    EXPECT_LE(c.per_sample, c.entropy + 6 + kSlack) << "rej m=" << d.denominator();
    EXPECT_LE(e.per_sample, e.entropy + 2 + kSlack) << "rej2 m=" << d.denominator();
    EXPECT_GE(a.per_sample, a.entropy - kSlack);
  }
}

}  // namespace
}  // namespace exsamp
