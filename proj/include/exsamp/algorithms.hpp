#pragma once

// Uniform front end over the five samplers: seeded metered runs and
// enumeration-based verification.

#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"
#include "exsamp/enumerate.hpp"
#include "exsamp/han_hoshi.hpp"
#include "exsamp/knuth_yao.hpp"
#include "exsamp/oracles.hpp"
#include "exsamp/recycling_sampler.hpp"
#include "exsamp/rejection.hpp"
#include "exsamp/report.hpp"

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exsamp {

enum class Algorithm { knuth_yao, han_hoshi, rejection, rejection_amplified, recycling };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::knuth_yao, Algorithm::han_hoshi,
                                               Algorithm::rejection,
                                               Algorithm::rejection_amplified,
                                               Algorithm::recycling};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::knuth_yao: return "ky";
    case Algorithm::han_hoshi: return "hh";
    case Algorithm::rejection: return "rej";
    case Algorithm::rejection_amplified: return "rej2";
    case Algorithm::recycling: return "mr";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

/// Parses "p/q" or an integer; decimal forms are refused.
inline Rational parse_epsilon(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw std::invalid_argument("epsilon must be an exact rational p/q, got '" +
                                std::string(text) + "'");
  const BigInt q{std::string(den)};
  if (q == 0) throw std::invalid_argument("epsilon has a zero denominator");
  Rational eps(BigInt{std::string(num)}, q);
  if (eps <= 0 || eps > 1)
    throw std::invalid_argument("epsilon must lie in (0, 1], got " + std::string(text));
  return eps;
}

/// Width of the uniform draw for the rejection baselines: k or 2k.
inline std::size_t rejection_width(const RationalDistribution& d, Algorithm a) {
  const std::size_t k = ceil_log2(d.denominator());
  return a == Algorithm::rejection_amplified ? 2 * k : k;
}

struct RunOptions {
  Algorithm algorithm = Algorithm::recycling;
  Rational epsilon = Rational(1, 10);
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
};

struct RunResult {
  EntropyReport report;
  std::vector<std::uint64_t> counts;  // counts[i - 1] for outcome i
  bool tape_exhausted = false;        // a replayed tape ran out before all samples were drawn
  std::optional<RecyclingParams> params;
  std::optional<RecyclingCounters> recycling;
};

/// Draws up to opt.samples from `src`, passing each to `sink`. A replay tape
/// that runs dry ends the run early with tape_exhausted set.
template <BitSource S, class Sink>
RunResult run_on_source(const RationalDistribution& d, const RunOptions& opt, S& src,
                        Sink&& sink) {
  if (opt.samples < 1) throw std::invalid_argument("sample count must be at least 1");
  RunResult result;
  result.counts.assign(d.size(), 0);
  const std::uint64_t fresh_start = src.fresh_count();
  std::uint64_t produced = 0, attempts = 0, rejections = 0, drains = 0;
  auto emit = [&](Outcome i) {
    ++result.counts[i - 1];
    ++produced;
    sink(i);
  };

  auto draw_all = [&](auto&& draw_one) {
    try {
      while (produced < opt.samples) emit(draw_one());
    } catch (const TapeExhausted&) {
      result.tape_exhausted = true;
    }
  };

  switch (opt.algorithm) {
    case Algorithm::knuth_yao: {
      KnuthYaoSampler s(d);
      draw_all([&] { return s.sample(src); });
      attempts = produced;
      break;
    }
    case Algorithm::han_hoshi: {
      const HanHoshiSampler s(d);
      draw_all([&] { return s.sample(src); });
      attempts = produced;
      break;
    }
    case Algorithm::rejection:
    case Algorithm::rejection_amplified: {
      RejectionSampler s(d, rejection_width(d, opt.algorithm));
      draw_all([&] { return s.sample_dyadized(src); });
      rejections = s.rejections();
      attempts = produced + rejections;
      break;
    }
    case Algorithm::recycling: {
      RecyclingSampler<S&> s(d, opt.epsilon, src);
      draw_all([&] { return s.next_sample(); });
      attempts = s.counters().steps;
      rejections = s.counters().rejections;
      drains = s.counters().drains;
      result.params = s.params();
      result.recycling = s.counters();
      break;
    }
  }
  const double h = entropy_bits(d);
  result.report = make_report(produced, src.fresh_count() - fresh_start, h, attempts, rejections,
                              drains)
                      .value_or(EntropyReport{.entropy = h});
  return result;
}

/// Seeded run of opt.samples draws.
template <class Sink>
RunResult run_sampler(const RationalDistribution& d, const RunOptions& opt, Sink&& sink) {
  SeededBitSource src(opt.seed);
  return run_on_source(d, opt, src, std::forward<Sink>(sink));
}

inline RunResult measure_entropy(const RationalDistribution& d, const RunOptions& opt) {
  return run_sampler(d, opt, [](Outcome) {});
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  Algorithm algorithm = Algorithm::recycling;
  std::size_t depth = 0;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline constexpr std::size_t kMaxEnumerationDepth = 22;

/// Every U in [0, 2^(j+k)) tallied by cell; last entry is the rejection cell.
inline std::vector<BigInt> exact_acceptance_histogram(const RationalDistribution& d,
                                                      const Rational& epsilon) {
  const RecyclingSampler<TapeSource> sampler(d, epsilon, TapeSource{});
  const std::size_t w = sampler.params().width();
  if (w > kMaxEnumerationDepth)
    throw std::invalid_argument("j+k = " + std::to_string(w) + " is too wide to enumerate");
  std::vector<BigInt> counts(d.size() + 1, 0);
  const std::uint64_t range = std::uint64_t{1} << w;
  for (std::uint64_t u = 0; u < range; ++u) ++counts[sampler.locate(BigInt(u)) - 1];
  return counts;
}

/// Expected histogram [M c_1/m, ..., M c_n/m, 2^(j+k) - M].
inline std::vector<BigInt> expected_acceptance_histogram(const RationalDistribution& d,
                                                         const Rational& epsilon) {
  const RecyclingParams p = RecyclingParams::compute(d, epsilon);
  return oracle::amplified_cells(d, p.width());
}

namespace detail {

inline std::string describe(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

inline CheckResult compare_law(const std::string& name, const ResolvedLaw& law,
                               const std::vector<Rational>& expected) {
  std::vector<Rational> got;
  for (Outcome i = 1; i <= expected.size(); ++i) got.push_back(law.mass(i));
  return {name, got == expected, "got " + describe(got) + " expected " + describe(expected)};
}

inline CheckResult conservation(const ResolvedLaw& law) {
  const Rational total = law.resolved() + law.unresolved();
  return {"mass_conservation", total == 1,
          "resolved " + to_string(law.resolved()) + " unresolved " + to_string(law.unresolved())};
}

}  // namespace detail

/// Exact enumeration of the first sample over all tapes up to `depth`,
/// compared against the closed-form law for the algorithm.
inline Verdict verify_algorithm(Algorithm a, const RationalDistribution& d,
                                const Rational& epsilon, std::size_t depth) {
  if (depth > kMaxEnumerationDepth)
    throw std::invalid_argument("enumeration depth is limited to " +
                                std::to_string(kMaxEnumerationDepth));
  Verdict v;
  v.algorithm = a;
  v.depth = depth;
  switch (a) {
    case Algorithm::knuth_yao: {
      KnuthYaoSampler s(d);
      const ResolvedLaw law = enumerate_sampler(
          [&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, depth);
      v.checks.push_back(detail::conservation(law));
      v.checks.push_back(
          detail::compare_law("truncated_law", law, oracle::ky_truncated_law(d, depth)));
      v.checks.push_back({"one_leaf_per_outcome_per_level", law.max_leaves_per_level() <= 1,
                          "max " + std::to_string(law.max_leaves_per_level())});
      break;
    }
    case Algorithm::han_hoshi: {
      const HanHoshiSampler s(d);
      const ResolvedLaw law = enumerate_sampler(
          [&](TapeSource& t) { return OutcomeSequence{s.sample(t)}; }, depth);
      v.checks.push_back(detail::conservation(law));
      v.checks.push_back(
          detail::compare_law("truncated_law", law, oracle::hh_truncated_law(d, depth)));
      v.checks.push_back({"at_most_two_per_subinterval_per_level",
                          law.max_leaves_per_level() <= 2,
                          "max " + std::to_string(law.max_leaves_per_level())});
      break;
    }
    case Algorithm::rejection:
    case Algorithm::rejection_amplified: {
      const std::size_t w = rejection_width(d, a);
      RejectionSampler s(d, w);
      const ResolvedLaw law = enumerate_sampler(
          [&](TapeSource& t) { return OutcomeSequence{s.sample_dyadized(t)}; }, depth);
      v.checks.push_back(detail::conservation(law));
      v.checks.push_back(detail::compare_law("dyadized_law", law,
                                             oracle::dyadized_rejection_law(d, w, depth)));
      break;
    }
    case Algorithm::recycling: {
      const RecyclingParams params = RecyclingParams::compute(d, epsilon);
      const std::size_t w = params.width();
      if (w <= kMaxEnumerationDepth) {
        const std::vector<BigInt> got = exact_acceptance_histogram(d, epsilon);
        const std::vector<BigInt> want = expected_acceptance_histogram(d, epsilon);
        std::string detail = "[";
        for (std::size_t i = 0; i < got.size(); ++i) detail += (i ? ", " : "") + got[i].str();
        v.checks.push_back({"acceptance_histogram", got == want, detail + "]"});
      }
      const std::size_t attempts = w == 0 ? 1 : depth / w;
      const std::size_t budget = attempts * w;
      const ResolvedLaw law = enumerate_sampler(
          [&](TapeSource& t) {
            RecyclingSampler<TapeSource&> s(d, params, t);
            return OutcomeSequence{s.next_sample()};
          },
          budget);
      v.checks.push_back(detail::conservation(law));
      v.checks.push_back(detail::compare_law("first_sample_law_R" + std::to_string(attempts), law,
                                             oracle::first_sample_law(d, w, attempts)));
      break;
    }
  }
  return v;
}

}  // namespace exsamp
