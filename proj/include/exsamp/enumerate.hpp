#pragma once

// Exhaustive enumeration of toss tapes. A sampler run is replayed on a tape
// and the tape is extended one toss at a time only where the run asked for
// more bits, so shared prefixes are explored once per node.

#include "exsamp/bigint.hpp"
#include "exsamp/bit_source.hpp"
#include "exsamp/distribution.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace exsamp {

using OutcomeSequence = std::vector<Outcome>;

/// Masses are stored as integer weights over 2^depth.
struct ResolvedLaw {
  std::size_t depth = 0;
  std::map<OutcomeSequence, BigInt> weight;
  BigInt unresolved_weight = 0;
  /// Number of resolved tapes per (tape length, output).
  std::map<std::pair<std::size_t, OutcomeSequence>, std::uint64_t> leaves_by_depth;

  BigInt scale() const { return pow2(depth); }

  Rational mass(const OutcomeSequence& seq) const {
    auto it = weight.find(seq);
    return it == weight.end() ? Rational(0) : Rational(it->second, scale());
  }
  Rational mass(Outcome i) const { return mass(OutcomeSequence{i}); }

  Rational unresolved() const { return Rational(unresolved_weight, scale()); }

  Rational resolved() const {
    BigInt total = 0;
    for (const auto& [seq, w] : weight) total += w;
    return Rational(total, scale());
  }

  /// Largest count of resolved tapes sharing one length and one output.
  std::uint64_t max_leaves_per_level() const {
    std::uint64_t best = 0;
    for (const auto& [key, count] : leaves_by_depth) best = std::max(best, count);
    return best;
  }
};

/// Runs `run(TapeSource&) -> OutcomeSequence` on every toss tape of length
/// up to max_depth. Tapes on which the run is still drawing at max_depth
/// count as unresolved.
template <class Run>
ResolvedLaw enumerate_sampler(Run&& run, std::size_t max_depth) {
  if (max_depth > 40) throw std::invalid_argument("enumeration depth too large");
  ResolvedLaw law;
  law.depth = max_depth;
  std::vector<std::vector<bool>> stack;
  stack.emplace_back();
  while (!stack.empty()) {
    std::vector<bool> tape = std::move(stack.back());
    stack.pop_back();
    TapeSource src(tape);
    try {
      OutcomeSequence out = run(src);
      if (!src.exhausted())
        throw std::logic_error("sampler run did not consume its whole tape prefix");
      law.weight[out] += pow2(max_depth - tape.size());
      ++law.leaves_by_depth[{tape.size(), std::move(out)}];
    } catch (const TapeExhausted&) {
      if (tape.size() >= max_depth) {
        law.unresolved_weight += 1;
        continue;
      }
      tape.push_back(true);
      stack.push_back(tape);
      tape.back() = false;
      stack.push_back(std::move(tape));
    }
  }
  return law;
}

}  // namespace exsamp
