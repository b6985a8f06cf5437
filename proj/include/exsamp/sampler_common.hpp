#pragma once

#include "exsamp/bigint.hpp"
#include "exsamp/distribution.hpp"

#include <cstddef>
#include <stdexcept>

namespace exsamp {

/// A sampler hit its defect guard (level or retry cap). All samplers here
/// terminate with probability one, so this indicates an implementation fault.
class SamplerDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Level cap shared by the tree-walking samplers: 64*ceil(log2 m) + 128.
inline std::size_t level_cap(const RationalDistribution& d) {
  return 64 * ceil_log2(d.denominator()) + 128;
}

inline constexpr std::size_t kRetryCap = std::size_t{1} << 16;

template <class T>
struct Bracket {
  T lo;
  T hi;
};

}  // namespace exsamp
