#pragma once

#include "exsamp/distribution.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace exsamp {

inline constexpr double kChiSquareSignificance = 1e-6;

struct ChiSquareResult {
  double statistic = 0.0;
  double critical = 0.0;
  std::size_t degrees_of_freedom = 0;
  bool pass = true;
};

/// Pearson goodness of fit of observed counts (index 0 is outcome 1)
/// against d at significance 1e-6.
inline ChiSquareResult chi_square_check(const RationalDistribution& d,
                                        const std::vector<std::uint64_t>& observed) {
  if (observed.size() != d.size())
    throw std::invalid_argument("observed counts do not match the outcome count");
  std::uint64_t total = 0;
  for (std::uint64_t c : observed) total += c;
  ChiSquareResult r;
  r.degrees_of_freedom = d.size() - 1;
  if (d.size() == 1) return r;
  if (total < 100 * d.size())
    throw std::invalid_argument("chi-square check needs at least 100 samples per outcome");
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double expected = static_cast<double>(total) * to_double(d.probability(i + 1));
    if (expected < 5.0)
      throw std::invalid_argument("expected count below 5; widen the sample");
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(r.degrees_of_freedom));
  r.critical = boost::math::quantile(boost::math::complement(dist, kChiSquareSignificance));
  r.pass = r.statistic <= r.critical;
  return r;
}

}  // namespace exsamp
