#pragma once

#include <cstdint>
#include <optional>

namespace exsamp {

/// Per-sample entropy accounting for one metered run.
struct EntropyReport {
  std::uint64_t samples = 0;
  std::uint64_t fresh_tosses = 0;
  double per_sample = 0.0;
  double entropy = 0.0;
  double gap = 0.0;
  double rejection_rate = 0.0;
  std::uint64_t drains = 0;
};

/// Empty when no sample has been produced.
inline std::optional<EntropyReport> make_report(std::uint64_t samples, std::uint64_t fresh,
                                                double entropy, std::uint64_t attempts,
                                                std::uint64_t rejections, std::uint64_t drains) {
  if (samples == 0) return std::nullopt;
  EntropyReport r;
  r.samples = samples;
  r.fresh_tosses = fresh;
  r.per_sample = static_cast<double>(fresh) / static_cast<double>(samples);
  r.entropy = entropy;
  r.gap = r.per_sample - entropy;
  r.rejection_rate =
      attempts == 0 ? 0.0 : static_cast<double>(rejections) / static_cast<double>(attempts);
  r.drains = drains;
  return r;
}

}  // namespace exsamp
