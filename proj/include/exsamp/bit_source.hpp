#pragma once

// Fair-coin sources with fresh-toss metering, tape replay, and the FIFO of
// recycled bits that is served before fresh tosses.

#include "exsamp/bigint.hpp"

#include <concepts>
#include <cstdint>
#include <deque>
#include <istream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exsamp {

template <class S>
concept BitSource = requires(S s, const S cs) {
  { s.next_toss() } -> std::convertible_to<bool>;
  { cs.fresh_count() } -> std::convertible_to<std::uint64_t>;
};

/// Deterministic pseudo-random fair bits (mt19937_64, 64 bits per refill).
class SeededBitSource {
 public:
  explicit SeededBitSource(std::uint64_t seed) : engine_(seed) {}

  bool next_toss() {
    if (available_ == 0) {
      word_ = engine_();
      available_ = 64;
    }
    --available_;
    ++fresh_;
    return (word_ >> available_) & 1u;
  }

  std::uint64_t fresh_count() const noexcept { return fresh_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  int available_ = 0;
  std::uint64_t fresh_ = 0;
};

/// Thrown by TapeSource when a draw runs past the end of the tape.
class TapeExhausted : public std::runtime_error {
 public:
  TapeExhausted() : std::runtime_error("toss tape exhausted") {}
};

/// Replays a fixed sequence of tosses.
class TapeSource {
 public:
  TapeSource() = default;
  explicit TapeSource(std::vector<bool> tape) : tape_(std::move(tape)) {}

  /// Tape from characters '0'/'1'; whitespace is ignored.
  static TapeSource from_string(std::string_view bits) {
    std::vector<bool> tape;
    for (char ch : bits) {
      if (ch == '0' || ch == '1')
        tape.push_back(ch == '1');
      else if (ch != ' ' && ch != '\n' && ch != '\r' && ch != '\t')
        throw std::invalid_argument(std::string("invalid tape character '") + ch + "'");
    }
    return TapeSource(std::move(tape));
  }

  static TapeSource read(std::istream& in) {
    std::string all, line;
    while (std::getline(in, line)) all += line;
    return from_string(all);
  }

  bool next_toss() {
    if (pos_ >= tape_.size()) throw TapeExhausted();
    return tape_[pos_++];
  }

  bool exhausted() const noexcept { return pos_ >= tape_.size(); }
  std::size_t remaining() const noexcept { return tape_.size() - pos_; }
  std::uint64_t fresh_count() const noexcept { return pos_; }

 private:
  std::vector<bool> tape_;
  std::size_t pos_ = 0;
};

inline TapeSource record_replay(std::vector<bool> tape) { return TapeSource(std::move(tape)); }

/// Records every toss drawn through it from an underlying source.
template <BitSource S>
class RecordingSource {
 public:
  explicit RecordingSource(S& inner) : inner_(&inner) {}

  bool next_toss() {
    const bool b = inner_->next_toss();
    tape_.push_back(b);
    return b;
  }
  std::uint64_t fresh_count() const { return inner_->fresh_count(); }
  const std::vector<bool>& recorded() const noexcept { return tape_; }

  std::string recorded_string() const {
    std::string out;
    out.reserve(tape_.size());
    for (bool b : tape_) out.push_back(b ? '1' : '0');
    return out;
  }

 private:
  S* inner_;
  std::vector<bool> tape_;
};

/// FIFO of recycled bits. The capacity is a hint used for reservation and
/// reporting only; pushes are never refused.
class RecycledBuffer {
 public:
  RecycledBuffer() = default;
  explicit RecycledBuffer(std::size_t capacity_hint) : capacity_hint_(capacity_hint) {}

  void push(bool b) { bits_.push_back(b); }
  template <class Range>
  void push_all(const Range& bits) {
    for (bool b : bits) bits_.push_back(b);
  }
  bool pop() {
    const bool b = bits_.front();
    bits_.pop_front();
    ++dequeued_;
    return b;
  }
  bool empty() const noexcept { return bits_.empty(); }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t capacity_hint() const noexcept { return capacity_hint_; }
  std::uint64_t dequeued() const noexcept { return dequeued_; }

 private:
  std::deque<bool> bits_;
  std::size_t capacity_hint_ = 0;
  std::uint64_t dequeued_ = 0;
};

/// Uniform integer in [0, 2^w) from w fresh tosses, most significant bit first.
template <BitSource S>
BigInt draw_uniform_pow2(S& src, std::size_t w) {
  BigInt u = 0;
  for (std::size_t b = 0; b < w; ++b) {
    u <<= 1;
    if (src.next_toss()) u |= 1;
  }
  return u;
}

/// Same, but recycled bits are consumed before any fresh toss.
template <BitSource S>
BigInt draw_uniform_pow2(RecycledBuffer& buffer, S& src, std::size_t w) {
  BigInt u = 0;
  for (std::size_t b = 0; b < w; ++b) {
    u <<= 1;
    const bool bit = buffer.empty() ? static_cast<bool>(src.next_toss()) : buffer.pop();
    if (bit) u |= 1;
  }
  return u;
}

}  // namespace exsamp
