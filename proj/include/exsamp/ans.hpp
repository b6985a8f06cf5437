#pragma once

// Uniform-partition asymmetric numeral system. Residues S uniform on [0, N)
// are folded into a single integer A uniform on [0, N_1 N_2 ... N_t), which
// is later paid back out as fair bits by parity halving.

#include "exsamp/bigint.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace exsamp {

/// Emits fair bits from A uniform on [0, N): stop when N is odd and
/// A = N - 1, otherwise emit the parity of A and halve both.
inline std::vector<bool> ans_extract(BigInt n, BigInt a) {
  if (n < 1 || a < 0 || a >= n) throw std::invalid_argument("ans_extract requires 0 <= A < N");
  std::vector<bool> bits;
  while (!(boost::multiprecision::bit_test(n, 0) && a == n - 1)) {
    bits.push_back(boost::multiprecision::bit_test(a, 0));
    a >>= 1;
    n >>= 1;
  }
  return bits;
}

class AnsState {
 public:
  AnsState() = default;
  explicit AnsState(std::size_t capacity_bits) : capacity_(capacity_bits) {}

  /// A <- A*N + S, P <- P*N.
  void push(const BigInt& n, const BigInt& s) {
    if (n < 1 || s < 0 || s >= n)
      throw std::invalid_argument("ans push requires 0 <= S < N, got S=" + s.str() +
                                  " N=" + n.str());
    if (n == 1) return;
    accumulator_ *= n;
    accumulator_ += s;
    product_ *= n;
  }

  /// Extracts the accumulator as fair bits and resets to (0, 1).
  std::vector<bool> drain() {
    std::vector<bool> bits = ans_extract(product_, accumulator_);
    accumulator_ = 0;
    product_ = 1;
    return bits;
  }

  /// The product's bit length has passed the capacity.
  bool over_capacity() const { return bit_length(product_) > capacity_; }

  const BigInt& accumulator() const noexcept { return accumulator_; }
  const BigInt& product() const noexcept { return product_; }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  BigInt accumulator_ = 0;
  BigInt product_ = 1;
  std::size_t capacity_ = 0;
};

inline AnsState ans_push(AnsState st, const BigInt& n, const BigInt& s) {
  st.push(n, s);
  return st;
}

inline std::pair<std::vector<bool>, AnsState> ans_drain(AnsState st) {
  std::vector<bool> bits = st.drain();
  return {std::move(bits), std::move(st)};
}

/// Expected number of bits ans_extract yields for uniform A on [0, N):
/// T(1) = 0, T(2k) = 1 + T(k), T(2k+1) = (2k / (2k+1)) (1 + T(k)).
/// Memoized with exact rationals; safe to share across threads.
class YieldTable {
 public:
  Rational operator()(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("expected yield needs N >= 1");
    std::lock_guard<std::mutex> lock(mutex_);
    return evaluate(n);
  }

  std::size_t memo_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.size();
  }

 private:
  Rational evaluate(std::uint64_t n) {
    if (n == 1) return Rational(0);
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Rational value;
    if (n % 2 == 0)
      value = 1 + evaluate(n / 2);
    else
      value = Rational(BigInt(n - 1), BigInt(n)) * (1 + evaluate((n - 1) / 2));
    memo_.emplace(n, value);
    return value;
  }

  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, Rational> memo_;
};

inline Rational expected_yield(std::uint64_t n) {
  static YieldTable table;
  return table(n);
}

}  // namespace exsamp
