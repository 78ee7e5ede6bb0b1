#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

/// Valuation of an element known only modulo a power of the maximal ideal.
/// Either the exact order, or "at least `value`" when the element vanishes
/// to the full known precision.
class Order {
 public:
  static Order exact(int v) { return Order(v, false); }
  static Order at_least(int v) { return Order(v, true); }

  bool is_exact() const { return !lower_bound_; }
  int value() const { return value_; }

  /// ord >= k. Throws insufficient-precision when undecidable.
  bool ge(int k) const;
  /// ord == k. Throws insufficient-precision when undecidable.
  bool eq(int k) const;
  /// Exact order; throws if only a lower bound is known.
  int get() const;

  friend bool operator==(const Order&, const Order&) = default;

 private:
  Order(int v, bool lb) : value_(v), lower_bound_(lb) {}
  int value_;
  bool lower_bound_;
};

/// A 2-adic integer known modulo 2^N, 0 <= N <= 64 (N = 0: nothing known).
class TruncatedInt {
 public:
  static constexpr int kMaxPrecision = 64;

  TruncatedInt() = default;
  /// Exact (to 64 digits) image of a signed integer.
  TruncatedInt(std::int64_t v) : value_(static_cast<std::uint64_t>(v)) {}  // NOLINT
  static TruncatedInt residue(std::uint64_t value, int precision);

  std::uint64_t value() const { return value_; }
  int precision() const { return precision_; }
  bool is_unit() const { return (value_ & 1U) != 0; }
  Order order() const;
  /// Centered representative in (-2^{N-1}, 2^{N-1}].
  std::int64_t centered() const;

  TruncatedInt operator-() const;
  friend TruncatedInt operator+(const TruncatedInt& a, const TruncatedInt& b);
  friend TruncatedInt operator-(const TruncatedInt& a, const TruncatedInt& b);
  friend TruncatedInt operator*(const TruncatedInt& a, const TruncatedInt& b);

  /// Division by 2; the argument must be even. Precision drops by one.
  TruncatedInt half() const;
  /// Inverse of a unit (same precision).
  TruncatedInt inverse() const;
  /// Reduce to precision n <= precision().
  TruncatedInt reduced(int n) const;

  friend bool operator==(const TruncatedInt&, const TruncatedInt&) = default;

 private:
  static std::uint64_t mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }
  std::uint64_t value_ = 0;
  int precision_ = kMaxPrecision;
};

inline Order TruncatedInt::order() const {
  if (value_ == 0) return Order::at_least(precision_);
  return Order::exact(std::countr_zero(value_));
}

inline TruncatedInt TruncatedInt::residue(std::uint64_t value, int precision) {
  if (precision < 0 || precision > kMaxPrecision)
    throw Error(ErrorKind::InvalidArgument, "truncated integer precision out of range");
  TruncatedInt r;
  r.precision_ = precision;
  r.value_ = value & mask(precision);
  return r;
}

inline TruncatedInt TruncatedInt::operator-() const {
  return residue(0ULL - value_, precision_);
}

inline TruncatedInt operator+(const TruncatedInt& a, const TruncatedInt& b) {
  return TruncatedInt::residue(a.value_ + b.value_, std::min(a.precision_, b.precision_));
}

inline TruncatedInt operator-(const TruncatedInt& a, const TruncatedInt& b) {
  return TruncatedInt::residue(a.value_ - b.value_, std::min(a.precision_, b.precision_));
}

inline TruncatedInt operator*(const TruncatedInt& a, const TruncatedInt& b) {
  // a = a0 + O(2^Na), b = b0 + O(2^Nb): error is O(2^{min(Na+v(b), Nb+v(a))}).
  const int va = a.value_ == 0 ? a.precision_ : std::countr_zero(a.value_);
  const int vb = b.value_ == 0 ? b.precision_ : std::countr_zero(b.value_);
  int n = std::min(a.precision_ + vb, b.precision_ + va);
  if (n > TruncatedInt::kMaxPrecision) n = TruncatedInt::kMaxPrecision;
  return TruncatedInt::residue(a.value_ * b.value_, n);
}

}  // namespace dyadic
