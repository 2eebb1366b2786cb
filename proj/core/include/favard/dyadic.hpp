#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "favard/numeric.hpp"

namespace favard {

/// Exact dyadic rational m * 2^e with m odd (or zero).  Closed under
/// addition, subtraction, multiplication and shifts, which is all the
/// mass/weight accounting ever needs; comparisons are exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t v) : mant_(v) { normalize(); }  // NOLINT implicit
  Dyadic(BigInt mantissa, std::int64_t exp2) : mant_(std::move(mantissa)), exp_(exp2) {
    normalize();
  }

  /// 2^e for any integer e.
  static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

  const BigInt& mantissa() const { return mant_; }
  std::int64_t exp2() const { return exp_; }

  bool is_zero() const { return mant_.is_zero(); }
  int sign() const { return mant_.sign(); }

  Dyadic operator-() const { return Dyadic(-mant_, exp_, already_normal_tag{}); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e = std::min(a.exp_, b.exp_);
    return Dyadic((a.mant_ << (a.exp_ - e)) + (b.mant_ << (b.exp_ - e)), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }

  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  /// Exact multiplication by 2^e.
  Dyadic shifted(std::int64_t e) const {
    if (is_zero()) return {};
    return Dyadic(mant_, exp_ + e, already_normal_tag{});
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const Dyadic d = a - b;
    if (d.mant_ < 0) return std::strong_ordering::less;
    if (d.mant_ > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  BigRat to_rational() const {
    if (exp_ >= 0) return BigRat(mant_ << exp_);
    return BigRat(mant_, pow2_int(-exp_));
  }
  double to_double() const { return favard::to_double(to_rational()); }
  std::string fraction() const { return fraction_string(to_rational()); }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.fraction();
  }

 private:
  struct already_normal_tag {};
  Dyadic(BigInt m, std::int64_t e, already_normal_tag) : mant_(std::move(m)), exp_(e) {}

  void normalize() {
    if (mant_.is_zero()) {
      exp_ = 0;
      return;
    }
    const std::size_t tz = boost::multiprecision::lsb(boost::multiprecision::abs(mant_));
    if (tz > 0) {
      mant_ >>= tz;
      exp_ += static_cast<std::int64_t>(tz);
    }
  }

  BigInt mant_{0};
  std::int64_t exp_{0};
};

inline Dyadic abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }

}  // namespace favard
