#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "favard/dyadic.hpp"
#include "favard/numeric.hpp"

namespace favard {

/// Quadrant labels within a square, anchored at the lower-left corner:
/// 0 lower-left, 1 lower-right, 2 upper-right, 3 upper-left.
/// Digits 0 and 2 lie on the main diagonal.
inline constexpr int kDigitDx[4] = {0, 1, 1, 0};
inline constexpr int kDigitDy[4] = {0, 0, 1, 1};

/// A dyadic square of side 2^-k inside the unit square, addressed by its
/// digit string omega_1 ... omega_k.
class Address {
 public:
  Address() = default;
  explicit Address(std::vector<std::uint8_t> digits);

  /// Parses a string over '0'..'3' ("" is the root).
  static Address parse(std::string_view s);

  int level() const { return static_cast<int>(digits_.size()); }

  /// omega_i, 1-based.
  std::uint8_t digit(int i) const { return digits_.at(static_cast<std::size_t>(i - 1)); }

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  Address child(std::uint8_t d) const;
  Address prefix(int level) const;

  std::string str() const;

  friend bool operator==(const Address&, const Address&) = default;
  friend std::strong_ordering operator<=>(const Address& a, const Address& b) {
    return a.digits_ <=> b.digits_;
  }

 private:
  std::vector<std::uint8_t> digits_;
};

/// Lower-left corner and side of the addressed square, exact.
struct SquareRect {
  Dyadic x0;
  Dyadic y0;
  Dyadic side;
};

SquareRect square_rect(const Address& a);

/// Lower-left corner as integer numerators at scale 2^-level:
/// corner = (x / 2^level, y / 2^level).
struct CornerNumerators {
  BigInt x;
  BigInt y;
  int level = 0;
};

CornerNumerators corner_numerators(const Address& a);

/// A finite family of distinct squares at one level, addresses kept sorted.
class SquareSet {
 public:
  SquareSet() = default;
  SquareSet(int level, std::vector<Address> sorted_unique);
  static SquareSet from_unsorted(int level, std::vector<Address> addrs);

  int level() const { return level_; }
  std::size_t size() const { return addresses_.size(); }
  bool empty() const { return addresses_.empty(); }
  const std::vector<Address>& addresses() const { return addresses_; }
  bool contains(const Address& a) const;

  auto begin() const { return addresses_.begin(); }
  auto end() const { return addresses_.end(); }

 private:
  int level_ = 0;
  std::vector<Address> addresses_;
};

}  // namespace favard
