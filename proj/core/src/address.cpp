#include "favard/address.hpp"

#include <algorithm>
#include <stdexcept>

namespace favard {

Address::Address(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (const auto d : digits_) {
    if (d > 3) throw std::invalid_argument("address digit out of range");
  }
}

Address Address::parse(std::string_view s) {
  std::vector<std::uint8_t> digits;
  digits.reserve(s.size());
  for (const char c : s) {
    if (c < '0' || c > '3') throw std::invalid_argument("address digit out of range");
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Address(std::move(digits));
}

Address Address::child(std::uint8_t d) const {
  if (d > 3) throw std::invalid_argument("address digit out of range");
  std::vector<std::uint8_t> digits = digits_;
  digits.push_back(d);
  return Address(std::move(digits));
}

Address Address::prefix(int level) const {
  if (level < 0 || level > this->level()) throw std::invalid_argument("bad prefix level");
  return Address(std::vector<std::uint8_t>(digits_.begin(), digits_.begin() + level));
}

std::string Address::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (const auto d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

SquareRect square_rect(const Address& a) {
  const CornerNumerators c = corner_numerators(a);
  return SquareRect{Dyadic(c.x, -c.level), Dyadic(c.y, -c.level), Dyadic::pow2(-c.level)};
}

CornerNumerators corner_numerators(const Address& a) {
  CornerNumerators c;
  c.level = a.level();
  for (const auto d : a.digits()) {
    c.x = (c.x << 1) + kDigitDx[d];
    c.y = (c.y << 1) + kDigitDy[d];
  }
  return c;
}

SquareSet::SquareSet(int level, std::vector<Address> sorted_unique)
    : level_(level), addresses_(std::move(sorted_unique)) {
  for (const auto& a : addresses_) {
    if (a.level() != level_) throw std::invalid_argument("square set level mismatch");
  }
  if (!std::is_sorted(addresses_.begin(), addresses_.end()))
    throw std::invalid_argument("square set addresses not sorted");
  if (std::adjacent_find(addresses_.begin(), addresses_.end()) != addresses_.end())
    throw std::invalid_argument("square set addresses not unique");
}

SquareSet SquareSet::from_unsorted(int level, std::vector<Address> addrs) {
  std::sort(addrs.begin(), addrs.end());
  addrs.erase(std::unique(addrs.begin(), addrs.end()), addrs.end());
  return SquareSet(level, std::move(addrs));
}

bool SquareSet::contains(const Address& a) const {
  return std::binary_search(addresses_.begin(), addresses_.end(), a);
}

}  // namespace favard
