#include <vector>

#include "doctest.h"
#include "favard/address.hpp"

using namespace favard;

TEST_CASE("address parse and render round-trip") {
  CHECK(Address::parse("").level() == 0);
  CHECK(Address::parse("").str() == "");
  const Address a = Address::parse("2103");
  CHECK(a.level() == 4);
  CHECK(a.str() == "2103");
  CHECK(a.digit(1) == 2);
  CHECK(a.digit(4) == 3);
  CHECK_THROWS(Address::parse("24"));
}

TEST_CASE("square geometry matches the labeling") {
  const SquareRect root = square_rect(Address::parse(""));
  CHECK(root.x0 == Dyadic(0));
  CHECK(root.y0 == Dyadic(0));
  CHECK(root.side == Dyadic(1));

  const SquareRect zero = square_rect(Address::parse("0"));
  CHECK(zero.x0 == Dyadic(0));
  CHECK(zero.y0 == Dyadic(0));
  CHECK(zero.side.fraction() == "1/2");

  const SquareRect r21 = square_rect(Address::parse("21"));
  CHECK(r21.x0.fraction() == "3/4");
  CHECK(r21.y0.fraction() == "1/2");
  CHECK(r21.side.fraction() == "1/4");

  const SquareRect r3 = square_rect(Address::parse("3"));
  CHECK(r3.x0 == Dyadic(0));
  CHECK(r3.y0.fraction() == "1/2");
}

TEST_CASE("corner numerators agree with square_rect") {
  for (const char* txt : {"", "0", "21", "3120", "222"}) {
    const Address a = Address::parse(txt);
    const CornerNumerators c = corner_numerators(a);
    const SquareRect r = square_rect(a);
    CHECK(c.level == a.level());
    CHECK(Dyadic(c.x, -c.level) == r.x0);
    CHECK(Dyadic(c.y, -c.level) == r.y0);
  }
}

TEST_CASE("child and prefix navigation") {
  const Address a = Address::parse("21");
  CHECK(a.child(3).str() == "213");
  CHECK(a.prefix(1).str() == "2");
  CHECK(a.prefix(0).str() == "");
  CHECK(a.prefix(2) == a);
}

TEST_CASE("square sets stay sorted and support membership") {
  std::vector<Address> addrs{Address::parse("3"), Address::parse("0"), Address::parse("2")};
  const SquareSet fs = SquareSet::from_unsorted(1, std::move(addrs));
  CHECK(fs.size() == 3);
  CHECK(fs.addresses().front().str() == "0");
  CHECK(fs.addresses().back().str() == "3");
  CHECK(fs.contains(Address::parse("2")));
  CHECK_FALSE(fs.contains(Address::parse("1")));
  CHECK_THROWS(SquareSet(1, {Address::parse("22")}));  // level mismatch
}
