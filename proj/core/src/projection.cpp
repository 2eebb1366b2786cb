#include "favard/projection.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace favard {

bool line_hits_square(const Line& l, const Address& addr) {
  return LineGeometry(l).hits_square(addr);
}

std::uint64_t count_intersected(const Line& l, int level) {
  if (level < 0) throw Error("level must be nonnegative");
  const LineGeometry geom(l);
  struct Item {
    BigInt g;
    int depth;
  };
  std::vector<Item> stack;
  if (geom.hits(geom.root_g())) stack.push_back({geom.root_g(), 0});
  std::uint64_t count = 0;
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (it.depth == level) {
      ++count;
      continue;
    }
    for (std::uint8_t d = 0; d < 4; ++d) {
      BigInt g = geom.child_g(it.g, d);
      if (geom.hits(g)) stack.push_back({std::move(g), it.depth + 1});
    }
  }
  return count;
}

IntervalUnion project_squares(const SquareSet& squares, double theta, double merge_tolerance) {
  if (!std::isfinite(theta)) throw Error("projection angle must be finite");
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  const double side = std::ldexp(1.0, -squares.level());
  const double ex = side * ux;
  const double ey = side * uy;
  const double lo_off = std::min({0.0, ex, ey, ex + ey});
  const double hi_off = std::max({0.0, ex, ey, ex + ey});
  IntervalUnion u(merge_tolerance);
  for (const Address& a : squares) {
    const CornerNumerators c = corner_numerators(a);
    const double x0 = std::ldexp(to_double(BigRat(c.x)), -c.level);
    const double y0 = std::ldexp(to_double(BigRat(c.y)), -c.level);
    const double base = x0 * ux + y0 * uy;
    u.add(base + lo_off, base + hi_off);
  }
  u.merge();
  return u;
}

double projection_length(const SquareSet& squares, double theta, double merge_tolerance) {
  return project_squares(squares, theta, merge_tolerance).total_length();
}

std::pair<double, double> projection_range(double theta) {
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  return {std::min({0.0, ux, uy, ux + uy}), std::max({0.0, ux, uy, ux + uy})};
}

}  // namespace favard
