#include "favard/measure.hpp"

namespace favard {

Dyadic square_mass(const Schedule& s, int n) {
  return Dyadic::pow2(-2 * static_cast<std::int64_t>(s.alpha(n)));
}

Dyadic mass_of(const Schedule& s, const SquareSet& fs) {
  return Dyadic(BigInt(fs.size()), 0) * square_mass(s, fs.level());
}

MassCheckReport mass_distribution_check(const GaugeSpec& g, const Schedule& s, int depth) {
  if (depth > s.depth()) throw Error("mass check depth exceeds the schedule");
  MassCheckReport rep;
  rep.depth = depth;
  rep.exact = g.has_exact_values(depth);
  const BigRat scale = rep.exact ? *g.exact_value(0) : exact_rational(g.value(0));
  for (int n = 0; n <= depth; ++n) {
    const BigRat phi =
        (rep.exact ? *g.exact_value(n) : exact_rational(g.value(n))) / scale;
    const BigRat mu = square_mass(s, n).to_rational();
    if (mu < phi || mu > 4 * phi) rep.violations.push_back(n);
  }
  return rep;
}

Dyadic retained_mass(const Schedule& s, const std::vector<SquareSet>& pruned_levels) {
  if (pruned_levels.empty()) throw Error("retained_mass needs at least the root level");
  return mass_of(s, pruned_levels.back());
}

}  // namespace favard
