#include <cstdint>
#include <vector>

#include "doctest.h"
#include "favard/deviance.hpp"
#include "favard/gauge.hpp"
#include "favard/measure.hpp"
#include "favard/realization.hpp"
#include "favard/schedule.hpp"

using namespace favard;

TEST_CASE("square mass is 4^-alpha") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 32);
  CHECK(square_mass(s, 0) == Dyadic(1));
  CHECK(square_mass(s, 1) == Dyadic(1));                // alpha_1 = 0
  CHECK(square_mass(s, 2) == Dyadic(BigInt(1), -2));    // alpha_2 = 1
  CHECK(square_mass(s, 16) == Dyadic(BigInt(1), -16));  // alpha_16 = 8
}

TEST_CASE("unpruned builds carry unit mass at every level") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 32);
  const Realization r(s, 5);
  const auto levels = r.build(12);
  for (const SquareSet& fs : levels) {
    CHECK(mass_of(s, fs) == Dyadic(1));
  }
}

TEST_CASE("mass splits evenly across one deterministic step") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 32);
  const Realization r(s, 5);
  const auto levels = r.build(8);
  // level 8 is deterministic: each level-7 square contributes 4 children, and
  // each child carries a quarter of the parent mass
  CHECK(levels[8].size() == 4 * levels[7].size());
  CHECK(square_mass(s, 8).shifted(2) == square_mass(s, 7));
}

TEST_CASE("mass distribution envelope holds exactly for dyadic gauges") {
  const GaugeSpec g = GaugeSpec::power(1);
  const Schedule s = derive_schedule(g, 48);
  const MassCheckReport rep = mass_distribution_check(g, s, 48);
  CHECK(rep.depth == 48);
  CHECK(rep.exact);
  CHECK(rep.pass());
  CHECK(rep.ball_constant == 36);

  const GaugeSpec g2 = GaugeSpec::power(2);
  const Schedule s2 = derive_schedule(g2, 30);
  CHECK(mass_distribution_check(g2, s2, 30).pass());
}

TEST_CASE("mass distribution check flags an out-of-window mass") {
  // check one gauge against the schedule of another: 4^-floor(n/2) exceeds
  // 4 * 4^-n from level 3 on
  const GaugeSpec fast = GaugeSpec::power(2);
  const Schedule slow = derive_schedule(GaugeSpec::power(1), 24);
  const MassCheckReport rep = mass_distribution_check(fast, slow, 24);
  CHECK_FALSE(rep.pass());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front() == 3);
  CHECK(rep.violations.back() == 24);
  CHECK(rep.violations.size() == 22);
}

TEST_CASE("retained mass of pruned sets matches the pattern enumeration") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const DeviancePlan plan = pruning_levels(s, 2);
  for (const std::uint64_t seed : {1ULL, 42ULL, 4096ULL}) {
    const Realization r(s, seed);
    const auto one = prune(r, plan, 18);
    CHECK(retained_mass(s, one) == retained_mass_exact(plan, 1));
    CHECK(retained_mass(s, one) >= plan.retained_mass_lower_bound(1));
    // between stages the fraction is frozen: descendants of survivors survive
    const auto deeper = prune(r, plan, 20);
    CHECK(retained_mass(s, deeper) == retained_mass_exact(plan, 1));
  }
}

TEST_CASE("removed and retained mass sum to one at a stage level") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const DeviancePlan plan = pruning_levels(s, 1);
  const Realization r(s, 77);
  const auto pruned = prune(r, plan, 18);
  const auto full = r.build(18);
  const Dyadic removed =
      square_mass(s, 18) * Dyadic(BigInt(full[18].size() - pruned[18].size()), 0);
  CHECK(removed + retained_mass(s, pruned) == Dyadic(1));
}
