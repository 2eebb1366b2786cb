#include <cstdint>
#include <vector>

#include "doctest.h"
#include "favard/deviance.hpp"
#include "favard/gauge.hpp"
#include "favard/realization.hpp"
#include "favard/schedule.hpp"
#include "oracles.hpp"

using namespace favard;

namespace {

const Schedule& sched_r64() {
  static const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  return s;
}

}  // namespace

TEST_CASE("score reads deterministic-level digits only") {
  const Schedule& s = sched_r64();
  // levels 2 and 4 are deterministic; digits at odd levels are ignored
  const ScoreBreakdown sb = score(s, Address::parse("1203"), 2);
  CHECK(sb.n == 2);
  CHECK(sb.sum2 == Dyadic(1));   // digit 2 at level 2
  CHECK(sb.sum0 == Dyadic(0));   // level-4 digit is 3, off-diagonal
  CHECK(sb.score == Dyadic(1));
  CHECK(sb.total == Dyadic(2));
  CHECK_FALSE(sb.deviant);       // |1 - 1| = 0 <= 1/2
  CHECK(sb.rich2);
  CHECK_FALSE(sb.rich0);

  const ScoreBreakdown all_diag = score(s, Address::parse("1210"), 2);
  CHECK(all_diag.score == Dyadic(2));
  CHECK(all_diag.deviant);  // |2 - 1| = 1 > 1/2
}

TEST_CASE("deviant pattern fractions match brute enumeration") {
  const Schedule& s = sched_r64();
  for (int n = 1; n <= 12; ++n) {
    CHECK(deviant_fraction_exact(s, n) == oracles::deviant_fraction_brute(s, n));
  }
  CHECK(deviant_fraction_exact(s, 8) == BigRat(18, 256));
  CHECK(deviant_fraction_exact(s, 4) == BigRat(1, 8));
  CHECK(deviant_fraction_exact(s, 1) == BigRat(1));
}

TEST_CASE("deviant fractions match brute enumeration for uneven gammas") {
  // phi(2^-n) dropping by {1, 1/2, 1/4} pattern gives mixed det levels and
  // non-constant gamma
  std::vector<BigRat> vals{BigRat(1)};
  const int ratio_seq[] = {0, 1, 2, 1, 0, 2, 2, 1, 0, 1, 2, 2, 1, 0, 0, 1, 2, 1, 1, 2};
  for (int n = 1; n <= 20; ++n) {
    const BigRat ratio =
        ratio_seq[n - 1] == 0 ? BigRat(1) : (ratio_seq[n - 1] == 1 ? BigRat(1, 2) : BigRat(1, 4));
    vals.push_back(vals.back() * ratio);
  }
  const Schedule s = derive_schedule(GaugeSpec::table(vals), 20);
  REQUIRE(s.det_count() >= 4);
  for (int n = 1; n <= s.det_count() && n <= 10; ++n) {
    CHECK(deviant_fraction_exact(s, n) == oracles::deviant_fraction_brute(s, n));
  }
}

TEST_CASE("chebyshev bound dominates the exact fraction") {
  const Schedule& s = sched_r64();
  CHECK(chebyshev_fraction_bound(s, 8) == BigRat(1, 2));  // 4/n for unit gammas
  for (int n = 1; n <= 16; ++n) {
    CHECK(deviant_fraction_exact(s, n) <= chebyshev_fraction_bound(s, n));
  }
}

TEST_CASE("census: non-deviant implies rich and heavy off-diagonal") {
  const Schedule& s = sched_r64();
  for (int n = 1; n <= 8; ++n) {
    const PatternCensus c = pattern_census(s, n);
    CHECK(c.weight_total == pow2_int(2 * n));
    CHECK(c.weight_nondeviant_not_rich == 0);
    CHECK(c.weight_nondeviant_thin_offdiag == 0);
    if (n <= 6) {
      const PatternCensus b = oracles::pattern_census_brute(s, n);
      CHECK(c.weight_deviant == b.weight_deviant);
      CHECK(c.weight_nondeviant_not_rich == b.weight_nondeviant_not_rich);
      CHECK(c.weight_nondeviant_thin_offdiag == b.weight_nondeviant_thin_offdiag);
    }
  }
}

TEST_CASE("pruning levels are the minimal funded stages") {
  const Schedule& s = sched_r64();
  const DeviancePlan plan = pruning_levels(s, 2);
  REQUIRE(plan.stage_count() == 2);
  CHECK(plan.stage(1).n == 9);
  CHECK(plan.stage(1).level == 18);
  CHECK(plan.stage(1).sum_gamma == Dyadic(9));
  CHECK(plan.stage(2).n == 17);
  CHECK(plan.stage(2).level == 34);
  CHECK(plan.c2() == Dyadic(2));
  CHECK_FALSE(plan.truncated());
  // minimality: sum_gamma at n-1 fails the stage inequality
  CHECK_FALSE(Dyadic(8) > plan.c2().shifted(2));
  CHECK(Dyadic(9) > plan.c2().shifted(2));
  CHECK(plan.retained_mass_lower_bound(2).fraction() == "5/8");

  const DeviancePlan none = pruning_levels(s, 0);
  CHECK(none.stage_count() == 0);
  CHECK(none.retained_mass_lower_bound(0) == Dyadic(1));
}

TEST_CASE("convergent gauges cannot fund any stage") {
  const Schedule s = derive_schedule(GaugeSpec::power(2), 30);
  const DeviancePlan plan = pruning_levels(s, 3);
  CHECK(plan.stage_count() == 0);
  CHECK(plan.truncated());
  CHECK_FALSE(plan.note().empty());
}

TEST_CASE("retained mass enumeration matches a direct stage-1 count") {
  const Schedule& s = sched_r64();
  const DeviancePlan plan = pruning_levels(s, 2);
  const BigRat removed1 = oracles::deviant_fraction_brute(s, 9);
  CHECK(retained_mass_exact(plan, 1).to_rational() == BigRat(1) - removed1);
  // two stages: union weight is at most the sum, at least the max
  const BigRat removed_union = BigRat(1) - retained_mass_exact(plan, 2).to_rational();
  const BigRat removed2 = oracles::deviant_fraction_brute(s, 17);
  CHECK(removed_union <= removed1 + removed2);
  CHECK(removed_union >= removed1);
  CHECK(removed_union >= removed2);
  CHECK(retained_mass_exact(plan, 2) >= Dyadic(BigInt(5), -3));
}

TEST_CASE("independence: deviant fraction within a realization is the pattern fraction") {
  const Schedule& s = sched_r64();
  const BigRat expected = deviant_fraction_exact(s, 4);
  for (const std::uint64_t seed : {3ULL, 1234ULL, 999999ULL}) {
    const Realization r(s, seed);
    const auto levels = r.build(8);
    std::uint64_t deviant = 0;
    for (const Address& a : levels[8]) {
      if (is_deviant(s, a, 4)) ++deviant;
    }
    CHECK(BigRat(deviant, levels[8].size()) == expected);
  }
}

TEST_CASE("prune drops exactly the deviant squares at stage levels") {
  const Schedule& s = sched_r64();
  const DeviancePlan plan = pruning_levels(s, 1);
  const Realization r(s, 21);
  int applied = 0;
  const auto pruned = prune(r, plan, 18, kDefaultNodeBudget, &applied);
  CHECK(applied == 1);
  const auto full = r.build(18);
  // at the stage level, pruned = full minus deviant
  std::uint64_t kept = 0;
  for (const Address& a : full[18]) {
    const bool deviant = is_deviant(s, a, 9);
    CHECK(pruned[18].contains(a) == !deviant);
    kept += deviant ? 0 : 1;
  }
  CHECK(pruned[18].size() == kept);
  // levels before the stage are untouched
  for (int n = 0; n < 18; ++n) {
    CHECK(pruned[static_cast<std::size_t>(n)].addresses() ==
          full[static_cast<std::size_t>(n)].addresses());
  }
}

TEST_CASE("descendants of pruned squares stay pruned") {
  const Schedule& s = sched_r64();
  const DeviancePlan plan = pruning_levels(s, 1);
  const Realization r(s, 8);
  const auto pruned = prune(r, plan, 20);
  for (const Address& a : pruned[20]) {
    CHECK(pruned[18].contains(a.prefix(18)));
    CHECK_FALSE(is_deviant(s, a.prefix(18), 9));
  }
  // mass at 20 equals mass at 18 (random steps in between preserve count/4^alpha)
  CHECK(pruned[20].size() == pruned[18].size() * 4);  // one det step at level 20
}
