#include <random>
#include <vector>

#include "doctest.h"
#include "favard/gauge.hpp"
#include "favard/schedule.hpp"

using namespace favard;

TEST_CASE("phi=r schedule: alternating steps, unit gammas") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  for (int n = 0; n <= 64; ++n) CHECK(s.alpha(n) == n / 2);
  CHECK(s.det_count() == 32);
  for (int i = 1; i <= 32; ++i) {
    CHECK(s.det_level(i) == 2 * i);
    CHECK(s.gamma(i) == Dyadic(1));
  }
  for (int k = 1; k <= 64; ++k) {
    CHECK((s.step(k) == StepKind::Deterministic) == (k % 2 == 0));
  }
  CHECK(s.c2() == Dyadic(2));
  CHECK(s.gamma_prefix(32) == Dyadic(32));
  CHECK(s.warnings().boundary_levels.empty());
  CHECK(s.warnings().clamped_levels.empty());

  const DivergenceReport d = divergence_report(s);
  CHECK(d.sum_lambda == Dyadic(96));
  CHECK(d.trend == DivergenceReport::Trend::Diverging);
  CHECK_FALSE(d.lambda_unbounded);
  CHECK(d.stages_funded >= 2);
}

TEST_CASE("phi=r^2: every step deterministic, convergent mass") {
  const Schedule s = derive_schedule(GaugeSpec::power(2), 40);
  for (int n = 0; n <= 40; ++n) CHECK(s.alpha(n) == n);
  CHECK(s.det_count() == 40);
  Dyadic sum(0);
  for (int n = 0; n < 40; ++n) sum += s.lambda(n);
  CHECK(sum < Dyadic(2));
  const DivergenceReport d = divergence_report(s);
  CHECK(d.trend == DivergenceReport::Trend::Converging);
  CHECK(d.stages_funded == 0);
}

TEST_CASE("constant gauge: lambda blows up, scale constant 512 at depth 10") {
  const Schedule s = derive_schedule(GaugeSpec::table(std::vector<BigRat>(11, BigRat(1))), 10);
  for (int n = 0; n <= 10; ++n) CHECK(s.alpha(n) == 0);
  CHECK(s.det_count() == 0);
  CHECK(s.c2() == Dyadic(512));  // max lambda over n in [0, 10)
  const DivergenceReport d = divergence_report(s);
  CHECK(d.lambda_unbounded);
  CHECK(d.trend == DivergenceReport::Trend::Diverging);
}

TEST_CASE("constant table gauges extend by their last value") {
  // a one-entry table covers depth 0 only
  CHECK_THROWS_AS(derive_schedule(GaugeSpec::table(std::vector<BigRat>{BigRat(1)}), 10),
                  GaugeError);
}

TEST_CASE("alpha floor window holds exactly for random regular tables") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> eighth(0, 8);  // u = eighth/8 in [0,1]
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BigRat> vals{BigRat(1)};
    std::vector<BigRat> fourth_powers;  // 4^(-8u) values at scale 1/8
    for (int n = 1; n <= 32; ++n) {
      // exact dyadic ratio 2^(-2u) with u multiple of 1/8: use 2^(-q), q=eighth/4
      // to stay rational pick u in {0, 1/2, 1}: ratio in {1, 1/2, 1/4}
      const int pick = eighth(rng) % 3;
      const BigRat ratio = pick == 0 ? BigRat(1) : (pick == 1 ? BigRat(1, 2) : BigRat(1, 4));
      vals.push_back(vals.back() * ratio);
    }
    const GaugeSpec g = GaugeSpec::table(vals);
    const Schedule s = derive_schedule(g, 32);
    for (int n = 0; n <= 32; ++n) {
      const BigRat phi = vals[static_cast<std::size_t>(n)];
      const BigRat lo = BigRat(1, pow2_int(2 * (s.alpha(n) + 1)));
      const BigRat hi = BigRat(1, pow2_int(2 * s.alpha(n)));
      CHECK(phi <= hi);  // 4^-alpha >= phi
      CHECK(phi > lo);   // floor, not any admissible alpha
    }
    CHECK(s.warnings().clamped_levels.empty());
  }
}

TEST_CASE("exact values settle near-integer boundaries without warnings") {
  // phi(2^-n) = 4^-n exactly: log ratio is exactly an integer per level
  const Schedule s = derive_schedule(GaugeSpec::power(2), 32);
  CHECK(s.warnings().boundary_levels.empty());
  for (int n = 0; n <= 32; ++n) CHECK(s.alpha(n) == n);
}

TEST_CASE("irregular gauges clamp and fail past the threshold") {
  // phi drops by 4^3 each level: raw alpha jumps by 3, clamped every level
  std::vector<BigRat> vals{BigRat(1)};
  for (int n = 1; n <= 10; ++n) vals.push_back(vals.back() / 64);
  CHECK_THROWS_AS(derive_schedule(GaugeSpec::table(vals), 10), GaugeError);
}

TEST_CASE("lambda identity and population counts") {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 20);
  for (int n = 0; n <= 20; ++n) {
    CHECK(s.lambda(n) == Dyadic(BigInt(1) << n, -2 * s.alpha(n)));
    CHECK(s.population(n) == pow2_int(2 * s.alpha(n)));
  }
  CHECK(s.det_steps_within(8) == 4);
  CHECK(s.det_steps_within(9) == 4);
  CHECK(s.gamma_prefix(0) == Dyadic(0));
}
