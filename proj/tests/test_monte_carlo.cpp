#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "favard/deviance.hpp"
#include "favard/errors.hpp"
#include "favard/gauge.hpp"
#include "favard/line.hpp"
#include "favard/monte_carlo.hpp"
#include "favard/projection.hpp"
#include "favard/realization.hpp"
#include "favard/schedule.hpp"
#include "oracles.hpp"

using namespace favard;

namespace {

const Schedule& sched_r() {
  static const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  return s;
}

const DeviancePlan& plan_r0() {
  static const DeviancePlan p = pruning_levels(sched_r(), 0);
  return p;
}

bool pruned_set_hits(const Schedule& s, const DeviancePlan& plan, const LineGeometry& geom,
                     int depth, std::uint64_t seed) {
  const Realization r(s, seed);
  const auto levels = prune(r, plan, depth);
  for (const Address& a : levels[static_cast<std::size_t>(depth)]) {
    if (geom.hits_square(a)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("wilson interval has known values and limits") {
  const Interval95 half = wilson_interval(50, 100);
  CHECK(half.lo == doctest::Approx(0.40383).epsilon(1e-3));
  CHECK(half.hi == doctest::Approx(0.59617).epsilon(1e-3));
  const Interval95 none = wilson_interval(0, 1000);
  CHECK(none.lo == 0.0);
  CHECK(none.hi > 0.0);
  CHECK(none.hi < 0.005);
  const Interval95 all = wilson_interval(1000, 1000);
  CHECK(all.hi == 1.0);
  CHECK(all.lo > 0.995);
  // interval shrinks with n
  CHECK(wilson_interval(500, 1000).hi - wilson_interval(500, 1000).lo <
        wilson_interval(50, 100).hi - wilson_interval(50, 100).lo);
}

TEST_CASE("mean interval is the normal approximation") {
  const Interval95 i = mean_interval(2.0, 4.0, 400);
  CHECK(i.lo == doctest::Approx(2.0 - 1.959963984540054 * 0.1));
  CHECK(i.hi == doctest::Approx(2.0 + 1.959963984540054 * 0.1));
  const Interval95 exact = mean_interval(0.7, 0.0, 10);
  CHECK(exact.lo == 0.7);
  CHECK(exact.hi == 0.7);
}

TEST_CASE("lazy trial equals eager prune-and-intersect, no stages") {
  const Schedule& s = sched_r();
  const DeviancePlan& plan = plan_r0();
  const std::vector<Line> lines{
      Line::from_normal(0.7, 0.41),
      Line::from_normal(2.3, -0.13),
      Line::horizontal(0.318),
      Line::from_normal(1.2, 0.85),
  };
  for (const Line& l : lines) {
    const LineGeometry geom(l);
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
      const TrialOutcome out = line_hit_trial(s, plan, geom, 8, seed);
      REQUIRE(out != TrialOutcome::Aborted);
      CHECK((out == TrialOutcome::Hit) == pruned_set_hits(s, plan, geom, 8, seed));
    }
  }
}

TEST_CASE("lazy trial equals eager prune-and-intersect across a pruning stage") {
  const Schedule& s = sched_r();
  const DeviancePlan plan = pruning_levels(s, 1);  // stage level 18
  for (const std::uint64_t seed : {9ULL, 52ULL}) {
    for (const Line& l : {Line::from_normal(0.7, 0.41), Line::from_normal(1.9, 0.27)}) {
      const LineGeometry geom(l);
      const TrialOutcome out = line_hit_trial(s, plan, geom, 18, seed);
      REQUIRE(out != TrialOutcome::Aborted);
      CHECK((out == TrialOutcome::Hit) == pruned_set_hits(s, plan, geom, 18, seed));
    }
  }
}

TEST_CASE("hit probability MC is reproducible and seed-sensitive") {
  const Line l = Line::from_normal(0.7, 0.41);
  HitProbOptions opt;
  opt.trials = 500;
  opt.master_seed = 12345;
  const McReport a = hit_probability_mc_depth(sched_r(), plan_r0(), l, 8, opt);
  const McReport b = hit_probability_mc_depth(sched_r(), plan_r0(), l, 8, opt);
  CHECK(a.kind == "proportion");
  CHECK(a.estimate == b.estimate);
  CHECK(a.hits_or_sum == b.hits_or_sum);
  CHECK(a.ci_lo == b.ci_lo);
  CHECK(a.ci_hi == b.ci_hi);
  CHECK(a.completed == 500);
  CHECK(a.aborted == 0);
  CHECK(a.master_seed == 12345);
  opt.master_seed = 54321;
  const McReport c = hit_probability_mc_depth(sched_r(), plan_r0(), l, 8, opt);
  CHECK(a.hits_or_sum != c.hits_or_sum);
}

TEST_CASE("MC estimate brackets the exact averaged-choice value") {
  const Line l = Line::from_normal(0.7, 0.41);
  const LineGeometry geom(l);
  const BigRat exact = oracles::hit_probability_exact(sched_r(), plan_r0(), geom, 8);
  CHECK(exact > 0);
  CHECK(exact < 1);
  HitProbOptions opt;
  opt.trials = 4000;
  opt.master_seed = 7;
  const McReport rep = hit_probability_mc(sched_r(), plan_r0(), l, 4, opt);  // k_4 = 8
  const double p = to_double(exact);
  CHECK(rep.ci_lo <= p);
  CHECK(p <= rep.ci_hi);
  REQUIRE(rep.bound.has_value());
  CHECK(*rep.bound == 16.0);  // 64 / sum_gamma(4), vacuous at this depth
  CHECK(*rep.bound_fraction == "16");
}

TEST_CASE("exact hit probability is symmetric under the diagonal reflection") {
  // x = c and y = c are mirror images across the diagonal, which maps the
  // construction ensemble to itself
  for (const double c : {0.3, 0.7234, 0.151}) {
    const LineGeometry h(Line::horizontal(c));
    const LineGeometry v(Line::vertical(c));
    CHECK(oracles::hit_probability_exact(sched_r(), plan_r0(), h, 8) ==
          oracles::hit_probability_exact(sched_r(), plan_r0(), v, 8));
  }
}

TEST_CASE("favard MC on the all-deterministic gauge has zero variance") {
  const Schedule s = derive_schedule(GaugeSpec::power(2), 16);
  const DeviancePlan plan = pruning_levels(s, 0);
  FavardOptions opt;
  opt.trials = 10;
  opt.master_seed = 3;
  const double theta = 0.7;
  const McReport rep = favard_mc(s, plan, theta, 6, opt);
  CHECK(rep.kind == "mean");
  CHECK(rep.sample_min == rep.sample_max);
  CHECK(rep.ci_lo == rep.estimate);
  CHECK(rep.ci_hi == rep.estimate);
  CHECK(rep.estimate ==
        doctest::Approx(std::cos(theta) + std::sin(theta)).epsilon(1e-12));
}

TEST_CASE("favard MC on a random gauge is reproducible with a real spread") {
  FavardOptions opt;
  opt.trials = 40;
  opt.master_seed = 11;
  const McReport a = favard_mc(sched_r(), plan_r0(), 0.9, 8, opt);
  const McReport b = favard_mc(sched_r(), plan_r0(), 0.9, 8, opt);
  CHECK(a.estimate == b.estimate);
  CHECK(a.sample_min < a.sample_max);
  CHECK(a.ci_lo <= a.estimate);
  CHECK(a.estimate <= a.ci_hi);
  CHECK(a.estimate > 0.0);
  CHECK(a.estimate < std::numbers::sqrt2);
}

TEST_CASE("decay table rows are coupled and monotone") {
  const Line l = Line::from_normal(0.7, 0.41);
  HitProbOptions opt;
  opt.trials = 2000;
  opt.master_seed = 99;
  const auto rows = decay_table(sched_r(), plan_r0(), l, {2, 4, 6}, opt);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].level == 4);
  CHECK(rows[1].level == 8);
  CHECK(rows[2].level == 12);
  CHECK(rows[0].bound == BigRat(32));
  CHECK(rows[1].bound == BigRat(16));
  CHECK(rows[2].bound == BigRat(32, 3));
  for (const DecayRow& row : rows) {
    CHECK(row.report.master_seed == 99);
    CHECK(row.report.trials == 2000);
    CHECK(row.sum_gamma == Dyadic(row.n));
  }
  // same seed, same trial: a hit at depth 12 forces a hit at shallower depths,
  // so the coupled counts are nonincreasing (strictly here)
  CHECK(rows[0].report.hits_or_sum > rows[1].report.hits_or_sum);
  CHECK(rows[1].report.hits_or_sum > rows[2].report.hits_or_sum);
}

TEST_CASE("a starved node cap aborts and surfaces as a budget error") {
  // y = 1/2 touches all four closed level-1 squares, so even the single
  // materialized child of the random first step survives and busts a cap of 1
  const Line l = Line::horizontal(0.5);
  CHECK(line_hit_trial(sched_r(), plan_r0(), LineGeometry(l), 8, 5, 1) ==
        TrialOutcome::Aborted);
  HitProbOptions opt;
  opt.trials = 20;
  opt.trial_node_cap = 1;
  opt.check_vertex_safety = false;
  CHECK_THROWS_AS(hit_probability_mc_depth(sched_r(), plan_r0(), l, 8, opt), BudgetError);
}

TEST_CASE("fubini check compares the two estimators coherently") {
  FubiniOptions opt;
  opt.grid = 16;
  opt.trials_per_offset = 150;
  opt.mean_trials = 100;
  opt.master_seed = 17;
  const double theta = std::numbers::pi / 3;
  const FubiniReport rep = fubini_check(sched_r(), plan_r0(), theta, 8, opt);
  CHECK(rep.grid_points == 16);
  CHECK(rep.offsets.size() == 16);
  CHECK(rep.estimates.size() == 16);
  const auto [lo, hi] = projection_range(theta);
  CHECK(rep.t_lo == lo);
  CHECK(rep.t_hi == hi);
  for (std::size_t i = 0; i < rep.offsets.size(); ++i) {
    CHECK(rep.offsets[i] >= lo);
    CHECK(rep.offsets[i] <= hi);
    CHECK(rep.estimates[i] >= 0.0);
    CHECK(rep.estimates[i] <= 1.0);
  }
  CHECK(rep.discrepancy ==
        doctest::Approx(std::abs(rep.mean_report.estimate - rep.integral_estimate)));
  CHECK(rep.tolerance > 0.0);
  CHECK(rep.agree == (rep.discrepancy <= rep.tolerance));
  CHECK(rep.integral_estimate > 0.0);
  CHECK(rep.integral_estimate < hi - lo);
}
