#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "favard/dyadic.hpp"
#include "favard/gauge.hpp"

namespace favard {

enum class StepKind : std::uint8_t { Deterministic, Random };

struct ScheduleWarnings {
  /// Levels where log(phi)/log(1/4) fell within 1e-9 of an integer and no
  /// exact value was available to settle the floor.
  std::vector<int> boundary_levels;
  /// Levels where the raw floor left the admissible window
  /// {alpha_(n-1), alpha_(n-1)+1} and was clamped into it.
  std::vector<int> clamped_levels;
};

/// The derived subdivision schedule for a gauge up to a fixed depth:
/// alpha_n = floor(log phi(2^-n) / log(1/4)), each level-n step keeping all
/// four children (deterministic, when alpha increments) or one uniformly
/// random child (when alpha repeats).
///
/// lambda_n = 2^n 4^(-alpha_n) is the expected count of level-n squares times
/// their side length; gamma_i = lambda at the i-th deterministic level.
class Schedule {
 public:
  Schedule(std::vector<int> alpha, ScheduleWarnings warnings);

  int depth() const { return depth_; }
  int alpha(int n) const { return alpha_.at(static_cast<std::size_t>(n)); }

  /// Step taken between levels k-1 and k, 1 <= k <= depth.
  StepKind step(int k) const { return steps_.at(static_cast<std::size_t>(k - 1)); }

  /// Number of deterministic steps in levels 1..depth (= alpha(depth)).
  int det_count() const { return static_cast<int>(det_levels_.size()); }

  /// k_i: the level of the i-th deterministic step, 1-based i.
  int det_level(int i) const { return det_levels_.at(static_cast<std::size_t>(i - 1)); }

  /// Number of deterministic levels k_i <= n.
  int det_steps_within(int n) const;

  const Dyadic& lambda(int n) const { return lambda_.at(static_cast<std::size_t>(n)); }

  /// gamma_i = lambda(k_i) = 2^(k_i) 4^(-i), 1-based i.
  const Dyadic& gamma(int i) const { return gamma_.at(static_cast<std::size_t>(i - 1)); }

  /// gamma_1 + ... + gamma_n (n = 0 gives zero).
  const Dyadic& gamma_prefix(int n) const { return gamma_prefix_.at(static_cast<std::size_t>(n)); }

  /// max lambda_n over 0 <= n < depth; scale constant for the hitting bound.
  const Dyadic& c2() const { return c2_; }

  /// Exact number of level-n squares of one realization (4^alpha_n).
  BigInt population(int n) const;

  const ScheduleWarnings& warnings() const { return warnings_; }

 private:
  int depth_ = 0;
  std::vector<int> alpha_;
  std::vector<StepKind> steps_;
  std::vector<int> det_levels_;
  std::vector<Dyadic> lambda_;
  std::vector<Dyadic> gamma_;
  std::vector<Dyadic> gamma_prefix_;
  Dyadic c2_;
  ScheduleWarnings warnings_;
};

/// Derives the schedule from a validated gauge.  Floor computations are done
/// exactly when the gauge has exact values; otherwise doubles with a 1e-9
/// near-integer guard (flagged per level).  Raw alphas outside the
/// one-step window are clamped and counted; more than max_clamp_fraction of
/// levels clamped is a gauge error.
Schedule derive_schedule(const GaugeSpec& g, int depth, double max_clamp_fraction = 0.1);

struct DivergenceReport {
  enum class Trend { Diverging, Converging, Inconclusive };

  int depth = 0;
  Dyadic sum_lambda;   // sum of lambda_n over 0 <= n < depth
  Dyadic sum_gamma;    // sum of gamma_i over deterministic levels k_i <= depth
  Dyadic c2;
  Trend trend = Trend::Inconclusive;
  /// How many pruning stages the partial gamma sums can fund
  /// (max j >= 0 with sum_gamma > c2 * 2^(j+1)).
  int stages_funded = 0;
  /// lambda grows along the range: the limit set has zero length and every
  /// projection is null, so hitting statistics are not meaningful.
  bool lambda_unbounded = false;
  std::string note;
};

/// Splits [0, depth) in half and compares lambda mass: the series is reported
/// diverging when the tail half carries at least half the head half,
/// converging when it carries at most an eighth, inconclusive between
/// (or when depth < 4).  All sums and comparisons are exact.
DivergenceReport divergence_report(const Schedule& s);

std::string to_string(DivergenceReport::Trend t);

}  // namespace favard
