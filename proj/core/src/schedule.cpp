#include "favard/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace favard {

Schedule::Schedule(std::vector<int> alpha, ScheduleWarnings warnings)
    : alpha_(std::move(alpha)), warnings_(std::move(warnings)) {
  if (alpha_.empty()) throw Error("schedule needs alpha_0");
  depth_ = static_cast<int>(alpha_.size()) - 1;
  if (alpha_[0] != 0) throw Error("schedule alpha_0 must be 0");

  steps_.reserve(static_cast<std::size_t>(depth_));
  lambda_.reserve(alpha_.size());
  lambda_.push_back(Dyadic::pow2(0));
  for (int k = 1; k <= depth_; ++k) {
    const int prev = alpha_[static_cast<std::size_t>(k - 1)];
    const int cur = alpha_[static_cast<std::size_t>(k)];
    if (cur != prev && cur != prev + 1) throw Error("schedule alpha must step by 0 or 1");
    const bool det = cur == prev + 1;
    steps_.push_back(det ? StepKind::Deterministic : StepKind::Random);
    if (det) det_levels_.push_back(k);
    lambda_.push_back(Dyadic::pow2(static_cast<std::int64_t>(k) - 2 * cur));
  }

  gamma_.reserve(det_levels_.size());
  gamma_prefix_.reserve(det_levels_.size() + 1);
  gamma_prefix_.push_back(Dyadic(0));
  for (const int k : det_levels_) {
    gamma_.push_back(lambda_[static_cast<std::size_t>(k)]);
    gamma_prefix_.push_back(gamma_prefix_.back() + gamma_.back());
  }

  c2_ = lambda_[0];
  for (int n = 1; n < depth_; ++n) c2_ = std::max(c2_, lambda_[static_cast<std::size_t>(n)]);
}

int Schedule::det_steps_within(int n) const {
  return alpha_.at(static_cast<std::size_t>(n));
}

BigInt Schedule::population(int n) const {
  return pow2_int(2 * static_cast<std::int64_t>(alpha(n)));
}

Schedule derive_schedule(const GaugeSpec& g, int depth, double max_clamp_fraction) {
  if (depth < 1) throw GaugeError("schedule depth must be >= 1");
  if (depth > g.max_depth()) {
    throw GaugeError("gauge not evaluable to depth " + std::to_string(depth) + ": table ends at " +
                     std::to_string(g.max_depth()));
  }

  const double v0 = g.value(0);
  if (!(v0 > 0) || !std::isfinite(v0)) throw GaugeError("invalid gauge: phi(1) must be positive");
  const auto e0 = g.exact_value(0);

  std::vector<int> alpha;
  alpha.reserve(static_cast<std::size_t>(depth) + 1);
  ScheduleWarnings warnings;

  for (int n = 0; n <= depth; ++n) {
    const double v = g.value(n) / v0;
    if (!(v > 0) || !std::isfinite(v)) {
      throw GaugeError("invalid gauge: non-positive value at level " + std::to_string(n));
    }
    const double x = std::log(v) / std::log(0.25);
    const double rounded = std::round(x);
    int a;
    if (std::abs(x - rounded) < 1e-9) {
      const auto exact = g.exact_value(n);
      if (exact && e0) {
        // settle "largest j with 4^-j >= phi" exactly at the lattice point
        const BigRat ve = *exact / *e0;
        std::int64_t j = std::max<std::int64_t>(static_cast<std::int64_t>(rounded), 0);
        while (j > 0 && BigRat(BigInt(1), pow2_int(2 * j)) < ve) --j;
        while (BigRat(BigInt(1), pow2_int(2 * (j + 1))) >= ve) ++j;
        a = static_cast<int>(j);
      } else {
        a = static_cast<int>(std::floor(x));
        warnings.boundary_levels.push_back(n);
      }
    } else {
      a = static_cast<int>(std::floor(x));
    }

    if (n == 0) {
      alpha.push_back(0);
      continue;
    }
    const int lo = alpha.back();
    if (a < lo || a > lo + 1) {
      warnings.clamped_levels.push_back(n);
      a = std::clamp(a, lo, lo + 1);
    }
    alpha.push_back(a);
  }

  if (static_cast<double>(warnings.clamped_levels.size()) > max_clamp_fraction * depth) {
    throw GaugeError("gauge violates regularity too strongly: floor formula clamped at " +
                     std::to_string(warnings.clamped_levels.size()) + " of " +
                     std::to_string(depth) + " levels");
  }
  return Schedule(std::move(alpha), std::move(warnings));
}

DivergenceReport divergence_report(const Schedule& s) {
  DivergenceReport rep;
  rep.depth = s.depth();
  rep.c2 = s.c2();

  Dyadic head;  // lambda mass over [0, depth/2)
  Dyadic tail;  // over [depth/2, depth)
  const int half = s.depth() / 2;
  for (int n = 0; n < s.depth(); ++n) {
    (n < half ? head : tail) += s.lambda(n);
  }
  rep.sum_lambda = head + tail;
  rep.sum_gamma = s.gamma_prefix(s.det_count());

  if (s.depth() < 4) {
    rep.trend = DivergenceReport::Trend::Inconclusive;
    rep.note = "depth too small to classify the lambda series; ";
  } else if (tail.shifted(1) >= head) {
    rep.trend = DivergenceReport::Trend::Diverging;
  } else if (tail.shifted(3) <= head) {
    rep.trend = DivergenceReport::Trend::Converging;
  } else {
    rep.trend = DivergenceReport::Trend::Inconclusive;
  }

  while (rep.c2.shifted(rep.stages_funded + 2) < rep.sum_gamma) ++rep.stages_funded;

  if (s.depth() >= 4) {
    Dyadic head_max = s.lambda(0);
    for (int n = 1; n < half; ++n) head_max = std::max(head_max, s.lambda(n));
    Dyadic tail_max = s.lambda(half);
    for (int n = half + 1; n < s.depth(); ++n) tail_max = std::max(tail_max, s.lambda(n));
    rep.lambda_unbounded = tail_max >= head_max.shifted(1);
  }

  rep.note += "partial-sum evidence over a finite range, not a proof; ";
  rep.note += "pruning stages fundable within depth: " + std::to_string(rep.stages_funded);
  if (rep.lambda_unbounded) {
    rep.note +=
        "; lambda grows along the range: the limit set has zero length (H^1 = 0), every "
        "projection is degenerate, and the hitting-bound scale constant is not meaningful";
  }
  return rep;
}

std::string to_string(DivergenceReport::Trend t) {
  switch (t) {
    case DivergenceReport::Trend::Diverging:
      return "diverging-evidence";
    case DivergenceReport::Trend::Converging:
      return "converging-evidence";
    case DivergenceReport::Trend::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace favard
