#include "favard/monte_carlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "favard/errors.hpp"

namespace favard {
namespace {

constexpr double kZ95 = 1.959963984540054;

const char* kSeedRule = "seed(i) = mix64(master ^ mix64(i + 0x6a09e667f3bcc909))";

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

Interval95 wilson_interval(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval95 ci{std::max(0.0, (center - half) / denom), std::min(1.0, (center + half) / denom)};
  // the exact endpoints at the extremes; rounding otherwise leaves residue
  if (hits == 0) ci.lo = 0.0;
  if (hits == n) ci.hi = 1.0;
  return ci;
}

Interval95 mean_interval(double mean, double sample_variance, std::uint64_t n) {
  if (n < 2 || sample_variance <= 0) return {mean, mean};
  const double half = kZ95 * std::sqrt(sample_variance / static_cast<double>(n));
  return {mean - half, mean + half};
}

TrialOutcome line_hit_trial(const Schedule& s, const DeviancePlan& plan,
                            const LineGeometry& geom, int depth, std::uint64_t trial_seed,
                            std::uint64_t node_cap) {
  if (depth < 0 || depth > s.depth()) throw Error("trial depth exceeds the schedule");
  struct Node {
    BigInt g;
    std::uint64_t state;
    Dyadic score;
  };

  std::vector<Node> frontier;
  std::vector<Node> next;
  {
    BigInt g0 = geom.root_g();
    if (!geom.hits(g0)) return TrialOutcome::Miss;
    frontier.push_back({std::move(g0), Realization(s, trial_seed).root_state(), Dyadic(0)});
  }

  const std::vector<DevianceStage>& stages = plan.stages();
  std::size_t stage_idx = 0;
  std::uint64_t expanded = 1;

  for (int k = 1; k <= depth; ++k) {
    const bool det = s.step(k) == StepKind::Deterministic;
    const Dyadic* gamma = det ? &s.gamma(s.alpha(k)) : nullptr;
    next.clear();
    for (const Node& node : frontier) {
      std::uint8_t first = 0, last = 3;
      if (!det) first = last = Realization::choice(node.state);
      for (std::uint8_t d = first; d <= last; ++d) {
        BigInt g = geom.child_g(node.g, d);
        if (!geom.hits(g)) continue;
        if (++expanded > node_cap) return TrialOutcome::Aborted;
        Dyadic score = node.score;
        if (det && (d == 0 || d == 2)) score += *gamma;
        next.push_back({std::move(g), Realization::child_state(node.state, d), std::move(score)});
      }
    }
    frontier.swap(next);
    while (stage_idx < stages.size() && stages[stage_idx].level == k) {
      const Dyadic& total = stages[stage_idx].sum_gamma;
      std::erase_if(frontier, [&](const Node& node) {
        return abs(node.score.shifted(2) - total.shifted(1)) > total;
      });
      ++stage_idx;
    }
    if (frontier.empty()) return TrialOutcome::Miss;
  }
  return TrialOutcome::Hit;
}

McReport hit_probability_mc_depth(const Schedule& s, const DeviancePlan& plan, const Line& l,
                                  int depth, const HitProbOptions& opt) {
  if (depth < 0 || depth > s.depth()) throw Error("depth exceeds the schedule");
  if (opt.trials == 0) throw Error("trials must be positive");
  if (opt.check_vertex_safety) require_vertex_safe(l, depth);
  const LineGeometry geom(l);

  std::uint64_t hits = 0;
  std::uint64_t aborted = 0;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    switch (line_hit_trial(s, plan, geom, depth, derive_trial_seed(opt.master_seed, t),
                           opt.trial_node_cap)) {
      case TrialOutcome::Hit: ++hits; break;
      case TrialOutcome::Miss: break;
      case TrialOutcome::Aborted: ++aborted; break;
    }
  }
  const std::uint64_t completed = opt.trials - aborted;
  if (completed == 0) throw BudgetError("every trial exceeded the node cap", depth);

  McReport r;
  r.kind = "proportion";
  r.trials = opt.trials;
  r.completed = completed;
  r.aborted = aborted;
  r.hits_or_sum = static_cast<double>(hits);
  r.estimate = static_cast<double>(hits) / static_cast<double>(completed);
  const Interval95 ci = wilson_interval(hits, completed);
  r.ci_lo = ci.lo;
  r.ci_hi = ci.hi;
  const int i = s.alpha(depth);
  if (i >= 1 && s.det_level(i) == depth) {
    const BigRat bound = BigRat(64) / s.gamma_prefix(i).to_rational();
    r.bound = to_double(bound);
    r.bound_fraction = fraction_string(bound);
  }
  r.sample_min = hits == completed ? 1.0 : 0.0;
  r.sample_max = hits > 0 ? 1.0 : 0.0;
  r.master_seed = opt.master_seed;
  r.seed_rule = kSeedRule;
  r.params = {{"depth", std::to_string(depth)},
              {"stages", std::to_string(plan.stage_count())},
              {"line_alpha", fmt_double(l.alpha)},
              {"line_offset", fmt_double(l.offset)},
              {"trial_node_cap", std::to_string(opt.trial_node_cap)}};
  return r;
}

McReport hit_probability_mc(const Schedule& s, const DeviancePlan& plan, const Line& l, int n,
                            const HitProbOptions& opt) {
  if (n < 1 || n > s.det_count()) throw Error("pruning index out of range");
  McReport r = hit_probability_mc_depth(s, plan, l, s.det_level(n), opt);
  r.params.insert(r.params.begin(), {"n", std::to_string(n)});
  return r;
}

McReport favard_mc(const Schedule& s, const DeviancePlan& plan, double theta, int depth,
                   const FavardOptions& opt) {
  if (depth < 0 || depth > s.depth()) throw Error("depth exceeds the schedule");
  if (opt.trials == 0) throw Error("trials must be positive");

  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double sum = 0.0;
  double mn = 0.0;
  double mx = 0.0;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const Realization real(s, derive_trial_seed(opt.master_seed, t));
    const std::vector<SquareSet> sets = prune(real, plan, depth, opt.node_budget);
    const double len = projection_length(sets.back(), theta, opt.merge_tolerance);
    sum += len;
    ++count;
    const double d = len - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (len - mean);
    mn = count == 1 ? len : std::min(mn, len);
    mx = count == 1 ? len : std::max(mx, len);
  }

  McReport r;
  r.kind = "mean";
  r.trials = opt.trials;
  r.completed = count;
  r.aborted = 0;
  r.hits_or_sum = sum;
  r.estimate = mean;
  const double var = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  const Interval95 ci = mn == mx ? Interval95{mean, mean} : mean_interval(mean, var, count);
  r.ci_lo = ci.lo;
  r.ci_hi = ci.hi;
  r.sample_min = mn;
  r.sample_max = mx;
  r.master_seed = opt.master_seed;
  r.seed_rule = kSeedRule;
  r.params = {{"depth", std::to_string(depth)},
              {"stages", std::to_string(plan.stage_count())},
              {"theta", fmt_double(theta)},
              {"merge_tolerance", fmt_double(opt.merge_tolerance)}};
  return r;
}

FubiniReport fubini_check(const Schedule& s, const DeviancePlan& plan, double theta, int depth,
                          const FubiniOptions& opt) {
  if (opt.grid < 2) throw Error("offset grid needs at least two points");
  const auto [t_lo, t_hi] = projection_range(theta);

  FubiniReport rep;
  rep.grid_points = opt.grid;
  rep.t_lo = t_lo;
  rep.t_hi = t_hi;
  rep.offsets.reserve(static_cast<std::size_t>(opt.grid));
  rep.estimates.reserve(static_cast<std::size_t>(opt.grid));

  const double h = (t_hi - t_lo) / static_cast<double>(opt.grid - 1);
  const double mid = (t_lo + t_hi) / 2;

  HitProbOptions ho;
  ho.trials = opt.trials_per_offset;
  ho.trial_node_cap = opt.trial_node_cap;
  ho.check_vertex_safety = false;

  double integral = 0.0;
  double var_acc = 0.0;
  for (int i = 0; i < opt.grid; ++i) {
    double t = i == opt.grid - 1 ? t_hi : t_lo + h * static_cast<double>(i);
    Line ln = Line::from_normal(theta, t);
    if (!is_vertex_safe(ln, depth)) {
      const double dir = t <= mid ? 1.0 : -1.0;
      double delta = std::max(2 * vertex_epsilon(depth), std::ldexp(1.0, -40));
      int tries = 0;
      for (; tries < 60; ++tries) {
        t += dir * delta;
        delta *= 2;
        ln = Line::from_normal(theta, t);
        if (is_vertex_safe(ln, depth)) break;
      }
      if (tries == 60) require_vertex_safe(ln, depth);
      ++rep.perturbed_offsets;
    }
    ho.master_seed = derive_trial_seed(opt.master_seed, 1'000'000 + static_cast<std::uint64_t>(i));
    const McReport mr = hit_probability_mc_depth(s, plan, ln, depth, ho);
    const double w = h * (i == 0 || i == opt.grid - 1 ? 0.5 : 1.0);
    integral += w * mr.estimate;
    const double half = (mr.ci_hi - mr.ci_lo) / 2;
    var_acc += w * half * w * half;
    rep.offsets.push_back(t);
    rep.estimates.push_back(mr.estimate);
  }
  rep.integral_estimate = integral;
  rep.integral_ci_half = std::sqrt(var_acc);

  FavardOptions fo;
  fo.trials = opt.mean_trials;
  fo.master_seed = opt.master_seed;
  fo.node_budget = opt.node_budget;
  fo.merge_tolerance = opt.merge_tolerance;
  rep.mean_report = favard_mc(s, plan, theta, depth, fo);

  rep.discrepancy = std::abs(rep.mean_report.estimate - integral);
  rep.tolerance = (rep.mean_report.ci_hi - rep.mean_report.ci_lo) / 2 + rep.integral_ci_half;
  rep.agree = rep.discrepancy <= rep.tolerance;
  return rep;
}

std::vector<DecayRow> decay_table(const Schedule& s, const DeviancePlan& plan, const Line& l,
                                  const std::vector<int>& ns, const HitProbOptions& opt) {
  std::vector<DecayRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    DecayRow row;
    row.n = n;
    row.report = hit_probability_mc(s, plan, l, n, opt);
    row.level = s.det_level(n);
    row.sum_gamma = s.gamma_prefix(n);
    row.bound = BigRat(64) / row.sum_gamma.to_rational();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace favard
