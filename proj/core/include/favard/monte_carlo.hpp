#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "favard/deviance.hpp"
#include "favard/line.hpp"
#include "favard/numeric.hpp"
#include "favard/projection.hpp"
#include "favard/schedule.hpp"

namespace favard {

inline constexpr std::uint64_t kDefaultTrialNodeCap = 1'000'000;

struct Interval95 {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion at 95% confidence.
Interval95 wilson_interval(std::uint64_t hits, std::uint64_t n);

/// Normal interval for a sample mean at 95% confidence.
Interval95 mean_interval(double mean, double sample_variance, std::uint64_t n);

/// Result of a Monte Carlo estimation.  `trials` is the requested count;
/// trials that overran the per-trial node cap are excluded from the estimate
/// and reported in `aborted`.  Reproducible byte-for-byte from
/// (master_seed, parameters): per-trial seeds come from the trial index and
/// aggregation is in index order.
struct McReport {
  std::string kind;  // "proportion" or "mean"
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;
  std::uint64_t aborted = 0;
  double hits_or_sum = 0.0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::optional<double> bound;               // 64 / sum_gamma when applicable
  std::optional<std::string> bound_fraction; // same, exact
  double sample_min = 0.0;
  double sample_max = 0.0;
  std::uint64_t master_seed = 0;
  std::string seed_rule;
  std::vector<std::pair<std::string, std::string>> params;
};

enum class TrialOutcome { Miss, Hit, Aborted };

/// One lazy line-restricted trial: starting from the root, expand only
/// children whose closed squares meet the line, materializing random choices
/// on demand and dropping deviant squares at each pruning-stage level within
/// depth.  Hit means some square of the pruned set survives at `depth`.
TrialOutcome line_hit_trial(const Schedule& s, const DeviancePlan& plan,
                            const LineGeometry& geom, int depth,
                            std::uint64_t trial_seed,
                            std::uint64_t node_cap = kDefaultTrialNodeCap);

struct HitProbOptions {
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_node_cap = kDefaultTrialNodeCap;
  bool check_vertex_safety = true;
};

/// P(pruned set at depth k_n meets the line), estimated over realizations;
/// includes the theoretical bound 64 / sum_gamma(n).
McReport hit_probability_mc(const Schedule& s, const DeviancePlan& plan, const Line& l,
                            int n, const HitProbOptions& opt);

/// Same at an arbitrary depth (not necessarily a deterministic level); the
/// bound is attached only when depth is exactly some k_n.
McReport hit_probability_mc_depth(const Schedule& s, const DeviancePlan& plan, const Line& l,
                                  int depth, const HitProbOptions& opt);

struct FavardOptions {
  std::uint64_t trials = 200;
  std::uint64_t master_seed = 0;
  std::uint64_t node_budget = kDefaultNodeBudget;
  double merge_tolerance = 1e-12;
};

/// Mean projection length onto u(theta) of the pruned set at `depth` over
/// realizations (eager build per trial), with a normal CI.
McReport favard_mc(const Schedule& s, const DeviancePlan& plan, double theta, int depth,
                   const FavardOptions& opt);

struct FubiniOptions {
  int grid = 256;
  std::uint64_t trials_per_offset = 200;
  std::uint64_t mean_trials = 200;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_node_cap = kDefaultTrialNodeCap;
  std::uint64_t node_budget = kDefaultNodeBudget;
  double merge_tolerance = 1e-12;
};

/// Two estimators of the same quantity: E[length of p_theta(pruned set)]
/// directly, and the trapezoid integral over offsets t of
/// P(line {p . u(theta) = t} hits the pruned set).  Grid offsets that fail
/// the vertex-safety check are nudged inward and counted.
struct FubiniReport {
  McReport mean_report;
  double integral_estimate = 0.0;
  double integral_ci_half = 0.0;
  int grid_points = 0;
  int perturbed_offsets = 0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double discrepancy = 0.0;  // |mean - integral|
  double tolerance = 0.0;    // CI half-width sum
  bool agree = false;
  std::vector<double> offsets;
  std::vector<double> estimates;
};

FubiniReport fubini_check(const Schedule& s, const DeviancePlan& plan, double theta, int depth,
                          const FubiniOptions& opt);

/// Hit-probability decay sweep over pruning indices n (one row per n, shared
/// master seed, so trials are coupled across rows through the common choice
/// oracle).
struct DecayRow {
  int n = 0;
  int level = 0;
  Dyadic sum_gamma;
  BigRat bound;
  McReport report;
};

std::vector<DecayRow> decay_table(const Schedule& s, const DeviancePlan& plan, const Line& l,
                                  const std::vector<int>& ns, const HitProbOptions& opt);

}  // namespace favard
