#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "favard/address.hpp"
#include "favard/dyadic.hpp"
#include "favard/numeric.hpp"
#include "favard/realization.hpp"
#include "favard/schedule.hpp"

namespace favard {

/// Diagonal score of a square after n deterministic steps: the gamma-weighted
/// count of deterministic-level digits on the main diagonal {0,2}, split by
/// digit.  total is gamma_1 + ... + gamma_n; the mean score is total/2.
struct ScoreBreakdown {
  int n = 0;
  Dyadic sum0;
  Dyadic sum2;
  Dyadic score;  // sum0 + sum2
  Dyadic total;
  bool deviant = false;  // |score - total/2| > total/4, strict
  bool rich0 = false;    // sum0 >= total/8
  bool rich2 = false;    // sum2 >= total/8
};

/// Reads digits omega_(k_1) .. omega_(k_n) of `a` and accumulates the exact
/// score.  Requires a.level >= k_n and n <= s.det_count().
ScoreBreakdown score(const Schedule& s, const Address& a, int n);

bool is_deviant(const Schedule& s, const Address& a, int n);

struct DevianceStage {
  int j = 0;         // stage index, from 1
  int n = 0;         // pruning index n(j)
  int level = 0;     // k_(n(j))
  Dyadic sum_gamma;  // gamma_1 + ... + gamma_(n(j))
};

/// Stage plan: per stage j the minimal n with sum_gamma > c2 * 2^(j+1).
/// Fewer stages than requested means the gamma series ran out of mass within
/// the schedule depth (the convergent case); truncated() reports it.
class DeviancePlan {
 public:
  DeviancePlan(const Schedule& s, int requested_stages, std::vector<DevianceStage> stages);

  const Schedule& schedule() const { return *schedule_; }
  int requested_stages() const { return requested_; }
  int stage_count() const { return static_cast<int>(stages_.size()); }
  const std::vector<DevianceStage>& stages() const { return stages_; }
  const DevianceStage& stage(int j) const { return stages_.at(static_cast<std::size_t>(j - 1)); }
  bool truncated() const { return stage_count() < requested_; }
  const Dyadic& c2() const { return c2_; }
  std::string note() const;

  /// Mass removed by stage j is below 2^(-j-1); retained mass after the first
  /// `upto` stages is at least 1 - sum of those, and always >= 1/2.
  Dyadic retained_mass_lower_bound(int upto_stages) const;

 private:
  const Schedule* schedule_;
  int requested_ = 0;
  std::vector<DevianceStage> stages_;
  Dyadic c2_;
};

DeviancePlan pruning_levels(const Schedule& s, int stage_count);

inline constexpr int kMaxEnumerationBits = 26;

/// Exact fraction of diagonal/off-diagonal sign patterns over the first n
/// deterministic levels that are deviant.  Enumerates 2^n patterns
/// (each deterministic digit contributes only through membership in {0,2});
/// n beyond kMaxEnumerationBits is a budget error.
BigRat deviant_fraction_exact(const Schedule& s, int n);

/// Chebyshev bound on the deviant fraction: (sum gamma_i^2) / (total/2)^2.
BigRat chebyshev_fraction_bound(const Schedule& s, int n);

/// Exhaustive classification over the 3-class patterns ({0}, {2}, off-diagonal
/// with multiplicity 2) of the first n deterministic levels, weights out of
/// 4^n.  Used to check that every non-deviant pattern is 0-rich or 2-rich and
/// carries off-diagonal mass >= total/4.
struct PatternCensus {
  int n = 0;
  BigInt weight_total;               // 4^n
  BigInt weight_deviant;
  BigInt weight_nondeviant_not_rich; // non-deviant and neither rich flag
  BigInt weight_nondeviant_thin_offdiag;  // non-deviant with off-diagonal sum < total/4
};

PatternCensus pattern_census(const Schedule& s, int n);

/// Exact measure of the union of stage-deviance events over the first
/// `upto_stages` stages (pattern enumeration at n(upto)); the retained mass
/// of the pruned set at any depth >= k_(n(upto)), identical for every seed.
Dyadic retained_mass_exact(const DeviancePlan& plan, int upto_stages);

/// Pruned square sets F'_0 .. F'_depth: at each stage level k_(n(j)) <= depth
/// deviant squares are dropped with their descendants.  Stages beyond depth
/// are skipped; `stages_applied` (optional out) receives the count.
std::vector<SquareSet> prune(const Realization& r, const DeviancePlan& plan, int depth,
                             std::uint64_t node_budget = kDefaultNodeBudget,
                             int* stages_applied = nullptr);

}  // namespace favard
