#pragma once

#include <string>
#include <vector>

#include "favard/address.hpp"
#include "favard/deviance.hpp"
#include "favard/dyadic.hpp"
#include "favard/gauge.hpp"
#include "favard/schedule.hpp"

namespace favard {

/// Natural measure of one retained level-n square: 4^(-alpha_n).
Dyadic square_mass(const Schedule& s, int n);

/// Total mass of a square set at its level (count * 4^(-alpha)); equals 1 for
/// unpruned builds at every level.
Dyadic mass_of(const Schedule& s, const SquareSet& fs);

struct MassCheckReport {
  int depth = 0;
  bool exact = false;
  /// Square-level two-sided check: phi(2^-n) <= 4^(-alpha_n) <= 4 phi(2^-n).
  std::vector<int> violations;
  /// Ball constant implied for the mass distribution bound mu(B_r) <= C1 phi(r):
  /// 4 from the square inequality times 9 level-n squares a radius-2^-n ball
  /// can meet.
  int ball_constant = 36;
  bool pass() const { return violations.empty(); }
};

/// Verifies the two-sided envelope at every level n <= depth, exactly when
/// the gauge has exact values.
MassCheckReport mass_distribution_check(const GaugeSpec& g, const Schedule& s, int depth);

/// Exact retained mass of pruned level sets at their deepest level.
Dyadic retained_mass(const Schedule& s, const std::vector<SquareSet>& pruned_levels);

}  // namespace favard
