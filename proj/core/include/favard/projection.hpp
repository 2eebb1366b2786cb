#pragma once

#include <cstdint>

#include "favard/address.hpp"
#include "favard/interval_union.hpp"
#include "favard/line.hpp"

namespace favard {

/// Whether the line meets the closed square of `a`; exact corner-sign test.
bool line_hits_square(const Line& l, const Address& a);

/// Number of level-`level` dyadic squares the line meets, counted exactly by
/// expanding only intersected children from the root.  For vertex-safe lines
/// this is at most 2^(level+1).
std::uint64_t count_intersected(const Line& l, int level);

/// Projection of a square set onto the direction u(theta): the union of the
/// intervals [min, max] of corner dot products, per square.  Values are
/// doubles; adjacent intervals are merged with the given tolerance.
IntervalUnion project_squares(const SquareSet& fs, double theta,
                              double merge_tolerance = 1e-12);

double projection_length(const SquareSet& fs, double theta,
                         double merge_tolerance = 1e-12);

/// Offset range of the unit square's projection onto u(theta):
/// [min, max] over the four corners of p . u(theta).
std::pair<double, double> projection_range(double theta);

}  // namespace favard
