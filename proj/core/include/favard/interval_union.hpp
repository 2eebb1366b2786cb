#pragma once

#include <utility>
#include <vector>

namespace favard {

/// Union of closed intervals on the real line, kept as a sorted disjoint
/// list.  Intervals that touch or overlap (within merge_tolerance) merge;
/// merging is idempotent.
class IntervalUnion {
 public:
  explicit IntervalUnion(double merge_tolerance = 0.0);

  void add(double lo, double hi);
  void merge();  // normalize now; add() defers it

  const std::vector<std::pair<double, double>>& intervals() const;
  std::size_t count() const;
  double total_length() const;

 private:
  double tol_;
  mutable std::vector<std::pair<double, double>> intervals_;
  mutable bool dirty_ = false;
};

}  // namespace favard
