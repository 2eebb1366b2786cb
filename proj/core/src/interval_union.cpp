#include "favard/interval_union.hpp"

#include <algorithm>

#include "favard/errors.hpp"

namespace favard {
namespace {

void normalize(std::vector<std::pair<double, double>>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> merged;
  merged.reserve(v.size());
  for (const auto& iv : v) {
    if (!merged.empty() && iv.first <= merged.back().second + tol) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  v = std::move(merged);
}

}  // namespace

IntervalUnion::IntervalUnion(double merge_tolerance) : tol_(merge_tolerance) {
  if (!(tol_ >= 0)) throw Error("merge tolerance must be nonnegative");
}

void IntervalUnion::add(double lo, double hi) {
  if (!(lo <= hi)) throw Error("interval endpoints out of order");
  intervals_.emplace_back(lo, hi);
  dirty_ = true;
}

void IntervalUnion::merge() {
  if (!dirty_) return;
  normalize(intervals_, tol_);
  dirty_ = false;
}

const std::vector<std::pair<double, double>>& IntervalUnion::intervals() const {
  if (dirty_) {
    normalize(intervals_, tol_);
    dirty_ = false;
  }
  return intervals_;
}

std::size_t IntervalUnion::count() const { return intervals().size(); }

double IntervalUnion::total_length() const {
  double sum = 0;
  for (const auto& iv : intervals()) sum += iv.second - iv.first;
  return sum;
}

}  // namespace favard
