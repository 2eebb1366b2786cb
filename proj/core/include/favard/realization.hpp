#pragma once

#include <cstdint>
#include <vector>

#include "favard/address.hpp"
#include "favard/schedule.hpp"

namespace favard {

/// 64-bit finalizer (splitmix64 style): bijective avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` under a master seed; stable across runs and
/// independent of evaluation order.
constexpr std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x6a09e667f3bcc909ULL));
}

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 26;

/// One realization of the random construction, determined by a schedule and
/// a seed.  Randomness is counter-based: every address prefix carries a hash
/// state, and the uniform child choice at a random level is a pure function
/// of that state.  Membership of any square can therefore be decided from
/// its digits alone, and eager and lazy traversals agree exactly.
///
/// Holds a pointer to the schedule; the caller keeps it alive.
class Realization {
 public:
  Realization(const Schedule& schedule, std::uint64_t seed);

  const Schedule& schedule() const { return *schedule_; }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t root_state() const;
  static std::uint64_t child_state(std::uint64_t state, std::uint8_t digit);

  /// The digit kept at a random step below the prefix carrying `state`.
  static std::uint8_t choice(std::uint64_t state);

  /// Whether the addressed square survives to its level.
  bool contains(const Address& a) const;

  /// All surviving squares per level, F_0 .. F_depth.  Throws BudgetError
  /// before materializing any level whose square count would exceed the
  /// budget (counts are schedule-determined, not realization-dependent).
  std::vector<SquareSet> build(int depth, std::uint64_t node_budget = kDefaultNodeBudget) const;

  /// Children of one surviving square (all four at a deterministic step,
  /// the chosen one at a random step).
  std::vector<Address> children(const Address& a, std::uint64_t state) const;

 private:
  const Schedule* schedule_;
  std::uint64_t seed_;
};

}  // namespace favard
