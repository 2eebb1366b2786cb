#include "favard/realization.hpp"

#include "favard/errors.hpp"

namespace favard {
namespace {

constexpr std::uint64_t kRootSalt = 0x243f6a8885a308d3ULL;    // pi digits
constexpr std::uint64_t kChoiceSalt = 0x13198a2e03707344ULL;  // pi digits

}  // namespace

Realization::Realization(const Schedule& schedule, std::uint64_t seed)
    : schedule_(&schedule), seed_(seed) {}

std::uint64_t Realization::root_state() const { return mix64(seed_ ^ kRootSalt); }

std::uint64_t Realization::child_state(std::uint64_t state, std::uint8_t digit) {
  return mix64(state ^ (0x9e3779b97f4a7c15ULL * (digit + 1)));
}

std::uint8_t Realization::choice(std::uint64_t state) {
  return static_cast<std::uint8_t>(mix64(state ^ kChoiceSalt) & 3);
}

bool Realization::contains(const Address& a) const {
  if (a.level() > schedule_->depth()) throw Error("address deeper than the schedule");
  std::uint64_t state = root_state();
  for (int k = 1; k <= a.level(); ++k) {
    const std::uint8_t d = a.digit(k);
    if (schedule_->step(k) == StepKind::Random && d != choice(state)) return false;
    state = child_state(state, d);
  }
  return true;
}

std::vector<Address> Realization::children(const Address& a, std::uint64_t state) const {
  const int k = a.level() + 1;
  if (schedule_->step(k) == StepKind::Deterministic) {
    return {a.child(0), a.child(1), a.child(2), a.child(3)};
  }
  return {a.child(choice(state))};
}

std::vector<SquareSet> Realization::build(int depth, std::uint64_t node_budget) const {
  if (depth < 0 || depth > schedule_->depth()) throw Error("build depth exceeds the schedule");
  for (int n = 0; n <= depth; ++n) {
    const int a = schedule_->alpha(n);
    if (a > 31 || (std::uint64_t{1} << (2 * a)) > node_budget) {
      throw BudgetError("eager build would exceed the node budget of " +
                            std::to_string(node_budget) + " squares at level " + std::to_string(n),
                        n);
    }
  }

  std::vector<SquareSet> levels;
  levels.reserve(static_cast<std::size_t>(depth) + 1);
  std::vector<Address> addrs{Address{}};
  std::vector<std::uint64_t> states{root_state()};
  levels.emplace_back(0, addrs);

  for (int k = 1; k <= depth; ++k) {
    const bool det = schedule_->step(k) == StepKind::Deterministic;
    std::vector<Address> next;
    std::vector<std::uint64_t> next_states;
    next.reserve(addrs.size() * (det ? 4 : 1));
    next_states.reserve(next.capacity());
    for (std::size_t i = 0; i < addrs.size(); ++i) {
      if (det) {
        for (std::uint8_t d = 0; d < 4; ++d) {
          next.push_back(addrs[i].child(d));
          next_states.push_back(child_state(states[i], d));
        }
      } else {
        const std::uint8_t d = choice(states[i]);
        next.push_back(addrs[i].child(d));
        next_states.push_back(child_state(states[i], d));
      }
    }
    addrs = std::move(next);
    states = std::move(next_states);
    levels.emplace_back(k, addrs);  // children of sorted parents stay sorted
  }
  return levels;
}

}  // namespace favard
