#include "favard/deviance.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "favard/errors.hpp"

namespace favard {
namespace {

/// gamma_i rescaled to integers by the common power of two
/// 2^e, e = max_i (2i - k_i): scaled_i = 2^(k_i - 2i + e).
struct ScaledGammas {
  std::vector<BigInt> g;       // g[i-1] = scaled gamma_i
  std::vector<BigInt> prefix;  // prefix[i] = g_1 + ... + g_i
};

ScaledGammas scaled_gammas(const Schedule& s, int n) {
  std::int64_t e = 0;
  for (int i = 1; i <= n; ++i) {
    e = std::max(e, 2 * static_cast<std::int64_t>(i) - s.det_level(i));
  }
  ScaledGammas sg;
  sg.g.reserve(static_cast<std::size_t>(n));
  sg.prefix.reserve(static_cast<std::size_t>(n) + 1);
  sg.prefix.push_back(BigInt(0));
  for (int i = 1; i <= n; ++i) {
    sg.g.push_back(pow2_int(s.det_level(i) - 2 * static_cast<std::int64_t>(i) + e));
    sg.prefix.push_back(sg.prefix.back() + sg.g.back());
  }
  return sg;
}

bool deviant_scaled(const BigInt& s4_minus_2t_abs, const BigInt& total) {
  return s4_minus_2t_abs > total;
}

BigInt abs_diff_4s_2t(const BigInt& s, const BigInt& total) {
  BigInt d = (s << 2) - (total << 1);
  if (d < 0) d = -d;
  return d;
}

void check_index(const Schedule& s, int n, const char* what) {
  if (n < 1 || n > s.det_count()) {
    throw Error(std::string(what) + ": index " + std::to_string(n) + " outside the " +
                std::to_string(s.det_count()) + " deterministic steps of the schedule");
  }
}

}  // namespace

ScoreBreakdown score(const Schedule& s, const Address& a, int n) {
  check_index(s, n, "score");
  if (a.level() < s.det_level(n)) {
    throw Error("score: address of level " + std::to_string(a.level()) +
                " too short to read digit at level " + std::to_string(s.det_level(n)));
  }
  ScoreBreakdown b;
  b.n = n;
  for (int i = 1; i <= n; ++i) {
    const std::uint8_t d = a.digit(s.det_level(i));
    if (d == 0) b.sum0 += s.gamma(i);
    if (d == 2) b.sum2 += s.gamma(i);
  }
  b.score = b.sum0 + b.sum2;
  b.total = s.gamma_prefix(n);
  b.deviant = abs(b.score.shifted(2) - b.total.shifted(1)) > b.total;
  b.rich0 = b.sum0.shifted(3) >= b.total;
  b.rich2 = b.sum2.shifted(3) >= b.total;
  return b;
}

bool is_deviant(const Schedule& s, const Address& a, int n) { return score(s, a, n).deviant; }

DeviancePlan::DeviancePlan(const Schedule& s, int requested_stages,
                           std::vector<DevianceStage> stages)
    : schedule_(&s), requested_(requested_stages), stages_(std::move(stages)), c2_(s.c2()) {}

std::string DeviancePlan::note() const {
  if (!truncated()) return "";
  return "gamma mass within the schedule depth funds " + std::to_string(stage_count()) + " of " +
         std::to_string(requested_) +
         " requested pruning stages; the remaining thresholds exceed the whole gamma sum "
         "(summable-series regime, where projections keep positive length without pruning)";
}

Dyadic DeviancePlan::retained_mass_lower_bound(int upto_stages) const {
  const int m = std::min(upto_stages, stage_count());
  Dyadic bound(1);
  for (int j = 1; j <= m; ++j) bound -= Dyadic::pow2(-(j + 1));
  return bound;
}

DeviancePlan pruning_levels(const Schedule& s, int stage_count) {
  if (stage_count < 0) throw Error("pruning stage count must be >= 0");
  std::vector<DevianceStage> stages;
  int from = 1;
  for (int j = 1; j <= stage_count; ++j) {
    const Dyadic threshold = s.c2().shifted(j + 1);
    int found = 0;
    for (int n = from; n <= s.det_count(); ++n) {
      if (s.gamma_prefix(n) > threshold) {
        found = n;
        break;
      }
    }
    if (found == 0) break;
    stages.push_back(DevianceStage{j, found, s.det_level(found), s.gamma_prefix(found)});
    from = found + 1;  // keeps stage indices strictly increasing
  }
  return DeviancePlan(s, stage_count, std::move(stages));
}

BigRat deviant_fraction_exact(const Schedule& s, int n) {
  check_index(s, n, "deviant_fraction_exact");
  if (n > kMaxEnumerationBits) {
    throw BudgetError("deviance enumeration over 2^" + std::to_string(n) +
                          " sign patterns exceeds the enumeration budget",
                      n);
  }
  const ScaledGammas sg = scaled_gammas(s, n);
  const BigInt& total = sg.prefix[static_cast<std::size_t>(n)];

  std::uint64_t count = 0;
  BigInt sum = 0;
  if (deviant_scaled(abs_diff_4s_2t(sum, total), total)) ++count;  // empty pattern
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t idx = 1; idx < limit; ++idx) {
    const int bit = std::countr_zero(idx);  // Gray-code neighbor flips this bit
    const std::uint64_t gray = idx ^ (idx >> 1);
    if ((gray >> bit) & 1) {
      sum += sg.g[static_cast<std::size_t>(bit)];
    } else {
      sum -= sg.g[static_cast<std::size_t>(bit)];
    }
    if (deviant_scaled(abs_diff_4s_2t(sum, total), total)) ++count;
  }
  return BigRat(BigInt(count), pow2_int(n));
}

BigRat chebyshev_fraction_bound(const Schedule& s, int n) {
  check_index(s, n, "chebyshev_fraction_bound");
  Dyadic sq;
  for (int i = 1; i <= n; ++i) sq += s.gamma(i) * s.gamma(i);
  const Dyadic total = s.gamma_prefix(n);
  return (sq.to_rational() * 4) / (total.to_rational() * total.to_rational());
}

PatternCensus pattern_census(const Schedule& s, int n) {
  check_index(s, n, "pattern_census");
  if (n > 16) {
    throw BudgetError("3-class enumeration over 3^" + std::to_string(n) +
                          " patterns exceeds the enumeration budget",
                      n);
  }
  const ScaledGammas sg = scaled_gammas(s, n);
  const BigInt& total = sg.prefix[static_cast<std::size_t>(n)];

  PatternCensus census;
  census.n = n;
  census.weight_total = pow2_int(2 * n);

  std::function<void(int, BigInt, BigInt, int)> walk = [&](int i, BigInt sum0, BigInt sum2,
                                                           int sides) {
    if (i == n) {
      const BigInt w = pow2_int(sides);  // each off-diagonal slot covers two digits
      const BigInt score = sum0 + sum2;
      if (deviant_scaled(abs_diff_4s_2t(score, total), total)) {
        census.weight_deviant += w;
        return;
      }
      const bool rich0 = (sum0 << 3) >= total;
      const bool rich2 = (sum2 << 3) >= total;
      if (!rich0 && !rich2) census.weight_nondeviant_not_rich += w;
      const BigInt offdiag = total - score;
      if ((offdiag << 2) < total) census.weight_nondeviant_thin_offdiag += w;
      return;
    }
    const BigInt& g = sg.g[static_cast<std::size_t>(i)];
    walk(i + 1, sum0 + g, sum2, sides);
    walk(i + 1, sum0, sum2 + g, sides);
    walk(i + 1, sum0, sum2, sides + 1);
  };
  walk(0, BigInt(0), BigInt(0), 0);
  return census;
}

Dyadic retained_mass_exact(const DeviancePlan& plan, int upto_stages) {
  const int u = std::min(upto_stages, plan.stage_count());
  if (u <= 0) return Dyadic(1);
  const int n_max = plan.stage(u).n;
  if (n_max > kMaxEnumerationBits) {
    throw BudgetError("retained-mass enumeration over 2^" + std::to_string(n_max) +
                          " sign patterns exceeds the enumeration budget",
                      n_max);
  }
  const Schedule& s = plan.schedule();
  const ScaledGammas sg = scaled_gammas(s, n_max);

  std::vector<BigInt> stage_total(static_cast<std::size_t>(u));
  std::vector<int> stage_n(static_cast<std::size_t>(u));
  for (int j = 1; j <= u; ++j) {
    stage_n[static_cast<std::size_t>(j - 1)] = plan.stage(j).n;
    stage_total[static_cast<std::size_t>(j - 1)] =
        sg.prefix[static_cast<std::size_t>(plan.stage(j).n)];
  }

  std::vector<BigInt> stage_sum(static_cast<std::size_t>(u), BigInt(0));
  auto removed = [&]() {
    for (std::size_t j = 0; j < stage_sum.size(); ++j) {
      if (deviant_scaled(abs_diff_4s_2t(stage_sum[j], stage_total[j]), stage_total[j])) {
        return true;
      }
    }
    return false;
  };

  std::uint64_t removed_count = removed() ? 1 : 0;
  const std::uint64_t limit = std::uint64_t{1} << n_max;
  for (std::uint64_t idx = 1; idx < limit; ++idx) {
    const int bit = std::countr_zero(idx);
    const std::uint64_t gray = idx ^ (idx >> 1);
    const bool add = (gray >> bit) & 1;
    for (std::size_t j = 0; j < stage_sum.size(); ++j) {
      if (stage_n[j] >= bit + 1) {
        if (add) {
          stage_sum[j] += sg.g[static_cast<std::size_t>(bit)];
        } else {
          stage_sum[j] -= sg.g[static_cast<std::size_t>(bit)];
        }
      }
    }
    if (removed()) ++removed_count;
  }
  return Dyadic(pow2_int(n_max) - removed_count, -n_max);
}

std::vector<SquareSet> prune(const Realization& r, const DeviancePlan& plan, int depth,
                             std::uint64_t node_budget, int* stages_applied) {
  const Schedule& s = r.schedule();
  if (depth < 0 || depth > s.depth()) throw Error("prune depth exceeds the schedule");
  for (int n = 0; n <= depth; ++n) {
    const int a = s.alpha(n);
    if (a > 31 || (std::uint64_t{1} << (2 * a)) > node_budget) {
      throw BudgetError("pruned build would exceed the node budget of " +
                            std::to_string(node_budget) + " squares at level " + std::to_string(n),
                        n);
    }
  }

  std::vector<SquareSet> levels;
  levels.reserve(static_cast<std::size_t>(depth) + 1);
  std::vector<Address> addrs{Address{}};
  std::vector<std::uint64_t> states{r.root_state()};
  levels.emplace_back(0, addrs);

  int next_stage = 1;
  int applied = 0;
  for (int k = 1; k <= depth; ++k) {
    const bool det = s.step(k) == StepKind::Deterministic;
    std::vector<Address> next;
    std::vector<std::uint64_t> next_states;
    next.reserve(addrs.size() * (det ? 4 : 1));
    next_states.reserve(next.capacity());
    for (std::size_t i = 0; i < addrs.size(); ++i) {
      if (det) {
        for (std::uint8_t d = 0; d < 4; ++d) {
          next.push_back(addrs[i].child(d));
          next_states.push_back(Realization::child_state(states[i], d));
        }
      } else {
        const std::uint8_t d = Realization::choice(states[i]);
        next.push_back(addrs[i].child(d));
        next_states.push_back(Realization::child_state(states[i], d));
      }
    }

    while (next_stage <= plan.stage_count() && plan.stage(next_stage).level == k) {
      const int n = plan.stage(next_stage).n;
      std::vector<Address> kept;
      std::vector<std::uint64_t> kept_states;
      kept.reserve(next.size());
      kept_states.reserve(next.size());
      for (std::size_t i = 0; i < next.size(); ++i) {
        if (!is_deviant(s, next[i], n)) {
          kept.push_back(std::move(next[i]));
          kept_states.push_back(next_states[i]);
        }
      }
      next = std::move(kept);
      next_states = std::move(kept_states);
      ++next_stage;
      ++applied;
    }

    addrs = std::move(next);
    states = std::move(next_states);
    levels.emplace_back(k, addrs);
  }
  if (stages_applied) *stages_applied = applied;
  return levels;
}

}  // namespace favard
