#include "gcache/memory_sharing.hpp"

#include <algorithm>

#include "gcache/combinatorics.hpp"
#include "gcache/errors.hpp"

namespace gcache {

namespace {

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

SharingPart make_part(std::int64_t K, std::int64_t K_hat, std::int64_t L, const Rational& fraction,
                      const Rational& gamma_part) {
  SharingPart part;
  part.fraction = fraction;
  part.params = SystemParams::make(K_hat, L, gamma_part);
  part.group_count = K_hat / L;
  part.redundancy = to_i64((gamma_part * Rational(K_hat) / Rational(L)).num());
  part.subpacketization = binomial(part.group_count, part.redundancy);
  part.cliques = binomial(part.group_count, part.redundancy + 1);
  part.transmitted = count_transmitted_cliques(K, K_hat, L, part.redundancy);
  part.slot_duration = fraction / Rational(part.subpacketization, 1);
  return part;
}

}  // namespace

BigInt count_transmitted_cliques(std::int64_t K, std::int64_t K_hat, std::int64_t L,
                                 std::int64_t redundancy, std::uint64_t enumeration_limit) {
  if (L < 1 || K_hat % L != 0 || K > K_hat) throw ParameterError("inconsistent phantom padding");
  const std::int64_t groups = K_hat / L;
  // Group g holds users g, g + K', ..., so it is phantom-only iff g > K.
  auto phantom_only = [&](int g) { return g > K; };
  const BigInt total = binomial(groups, redundancy + 1);
  if (total <= enumeration_limit) {
    BigInt sent = 0;
    for_each_subset(static_cast<int>(groups), static_cast<int>(redundancy + 1), [&](const Subset& chi) {
      if (!std::all_of(chi.begin(), chi.end(), phantom_only)) ++sent;
    });
    return sent;
  }
  const std::int64_t phantom_groups = std::max<std::int64_t>(0, groups - K);
  return total - binomial(phantom_groups, redundancy + 1);
}

MemorySharingPlan plan_memory_sharing(std::int64_t K, std::int64_t L, const Rational& gamma) {
  const SystemParams base = SystemParams::make(K, L, gamma);
  MemorySharingPlan plan;
  plan.K = K;
  plan.L = L;
  plan.gamma = base.gamma;
  plan.K_hat = L * ((K + L - 1) / L);

  const Rational x = plan.gamma * Rational(plan.K_hat) / Rational(L);  // K_hat*gamma / L
  const Rational step(BigInt(L), BigInt(plan.K_hat));
  plan.gamma_low = step * Rational(x.floor(), 1);
  plan.gamma_high = step * Rational(x.ceil(), 1);

  if (plan.gamma_low == plan.gamma_high) {
    plan.p = Rational(1);
    plan.parts.push_back(make_part(K, plan.K_hat, L, Rational(1), plan.gamma_low));
  } else {
    plan.p = (plan.gamma_high - plan.gamma) / (plan.gamma_high - plan.gamma_low);
    plan.parts.push_back(make_part(K, plan.K_hat, L, plan.p, plan.gamma_low));
    plan.parts.push_back(make_part(K, plan.K_hat, L, Rational(1) - plan.p, plan.gamma_high));
  }
  plan.total_subpacketization = 0;
  for (const auto& part : plan.parts) plan.total_subpacketization += part.subpacketization;

  const SharingDelay delay = memory_sharing_delay(plan);
  plan.analytic_delay = delay.analytic;
  plan.exact_delay = delay.exact;
  plan.gap_bound = dof_gap_bound(K, L, plan.gamma);
  return plan;
}

SharingDelay memory_sharing_delay(const MemorySharingPlan& plan) {
  SharingDelay d;
  const Rational K(plan.K);
  const Rational L(plan.L);
  const Rational K_hat(plan.K_hat);
  for (const auto& part : plan.parts) {
    const Rational& g = part.params.gamma;
    const Rational uncached = K * part.fraction * (Rational(1) - g);
    d.analytic += uncached / (L + K_hat * g);
    d.exact += Rational(part.transmitted, 1) * part.slot_duration;
  }
  return d;
}

Rational dof_gap_bound(std::int64_t K, std::int64_t L, const Rational& gamma) {
  const SystemParams params = SystemParams::make(K, L, gamma);
  const std::int64_t t = params.caching_gain();
  if (t <= L) return Rational(2);
  const std::int64_t q = (t + L - 1) / L - 1;
  return Rational(q + 1, q);
}

Rational realized_dof(const MemorySharingPlan& plan) {
  if (plan.exact_delay == Rational(0)) return Rational(0);
  return Rational(plan.K) * (Rational(1) - plan.gamma) / plan.exact_delay;
}

SubpacketizationBounds subpacketization_bounds(const MemorySharingPlan& plan) {
  SubpacketizationBounds b;
  const std::int64_t groups = (plan.K + plan.L - 1) / plan.L;
  const Rational per_group = plan.gamma * Rational(plan.K) / Rational(plan.L);
  const BigInt worst = std::max(binomial(groups, to_i64(per_group.ceil()) + 1),
                                binomial(groups, to_i64(per_group.floor()) + 1));
  b.k_factor_bound = BigInt(plan.K) * worst;
  b.l_factor_bound = BigInt(plan.L) * worst;
  b.within_k_bound = plan.total_subpacketization <= b.k_factor_bound;
  b.within_l_bound = plan.total_subpacketization <= b.l_factor_bound;
  b.applicable = plan.gamma < Rational(1);
  return b;
}

GapCheck check_gap(const MemorySharingPlan& plan) {
  GapCheck c;
  c.gap_bound = plan.gap_bound;
  c.target_dof = Rational(theoretical_performance(SystemParams::make(plan.K, plan.L, plan.gamma)).dof);
  c.nothing_to_send = plan.exact_delay == Rational(0);
  c.realized_dof = realized_dof(plan);
  c.within_bound = c.nothing_to_send || c.realized_dof * c.gap_bound >= c.target_dof;
  return c;
}

}  // namespace gcache
