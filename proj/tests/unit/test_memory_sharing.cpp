#include <doctest.h>

#include "gcache/combinatorics.hpp"
#include "gcache/memory_sharing.hpp"
#include "gcache/scheme_params.hpp"
#include "oracles.hpp"

using namespace gcache;

namespace {

// Brute-force exact delay: enumerate every clique of every part on the
// phantom-padded system, keep those reaching a real user, and charge each
// its slot of the part.
Rational brute_force_delay(std::int64_t K, std::int64_t L, const Rational& gamma) {
  const std::int64_t K_hat = L * ((K + L - 1) / L);
  const std::int64_t Kp = K_hat / L;
  const Rational x = gamma * Rational(K_hat) / Rational(L);
  const BigInt lo = x.floor();
  const BigInt hi = x.ceil();
  std::vector<std::pair<std::int64_t, Rational>> parts;  // (redundancy, fraction)
  if (lo == hi) {
    parts.emplace_back(static_cast<std::int64_t>(lo), Rational(1));
  } else {
    const Rational g_lo = Rational(lo * L, BigInt(K_hat));
    const Rational g_hi = Rational(hi * L, BigInt(K_hat));
    const Rational p = (g_hi - gamma) / (g_hi - g_lo);
    parts.emplace_back(static_cast<std::int64_t>(lo), p);
    parts.emplace_back(static_cast<std::int64_t>(hi), Rational(1) - p);
  }
  Rational delay(0);
  for (const auto& [r, frac] : parts) {
    if (frac == Rational(0) || r >= Kp) continue;
    std::int64_t sent = 0;
    for (const auto& chi : oracle::bitmask_subsets(static_cast<int>(Kp), static_cast<int>(r + 1))) {
      bool real = false;
      for (int g : chi) {
        for (std::int64_t l = 0; l < L; ++l) real = real || (l * Kp + g <= K);
      }
      if (real) ++sent;
    }
    delay += frac * Rational(sent) / Rational(oracle::pascal(static_cast<int>(Kp), static_cast<int>(r)));
  }
  return delay;
}

}  // namespace

TEST_CASE("worked memory-sharing example") {
  const auto plan = plan_memory_sharing(7, 2, Rational(2, 7));
  CHECK(plan.K_hat == 8);
  CHECK(plan.gamma_low == Rational(1, 4));
  CHECK(plan.gamma_high == Rational(1, 2));
  CHECK(plan.p == Rational(6, 7));
  REQUIRE(plan.parts.size() == 2);
  CHECK(plan.parts[0].subpacketization == 4);
  CHECK(plan.parts[1].subpacketization == 6);
  CHECK(plan.parts[0].cliques == 6);
  CHECK(plan.parts[1].cliques == 4);
  CHECK(plan.parts[0].slot_duration == Rational(3, 14));
  CHECK(plan.parts[1].slot_duration == Rational(1, 42));
  CHECK(plan.total_subpacketization == 10);
  CHECK(plan.exact_delay == Rational(29, 21));
  CHECK(plan.analytic_delay == Rational(29, 24));
  CHECK(plan.gap_bound == Rational(2));
  CHECK(realized_dof(plan) == Rational(105, 29));
  const auto gap = check_gap(plan);
  CHECK(gap.within_bound);
  const auto d = memory_sharing_delay(plan);
  CHECK(d.exact == Rational(29, 21));
  CHECK(d.analytic == Rational(29, 24));
}

TEST_CASE("divisible parameters give a degenerate plan") {
  const auto plan = plan_memory_sharing(50, 5, Rational(3, 10));
  CHECK(plan.degenerate());
  CHECK(plan.p == Rational(1));
  CHECK(plan.total_subpacketization == 120);
  CHECK(plan.exact_delay == Rational(7, 4));
  CHECK(plan.analytic_delay == Rational(7, 4));
  CHECK(realized_dof(plan) == Rational(20));
}

TEST_CASE("no caching") {
  const auto plan = plan_memory_sharing(9, 3, Rational(0));
  CHECK(plan.degenerate());
  CHECK(plan.exact_delay == Rational(3));
  CHECK(realized_dof(plan) == Rational(3));
}

TEST_CASE("gap bound values") {
  CHECK(dof_gap_bound(7, 2, Rational(2, 7)) == Rational(2));
  CHECK(dof_gap_bound(10, 4, Rational(4, 10)) == Rational(2));
  // K*gamma = 7 with L = 2: q = 3, bound 4/3.
  CHECK(dof_gap_bound(20, 2, Rational(7, 20)) == Rational(4, 3));
  CHECK(dof_gap_bound(20, 2, Rational(6, 20)) == Rational(3, 2));
}

TEST_CASE("plan invariants and brute-force delay over a sweep") {
  for (std::int64_t K = 1; K <= 24; ++K) {
    for (std::int64_t L = 1; L <= 6; ++L) {
      for (std::int64_t t = 0; t <= K; ++t) {
        const Rational gamma(t, K);
        const auto plan = plan_memory_sharing(K, L, gamma);
        REQUIRE(plan.K_hat == L * ((K + L - 1) / L));
        REQUIRE(plan.gamma_low <= gamma);
        REQUIRE(gamma <= plan.gamma_high);
        REQUIRE(plan.p >= Rational(0));
        REQUIRE(plan.p <= Rational(1));
        REQUIRE((plan.gamma_low * Rational(plan.K_hat) / Rational(L)).is_integer());
        REQUIRE((plan.gamma_high * Rational(plan.K_hat) / Rational(L)).is_integer());
        if (!plan.degenerate()) {
          REQUIRE(plan.p * plan.gamma_low + (Rational(1) - plan.p) * plan.gamma_high == gamma);
          if (plan.p != Rational(0)) REQUIRE(plan.p >= Rational(1, K));
        }
        REQUIRE(plan.exact_delay == brute_force_delay(K, L, gamma));
        REQUIRE(count_transmitted_cliques(K, plan.K_hat, L, plan.parts.front().redundancy, 0) ==
                count_transmitted_cliques(K, plan.K_hat, L, plan.parts.front().redundancy));
        const auto bounds = subpacketization_bounds(plan);
        REQUIRE(bounds.applicable == (t < K));
        if (bounds.applicable) REQUIRE(bounds.within_k_bound);
        const auto gap = check_gap(plan);
        REQUIRE((gap.nothing_to_send || gap.within_bound));
      }
    }
  }
}
