#include <doctest.h>

#include <cmath>

#include "gcache/combinatorics.hpp"
#include "gcache/errors.hpp"
#include "gcache/scheme_params.hpp"
#include "oracles.hpp"

using namespace gcache;

TEST_CASE("subpacketization examples") {
  CHECK(subpacketization_single(100, 10) > BigInt("10000000000000"));
  CHECK(subpacketization_single(4, 0) == 1);
  CHECK(subpacketization_single(80, 4) == 1581580);
  CHECK(subpacketization_grouped(100, 5, 10) == 190);
  CHECK(subpacketization_grouped(50, 5, 15) == 120);
  CHECK(subpacketization_grouped(40, 1, 7) == subpacketization_single(40, 7));
  CHECK(subpacketization_grouped(60, 6, 6) == 10);
  CHECK_THROWS_AS(subpacketization_grouped(50, 3, 15), RoutingError);
  CHECK_THROWS_AS(subpacketization_grouped(50, 5, 12), RoutingError);
}

TEST_CASE("SystemParams floors K*gamma") {
  const auto p = SystemParams::make(10, 1, Rational(1, 3));
  CHECK(p.gamma == Rational(3, 10));
  CHECK(p.caching_gain() == 3);
  CHECK_THROWS_AS(SystemParams::make(0, 1, Rational(1, 2)), ParameterError);
  CHECK_THROWS_AS(SystemParams::make(4, 0, Rational(1, 2)), ParameterError);
  CHECK_THROWS_AS(SystemParams::make(4, 1, Rational(3, 2)), ParameterError);
  CHECK_THROWS_AS(SystemParams::make(4, 1, Rational(1, 2), BigInt(0)), ParameterError);
}

TEST_CASE("theoretical performance examples") {
  const auto p = theoretical_performance(SystemParams::make(50, 5, Rational(3, 10)));
  CHECK(p.dof == 20);
  CHECK(p.delay == Rational(7, 4));
  CHECK_FALSE(p.trivial_regime);

  const auto q = theoretical_performance(SystemParams::make(100, 5, Rational(1, 10)));
  CHECK(q.dof == 15);

  const auto z = theoretical_performance(SystemParams::make(20, 4, Rational(0)));
  CHECK(z.dof == 4);
  CHECK(z.delay == Rational(5));

  // L >= K(1-gamma): interference-free point.
  const auto tr = theoretical_performance(SystemParams::make(4, 2, Rational(1, 2)));
  CHECK(tr.trivial_regime);
  CHECK(tr.dof == 4);
  CHECK(tr.delay == Rational(1, 2));
}

TEST_CASE("delay-DoF identity over a grid") {
  for (std::int64_t K = 1; K <= 40; ++K) {
    for (std::int64_t L = 1; L <= 6; ++L) {
      for (std::int64_t t = 0; t <= K; ++t) {
        const auto params = SystemParams::make(K, L, Rational(t, K));
        const auto perf = theoretical_performance(params);
        REQUIRE(Rational(perf.dof) * perf.delay == Rational(K - t));
      }
    }
  }
}

TEST_CASE("grouped subpacketization never exceeds single") {
  for (std::int64_t K = 1; K <= 60; ++K) {
    for (std::int64_t L = 1; L <= K; ++L) {
      if (K % L) continue;
      for (std::int64_t t = 0; t <= K; t += L) {
        const BigInt g = subpacketization_grouped(K, L, t);
        const BigInt s = subpacketization_single(K, t);
        REQUIRE(g <= s);
        const bool equal_expected = L == 1 || t == 0 || t == K;
        REQUIRE((g == s) == equal_expected);
      }
    }
  }
}

TEST_CASE("Stirling sandwich (1/g)^(t/L) <= S_L <= (e/g)^(t/L)") {
  for (std::int64_t K = 2; K <= 120; ++K) {
    for (std::int64_t L : {1, 2, 3, 4, 5}) {
      if (K % L) continue;
      for (std::int64_t t = L; t < K; t += L) {
        const double lg = -std::log(static_cast<double>(t) / static_cast<double>(K));
        const double e = static_cast<double>(t) / static_cast<double>(L);
        const double log_s = log_big(subpacketization_grouped(K, L, t));
        REQUIRE(e * lg <= log_s + 1e-9);
        REQUIRE(log_s <= e * (1.0 + lg) + 1e-9);
      }
    }
  }
}

TEST_CASE("effective_K examples") {
  CHECK(effective_K(Rational(1, 20), BigInt(1000000), 1) == 60);
  CHECK(effective_K(Rational(1, 100), BigInt(1000000), 1) == 200);
  CHECK(effective_K(Rational(1, 20), binomial(640, 32), 1) == 640);
  CHECK(effective_K(Rational(1, 20), binomial(80, 4), 2, 1280) == 160);
  CHECK(effective_K(Rational(1, 20), BigInt(1), 1) == 0);
  CHECK(effective_K(Rational(0), BigInt(5), 3, 10) == 9);
  CHECK_THROWS_AS(effective_K(Rational(0), BigInt(5), 3), ParameterError);
}

TEST_CASE("effective_K matches a brute-force scan") {
  for (const auto& g : {Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(1, 10), Rational(3, 7)}) {
    for (const char* s : {"1", "10", "100", "1000", "36000", "1e6"}) {
      const BigInt s_max = parse_big(s);
      for (std::int64_t L : {1, 2, 3, 4}) {
        const std::int64_t K_max = 200;
        REQUIRE(effective_K(g, s_max, L, K_max) == oracle::effective_K_scan(g, s_max, L, K_max));
      }
    }
  }
}

TEST_CASE("effective_K(L) = min(L * effective_K(1), K)") {
  for (const auto& g : {Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(1, 3), Rational(1, 100)}) {
    for (const char* s : {"36000", "1e6", "1e9", "C(80,4)"}) {
      const BigInt s_max = parse_big(s);
      for (std::int64_t L : {1, 2, 4, 8, 16}) {
        for (std::int64_t K : {400, 1280, 3200}) {
          const std::int64_t step = L * static_cast<std::int64_t>(g.den());
          if (K % step) continue;
          const auto k1 = effective_K(g, s_max, 1, K);
          REQUIRE(effective_K(g, s_max, L, K) == std::min(L * k1, K));
        }
      }
    }
  }
}

TEST_CASE("effective gain multiplicative boost example") {
  const BigInt s = binomial(80, 4);
  const std::int64_t expected_dof[] = {5, 10, 20, 80};
  const std::int64_t Ls[] = {1, 2, 4, 16};
  for (int i = 0; i < 4; ++i) {
    const auto r = effective_gain(SystemParams::make(1280, Ls[i], Rational(1, 20), s));
    CHECK(r.effective_dof == expected_dof[i]);
    CHECK(r.effective_dof == r.effective_gain + Ls[i]);
    CHECK(r.subpacketization <= s);
  }
  const auto r16 = effective_gain(SystemParams::make(1280, 16, Rational(1, 20), s));
  CHECK(r16.effective_gain == 64);
  CHECK(r16.effective_K == 1280);
}

TEST_CASE("effective gain without cap equals the theoretical gain") {
  const auto r = effective_gain(SystemParams::make(100, 5, Rational(1, 10)));
  CHECK(r.effective_gain == 10);
  CHECK(r.effective_dof == 15);
  CHECK(r.subpacketization == 190);
  const auto big = effective_gain(SystemParams::make(100, 5, Rational(1, 10), BigInt(190)));
  CHECK(big.effective_gain == 10);
  CHECK(big.effective_K == 100);
}

TEST_CASE("GainReport invariants across sweeps") {
  for (std::int64_t K : {60, 120, 400, 1200}) {
    for (const auto& g : {Rational(1, 20), Rational(1, 10), Rational(1, 4), Rational(1, 2)}) {
      for (const char* s : {"36000", "1e6", "1e9"}) {
        for (std::int64_t L : {1, 2, 3, 4, 5, 8}) {
          const auto params = SystemParams::make(K, L, g, parse_big(s));
          const auto r = effective_gain(params);
          REQUIRE(r.effective_gain <= r.theoretical_gain);
          REQUIRE(r.effective_dof == L + r.effective_gain);
          REQUIRE(r.subpacketization <= *params.s_max);
          // Lower bound in its integer-granular form: with gamma = a/b the
          // single-antenna gain moves in steps of a.
          const double x = log_big(*params.s_max) / (1.0 - std::log(g.to_double()));
          const auto a = static_cast<std::int64_t>(g.num());
          const std::int64_t granular = a * static_cast<std::int64_t>(std::floor(x / static_cast<double>(a)));
          REQUIRE(r.effective_gain >= std::min(L * granular, params.caching_gain()));
        }
      }
    }
  }
}

TEST_CASE("dof multiplier subpacketization") {
  CHECK(dof_multiplier_subpacketization(Rational(1, 30), 3) == 435);
  CHECK(dof_multiplier_subpacketization(Rational(1, 30), 2) == 30);
  CHECK(dof_multiplier_subpacketization(Rational(1, 30), 1) == 1);
  CHECK_THROWS_AS(dof_multiplier_subpacketization(Rational(2, 5), 2), ParameterError);
}

TEST_CASE("L = K*gamma gives S_L = K/L") {
  for (std::int64_t K = 1; K <= 300; ++K) {
    for (std::int64_t L = 1; L <= K; ++L) {
      if (K % L) continue;
      REQUIRE(subpacketization_grouped(K, L, L) == K / L);
    }
  }
}

TEST_CASE("PD/LC elevated gain and PD subpacketization") {
  CHECK(pd_lc_elevated_gain(Rational(1, 20), BigInt(1000000), 2, 100000) ==
        doctest::Approx(9.22346144208289).epsilon(1e-12));
  CHECK(pd_lc_elevated_gain(Rational(1, 20), BigInt(1), 2, 1000) == 0.0);
  CHECK(pd_lc_elevated_gain(Rational(1, 20), BigInt(1000000), 2, 40) == 0.0);
  CHECK(pd_lc_elevated_gain(Rational(1, 20), BigInt(1000000), 2, 60) == 1.0);
  CHECK(pd_subpacketization(Rational(1, 20), 60) == Rational(400));
}

TEST_CASE("minimum gamma for a target gain") {
  const BigInt s(1000000);
  CHECK(min_gamma_for_gain(10, s, 1) == doctest::Approx(0.251188643150958).epsilon(1e-12));
  CHECK(min_gamma_for_gain(10, s, 2) == doctest::Approx(0.06309573444801933).epsilon(1e-12));
  double prev = 1.0;
  for (std::int64_t L = 1; L <= 8; ++L) {
    const double v = min_gamma_for_gain(10, s, L);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(min_gamma_for_gain(10, parse_big("1e300"), 1) < 1e-29);
}
