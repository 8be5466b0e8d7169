#include <doctest.h>

#include <cmath>
#include <numeric>

#include <tuple>

#include "gcache/channel.hpp"
#include "gcache/delivery.hpp"
#include "gcache/errors.hpp"
#include "gcache/placement.hpp"

using namespace gcache;

namespace {

std::vector<int> cyclic_requests(int K, int N) {
  std::vector<int> r(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) r[static_cast<std::size_t>(k)] = 1 + k % N;
  return r;
}

}  // namespace

TEST_CASE("channel draws are deterministic per seed") {
  const auto a = draw_channel(4, 2, 7);
  const auto b = draw_channel(4, 2, 7);
  const auto c = draw_channel(4, 2, 8);
  CHECK(a.H == b.H);
  CHECK(a.H != c.H);
  CHECK(a.H.rows() == 4);
  CHECK(a.H.cols() == 2);
}

TEST_CASE("channel entries have unit mean power") {
  const auto ch = draw_channel(1000, 100, 99);
  const double mean = ch.H.cwiseAbs2().mean();
  CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(ch.H.mean()) < 0.02);
}

TEST_CASE("derive_seed separates streams and counters") {
  CHECK(derive_seed(1, SeedStream::kChannel, 0) != derive_seed(1, SeedStream::kChannel, 1));
  CHECK(derive_seed(1, SeedStream::kChannel, 0) != derive_seed(1, SeedStream::kNoise, 0));
  CHECK(derive_seed(1, SeedStream::kChannel, 0) != derive_seed(2, SeedStream::kChannel, 0));
  CHECK(derive_seed(5, SeedStream::kPayload, 3) == derive_seed(5, SeedStream::kPayload, 3));
}

TEST_CASE("noise power from SNR") {
  CHECK(noise_power_from_snr_db(0.0) == doctest::Approx(1.0));
  CHECK(noise_power_from_snr_db(40.0) == doctest::Approx(1e-4));
}

TEST_CASE("zero-forcing precoders") {
  SUBCASE("scalar channel") {
    CMatrix h(1, 1);
    h(0, 0) = Complex(0.3, -2.0);
    const CMatrix v = zero_forcing_precoder(h);
    CHECK(std::abs(std::abs(v(0, 0)) - 1.0) < 1e-15);
  }
  SUBCASE("identity channel gives the standard basis") {
    const CMatrix v = zero_forcing_precoder(CMatrix::Identity(3, 3));
    CHECK((v - CMatrix::Identity(3, 3)).norm() < 1e-15);
  }
  SUBCASE("random 5x5 nulls all 20 cross terms") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto ch = draw_channel(5, 5, seed);
      const CMatrix v = zero_forcing_precoder(ch.H);
      for (int k = 0; k < 5; ++k) {
        REQUIRE(std::abs(v.col(k).norm() - 1.0) < 1e-12);
        for (int i = 0; i < 5; ++i) {
          if (i == k) continue;
          REQUIRE(std::abs((ch.H.row(i) * v.col(k))(0, 0)) <= 1e-10 * ch.H.row(i).norm());
        }
      }
    }
  }
  SUBCASE("singular channel is rejected") {
    CMatrix h(2, 2);
    h << Complex(1, 0), Complex(2, 0), Complex(2, 0), Complex(4, 0);
    CHECK_THROWS_AS(zero_forcing_precoder(h), ChannelDegenerateError);
  }
}

TEST_CASE("precoder set residuals on a layout") {
  const auto layout = build_placement(50, 5, Rational(3, 10), 1);
  const auto ch = draw_channel(50, 5, 3);
  const auto pre = compute_precoders(ch, layout);
  for (int g = 1; g <= 10; ++g) CHECK(pre.has_group(g));
  CHECK(max_zf_residual(ch, layout, pre) <= kZfTolerance);
}

TEST_CASE("transmission is linear in the payload") {
  const auto layout = build_placement(50, 5, Rational(3, 10), 1);
  const auto ch = draw_channel(50, 5, 3);
  const auto pre = compute_precoders(ch, layout);
  const auto plan = mn_delivery_cliques(10, Rational(3, 10));
  const std::vector<int> req(50, 1);
  PayloadTable payloads(1, layout.subpacketization(), 11);
  const CVector x = build_transmission(plan.cliques.front(), layout, req, payloads, pre);
  CHECK(x.size() == 5);
  CHECK(x.norm() > 0.0);

  // Sum of the per-group blocks (H^{G_g})^{-1}-style columns.
  CVector manual = CVector::Zero(5);
  const auto& clique = plan.cliques.front();
  for (std::size_t i = 0; i < clique.groups.size(); ++i) {
    const int g = clique.groups[i];
    for (int p = 0; p < 5; ++p) manual += payloads.symbol(1, clique.subfiles[i]) * pre.group(g).col(p);
  }
  CHECK((x - manual).norm() < 1e-12);

  payloads.clear();
  CHECK(build_transmission(plan.cliques.front(), layout, req, payloads, pre).norm() == 0.0);
}

TEST_CASE("user caches refuse uncached subfiles") {
  const auto layout = build_placement(8, 2, Rational(1, 4), 1);
  const PayloadTable payloads(1, layout.subpacketization(), 1);
  const UserCache cache(payloads, layout, 1);
  CHECK_NOTHROW((void)cache.symbol(1, layout.per_group_cache[0].front()));
  std::size_t foreign = 0;
  while (layout.group_caches(1, foreign)) ++foreign;
  CHECK_THROWS_AS((void)cache.symbol(1, foreign), InvariantError);
}

TEST_CASE("worked example end to end over 10 seeds") {
  const auto req = cyclic_requests(50, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rep = run_delivery(50, 5, Rational(3, 10), 3, req, seed);
    REQUIRE(rep.transmissions == 210);
    REQUIRE(rep.subpacketization == 120);
    REQUIRE(rep.measured_delay == Rational(7, 4));
    REQUIRE(rep.achieved_dof == Rational(20));
    REQUIRE(rep.complete);
    REQUIRE(rep.max_error <= 1e-9);
    REQUIRE(rep.max_zf_residual <= kZfTolerance);
    REQUIRE(rep.passed(1e-9));
  }
}

TEST_CASE("small delivery cases") {
  SUBCASE("two groups of two") {
    const std::vector<int> req{1, 2, 3, 4};
    const auto rep = run_delivery(4, 2, Rational(1, 2), 4, req, 5);
    CHECK(rep.transmissions == 1);
    CHECK(rep.measured_delay == Rational(1, 2));
    CHECK(rep.achieved_dof == Rational(4));
    CHECK(rep.passed(1e-9));
  }
  SUBCASE("no caching, single group") {
    const std::vector<int> req{1, 2};
    const auto rep = run_delivery(2, 2, Rational(0), 2, req, 5);
    CHECK(rep.transmissions == 1);
    CHECK(rep.achieved_dof == Rational(2));
    CHECK(rep.passed(1e-9));
  }
  SUBCASE("identical requests") {
    const std::vector<int> req(12, 2);
    const auto rep = run_delivery(12, 3, Rational(1, 2), 2, req, 9);
    CHECK(rep.measured_delay == Rational(6, 9));
    CHECK(rep.passed(1e-9));
  }
}

TEST_CASE("delivery is deterministic and independent of worker count") {
  const auto req = cyclic_requests(24, 4);
  DeliveryOptions one;
  DeliveryOptions many;
  many.workers = 4;
  const auto a = run_delivery(24, 3, Rational(3, 8), 4, req, 42, one);
  const auto b = run_delivery(24, 3, Rational(3, 8), 4, req, 42, many);
  const auto c = run_delivery(24, 3, Rational(3, 8), 4, req, 42, one);
  CHECK(a == b);
  CHECK(a == c);
  const auto d = run_delivery(24, 3, Rational(3, 8), 4, req, 43, one);
  CHECK_FALSE(a == d);
}

TEST_CASE("generated cliques match the explicit plan") {
  for (const auto& [K, L, gamma] : {std::tuple{24, 3, Rational(3, 8)}, std::tuple{12, 1, Rational(5, 12)},
                                    std::tuple{10, 2, Rational(1)}, std::tuple{9, 3, Rational(0)}}) {
    const auto layout = build_placement(K, L, gamma, K);
    const auto plan = mn_delivery_cliques(layout.group_count, gamma);
    std::vector<int> req(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) req[static_cast<std::size_t>(k - 1)] = k;
    for (unsigned workers : {1u, 3u}) {
      DeliveryOptions opts;
      opts.workers = workers;
      const auto model = full_array_model(L, K);
      CHECK(run_delivery(layout, model, req, 5, opts) == run_delivery(layout, plan, model, req, 5, opts));
    }
  }
}

TEST_CASE("frozen channel also decodes") {
  const auto req = cyclic_requests(20, 2);
  DeliveryOptions opts;
  opts.freeze_channel = true;
  const auto rep = run_delivery(20, 4, Rational(2, 5), 2, req, 3, opts);
  CHECK(rep.passed(1e-9));
}

TEST_CASE("errors scale with noise amplitude") {
  const auto req = cyclic_requests(12, 2);
  auto mean_error = [&](double snr) {
    double total = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      DeliveryOptions o;
      o.snr_db = snr;
      const auto rep = run_delivery(12, 2, Rational(1, 3), 2, req, seed, o);
      for (const auto& user : rep.per_user) {
        for (const auto& r : user) {
          total += r.error;
          ++count;
        }
      }
    }
    return total / static_cast<double>(count);
  };
  const double e40 = mean_error(40.0);
  const double e60 = mean_error(60.0);
  const double ratio = e40 / e60;
  CHECK(ratio > 7.0);
  CHECK(ratio < 14.0);
  CHECK(e40 < 1.0);
}

TEST_CASE("invalid requests are rejected") {
  const std::vector<int> short_req{1, 1};
  CHECK_THROWS_AS(run_delivery(4, 2, Rational(1, 2), 1, short_req, 1), ParameterError);
  const std::vector<int> bad{1, 1, 1, 5};
  CHECK_THROWS_AS(run_delivery(4, 2, Rational(1, 2), 2, bad, 1), ParameterError);
}
