#include "gcache/scheme_params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcache/combinatorics.hpp"
#include "gcache/errors.hpp"

namespace gcache {

namespace {

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

void require_gamma(const Rational& gamma) {
  if (gamma < Rational(0) || gamma > Rational(1)) {
    throw ParameterError("gamma must lie in [0,1], got " + gamma.str());
  }
}

}  // namespace

SystemParams SystemParams::make(std::int64_t K, std::int64_t L, const Rational& gamma,
                                std::optional<BigInt> s_max) {
  if (K < 1) throw ParameterError("K must be >= 1");
  if (L < 1) throw ParameterError("L must be >= 1");
  require_gamma(gamma);
  if (s_max && *s_max < 1) throw ParameterError("S_max must be >= 1");
  SystemParams p;
  p.K = K;
  p.L = L;
  p.gamma = Rational((gamma * Rational(K)).floor(), BigInt(K));
  p.s_max = std::move(s_max);
  return p;
}

std::int64_t SystemParams::caching_gain() const { return to_i64((gamma * Rational(K)).floor()); }

bool SystemParams::divisible() const { return K % L == 0 && caching_gain() % L == 0; }

bool SystemParams::trivial_regime() const { return L >= K - caching_gain(); }

BigInt subpacketization_single(std::int64_t K, std::int64_t t) {
  if (t < 0 || t > K) throw ParameterError("subpacketization_single: need 0 <= t <= K");
  return binomial(K, t);
}

BigInt subpacketization_grouped(std::int64_t K, std::int64_t L, std::int64_t t) {
  if (L < 1) throw ParameterError("L must be >= 1");
  if (t < 0 || t > K) throw ParameterError("subpacketization_grouped: need 0 <= t <= K");
  if (K % L != 0 || t % L != 0) {
    throw RoutingError("L=" + std::to_string(L) + " must divide K=" + std::to_string(K) +
                       " and K*gamma=" + std::to_string(t) +
                       "; use the memory-sharing planner for this configuration");
  }
  return binomial(K / L, t / L);
}

Performance theoretical_performance(const SystemParams& params) {
  const std::int64_t t = params.caching_gain();
  const Rational uncached(params.K - t);
  if (params.trivial_regime()) {
    return {params.K, uncached / Rational(params.K), true};
  }
  return {params.L + t, uncached / Rational(params.L + t), false};
}

std::int64_t effective_K(const Rational& gamma, const BigInt& s_max, std::int64_t L,
                         std::optional<std::int64_t> K) {
  require_gamma(gamma);
  if (s_max < 1) throw ParameterError("S_max must be >= 1");
  if (L < 1) throw ParameterError("L must be >= 1");
  if (K && *K < 0) throw ParameterError("K must be >= 0");

  const std::int64_t a = to_i64(gamma.num());
  const std::int64_t b = to_i64(gamma.den());
  // Feasible K0 are exactly the multiples of b*L; binomial(b*j, a*j) is the
  // grouped subpacketization at K0 = b*L*j.
  const std::int64_t step = b * L;
  if (a == 0 || a == b) {
    if (!K) throw ParameterError("effective_K: gamma in {0,1} needs a finite K bound");
    return (*K / step) * step;
  }
  const std::int64_t j_cap = K ? *K / step : std::numeric_limits<std::int64_t>::max();
  std::int64_t j = 0;
  while (j < j_cap && binomial(b * (j + 1), a * (j + 1)) <= s_max) ++j;
  return j * step;
}

GainReport effective_gain(const SystemParams& params) {
  GainReport r;
  const std::int64_t t = params.caching_gain();
  r.theoretical_gain = t;
  r.theoretical_dof = params.L + t;

  if (!params.s_max) {
    const std::int64_t step = to_i64(params.gamma.den()) * params.L;
    r.effective_K = (params.K / step) * step;
    r.effective_gain = t;
    r.effective_dof = r.theoretical_dof;
    r.single_antenna_K = params.K;
    r.single_antenna_gain = t;
    r.subpacketization = subpacketization_grouped(
        r.effective_K, params.L, to_i64((params.gamma * Rational(r.effective_K)).num()));
    r.lower_bound_gain = static_cast<double>(t);
    return r;
  }

  const BigInt& s_max = *params.s_max;
  r.single_antenna_K = effective_K(params.gamma, s_max, 1, params.K);
  r.single_antenna_gain = to_i64((params.gamma * Rational(r.single_antenna_K)).num());
  r.effective_gain = std::min(params.L * r.single_antenna_gain, t);
  r.effective_dof = params.L + r.effective_gain;

  r.effective_K = effective_K(params.gamma, s_max, params.L, params.K);
  const std::int64_t t_eff = to_i64((params.gamma * Rational(r.effective_K)).num());
  r.subpacketization = subpacketization_grouped(r.effective_K, params.L, t_eff);

  const double log_inv_gamma =
      params.gamma.num() == 0 ? std::numeric_limits<double>::infinity()
                              : -std::log(params.gamma.to_double());
  const double bound = static_cast<double>(params.L) * log_big(s_max) / (1.0 + log_inv_gamma);
  r.lower_bound_gain = std::min(bound, static_cast<double>(t));
  return r;
}

BigInt dof_multiplier_subpacketization(const Rational& lambda, std::int64_t x) {
  if (lambda <= Rational(0) || lambda > Rational(1)) {
    throw ParameterError("lambda must lie in (0,1]");
  }
  if (lambda.num() != 1) throw ParameterError("1/lambda must be an integer, got lambda=" + lambda.str());
  if (x < 1) throw ParameterError("DoF multiplier x must be >= 1");
  const std::int64_t groups = to_i64(lambda.den());
  if (x - 1 > groups) throw ParameterError("gamma = lambda(x-1) exceeds 1");
  return binomial(groups, x - 1);
}

double pd_lc_elevated_gain(const Rational& gamma, const BigInt& s_max, std::int64_t L,
                           std::int64_t K) {
  require_gamma(gamma);
  if (gamma == Rational(1)) throw ParameterError("pd_lc_elevated_gain needs gamma < 1");
  if (s_max < 1) throw ParameterError("S_max must be >= 1");
  const std::int64_t t = to_i64((gamma * Rational(K)).floor());
  if (t <= L) return 0.0;
  const double gain = static_cast<double>(L) * log_big(s_max) / -std::log(gamma.to_double());
  return std::min(gain, static_cast<double>(t - L));
}

Rational pd_subpacketization(const Rational& gamma, std::int64_t K) {
  require_gamma(gamma);
  const std::int64_t t = to_i64((gamma * Rational(K)).floor());
  if (t < 1) throw ParameterError("pd_subpacketization needs K*gamma >= 1");
  const Rational inv = Rational(1) / gamma;
  Rational r(1);
  for (std::int64_t i = 0; i < t - 1; ++i) r *= inv;
  return r;
}

double min_gamma_for_gain(std::int64_t G, const BigInt& s_max, std::int64_t L) {
  if (G < 1) throw ParameterError("target gain must be >= 1");
  if (s_max < 2) throw ParameterError("S_max must be >= 2");
  if (L < 1) throw ParameterError("L must be >= 1");
  return std::exp(-static_cast<double>(L) * log_big(s_max) / static_cast<double>(G));
}

}  // namespace gcache
