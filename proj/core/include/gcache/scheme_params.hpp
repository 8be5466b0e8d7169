#pragma once

#include <cstdint>
#include <optional>

#include "gcache/rational.hpp"

namespace gcache {

/// (K, L, gamma = M/N, optional subpacketization cap).
///
/// `gamma` is stored already floored to floor(K*gamma)/K so that K*gamma is
/// always an integer; use make() to build one from raw user input.
struct SystemParams {
  std::int64_t K = 1;
  std::int64_t L = 1;
  Rational gamma;
  std::optional<BigInt> s_max;

  static SystemParams make(std::int64_t K, std::int64_t L, const Rational& gamma,
                           std::optional<BigInt> s_max = std::nullopt);

  /// K*gamma, the theoretical caching gain.
  [[nodiscard]] std::int64_t caching_gain() const;
  /// L | K and L | K*gamma: the integer scheme applies without memory sharing.
  [[nodiscard]] bool divisible() const;
  /// True when L >= K(1 - gamma): interference-free delivery is possible.
  [[nodiscard]] bool trivial_regime() const;
};

struct Performance {
  std::int64_t dof = 0;
  Rational delay;
  bool trivial_regime = false;
};

/// Effective (subpacketization-constrained) quantities next to their
/// unconstrained counterparts.
struct GainReport {
  std::int64_t effective_K = 0;        ///< K-bar_L: users actually encoded over
  std::int64_t effective_gain = 0;     ///< G-bar_L = min(L * G-bar_1, K*gamma)
  std::int64_t effective_dof = 0;      ///< L + G-bar_L
  std::int64_t theoretical_gain = 0;   ///< K*gamma
  std::int64_t theoretical_dof = 0;    ///< L + K*gamma
  BigInt subpacketization = 1;         ///< grouped subpacketization at effective_K
  double lower_bound_gain = 0.0;       ///< min(L ln S / (1 + ln 1/gamma), K*gamma)
  std::int64_t single_antenna_K = 0;   ///< K-bar_1
  std::int64_t single_antenna_gain = 0;  ///< G-bar_1
};

BigInt subpacketization_single(std::int64_t K, std::int64_t t);

/// binomial(K/L, t/L). Throws RoutingError unless L | K and L | t.
BigInt subpacketization_grouped(std::int64_t K, std::int64_t L, std::int64_t t);

/// Theoretical sum-DoF and normalized delay. In the trivial regime
/// L >= K(1-gamma) this is the interference-free point (K, 1-gamma).
Performance theoretical_performance(const SystemParams& params);

/// Largest K0 <= K (K unbounded when nullopt) such that K0*gamma is an
/// integer, L divides both K0 and K0*gamma, and binomial(K0/L, K0*gamma/L)
/// <= s_max. Returns 0 when no such positive K0 exists.
std::int64_t effective_K(const Rational& gamma, const BigInt& s_max, std::int64_t L,
                         std::optional<std::int64_t> K = std::nullopt);

/// Fills a GainReport. Without s_max the effective values equal the
/// theoretical ones.
GainReport effective_gain(const SystemParams& params);

/// Subpacketization binomial(1/lambda, x-1) that buys a sum-DoF of x times
/// the multiplexing gain, lambda = L/K.
BigInt dof_multiplier_subpacketization(const Rational& lambda, std::int64_t x);

/// Effective gain of the elevated placement-delivery-array and linear-code
/// schemes, min(L ln S / ln(1/gamma), K*gamma - L); 0 when K*gamma <= L.
double pd_lc_elevated_gain(const Rational& gamma, const BigInt& s_max, std::int64_t L,
                           std::int64_t K);

/// Single-antenna subpacketization (1/gamma)^(K*gamma - 1) of the
/// placement-delivery-array scheme.
Rational pd_subpacketization(const Rational& gamma, std::int64_t K);

/// Smallest gamma that can support caching gain G under s_max with L
/// antennas: (s_max^(-1/G))^L.
double min_gamma_for_gain(std::int64_t G, const BigInt& s_max, std::int64_t L);

}  // namespace gcache
