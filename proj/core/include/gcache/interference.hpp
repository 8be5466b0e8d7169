#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcache/delivery.hpp"
#include "gcache/rational.hpp"

namespace gcache {

/// Whole-file caches at K_T transmitters with L_T antennas each.
struct TransmitterPlacement {
  int K_T = 1;
  int M_T = 1;
  int N = 1;
  int L_T = 1;
  std::vector<std::vector<int>> per_tx_files;  ///< [m-1]: files cached at transmitter m, in placement order

  [[nodiscard]] Rational gamma_T() const { return Rational(M_T, N); }
  /// K_T * gamma_T: how many transmitters hold each file.
  [[nodiscard]] int redundancy() const { return K_T * M_T / N; }
  /// K_T * L_T * gamma_T antennas available to every file.
  [[nodiscard]] int emulated_antennas() const { return redundancy() * L_T; }
  [[nodiscard]] bool caches(int tx, int file) const;
  /// Transmitters caching `file`, increasing.
  [[nodiscard]] std::vector<int> holders(int file) const;
};

/// Transmitter m caches files 1 + (n-1) mod N for n = (m-1)M_T + 1 .. m M_T.
/// Needs M_T <= N and N | K_T M_T.
TransmitterPlacement build_transmitter_caches(int K_T, int M_T, int N, int L_T = 1);

/// binomial(K / (K_T L_T gamma_T), K gamma / (K_T L_T gamma_T)). Throws
/// RoutingError when the emulated antenna count does not divide K and K gamma.
BigInt ic_subpacketization(std::int64_t K, std::int64_t K_gamma, std::int64_t K_T,
                           const Rational& gamma_T, std::int64_t L_T);

/// Antenna (m, l) has global index (m-1) L_T + (l-1). Each file is sent from
/// the antennas of its first `active_tx` holders (all holders by default).
AntennaModel interference_antenna_model(const TransmitterPlacement& tx,
                                        std::optional<int> active_tx = std::nullopt);

/// Grouped delivery where each subfile is precoded only over antennas of
/// transmitters that cache its file. Achieved DoF is K_T L_T gamma_T + K gamma.
DeliveryReport run_ic_delivery(int K, const Rational& gamma, const TransmitterPlacement& tx,
                               std::span<const int> requests, std::uint64_t seed,
                               const DeliveryOptions& options = {},
                               std::optional<int> active_tx = std::nullopt);

}  // namespace gcache
