#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gcache {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative zero-forcing tolerance: |h_i^T v| <= kZfTolerance * ||h_i||.
inline constexpr double kZfTolerance = 1e-10;
/// Group channels with a larger 2-norm condition number are rejected.
inline constexpr double kConditionLimit = 1e8;
/// Smallest usable |h_k^T v_k| at a receiver.
inline constexpr double kDecodeFloor = 1e-8;

/// Independent random streams carved out of the user seed.
enum class SeedStream : std::uint64_t {
  kPayload = 1,
  kChannel = 2,
  kNoise = 3,
};

/// One splitmix64 step: x + golden gamma, then the finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// splitmix64 over (seed, stream, counter). The payload key is counter 0 of
/// kPayload; draw a of payload symbol i is splitmix64(key ^ (64 i + a)).
/// A frozen channel uses counter 0 of kChannel. Otherwise cliques are taken
/// in blocks of 256 in plan order: block b seeds one mt19937_64 with counter
/// b+1 of kChannel and draws each clique's served rows in turn;
/// receiver noise for block b uses counter b of kNoise the same way.
std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t counter);

struct ChannelRealization {
  CMatrix H;                      ///< K x L, row k is h_k^T
  double noise_power = 0.0;       ///< 0 = noiseless
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

/// Noise power for a given SNR with unit-power symbols.
double noise_power_from_snr_db(double snr_db);

/// K x L i.i.d. CN(0,1) entries, reproducible from `seed`.
ChannelRealization draw_channel(int K, int L, std::uint64_t seed, double noise_power = 0.0);

/// 2-norm condition number via SVD.
double condition_number(const CMatrix& m);

/// Normalized inverse of a square group channel: column k is the unit-norm
/// vector that is orthogonal to every row except row k. Throws
/// ChannelDegenerateError above kConditionLimit.
CMatrix zero_forcing_precoder(const CMatrix& group_channel);
/// Same, writing into `out` (reuses its storage when the size matches).
void zero_forcing_precoder(const CMatrix& group_channel, CMatrix& out);

}  // namespace gcache
