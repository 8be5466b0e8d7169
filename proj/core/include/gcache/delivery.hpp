#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcache/channel.hpp"
#include "gcache/placement.hpp"
#include "gcache/rational.hpp"

namespace gcache {

struct SubfileIndex {
  int file = 1;           ///< 1-based file id n
  std::size_t tau = 0;    ///< index into the layout's tau family
  friend bool operator==(const SubfileIndex&, const SubfileIndex&) = default;
};

/// One unit-magnitude complex symbol per (file, subfile), computed on
/// demand from the seed rather than stored.
class PayloadTable {
 public:
  PayloadTable() = default;
  PayloadTable(int file_count, std::size_t subpacketization, std::uint64_t seed);

  [[nodiscard]] Complex symbol(int file, std::size_t tau) const;
  [[nodiscard]] int file_count() const { return file_count_; }
  [[nodiscard]] std::size_t subpacketization() const { return subpacketization_; }

  /// Zeroes every symbol (linearity checks).
  void clear();

 private:
  static constexpr std::uint64_t kPayloadAttempts = 64;
  int file_count_ = 0;
  std::size_t subpacketization_ = 0;
  std::uint64_t seed_ = 0;
  bool cleared_ = false;
};

/// The part of the payload table a user holds in its cache. Asking for a
/// subfile outside the cache throws InvariantError, so decoding cannot
/// silently use data it does not have.
class UserCache {
 public:
  UserCache(const PayloadTable& payloads, const PlacementLayout& layout, int user);
  [[nodiscard]] Complex symbol(int file, std::size_t tau) const;
  [[nodiscard]] bool holds(std::size_t tau) const;
  [[nodiscard]] int user() const { return user_; }

 private:
  const PayloadTable* payloads_;
  const std::vector<bool>* cached_;
  int user_;
};

/// Per-group zero-forcing precoders: by_group[g-1] is L x L with column p
/// equal to v^{G_g \ k}, k the user at position p of group g.
struct PrecoderSet {
  std::vector<CMatrix> by_group;
  [[nodiscard]] const CMatrix& group(int g) const { return by_group[static_cast<std::size_t>(g - 1)]; }
  [[nodiscard]] bool has_group(int g) const {
    return g >= 1 && static_cast<std::size_t>(g) <= by_group.size() &&
           by_group[static_cast<std::size_t>(g - 1)].size() > 0;
  }
};

/// Precoders for the listed groups (all groups when empty).
PrecoderSet compute_precoders(const ChannelRealization& channel, const PlacementLayout& layout,
                              std::span<const int> groups = {});

/// Largest |h_i^T v^{G_g \ k}| / ||h_i|| over i in G_g \ {k}.
double max_zf_residual(const ChannelRealization& channel, const PlacementLayout& layout,
                       const PrecoderSet& precoders);

/// x_chi = sum_{g in chi} sum_{k in G_g} W_{R_k}^{chi \ g} v^{G_g \ k}.
/// `requests[k-1]` is the file requested by user k.
CVector build_transmission(const Clique& clique, const PlacementLayout& layout,
                           std::span<const int> requests, const PayloadTable& payloads,
                           const PrecoderSet& precoders);

/// Two-stage decode at `user`: remove every out-of-group term using the
/// cache, then divide by h_k^T v^{G_g \ k}. Throws NumericalDegeneracyError
/// when that coefficient is below kDecodeFloor.
Complex receive_and_decode(int user, Complex y, const ChannelRealization& channel,
                           const PlacementLayout& layout, const PrecoderSet& precoders,
                           const UserCache& cache, std::span<const int> requests,
                           const Clique& clique);

struct DeliveryRecord {
  SubfileIndex subfile;
  Complex recovered;
  Complex reference;
  double error = 0.0;
  friend bool operator==(const DeliveryRecord&, const DeliveryRecord&) = default;
};

struct DeliveryReport {
  int K = 0;
  int L = 0;
  Rational gamma;
  std::uint64_t seed = 0;       ///< seed actually used after retries
  int attempts = 1;
  std::vector<int> requests;
  std::vector<std::vector<DeliveryRecord>> per_user;  ///< index k-1
  std::size_t transmissions = 0;
  std::size_t subpacketization = 0;
  Rational measured_delay;      ///< transmissions / subpacketization
  Rational achieved_dof;        ///< K(1-gamma) / measured_delay
  double max_error = 0.0;
  double max_zf_residual = 0.0;
  bool complete = false;        ///< every user got exactly its non-cached subfiles
  std::size_t locality_violations = 0;

  [[nodiscard]] bool passed(double error_tolerance) const;
  friend bool operator==(const DeliveryReport&, const DeliveryReport&) = default;
};

struct DeliveryOptions {
  double noise_power = 0.0;
  std::optional<double> snr_db;   ///< overrides noise_power when set
  bool freeze_channel = false;    ///< one channel for all cliques instead of one per clique
  int retry_cap = 8;
  unsigned workers = 1;
  /// When false, per_user stays empty and completeness is tallied with
  /// counters instead; for runs with millions of deliveries.
  bool keep_records = true;
};

/// Full placement + delivery simulation over every clique of the MN plan.
/// On ChannelDegenerateError or NumericalDegeneracyError the run restarts
/// with seed+1, up to retry_cap attempts.
DeliveryReport run_delivery(const PlacementLayout& layout, std::span<const int> requests,
                            std::uint64_t seed, const DeliveryOptions& options = {});

DeliveryReport run_delivery(int K, int L, const Rational& gamma, int file_count,
                            std::span<const int> requests, std::uint64_t seed,
                            const DeliveryOptions& options = {});

/// Delivery over an antenna array where each file may only be sent from a
/// subset of the antennas (cache-aided transmitters). `antenna_sets[s]`
/// lists L antenna columns; `set_of_file[n-1]` selects the set for file n;
/// `antenna_owner[a]` is the transmitter of antenna a and `owner_has_file`
/// answers whether a transmitter caches a file.
struct AntennaModel {
  int total_antennas = 0;
  std::vector<std::vector<int>> antenna_sets;
  std::vector<int> set_of_file;
  std::vector<int> antenna_owner;
  std::vector<std::vector<bool>> owner_has_file;  ///< [owner][file-1]
};

AntennaModel full_array_model(int L, int file_count);

DeliveryReport run_delivery(const PlacementLayout& layout, const AntennaModel& antennas,
                            std::span<const int> requests, std::uint64_t seed,
                            const DeliveryOptions& options);

/// Most general form: any plan produced by a SingleStreamAlgorithm.
DeliveryReport run_delivery(const PlacementLayout& layout, const DeliveryPlan& plan,
                            const AntennaModel& antennas, std::span<const int> requests,
                            std::uint64_t seed, const DeliveryOptions& options);

}  // namespace gcache
