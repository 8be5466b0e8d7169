#pragma once

#include <cstdint>
#include <vector>

#include "gcache/rational.hpp"
#include "gcache/scheme_params.hpp"

namespace gcache {

/// One of the (at most two) integer-feasible subsystems a memory-sharing plan
/// splits every file into.
struct SharingPart {
  Rational fraction;             ///< share of each file carried by this part
  SystemParams params;           ///< (K_hat, L, gamma_part)
  std::int64_t group_count = 0;  ///< K_hat / L
  std::int64_t redundancy = 0;   ///< K_hat * gamma_part / L
  BigInt subpacketization;       ///< binomial(group_count, redundancy)
  BigInt cliques;                ///< binomial(group_count, redundancy + 1)
  BigInt transmitted;            ///< cliques that reach at least one real user
  Rational slot_duration;        ///< fraction / subpacketization
};

struct MemorySharingPlan {
  std::int64_t K = 0;
  std::int64_t L = 0;
  Rational gamma;
  std::int64_t K_hat = 0;  ///< L * ceil(K / L), padded with phantom users
  Rational gamma_low;      ///< gamma'
  Rational gamma_high;     ///< gamma''
  Rational p;              ///< share cached at gamma'
  std::vector<SharingPart> parts;
  BigInt total_subpacketization;
  Rational analytic_delay;
  Rational exact_delay;
  Rational gap_bound;

  [[nodiscard]] bool degenerate() const { return parts.size() == 1; }
};

/// Builds the two-point memory-sharing plan. gamma is floored so K*gamma is
/// an integer; a plan with L | K_hat*gamma has a single part and p = 1.
MemorySharingPlan plan_memory_sharing(std::int64_t K, std::int64_t L, const Rational& gamma);

struct SharingDelay {
  Rational analytic;  ///< m'/(L + K_hat gamma') + m''/(L + K_hat gamma'')
  Rational exact;     ///< sum over parts of transmitted cliques * slot duration
};

SharingDelay memory_sharing_delay(const MemorySharingPlan& plan);

/// 2 when K*gamma <= L, else (q+1)/q with q = ceil(K*gamma / L) - 1.
Rational dof_gap_bound(std::int64_t K, std::int64_t L, const Rational& gamma);

/// K(1-gamma) / exact_delay; zero when nothing needs to be sent.
Rational realized_dof(const MemorySharingPlan& plan);

/// Cliques of a part whose groups contain at least one real user (users
/// above K are phantoms). Enumerates when the clique count is at most
/// `enumeration_limit`, otherwise counts in closed form.
BigInt count_transmitted_cliques(std::int64_t K, std::int64_t K_hat, std::int64_t L,
                                 std::int64_t redundancy,
                                 std::uint64_t enumeration_limit = 2'000'000);

struct SubpacketizationBounds {
  BigInt k_factor_bound;  ///< K * max{C(ceil(K/L), ceil(Kg/L)+1), C(ceil(K/L), floor(Kg/L)+1)}
  BigInt l_factor_bound;  ///< same with leading factor L
  bool within_k_bound = false;
  bool within_l_bound = false;
  /// False at gamma = 1: nothing is delivered and both bounds collapse to 0.
  bool applicable = true;
};

SubpacketizationBounds subpacketization_bounds(const MemorySharingPlan& plan);

struct GapCheck {
  Rational realized_dof;
  Rational target_dof;  ///< theoretical sum-DoF (L + K*gamma, or K in the trivial regime)
  Rational gap_bound;
  bool within_bound = false;
  bool nothing_to_send = false;
};

GapCheck check_gap(const MemorySharingPlan& plan);

}  // namespace gcache
