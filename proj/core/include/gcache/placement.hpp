#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "gcache/combinatorics.hpp"
#include "gcache/rational.hpp"

namespace gcache {

/// One delivery slot: a set of groups served together, with the subfile
/// index each member group receives.
struct Clique {
  std::vector<int> groups;              ///< 1-based group ids, increasing
  std::vector<std::size_t> subfiles;    ///< subfiles[i] goes to groups[i]
};

struct DeliveryPlan {
  std::string algorithm;
  std::vector<Clique> cliques;
};

/// A single-stream (one user per "slot") coded caching algorithm that can be
/// run over groups instead of users. Implement this to elevate a different
/// placement/delivery construction; MaddahAliNiesen is the shipped instance.
class SingleStreamAlgorithm {
 public:
  virtual ~SingleStreamAlgorithm() = default;

  [[nodiscard]] virtual std::string name() const = 0;

  /// Labels of the subfiles each file is split into.
  [[nodiscard]] virtual SubsetFamily subfiles(int group_count, const Rational& gamma) const = 0;

  /// For each group (index g-1), the sorted subfile indices it caches.
  [[nodiscard]] virtual std::vector<std::vector<std::size_t>> placement(
      int group_count, const Rational& gamma, const SubsetFamily& subfiles) const = 0;

  /// Ordered list of transmissions.
  [[nodiscard]] virtual DeliveryPlan delivery(int group_count, const Rational& gamma,
                                              const SubsetFamily& subfiles) const = 0;
};

/// Centralized placement over subsets tau of size K'*gamma; delivery over all
/// (K'*gamma + 1)-subsets chi, group g in chi receiving subfile chi \ {g}.
class MaddahAliNiesen final : public SingleStreamAlgorithm {
 public:
  [[nodiscard]] std::string name() const override { return "mn"; }
  [[nodiscard]] SubsetFamily subfiles(int group_count, const Rational& gamma) const override;
  [[nodiscard]] std::vector<std::vector<std::size_t>> placement(
      int group_count, const Rational& gamma, const SubsetFamily& subfiles) const override;
  [[nodiscard]] DeliveryPlan delivery(int group_count, const Rational& gamma,
                                      const SubsetFamily& subfiles) const override;
};

struct PlacementLayout {
  int K = 0;
  int L = 0;
  int group_count = 0;  ///< K' = K / L
  int file_count = 1;   ///< N
  Rational gamma;
  std::string algorithm;
  std::vector<std::vector<int>> groups;  ///< groups[g-1]: users of group g, increasing
  SubsetFamily tau_family;
  std::vector<std::vector<std::size_t>> per_group_cache;

  [[nodiscard]] std::size_t subpacketization() const { return tau_family.size(); }
  /// 1-based group id of a 1-based user.
  [[nodiscard]] int group_of(int user) const;
  /// 0-based position of `user` inside its group.
  [[nodiscard]] int position_in_group(int user) const;
  [[nodiscard]] bool group_caches(int group, std::size_t subfile) const;
  [[nodiscard]] bool user_caches(int user, std::size_t subfile) const {
    return group_caches(group_of(user), subfile);
  }

  // Dense group x subfile membership table backing group_caches().
  std::vector<std::vector<bool>> cache_table;
};

/// G_g = {g, K'+g, ..., (L-1)K'+g}, g = 1..K'. Throws RoutingError unless L | K.
std::vector<std::vector<int>> build_groups(int K, int L);

PlacementLayout build_placement(int K, int L, const Rational& gamma, int file_count,
                                const SingleStreamAlgorithm& algorithm);

PlacementLayout build_placement(int K, int L, const Rational& gamma, int file_count);

/// MN clique list over K' groups, lexicographic in chi.
DeliveryPlan mn_delivery_cliques(int group_count, const Rational& gamma);

/// Result of checking that a plan delivers every non-cached (group, subfile)
/// pair exactly once and never a cached one.
struct CoverageReport {
  std::size_t deliveries = 0;
  std::size_t missing = 0;
  std::size_t duplicated = 0;
  std::size_t cached_delivered = 0;
  [[nodiscard]] bool ok() const { return missing == 0 && duplicated == 0 && cached_delivered == 0; }
};

CoverageReport check_coverage(const PlacementLayout& layout, const DeliveryPlan& plan);

}  // namespace gcache
