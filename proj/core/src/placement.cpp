#include "gcache/placement.hpp"

#include <algorithm>
#include <string>

#include "gcache/errors.hpp"

namespace gcache {

namespace {

int group_redundancy(int group_count, const Rational& gamma) {
  if (gamma < Rational(0) || gamma > Rational(1)) throw ParameterError("gamma must lie in [0,1]");
  const Rational t = gamma * Rational(group_count);
  if (!t.is_integer()) {
    throw RoutingError("K'*gamma = " + t.str() + " is not an integer; use the memory-sharing planner");
  }
  return t.num().convert_to<int>();
}

}  // namespace

SubsetFamily MaddahAliNiesen::subfiles(int group_count, const Rational& gamma) const {
  return SubsetFamily(group_count, group_redundancy(group_count, gamma));
}

std::vector<std::vector<std::size_t>> MaddahAliNiesen::placement(
    int group_count, const Rational& /*gamma*/, const SubsetFamily& subfiles) const {
  std::vector<std::vector<std::size_t>> cache(static_cast<std::size_t>(group_count));
  for (std::size_t i = 0; i < subfiles.size(); ++i) {
    for (int g : subfiles[i]) cache[static_cast<std::size_t>(g - 1)].push_back(i);
  }
  return cache;
}

DeliveryPlan MaddahAliNiesen::delivery(int group_count, const Rational& gamma,
                                       const SubsetFamily& subfiles) const {
  const int t = group_redundancy(group_count, gamma);
  DeliveryPlan plan;
  plan.algorithm = name();
  plan.cliques.reserve(binomial_u64(group_count, t + 1));
  Subset rest(static_cast<std::size_t>(t));
  for_each_subset(group_count, t + 1, [&](const Subset& chi) {
    Clique c;
    c.groups = chi;
    c.subfiles.reserve(chi.size());
    for (std::size_t skip = 0; skip < chi.size(); ++skip) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < chi.size(); ++i) {
        if (i != skip) rest[w++] = chi[i];
      }
      c.subfiles.push_back(subfiles.index_of(rest));
    }
    plan.cliques.push_back(std::move(c));
  });
  return plan;
}

int PlacementLayout::group_of(int user) const {
  if (user < 1 || user > K) throw ParameterError("user " + std::to_string(user) + " out of range");
  return (user - 1) % group_count + 1;
}

int PlacementLayout::position_in_group(int user) const {
  if (user < 1 || user > K) throw ParameterError("user " + std::to_string(user) + " out of range");
  return (user - 1) / group_count;
}

bool PlacementLayout::group_caches(int group, std::size_t subfile) const {
  return cache_table[static_cast<std::size_t>(group - 1)][subfile];
}

std::vector<std::vector<int>> build_groups(int K, int L) {
  if (K < 1 || L < 1) throw ParameterError("build_groups: K and L must be >= 1");
  if (K % L != 0) {
    throw RoutingError("L=" + std::to_string(L) + " does not divide K=" + std::to_string(K) +
                       "; use the memory-sharing planner");
  }
  const int groups = K / L;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(groups));
  for (int g = 1; g <= groups; ++g) {
    auto& members = out[static_cast<std::size_t>(g - 1)];
    members.reserve(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) members.push_back(l * groups + g);
  }
  return out;
}

PlacementLayout build_placement(int K, int L, const Rational& gamma, int file_count,
                                const SingleStreamAlgorithm& algorithm) {
  if (file_count < 1) throw ParameterError("library size N must be >= 1");
  PlacementLayout layout;
  layout.groups = build_groups(K, L);
  layout.K = K;
  layout.L = L;
  layout.group_count = K / L;
  layout.file_count = file_count;
  layout.gamma = gamma;
  layout.algorithm = algorithm.name();
  layout.tau_family = algorithm.subfiles(layout.group_count, gamma);
  layout.per_group_cache = algorithm.placement(layout.group_count, gamma, layout.tau_family);
  layout.cache_table.assign(static_cast<std::size_t>(layout.group_count),
                            std::vector<bool>(layout.tau_family.size(), false));
  for (std::size_t g = 0; g < layout.per_group_cache.size(); ++g) {
    auto& cache = layout.per_group_cache[g];
    if (!std::is_sorted(cache.begin(), cache.end())) std::sort(cache.begin(), cache.end());
    for (std::size_t s : cache) layout.cache_table[g][s] = true;
  }
  return layout;
}

PlacementLayout build_placement(int K, int L, const Rational& gamma, int file_count) {
  return build_placement(K, L, gamma, file_count, MaddahAliNiesen{});
}

DeliveryPlan mn_delivery_cliques(int group_count, const Rational& gamma) {
  const MaddahAliNiesen mn;
  return mn.delivery(group_count, gamma, mn.subfiles(group_count, gamma));
}

CoverageReport check_coverage(const PlacementLayout& layout, const DeliveryPlan& plan) {
  CoverageReport report;
  std::vector<std::vector<int>> seen(static_cast<std::size_t>(layout.group_count),
                                     std::vector<int>(layout.subpacketization(), 0));
  for (const Clique& c : plan.cliques) {
    for (std::size_t i = 0; i < c.groups.size(); ++i) {
      ++report.deliveries;
      const int g = c.groups[i];
      const std::size_t s = c.subfiles[i];
      if (layout.group_caches(g, s)) ++report.cached_delivered;
      ++seen[static_cast<std::size_t>(g - 1)][s];
    }
  }
  for (int g = 1; g <= layout.group_count; ++g) {
    for (std::size_t s = 0; s < layout.subpacketization(); ++s) {
      if (layout.group_caches(g, s)) continue;
      const int n = seen[static_cast<std::size_t>(g - 1)][s];
      if (n == 0) ++report.missing;
      if (n > 1) report.duplicated += static_cast<std::size_t>(n - 1);
    }
  }
  return report;
}

}  // namespace gcache
