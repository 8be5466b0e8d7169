#include "gcache/symbolic.hpp"

#include <map>
#include <string>
#include <utility>

#include "gcache/errors.hpp"

namespace gcache {

SymbolicReport verify_symbolic(const PlacementLayout& layout, const DeliveryPlan& plan,
                               std::span<const int> requests) {
  if (static_cast<int>(requests.size()) != layout.K) {
    throw ParameterError("expected one request per user");
  }
  SymbolicReport report;
  report.coverage = check_coverage(layout, plan);

  const std::size_t S = layout.subpacketization();
  std::vector<std::vector<int>> received(static_cast<std::size_t>(layout.K), std::vector<int>(S, 0));
  bool files_ok = true;

  for (const Clique& clique : plan.cliques) {
    for (std::size_t gi = 0; gi < clique.groups.size(); ++gi) {
      const int g = clique.groups[gi];
      for (int receiver : layout.groups[static_cast<std::size_t>(g - 1)]) {
        ++report.receptions;
        // (file, subfile) -> number of terms reaching the receiver with a
        // nonzero coefficient after cache-out.
        std::map<std::pair<int, std::size_t>, int> surviving;
        for (std::size_t oi = 0; oi < clique.groups.size(); ++oi) {
          const int og = clique.groups[oi];
          const std::size_t tau = clique.subfiles[oi];
          for (int sender : layout.groups[static_cast<std::size_t>(og - 1)]) {
            const int file = requests[static_cast<std::size_t>(sender - 1)];
            if (og != g) {
              ++report.cache_out_terms;
              if (!layout.group_caches(g, tau)) ++report.cache_out_violations;
              continue;
            }
            if (layout.group_caches(g, tau)) ++report.intra_group_violations;
            if (sender != receiver) {
              // v^{G_g \ sender} is built to null every other member of G_g.
              ++report.nulled_terms;
              continue;
            }
            ++surviving[{file, tau}];
          }
        }
        const int want = requests[static_cast<std::size_t>(receiver - 1)];
        const std::size_t tau = clique.subfiles[gi];
        if (surviving.size() != 1 || surviving.begin()->first != std::make_pair(want, tau) ||
            surviving.begin()->second != 1) {
          ++report.surviving_term_violations;
        } else {
          ++received[static_cast<std::size_t>(receiver - 1)][tau];
        }
        if (want < 1 || want > layout.file_count) files_ok = false;
      }
    }
  }

  report.users_complete = files_ok;
  for (int user = 1; user <= layout.K && report.users_complete; ++user) {
    for (std::size_t s = 0; s < S; ++s) {
      const int expected = layout.user_caches(user, s) ? 0 : 1;
      if (received[static_cast<std::size_t>(user - 1)][s] != expected) {
        report.users_complete = false;
        break;
      }
    }
  }
  return report;
}

}  // namespace gcache
