#pragma once

#include <cstddef>
#include <span>

#include "gcache/placement.hpp"

namespace gcache {

/// Exact coefficient bookkeeping for a delivery plan, with no numerics.
///
/// Every term of every transmission is tagged with the subfile it carries
/// and the user whose precoder it uses. At each receiver the check is:
///  - each out-of-group term carries a subfile the receiver caches (so it is
///    removed exactly by cache-out);
///  - each in-group term carries a non-cached subfile, and unless it is the
///    receiver's own term its precoder nulls the receiver;
///  - exactly one term survives, and it is the receiver's requested subfile.
struct SymbolicReport {
  std::size_t receptions = 0;
  std::size_t cache_out_terms = 0;
  std::size_t cache_out_violations = 0;
  std::size_t nulled_terms = 0;
  std::size_t intra_group_violations = 0;
  std::size_t surviving_term_violations = 0;
  CoverageReport coverage;
  bool users_complete = false;

  [[nodiscard]] bool ok() const {
    return cache_out_violations == 0 && intra_group_violations == 0 &&
           surviving_term_violations == 0 && coverage.ok() && users_complete;
  }
};

SymbolicReport verify_symbolic(const PlacementLayout& layout, const DeliveryPlan& plan,
                               std::span<const int> requests);

}  // namespace gcache
