#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gcache/rational.hpp"

namespace gcache {

/// Exact n-choose-k. Zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Same as binomial() but for callers that know the result fits in 64 bits
/// (throws ParameterError otherwise).
std::uint64_t binomial_u64(std::int64_t n, std::int64_t k);

/// A strictly increasing list of 1-based indices.
using Subset = std::vector<int>;

/// All subsets of size `subset_size` of {1..ground_size}, in lexicographic
/// order. Subfile indices in reports refer to positions in this order.
class SubsetFamily {
 public:
  SubsetFamily() = default;
  SubsetFamily(int ground_size, int subset_size);

  [[nodiscard]] int ground_size() const { return ground_size_; }
  [[nodiscard]] int subset_size() const { return subset_size_; }
  [[nodiscard]] std::size_t size() const { return subsets_.size(); }
  [[nodiscard]] const Subset& operator[](std::size_t i) const { return subsets_[i]; }
  [[nodiscard]] const std::vector<Subset>& subsets() const { return subsets_; }
  [[nodiscard]] auto begin() const { return subsets_.begin(); }
  [[nodiscard]] auto end() const { return subsets_.end(); }

  /// Lexicographic rank of `subset`, computed arithmetically.
  [[nodiscard]] std::size_t index_of(std::span<const int> subset) const;

 private:
  int ground_size_ = 0;
  int subset_size_ = 0;
  std::vector<Subset> subsets_;
  std::vector<std::uint64_t> rank_table_;
};

SubsetFamily enumerate_subsets(int ground_size, int subset_size);

/// Calls `fn(const Subset&)` for every k-subset of {1..n} in lexicographic
/// order without materializing the family.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  Subset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    fn(static_cast<const Subset&>(s));
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

/// Parses a nonnegative big integer from "123", "1e6", "3.6e4" (must denote
/// an exact integer) or "C(n,k)" / "binom(n,k)".
BigInt parse_big(std::string_view text);

}  // namespace gcache
