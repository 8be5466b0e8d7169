#include "gcache/combinatorics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "gcache/errors.hpp"

namespace gcache {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw ParameterError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // Each partial product is itself a binomial coefficient, so the division is exact.
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  const BigInt b = binomial(n, k);
  if (b > std::numeric_limits<std::uint64_t>::max()) {
    throw ParameterError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                         ") does not fit in 64 bits");
  }
  return b.convert_to<std::uint64_t>();
}

SubsetFamily::SubsetFamily(int ground_size, int subset_size)
    : ground_size_(ground_size), subset_size_(subset_size) {
  if (ground_size < 0 || subset_size < 0 || subset_size > ground_size) {
    throw ParameterError("enumerate_subsets: need 0 <= subset_size <= ground_size, got (" +
                         std::to_string(ground_size) + ", " + std::to_string(subset_size) + ")");
  }
  subsets_.reserve(binomial_u64(ground_size, subset_size));
  // rank_table_[m * (n+2) + c] = sum_{j=1}^{c-1} C(n-j, m), kept modulo 2^64.
  // index_of only needs differences of these sums, and each difference counts
  // subsets of this family, so wrapping arithmetic yields exact ranks.
  const auto n = static_cast<std::size_t>(ground_size);
  const auto k = static_cast<std::size_t>(subset_size);
  std::vector<std::uint64_t> pascal((n + 1) * (k + 1), 0);  // C(a, m) mod 2^64
  for (std::size_t a = 0; a <= n; ++a) {
    pascal[a * (k + 1)] = 1;
    for (std::size_t m = 1; m <= k && a > 0; ++m) {
      pascal[a * (k + 1) + m] = pascal[(a - 1) * (k + 1) + m - 1] + pascal[(a - 1) * (k + 1) + m];
    }
  }
  rank_table_.assign((k + 1) * (n + 2), 0);
  for (std::size_t m = 0; m <= k; ++m) {
    for (std::size_t c = 2; c <= n + 1; ++c) {
      rank_table_[m * (n + 2) + c] = rank_table_[m * (n + 2) + c - 1] + pascal[(n - (c - 1)) * (k + 1) + m];
    }
  }
  for_each_subset(ground_size, subset_size, [this](const Subset& s) { subsets_.push_back(s); });
}

std::size_t SubsetFamily::index_of(std::span<const int> subset) const {
  if (static_cast<int>(subset.size()) != subset_size_) {
    throw ParameterError("SubsetFamily::index_of: wrong subset size");
  }
  // Count the subsets that precede `subset` position by position.
  const auto stride = static_cast<std::size_t>(ground_size_) + 2;
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < subset_size_; ++i) {
    const int c = subset[static_cast<std::size_t>(i)];
    if (c <= prev || c > ground_size_) {
      throw ParameterError("SubsetFamily::index_of: not a strictly increasing subset of the ground set");
    }
    const std::uint64_t* row = rank_table_.data() + static_cast<std::size_t>(subset_size_ - i - 1) * stride;
    rank += row[c] - row[prev + 1];
    prev = c;
  }
  return static_cast<std::size_t>(rank);
}

SubsetFamily enumerate_subsets(int ground_size, int subset_size) {
  return SubsetFamily(ground_size, subset_size);
}

BigInt parse_big(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParameterError("empty integer");

  for (const std::string prefix : {"binom(", "C(", "c("}) {
    if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
      const std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      const auto comma = inner.find(',');
      if (comma == std::string::npos) throw ParameterError("malformed binomial '" + s + "'");
      const Rational n = Rational::parse(inner.substr(0, comma));
      const Rational k = Rational::parse(inner.substr(comma + 1));
      if (!n.is_integer() || !k.is_integer() || n.num() < 0) {
        throw ParameterError("malformed binomial '" + s + "'");
      }
      return binomial(n.num().convert_to<std::int64_t>(), k.num().convert_to<std::int64_t>());
    }
  }

  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    try {
      exponent = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw ParameterError("malformed integer '" + s + "'");
    }
    if (exponent < 0 || exponent > 100000) throw ParameterError("exponent out of range in '" + s + "'");
  }
  Rational value = Rational::parse(mantissa);
  BigInt scale = 1;
  for (long i = 0; i < exponent; ++i) scale *= 10;
  value *= Rational(scale, 1);
  if (!value.is_integer() || value.num() < 0) {
    throw ParameterError("'" + s + "' is not a nonnegative integer");
  }
  return value.num();
}

}  // namespace gcache
