#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcache/rational.hpp"

namespace gcache::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitCheckFailed = 3;

/// One sweep grid point. `K` empty means the user count is unbounded and the
/// effective values are maximized over K.
struct SweepPoint {
  std::optional<std::int64_t> K;
  Rational gamma;
  std::int64_t L = 1;
  BigInt s_max;
};

struct SweepRow {
  SweepPoint point;
  std::int64_t effective_K = 0;     ///< K-bar_L
  std::int64_t effective_gain = 0;  ///< G-bar_L
  std::int64_t effective_dof = 0;   ///< d-bar_L
};

/// Cartesian product in the order K, gamma, L, S_max (outermost first).
std::vector<SweepPoint> sweep_grid(const std::vector<std::optional<std::int64_t>>& Ks,
                                   const std::vector<Rational>& gammas,
                                   const std::vector<std::int64_t>& Ls,
                                   const std::vector<BigInt>& s_maxes);

SweepRow evaluate_sweep_point(const SweepPoint& point);

/// Evaluates every point on `workers` threads; rows keep the grid order.
std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& grid, unsigned workers = 1);

/// Header K,gamma,L,S_max,K_bar_L,G_bar_L,d_bar_L; CRLF line endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Parses and runs one command line. Reports go to `out` (or the --out
/// file), diagnostics and the summary line to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcache::cli
