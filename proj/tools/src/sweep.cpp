#include <algorithm>
#include <atomic>
#include <thread>

#include "gcache/errors.hpp"
#include "gcache/scheme_params.hpp"
#include "gcache/serialize.hpp"
#include "gcache_cli/cli.hpp"

namespace gcache::cli {

std::vector<SweepPoint> sweep_grid(const std::vector<std::optional<std::int64_t>>& Ks,
                                   const std::vector<Rational>& gammas,
                                   const std::vector<std::int64_t>& Ls,
                                   const std::vector<BigInt>& s_maxes) {
  std::vector<SweepPoint> grid;
  grid.reserve(Ks.size() * gammas.size() * Ls.size() * s_maxes.size());
  for (const auto& K : Ks) {
    for (const auto& gamma : gammas) {
      for (std::int64_t L : Ls) {
        for (const auto& s : s_maxes) grid.push_back({K, gamma, L, s});
      }
    }
  }
  return grid;
}

SweepRow evaluate_sweep_point(const SweepPoint& p) {
  if (p.gamma < Rational(0) || p.gamma > Rational(1)) throw ParameterError("gamma must lie in [0,1]");
  if (p.L < 1) throw ParameterError("L must be >= 1");
  if (p.s_max < 1) throw ParameterError("S_max must be >= 1");
  if (p.K && *p.K < 1) throw ParameterError("K must be >= 1");
  SweepRow row;
  row.point = p;
  // gamma is kept as given (not floored to the K grid) so a K sweep at fixed
  // gamma stays on one curve.
  const std::int64_t k1 = effective_K(p.gamma, p.s_max, 1, p.K);
  const std::int64_t g1 = (p.gamma * Rational(k1)).num().convert_to<std::int64_t>();
  std::int64_t gain = p.L * g1;
  if (p.K) gain = std::min(gain, (p.gamma * Rational(*p.K)).floor().convert_to<std::int64_t>());
  row.effective_K = effective_K(p.gamma, p.s_max, p.L, p.K);
  row.effective_gain = gain;
  row.effective_dof = p.L + gain;
  return row;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& grid, unsigned workers) {
  std::vector<SweepRow> rows(grid.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = evaluate_sweep_point(grid[i]);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = evaluate_sweep_point(grid[i]);
      } catch (...) {
        errors[w] = std::current_exception();
        next = grid.size();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = csv_row({"K", "gamma", "L", "S_max", "K_bar_L", "G_bar_L", "d_bar_L"});
  for (const auto& r : rows) {
    out += csv_row({r.point.K ? std::to_string(*r.point.K) : std::string("unbounded"),
                    r.point.gamma.str(), std::to_string(r.point.L), r.point.s_max.str(),
                    std::to_string(r.effective_K), std::to_string(r.effective_gain),
                    std::to_string(r.effective_dof)});
  }
  return out;
}

}  // namespace gcache::cli
