#include "gcache/interference.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gcache/combinatorics.hpp"
#include "gcache/errors.hpp"
#include "gcache/placement.hpp"
#include "gcache/scheme_params.hpp"

namespace gcache {

bool TransmitterPlacement::caches(int tx, int file) const {
  const auto& files = per_tx_files.at(static_cast<std::size_t>(tx - 1));
  return std::find(files.begin(), files.end(), file) != files.end();
}

std::vector<int> TransmitterPlacement::holders(int file) const {
  std::vector<int> out;
  for (int m = 1; m <= K_T; ++m) {
    if (caches(m, file)) out.push_back(m);
  }
  return out;
}

TransmitterPlacement build_transmitter_caches(int K_T, int M_T, int N, int L_T) {
  if (K_T < 1 || M_T < 1 || N < 1 || L_T < 1) {
    throw ParameterError("K_T, M_T, N and L_T must all be >= 1");
  }
  if (M_T > N) throw ParameterError("transmitter cache M_T exceeds library size N");
  if ((K_T * M_T) % N != 0) {
    throw ParameterError("K_T*M_T/N = " + std::to_string(K_T * M_T) + "/" + std::to_string(N) +
                         " is not an integer; each file must sit at a whole number of transmitters");
  }
  TransmitterPlacement p;
  p.K_T = K_T;
  p.M_T = M_T;
  p.N = N;
  p.L_T = L_T;
  p.per_tx_files.resize(static_cast<std::size_t>(K_T));
  for (int m = 1; m <= K_T; ++m) {
    for (int n = (m - 1) * M_T + 1; n <= m * M_T; ++n) {
      p.per_tx_files[static_cast<std::size_t>(m - 1)].push_back(1 + (n - 1) % N);
    }
  }
  return p;
}

BigInt ic_subpacketization(std::int64_t K, std::int64_t K_gamma, std::int64_t K_T,
                           const Rational& gamma_T, std::int64_t L_T) {
  if (gamma_T <= Rational(0) || gamma_T > Rational(1)) throw ParameterError("gamma_T must lie in (0,1]");
  const Rational emulated = Rational(K_T) * Rational(L_T) * gamma_T;
  if (!emulated.is_integer()) {
    throw ParameterError("K_T*L_T*gamma_T = " + emulated.str() + " is not an integer");
  }
  return subpacketization_grouped(K, emulated.num().convert_to<std::int64_t>(), K_gamma);
}

AntennaModel interference_antenna_model(const TransmitterPlacement& tx, std::optional<int> active_tx) {
  const int use = active_tx.value_or(tx.redundancy());
  if (use < 1 || use > tx.redundancy()) {
    throw ParameterError("active transmitter count must lie in [1, K_T*gamma_T]");
  }
  AntennaModel m;
  m.total_antennas = tx.K_T * tx.L_T;
  m.antenna_owner.resize(static_cast<std::size_t>(m.total_antennas));
  for (int a = 0; a < m.total_antennas; ++a) m.antenna_owner[static_cast<std::size_t>(a)] = a / tx.L_T;
  m.owner_has_file.assign(static_cast<std::size_t>(tx.K_T), std::vector<bool>(static_cast<std::size_t>(tx.N), false));
  for (int t = 1; t <= tx.K_T; ++t) {
    for (int f : tx.per_tx_files[static_cast<std::size_t>(t - 1)]) {
      m.owner_has_file[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(f - 1)] = true;
    }
  }
  std::map<std::vector<int>, int> set_ids;
  m.set_of_file.resize(static_cast<std::size_t>(tx.N));
  for (int file = 1; file <= tx.N; ++file) {
    const std::vector<int> holders = tx.holders(file);
    std::vector<int> ants;
    for (int i = 0; i < use; ++i) {
      const int t = holders[static_cast<std::size_t>(i)];
      for (int l = 1; l <= tx.L_T; ++l) ants.push_back((t - 1) * tx.L_T + (l - 1));
    }
    auto [it, inserted] = set_ids.emplace(ants, static_cast<int>(m.antenna_sets.size()));
    if (inserted) m.antenna_sets.push_back(ants);
    m.set_of_file[static_cast<std::size_t>(file - 1)] = it->second;
  }
  return m;
}

DeliveryReport run_ic_delivery(int K, const Rational& gamma, const TransmitterPlacement& tx,
                               std::span<const int> requests, std::uint64_t seed,
                               const DeliveryOptions& options, std::optional<int> active_tx) {
  const AntennaModel model = interference_antenna_model(tx, active_tx);
  const int L = static_cast<int>(model.antenna_sets.front().size());
  const PlacementLayout layout = build_placement(K, L, gamma, tx.N);
  return run_delivery(layout, model, requests, seed, options);
}

}  // namespace gcache
