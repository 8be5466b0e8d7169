#include "gcache/delivery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "gcache/errors.hpp"

namespace gcache {

namespace {

/// A precoder column together with the antennas it drives.
struct Beam {
  const CMatrix* precoder = nullptr;
  const std::vector<int>* antennas = nullptr;
};

Complex gain_towards(const CMatrix& H, int row, const Beam& beam, int position) {
  Complex acc = 0.0;
  const auto& ants = *beam.antennas;
  for (std::size_t i = 0; i < ants.size(); ++i) {
    acc += H(row, ants[i]) * (*beam.precoder)(static_cast<Eigen::Index>(i), position);
  }
  return acc;
}

double row_norm(const CMatrix& H, int row, const std::vector<int>& antennas) {
  double s = 0.0;
  for (int a : antennas) s += std::norm(H(row, a));
  return std::sqrt(s);
}

int request_of(std::span<const int> requests, int user) {
  return requests[static_cast<std::size_t>(user - 1)];
}

void validate_requests(const PlacementLayout& layout, std::span<const int> requests) {
  if (static_cast<int>(requests.size()) != layout.K) {
    throw ParameterError("expected " + std::to_string(layout.K) + " requests, got " +
                         std::to_string(requests.size()));
  }
  for (int r : requests) {
    if (r < 1 || r > layout.file_count) {
      throw ParameterError("request for file " + std::to_string(r) + " outside library [1," +
                           std::to_string(layout.file_count) + "]");
    }
  }
}

/// Superposition of every precoded symbol in the clique, written to `x`;
/// `term` is scratch. When `model` is given, each term's support is checked
/// against transmitter caches.
template <typename BeamFor>
void synthesize(const Clique& clique, const PlacementLayout& layout,
                std::span<const int> requests, const PayloadTable& payloads, int antennas,
                BeamFor&& beam_for, const AntennaModel* model, std::size_t* violations,
                CVector& x, CVector& term, CMatrix* blocks = nullptr) {
  x.setZero(antennas);
  term.resize(antennas);
  if (blocks != nullptr) blocks->setZero(antennas, static_cast<Eigen::Index>(clique.groups.size()));
  for (std::size_t i = 0; i < clique.groups.size(); ++i) {
    const int g = clique.groups[i];
    const std::size_t tau = clique.subfiles[i];
    const auto& members = layout.groups[static_cast<std::size_t>(g - 1)];
    for (std::size_t p = 0; p < members.size(); ++p) {
      const int file = request_of(requests, members[p]);
      const Complex symbol = payloads.symbol(file, tau);
      const Beam beam = beam_for(g, file);
      term.setZero();
      const auto& ants = *beam.antennas;
      for (std::size_t a = 0; a < ants.size(); ++a) {
        term(ants[a]) = symbol * (*beam.precoder)(static_cast<Eigen::Index>(a),
                                                  static_cast<Eigen::Index>(p));
      }
      if (model != nullptr) {
        for (int a = 0; a < antennas; ++a) {
          const int owner = model->antenna_owner[static_cast<std::size_t>(a)];
          if (!model->owner_has_file[static_cast<std::size_t>(owner)][static_cast<std::size_t>(file - 1)] &&
              term(a) != Complex(0.0, 0.0)) {
            ++*violations;
          }
        }
      }
      x += term;
      if (blocks != nullptr) blocks->col(static_cast<Eigen::Index>(i)) += term;
    }
  }
}

/// Stage 2 of decoding: the coefficient of the user's own term. Other
/// in-group terms are nulled by the precoders; their leakage is recorded.
template <typename BeamFor>
Complex desired_coefficient(int user, int own, const CMatrix& H, const PlacementLayout& layout,
                            std::span<const int> requests, BeamFor&& beam_for, double* zf_residual) {
  const int row = user - 1;
  const auto& members = layout.groups[static_cast<std::size_t>(own - 1)];
  Complex desired = 0.0;
  for (std::size_t p = 0; p < members.size(); ++p) {
    const Beam beam = beam_for(own, request_of(requests, members[p]));
    const Complex c = gain_towards(H, row, beam, static_cast<int>(p));
    if (members[p] == user) {
      desired = c;
    } else if (zf_residual != nullptr) {
      const double norm = row_norm(H, row, *beam.antennas);
      const double mag = std::sqrt(std::norm(c));
      *zf_residual = std::max(*zf_residual, norm > 0.0 ? mag / norm : mag);
    }
  }
  if (std::sqrt(std::norm(desired)) < kDecodeFloor) {
    throw NumericalDegeneracyError("desired coefficient at user " + std::to_string(user) +
                                   " below decoding floor");
  }
  return desired;
}

template <typename BeamFor>
Complex decode(int user, Complex y, const CMatrix& H, const PlacementLayout& layout,
               std::span<const int> requests, const Clique& clique, const UserCache& cache,
               BeamFor&& beam_for, double* zf_residual) {
  const int own = layout.group_of(user);
  const int row = user - 1;
  const auto it = std::find(clique.groups.begin(), clique.groups.end(), own);
  if (it == clique.groups.end()) {
    throw ParameterError("user " + std::to_string(user) + " is not served by this clique");
  }

  // Stage 1: cache-out of every term addressed to other groups.
  for (std::size_t i = 0; i < clique.groups.size(); ++i) {
    const int g = clique.groups[i];
    if (g == own) continue;
    const std::size_t tau = clique.subfiles[i];
    const auto& members = layout.groups[static_cast<std::size_t>(g - 1)];
    for (std::size_t p = 0; p < members.size(); ++p) {
      const int file = request_of(requests, members[p]);
      y -= cache.symbol(file, tau) * gain_towards(H, row, beam_for(g, file), static_cast<int>(p));
    }
  }

  return y / desired_coefficient(user, own, H, layout, requests, beam_for, zf_residual);
}

// Per-user delivery counters for runs that do not keep records.
class Tally {
 public:
  Tally(const PlacementLayout& layout)
      : S_(layout.subpacketization()), counts_(static_cast<std::size_t>(layout.K) * S_) {}

  void add(int user, std::size_t tau) {
    if (counts_[static_cast<std::size_t>(user - 1) * S_ + tau].fetch_add(1, std::memory_order_relaxed) != 0) {
      repeated_.store(true, std::memory_order_relaxed);
    }
  }

  [[nodiscard]] bool complete(const PlacementLayout& layout) const {
    if (repeated_.load()) return false;
    for (int user = 1; user <= layout.K; ++user) {
      const auto& cached = layout.cache_table[static_cast<std::size_t>(layout.group_of(user) - 1)];
      for (std::size_t s = 0; s < S_; ++s) {
        const int expected = cached[s] ? 0 : 1;
        if (counts_[static_cast<std::size_t>(user - 1) * S_ + s].load() != expected) return false;
      }
    }
    return true;
  }

 private:
  std::size_t S_;
  std::vector<std::atomic<std::uint8_t>> counts_;
  std::atomic<bool> repeated_{false};
};

struct CliqueOutcome {
  std::vector<std::pair<int, DeliveryRecord>> records;
  double max_error = 0.0;
  double max_zf_residual = 0.0;
  std::size_t locality_violations = 0;
};

// Buffers reused across the cliques of one worker.
struct Scratch {
  CMatrix H;
  std::vector<CMatrix> precoders;  // [set * K' + g - 1]
  std::vector<std::size_t> touched;
  CMatrix sub;
  CMatrix blocks;  // column i: everything sent to the i-th group of the clique
  CMatrix known;   // column i: sum of all blocks except column i
  CVector x;
  CVector term;
  CVector acc;
  std::vector<char> valid;  // precoders[i] is current for this clique
  std::mt19937_64 channel_rng;
  std::mt19937_64 noise_rng;
};

// Cliques share random streams in aligned blocks of this many; worker chunks
// start on block boundaries, so results do not depend on the worker count.
constexpr std::size_t kStreamBlock = 256;

class Engine {
 public:
  Engine(const PlacementLayout& layout, const AntennaModel& model, std::span<const int> requests,
         const PayloadTable& payloads, std::uint64_t seed, double noise_power, bool freeze)
      : layout_(layout),
        model_(model),
        requests_(requests),
        payloads_(payloads),
        seed_(seed),
        noise_power_(noise_power),
        freeze_(freeze),
        S_(layout.subpacketization()) {
    group_caches_.resize(static_cast<std::size_t>(layout_.group_count) * S_);
    for (std::size_t g = 0; g < layout_.cache_table.size(); ++g) {
      for (std::size_t s = 0; s < S_; ++s) group_caches_[g * S_ + s] = layout_.cache_table[g][s] ? 1 : 0;
    }
    if (freeze_) {
      frozen_ = draw_channel(layout_.K, model_.total_antennas,
                             derive_seed(seed_, SeedStream::kChannel, 0)).H;
    }
  }

  [[nodiscard]] Scratch make_scratch() const {
    Scratch s;
    s.H = CMatrix::Zero(layout_.K, model_.total_antennas);
    s.precoders.resize(model_.antenna_sets.size() * static_cast<std::size_t>(layout_.group_count));
    s.valid.assign(s.precoders.size(), 0);
    return s;
  }

  // Accumulates into `out`, which may already hold earlier cliques.
  void run(std::size_t index, const Clique& clique, Tally* tally, CliqueOutcome& out,
           Scratch& scratch) const {
    if (index % kStreamBlock == 0) {
      const std::uint64_t block = index / kStreamBlock;
      if (!freeze_) scratch.channel_rng.seed(derive_seed(seed_, SeedStream::kChannel, block + 1));
      if (noise_power_ > 0.0) scratch.noise_rng.seed(derive_seed(seed_, SeedStream::kNoise, block));
    }
    const CMatrix& H = freeze_ ? frozen_ : scratch.H;
    if (!freeze_) {
      draw_served_rows(clique, scratch);
      for (std::size_t i : scratch.touched) scratch.valid[i] = 0;
      scratch.touched.clear();
    }

    const auto Kp = static_cast<std::size_t>(layout_.group_count);
    for (int g : clique.groups) {
      const auto& members = layout_.groups[static_cast<std::size_t>(g - 1)];
      for (int user : members) {
        const auto s = static_cast<std::size_t>(
            model_.set_of_file[static_cast<std::size_t>(request_of(requests_, user) - 1)]);
        const std::size_t slot = s * Kp + static_cast<std::size_t>(g - 1);
        if (scratch.valid[slot]) continue;
        const auto& ants = model_.antenna_sets[s];
        scratch.sub.resize(static_cast<Eigen::Index>(members.size()), static_cast<Eigen::Index>(ants.size()));
        for (std::size_t r = 0; r < members.size(); ++r) {
          for (std::size_t c = 0; c < ants.size(); ++c) {
            scratch.sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = H(members[r] - 1, ants[c]);
          }
        }
        zero_forcing_precoder(scratch.sub, scratch.precoders[slot]);
        scratch.valid[slot] = 1;
        scratch.touched.push_back(slot);
      }
    }
    auto beam_for = [&](int g, int file) {
      const auto s = static_cast<std::size_t>(model_.set_of_file[static_cast<std::size_t>(file - 1)]);
      return Beam{&scratch.precoders[s * Kp + static_cast<std::size_t>(g - 1)], &model_.antenna_sets[s]};
    };

    synthesize(clique, layout_, requests_, payloads_, model_.total_antennas, beam_for, &model_,
               &out.locality_violations, scratch.x, scratch.term, &scratch.blocks);
    const CVector& x = scratch.x;

    // Prefix/suffix sums give every group the superposition of the other
    // groups' blocks, which is what its users cancel from their caches.
    const auto n = static_cast<Eigen::Index>(clique.groups.size());
    scratch.known.setZero(model_.total_antennas, n);
    CVector& acc = scratch.acc;
    acc.setZero(model_.total_antennas);
    for (Eigen::Index i = 0; i < n; ++i) {
      scratch.known.col(i) = acc;
      acc += scratch.blocks.col(i);
    }
    acc.setZero();
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      scratch.known.col(i) += acc;
      acc += scratch.blocks.col(i);
    }

    std::normal_distribution<double> normal(0.0, std::sqrt(noise_power_ / 2.0));
    for (std::size_t i = 0; i < clique.groups.size(); ++i) {
      const int g = clique.groups[i];
      const std::size_t tau = clique.subfiles[i];
      for (int user : layout_.groups[static_cast<std::size_t>(g - 1)]) {
        Complex y = (H.row(user - 1) * x)(0);
        if (noise_power_ > 0.0) {
          const double re = normal(scratch.noise_rng);
          const double im = normal(scratch.noise_rng);
          y += Complex(re, im);
        }
        // Stage 1: the other groups' subfiles must all sit in this user's cache.
        const std::uint8_t* cache = group_caches_.data() + static_cast<std::size_t>(g - 1) * S_;
        for (std::size_t j = 0; j < clique.groups.size(); ++j) {
          if (j != i && cache[clique.subfiles[j]] == 0) {
            throw InvariantError("user " + std::to_string(user) + " cannot cancel subfile " +
                                 std::to_string(clique.subfiles[j]));
          }
        }
        y -= (H.row(user - 1) * scratch.known.col(static_cast<Eigen::Index>(i)))(0);
        const Complex d = desired_coefficient(user, g, H, layout_, requests_, beam_for, &out.max_zf_residual);
        const Complex recovered = y * std::conj(d) / std::norm(d);
        const int file = request_of(requests_, user);
        DeliveryRecord rec{{file, tau}, recovered, payloads_.symbol(file, tau), 0.0};
        rec.error = std::sqrt(std::norm(rec.recovered - rec.reference));
        out.max_error = std::max(out.max_error, rec.error);
        if (tally != nullptr) {
          tally->add(user, tau);
        } else {
          out.records.emplace_back(user, rec);
        }
      }
    }
  }

 private:
  // Fresh i.i.d. CN(0,1) rows for the users served by this clique, drawn in
  // increasing user order from the block's channel stream. Rows of idle
  // users are never read, so they are not drawn.
  void draw_served_rows(const Clique& clique, Scratch& scratch) const {
    auto& rng = scratch.channel_rng;
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (int l = 0; l < layout_.L; ++l) {
      for (int g : clique.groups) {
        const int row = l * layout_.group_count + g - 1;
        for (int a = 0; a < model_.total_antennas; ++a) {
          const double re = normal(rng);
          const double im = normal(rng);
          scratch.H(row, a) = Complex(re, im);
        }
      }
    }
  }

  const PlacementLayout& layout_;
  const AntennaModel& model_;
  std::span<const int> requests_;
  const PayloadTable& payloads_;
  std::uint64_t seed_;
  double noise_power_;
  bool freeze_;
  std::size_t S_;
  std::vector<std::uint8_t> group_caches_;  // [(g-1) * S + tau]
  CMatrix frozen_;
};

bool check_complete(const PlacementLayout& layout, std::span<const int> requests,
                    const std::vector<std::vector<DeliveryRecord>>& per_user) {
  const std::size_t S = layout.subpacketization();
  for (int user = 1; user <= layout.K; ++user) {
    std::vector<int> count(S, 0);
    for (const auto& rec : per_user[static_cast<std::size_t>(user - 1)]) {
      if (rec.subfile.file != request_of(requests, user)) return false;
      ++count[rec.subfile.tau];
    }
    for (std::size_t s = 0; s < S; ++s) {
      const int expected = layout.user_caches(user, s) ? 0 : 1;
      if (count[s] != expected) return false;
    }
  }
  return true;
}

// Cliques by index, in plan order. With no plan, the Maddah-Ali-Niesen
// cliques of the layout are generated on the fly (every (t+1)-subset of the
// groups in lexicographic order), so large runs never hold the whole plan.
class CliqueCursor {
 public:
  CliqueCursor(const DeliveryPlan* plan, const PlacementLayout& layout)
      : plan_(plan),
        family_(&layout.tau_family),
        n_(layout.group_count),
        k_(layout.tau_family.subset_size() + 1) {}

  static std::size_t count(const DeliveryPlan* plan, const PlacementLayout& layout) {
    if (plan != nullptr) return plan->cliques.size();
    return static_cast<std::size_t>(binomial_u64(layout.group_count, layout.tau_family.subset_size() + 1));
  }

  const Clique& at(std::size_t index) {
    if (plan_ != nullptr) return plan_->cliques[index];
    if (has_current_ && index == pos_ + 1) {
      advance();
    } else if (!has_current_ || index != pos_) {
      unrank(index);
    }
    pos_ = index;
    has_current_ = true;
    fill_subfiles();
    return current_;
  }

 private:
  void unrank(std::size_t index) {
    auto& g = current_.groups;
    g.resize(static_cast<std::size_t>(k_));
    int prev = 0;
    for (int q = 0; q < k_; ++q) {
      for (int c = prev + 1;; ++c) {
        const auto below = static_cast<std::size_t>(binomial_u64(n_ - c, k_ - q - 1));
        if (index < below) {
          g[static_cast<std::size_t>(q)] = c;
          prev = c;
          break;
        }
        index -= below;
      }
    }
  }

  void advance() {
    auto& g = current_.groups;
    int i = k_ - 1;
    while (i >= 0 && g[static_cast<std::size_t>(i)] == n_ - k_ + i + 1) --i;
    ++g[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k_; ++j) g[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j - 1)] + 1;
  }

  void fill_subfiles() {
    const auto& g = current_.groups;
    current_.subfiles.resize(g.size());
    rest_.resize(g.size() - 1);
    for (std::size_t skip = 0; skip < g.size(); ++skip) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i != skip) rest_[w++] = g[i];
      }
      current_.subfiles[skip] = family_->index_of(rest_);
    }
  }

  const DeliveryPlan* plan_;
  const SubsetFamily* family_;
  int n_;
  int k_;
  std::size_t pos_ = 0;
  bool has_current_ = false;
  Clique current_;
  Subset rest_;
};

DeliveryReport run_once(const PlacementLayout& layout, const AntennaModel& model,
                        const DeliveryPlan* plan, std::span<const int> requests,
                        std::uint64_t seed, const DeliveryOptions& options) {
  const double noise_power =
      options.snr_db ? noise_power_from_snr_db(*options.snr_db) : options.noise_power;
  if (!(noise_power >= 0.0)) throw ParameterError("noise power must be nonnegative");
  const PayloadTable payloads(layout.file_count, layout.subpacketization(),
                              derive_seed(seed, SeedStream::kPayload, 0));
  const Engine engine(layout, model, requests, payloads, seed, noise_power, options.freeze_channel);

  const std::size_t n = CliqueCursor::count(plan, layout);
  std::unique_ptr<Tally> tally;
  if (!options.keep_records) tally = std::make_unique<Tally>(layout);
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(n, 1));
  std::vector<CliqueOutcome> chunks(workers);
  const std::size_t blocks = (n + kStreamBlock - 1) / kStreamBlock;
  auto run_chunk = [&](std::size_t w) {
    const std::size_t begin = std::min(n, blocks * w / workers * kStreamBlock);
    const std::size_t end = std::min(n, blocks * (w + 1) / workers * kStreamBlock);
    CliqueOutcome out;
    Scratch scratch = engine.make_scratch();
    CliqueCursor cursor(plan, layout);
    for (std::size_t c = begin; c < end; ++c) engine.run(c, cursor.at(c), tally.get(), out, scratch);
    return out;
  };
  if (workers == 1) {
    chunks[0] = run_chunk(0);
  } else {
    std::vector<std::future<CliqueOutcome>> futures;
    for (std::size_t w = 0; w < workers; ++w) futures.push_back(std::async(std::launch::async, run_chunk, w));
    for (std::size_t w = 0; w < workers; ++w) chunks[w] = futures[w].get();
  }

  DeliveryReport report;
  report.K = layout.K;
  report.L = layout.L;
  report.gamma = layout.gamma;
  report.seed = seed;
  report.requests.assign(requests.begin(), requests.end());
  report.per_user.resize(static_cast<std::size_t>(layout.K));
  for (const auto& outcome : chunks) {
    for (const auto& [user, rec] : outcome.records) {
      report.per_user[static_cast<std::size_t>(user - 1)].push_back(rec);
    }
    report.max_error = std::max(report.max_error, outcome.max_error);
    report.max_zf_residual = std::max(report.max_zf_residual, outcome.max_zf_residual);
    report.locality_violations += outcome.locality_violations;
  }
  report.transmissions = n;
  report.subpacketization = layout.subpacketization();
  report.measured_delay = Rational(static_cast<std::int64_t>(n),
                                   static_cast<std::int64_t>(layout.subpacketization()));
  const Rational uncached = Rational(layout.K) * (Rational(1) - layout.gamma);
  report.achieved_dof = n == 0 ? Rational(0) : uncached / report.measured_delay;
  report.complete = tally ? tally->complete(layout) : check_complete(layout, requests, report.per_user);
  return report;
}

}  // namespace

PayloadTable::PayloadTable(int file_count, std::size_t subpacketization, std::uint64_t seed)
    : file_count_(file_count), subpacketization_(subpacketization), seed_(seed) {
  if (file_count < 1) throw ParameterError("library size must be >= 1");
}

Complex PayloadTable::symbol(int file, std::size_t tau) const {
  if (file < 1 || file > file_count_ || tau >= subpacketization_) {
    throw ParameterError("payload index (" + std::to_string(file) + ", " + std::to_string(tau) +
                         ") out of range");
  }
  if (cleared_) return Complex(0.0, 0.0);
  // Uniform phase without trigonometry: a uniform point of the unit disk,
  // both coordinates from one 64-bit draw, scaled onto the circle. Draws are
  // keyed by (symbol, attempt), so they do not depend on evaluation order.
  const std::uint64_t index = static_cast<std::uint64_t>(file - 1) * subpacketization_ + tau;
  for (std::uint64_t attempt = 0; attempt < kPayloadAttempts; ++attempt) {
    const std::uint64_t bits = splitmix64(seed_ ^ (index * kPayloadAttempts + attempt));
    const double re = static_cast<double>(static_cast<std::int32_t>(bits >> 32)) * 0x1p-31;
    const double im = static_cast<double>(static_cast<std::int32_t>(bits & 0xffffffffu)) * 0x1p-31;
    const double r2 = re * re + im * im;
    if (r2 <= 1.0 && r2 >= 1e-12) {
      const double inv = 1.0 / std::sqrt(r2);
      return Complex(re * inv, im * inv);
    }
  }
  return Complex(1.0, 0.0);  // every draw rejected: probability below 1e-42
}

void PayloadTable::clear() { cleared_ = true; }

UserCache::UserCache(const PayloadTable& payloads, const PlacementLayout& layout, int user)
    : payloads_(&payloads),
      cached_(&layout.cache_table[static_cast<std::size_t>(layout.group_of(user) - 1)]),
      user_(user) {}

bool UserCache::holds(std::size_t tau) const { return tau < cached_->size() && (*cached_)[tau]; }

Complex UserCache::symbol(int file, std::size_t tau) const {
  if (tau >= cached_->size() || !(*cached_)[tau]) {
    throw InvariantError("user " + std::to_string(user_) + " does not cache subfile " +
                         std::to_string(tau));
  }
  return payloads_->symbol(file, tau);
}

bool DeliveryReport::passed(double error_tolerance) const {
  return complete && max_error <= error_tolerance && locality_violations == 0;
}

PrecoderSet compute_precoders(const ChannelRealization& channel, const PlacementLayout& layout,
                              std::span<const int> groups) {
  if (channel.H.rows() != layout.K || channel.H.cols() != layout.L) {
    throw ParameterError("channel shape does not match the layout");
  }
  PrecoderSet set;
  set.by_group.resize(static_cast<std::size_t>(layout.group_count));
  auto compute = [&](int g) {
    const auto& members = layout.groups[static_cast<std::size_t>(g - 1)];
    CMatrix sub(layout.L, layout.L);
    for (int r = 0; r < layout.L; ++r) sub.row(r) = channel.H.row(members[static_cast<std::size_t>(r)] - 1);
    set.by_group[static_cast<std::size_t>(g - 1)] = zero_forcing_precoder(sub);
  };
  if (groups.empty()) {
    for (int g = 1; g <= layout.group_count; ++g) compute(g);
  } else {
    for (int g : groups) compute(g);
  }
  return set;
}

double max_zf_residual(const ChannelRealization& channel, const PlacementLayout& layout,
                       const PrecoderSet& precoders) {
  double worst = 0.0;
  for (int g = 1; g <= layout.group_count; ++g) {
    if (!precoders.has_group(g)) continue;
    const auto& members = layout.groups[static_cast<std::size_t>(g - 1)];
    const CMatrix& V = precoders.group(g);
    for (std::size_t p = 0; p < members.size(); ++p) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i == p) continue;
        const auto h = channel.H.row(members[i] - 1);
        const Complex c = (h * V.col(static_cast<Eigen::Index>(p)))(0);
        worst = std::max(worst, std::abs(c) / h.norm());
      }
    }
  }
  return worst;
}

namespace {

std::vector<int> iota_antennas(int L) {
  std::vector<int> a(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) a[static_cast<std::size_t>(i)] = i;
  return a;
}

}  // namespace

CVector build_transmission(const Clique& clique, const PlacementLayout& layout,
                           std::span<const int> requests, const PayloadTable& payloads,
                           const PrecoderSet& precoders) {
  validate_requests(layout, requests);
  const std::vector<int> ants = iota_antennas(layout.L);
  auto beam_for = [&](int g, int) { return Beam{&precoders.group(g), &ants}; };
  CVector x;
  CVector term;
  synthesize(clique, layout, requests, payloads, layout.L, beam_for, nullptr, nullptr, x, term);
  return x;
}

Complex receive_and_decode(int user, Complex y, const ChannelRealization& channel,
                           const PlacementLayout& layout, const PrecoderSet& precoders,
                           const UserCache& cache, std::span<const int> requests,
                           const Clique& clique) {
  validate_requests(layout, requests);
  if (cache.user() != user) throw ParameterError("cache belongs to a different user");
  const std::vector<int> ants = iota_antennas(layout.L);
  auto beam_for = [&](int g, int) { return Beam{&precoders.group(g), &ants}; };
  return decode(user, y, channel.H, layout, requests, clique, cache, beam_for, nullptr);
}

AntennaModel full_array_model(int L, int file_count) {
  AntennaModel m;
  m.total_antennas = L;
  m.antenna_sets.push_back(iota_antennas(L));
  m.set_of_file.assign(static_cast<std::size_t>(file_count), 0);
  m.antenna_owner.assign(static_cast<std::size_t>(L), 0);
  m.owner_has_file.assign(1, std::vector<bool>(static_cast<std::size_t>(file_count), true));
  return m;
}

namespace {

DeliveryReport run_with_retries(const PlacementLayout& layout, const DeliveryPlan* plan,
                                const AntennaModel& antennas, std::span<const int> requests,
                                std::uint64_t seed, const DeliveryOptions& options) {
  validate_requests(layout, requests);
  if (static_cast<int>(antennas.set_of_file.size()) != layout.file_count) {
    throw ParameterError("antenna model does not cover the library");
  }
  for (const auto& s : antennas.antenna_sets) {
    if (static_cast<int>(s.size()) != layout.L) {
      throw ParameterError("every antenna set must have exactly L antennas");
    }
  }
  if (options.retry_cap < 1) throw ParameterError("retry cap must be >= 1");

  for (int attempt = 0;; ++attempt) {
    try {
      DeliveryReport r =
          run_once(layout, antennas, plan, requests, seed + static_cast<std::uint64_t>(attempt), options);
      r.attempts = attempt + 1;
      return r;
    } catch (const ChannelDegenerateError&) {
      if (attempt + 1 >= options.retry_cap) throw;
    } catch (const NumericalDegeneracyError&) {
      if (attempt + 1 >= options.retry_cap) throw;
    }
  }
}

}  // namespace

DeliveryReport run_delivery(const PlacementLayout& layout, const DeliveryPlan& plan,
                            const AntennaModel& antennas, std::span<const int> requests,
                            std::uint64_t seed, const DeliveryOptions& options) {
  return run_with_retries(layout, &plan, antennas, requests, seed, options);
}

DeliveryReport run_delivery(const PlacementLayout& layout, const AntennaModel& antennas,
                            std::span<const int> requests, std::uint64_t seed,
                            const DeliveryOptions& options) {
  if (layout.algorithm != MaddahAliNiesen{}.name()) {
    throw ParameterError("layout built with '" + layout.algorithm +
                         "'; pass its DeliveryPlan explicitly");
  }
  return run_with_retries(layout, nullptr, antennas, requests, seed, options);
}

DeliveryReport run_delivery(const PlacementLayout& layout, std::span<const int> requests,
                            std::uint64_t seed, const DeliveryOptions& options) {
  return run_delivery(layout, full_array_model(layout.L, layout.file_count), requests, seed, options);
}

DeliveryReport run_delivery(int K, int L, const Rational& gamma, int file_count,
                            std::span<const int> requests, std::uint64_t seed,
                            const DeliveryOptions& options) {
  return run_delivery(build_placement(K, L, gamma, file_count), requests, seed, options);
}

}  // namespace gcache
