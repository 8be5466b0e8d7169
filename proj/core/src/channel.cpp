#include "gcache/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gcache/errors.hpp"

namespace gcache {

namespace {

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t counter) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ counter);
}

double noise_power_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

ChannelRealization draw_channel(int K, int L, std::uint64_t seed, double noise_power) {
  if (K < 1 || L < 1) throw ParameterError("draw_channel: K and L must be >= 1");
  if (!(noise_power >= 0.0)) throw ParameterError("noise power must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ChannelRealization ch;
  ch.H.resize(K, L);
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < L; ++l) {
      const double re = normal(rng);
      const double im = normal(rng);
      ch.H(k, l) = Complex(re, im);
    }
  }
  ch.noise_power = noise_power;
  ch.seed = seed;
  return ch;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

void zero_forcing_precoder(const CMatrix& group_channel, CMatrix& out) {
  if (group_channel.rows() != group_channel.cols()) {
    throw ParameterError("zero_forcing_precoder: group channel must be square");
  }
  if (group_channel.rows() == 1) {
    // A nonzero scalar is perfectly conditioned; its normalized inverse is a pure phase.
    const Complex h = group_channel(0, 0);
    if (h == Complex(0.0, 0.0)) throw ChannelDegenerateError("zero scalar channel");
    out.resize(1, 1);
    out(0, 0) = std::conj(h) / std::sqrt(std::norm(h));
    return;
  }
  const double cond = condition_number(group_channel);
  if (!(cond <= kConditionLimit)) {
    std::ostringstream os;
    os << "group channel condition number " << cond << " exceeds " << kConditionLimit;
    throw ChannelDegenerateError(os.str());
  }
  out = group_channel.partialPivLu().inverse();
  for (Eigen::Index c = 0; c < out.cols(); ++c) out.col(c).normalize();
}

CMatrix zero_forcing_precoder(const CMatrix& group_channel) {
  CMatrix v;
  zero_forcing_precoder(group_channel, v);
  return v;
}

}  // namespace gcache
