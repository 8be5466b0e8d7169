#include "gcache_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gcache/combinatorics.hpp"
#include "gcache/delivery.hpp"
#include "gcache/errors.hpp"
#include "gcache/interference.hpp"
#include "gcache/memory_sharing.hpp"
#include "gcache/scheme_params.hpp"
#include "gcache/serialize.hpp"

namespace gcache::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNoiselessTolerance = 1e-9;

struct Options {
  std::vector<std::int64_t> K;
  std::string k_range;
  std::vector<std::int64_t> L{1};
  std::vector<std::string> gamma;
  std::vector<std::string> smax;
  std::uint64_t seed = 1;
  std::optional<double> snr_db;
  bool noiseless = false;
  std::string out;
  std::string format;
  bool freeze_channel = false;
  int kt = 1;
  int mt = 1;
  std::optional<int> library_n;
  int lt = 1;
  unsigned workers = 1;
};

template <typename T>
const T& single(const std::vector<T>& values, const char* flag) {
  if (values.size() != 1) throw ParameterError(std::string(flag) + " needs exactly one value");
  return values.front();
}

Rational single_gamma(const Options& o) { return Rational::parse(single(o.gamma, "--gamma")); }

std::optional<BigInt> optional_smax(const Options& o) {
  if (o.smax.empty()) return std::nullopt;
  return parse_big(single(o.smax, "--smax"));
}

int to_int(std::int64_t v, const char* what) {
  if (v < 1 || v > 1'000'000) throw ParameterError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

/// User k requests file 1 + (k-1) mod N: distinct demands whenever N >= K.
std::vector<int> default_requests(int K, int N) {
  std::vector<int> r(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) r[static_cast<std::size_t>(k - 1)] = 1 + (k - 1) % N;
  return r;
}

DeliveryOptions delivery_options(const Options& o) {
  DeliveryOptions d;
  if (o.snr_db && !o.noiseless) d.snr_db = o.snr_db;
  d.freeze_channel = o.freeze_channel;
  d.workers = o.workers;
  return d;
}

bool noiseless(const DeliveryOptions& d) { return !d.snr_db && d.noise_power == 0.0; }

std::string summary_line(const DeliveryReport& r, const Rational& expected_delay) {
  std::ostringstream s;
  s << "K=" << r.K << " L=" << r.L << " gamma=" << r.gamma << " seed=" << r.seed << ": "
    << r.transmissions << " transmissions, delay " << r.measured_delay << " (expected "
    << expected_delay << "), dof " << r.achieved_dof << ", max_err " << format_double(r.max_error)
    << ", complete " << (r.complete ? "yes" : "no") << ", locality_violations "
    << r.locality_violations << "\n";
  return s.str();
}

bool delivery_ok(const DeliveryReport& r, const DeliveryOptions& d, const Rational& expected_delay) {
  if (!r.complete || r.locality_violations != 0) return false;
  if (r.measured_delay != expected_delay) return false;
  return !noiseless(d) || r.max_error <= kNoiselessTolerance;
}

struct Output {
  std::string text;
  int code = kExitOk;
};

Output cmd_params(const Options& o) {
  const std::int64_t K = single(o.K, "--K");
  const std::int64_t L = single(o.L, "--L");
  const SystemParams params = SystemParams::make(K, L, single_gamma(o), optional_smax(o));
  const std::int64_t t = params.caching_gain();
  const Performance perf = theoretical_performance(params);
  const GainReport gains = effective_gain(params);

  ordered_json j = ordered_json::parse(to_json(params, gains));
  j["S_1"] = subpacketization_single(K, t).str();
  j["S_L"] = params.divisible() ? ordered_json(subpacketization_grouped(K, L, t).str()) : ordered_json();
  j["divisible"] = params.divisible();
  j["theoretical_delay"] = perf.delay.str();
  j["trivial_regime"] = perf.trivial_regime;
  if (params.s_max && params.gamma < Rational(1)) {
    j["pd_lc_elevated_gain"] = pd_lc_elevated_gain(params.gamma, *params.s_max, L, K);
  }
  if (params.s_max && *params.s_max >= 2 && t >= 1) {
    j["min_gamma_for_theoretical_gain"] = min_gamma_for_gain(t, *params.s_max, L);
  }

  if (o.format == "csv") {
    std::string csv = csv_row({"field", "value"});
    for (const auto& [key, value] : j.items()) {
      csv += csv_row({key, value.is_string() ? value.get<std::string>()
                           : value.is_null() ? std::string()
                           : value.is_number_float() ? format_double(value.get<double>())
                                                     : value.dump()});
    }
    return {csv};
  }
  return {j.dump(2) + "\n"};
}

Output cmd_sweep(const Options& o) {
  std::vector<std::optional<std::int64_t>> Ks(o.K.begin(), o.K.end());
  if (!o.k_range.empty()) {
    std::int64_t a = 0, b = 0, step = 1;
    char c1 = 0, c2 = 0;
    std::istringstream in(o.k_range);
    if (!(in >> a >> c1 >> b) || c1 != ':') throw ParameterError("--k-range must be START:STOP[:STEP]");
    if (in >> c2) {
      if (c2 != ':' || !(in >> step)) throw ParameterError("--k-range must be START:STOP[:STEP]");
    }
    if (a < 1 || b < a || step < 1) throw ParameterError("--k-range needs 1 <= START <= STOP, STEP >= 1");
    for (std::int64_t k = a; k <= b; k += step) Ks.emplace_back(k);
  }
  if (Ks.empty()) Ks.emplace_back(std::nullopt);
  if (o.gamma.empty()) throw ParameterError("sweep needs at least one --gamma");
  if (o.smax.empty()) throw ParameterError("sweep needs at least one --smax");
  std::vector<Rational> gammas;
  for (const auto& g : o.gamma) gammas.push_back(Rational::parse(g));
  std::vector<BigInt> smaxes;
  for (const auto& s : o.smax) smaxes.push_back(parse_big(s));
  const auto rows = run_sweep(sweep_grid(Ks, gammas, o.L, smaxes), o.workers);
  if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["K"] = r.point.K ? ordered_json(*r.point.K) : ordered_json("unbounded");
      j["gamma"] = r.point.gamma.str();
      j["L"] = r.point.L;
      j["S_max"] = r.point.s_max.str();
      j["K_bar_L"] = r.effective_K;
      j["G_bar_L"] = r.effective_gain;
      j["d_bar_L"] = r.effective_dof;
      arr.push_back(std::move(j));
    }
    return {arr.dump(2) + "\n"};
  }
  return {sweep_csv(rows)};
}

Output cmd_simulate(const Options& o, std::ostream& err) {
  const int K = to_int(single(o.K, "--K"), "--K");
  const int L = to_int(single(o.L, "--L"), "--L");
  const Rational gamma = single_gamma(o);
  const int N = o.library_n ? *o.library_n : K;
  const auto requests = default_requests(K, N);
  const DeliveryOptions d = delivery_options(o);
  const DeliveryReport r = run_delivery(K, L, gamma, N, requests, o.seed, d);
  const Rational expected = Rational(K) * (Rational(1) - r.gamma) / (Rational(L) + Rational(K) * r.gamma);
  err << summary_line(r, expected);
  const int code = delivery_ok(r, d, expected) ? kExitOk : kExitCheckFailed;
  if (o.format == "csv") return {to_csv_summary(r), code};
  return {to_json(r) + "\n", code};
}

Output cmd_ms_plan(const Options& o, std::ostream& err) {
  const MemorySharingPlan plan =
      plan_memory_sharing(single(o.K, "--K"), single(o.L, "--L"), single_gamma(o));
  const GapCheck gap = check_gap(plan);
  const SubpacketizationBounds b = subpacketization_bounds(plan);
  err << "K=" << plan.K << " L=" << plan.L << " gamma=" << plan.gamma << ": p=" << plan.p
      << ", exact delay " << plan.exact_delay << ", realized dof " << gap.realized_dof
      << ", gap bound " << gap.gap_bound << (gap.within_bound ? " satisfied" : " VIOLATED")
      << ", S=" << plan.total_subpacketization << "\n";
  const bool ok = gap.within_bound && (!b.applicable || b.within_k_bound);
  const int code = ok ? kExitOk : kExitCheckFailed;
  if (o.format == "csv") return {csv_row(gap_csv_header()) + csv_row(gap_csv_fields(plan)), code};
  return {to_json(plan) + "\n", code};
}

Output cmd_ic_simulate(const Options& o, std::ostream& err) {
  const int K = to_int(single(o.K, "--K"), "--K");
  const Rational gamma = single_gamma(o);
  if (!o.library_n) throw ParameterError("ic-simulate needs --library-n");
  const int N = *o.library_n;
  const TransmitterPlacement tx = build_transmitter_caches(o.kt, o.mt, N, o.lt);
  const auto requests = default_requests(K, N);
  const DeliveryOptions d = delivery_options(o);
  const DeliveryReport r = run_ic_delivery(K, gamma, tx, requests, o.seed, d);
  const Rational expected =
      Rational(K) * (Rational(1) - r.gamma) / (Rational(r.L) + Rational(K) * r.gamma);
  err << "K_T=" << tx.K_T << " M_T=" << tx.M_T << " N=" << tx.N << " L_T=" << tx.L_T
      << " emulated L=" << tx.emulated_antennas() << "; " << summary_line(r, expected);
  const int code = delivery_ok(r, d, expected) ? kExitOk : kExitCheckFailed;
  if (o.format == "csv") return {to_csv_summary(r), code};
  ordered_json j;
  j["transmitters"] = ordered_json::parse(to_json(tx));
  j["report"] = ordered_json::parse(to_json(r));
  return {j.dump(2) + "\n", code};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-antenna coded caching: parameters, sweeps and simulations", "gcache"};
  app.set_config("--config", "", "TOML file of option values; command-line flags take precedence");
  app.require_subcommand(1);

  Options o;
  app.add_option("--K", o.K, "Number of users (a list for sweep)")->delimiter(',');
  app.add_option("--k-range", o.k_range, "Sweep K over START:STOP[:STEP]");
  app.add_option("--L", o.L, "Transmit antennas (a list for sweep)")->capture_default_str()->delimiter(',');
  app.add_option("--gamma", o.gamma, "Normalized cache size M/N (a list for sweep)")->delimiter(',');
  app.add_option("--smax", o.smax, "Subpacketization cap, e.g. 1e6 or C(80,4) (a list for sweep)")
      ->delimiter(';');
  app.add_option("--seed", o.seed, "Base seed for all randomness")->capture_default_str();
  auto* snr = app.add_option("--snr-db", o.snr_db, "Receiver SNR in dB (noiseless when absent)");
  app.add_flag("--noiseless", o.noiseless, "Force noiseless reception")->excludes(snr);
  app.add_option("--out", o.out, "Write the report to this file instead of stdout");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--freeze-channel", o.freeze_channel, "Use one channel realization for every clique");
  app.add_option("--kt", o.kt, "Transmitters K_T")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mt", o.mt, "Files cached per transmitter M_T")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--library-n", o.library_n, "Library size N")->check(CLI::PositiveNumber);
  app.add_option("--lt", o.lt, "Antennas per transmitter L_T")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  auto* params = app.add_subcommand("params", "Subpacketization, DoF, delay and effective gains");
  auto* sweep = app.add_subcommand("sweep", "Effective gain over a grid of K, gamma, L and S_max");
  auto* simulate = app.add_subcommand("simulate", "End-to-end placement and delivery simulation");
  auto* ms_plan = app.add_subcommand("ms-plan", "Memory-sharing plan for non-divisible parameters");
  auto* ic = app.add_subcommand("ic-simulate", "Cache-aided interference network simulation");
  for (auto* sub : {params, sweep, simulate, ms_plan, ic}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (o.format.empty()) o.format = sweep->parsed() ? "csv" : "json";
    Output result;
    if (params->parsed()) result = cmd_params(o);
    else if (sweep->parsed()) result = cmd_sweep(o);
    else if (simulate->parsed()) result = cmd_simulate(o, err);
    else if (ms_plan->parsed()) result = cmd_ms_plan(o, err);
    else result = cmd_ic_simulate(o, err);

    if (o.out.empty()) {
      out << result.text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw ParameterError("cannot open --out file '" + o.out + "'");
      file << result.text;
    }
    return result.code;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("gcache");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gcache::cli
