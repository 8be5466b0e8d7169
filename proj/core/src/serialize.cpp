#include "gcache/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace gcache {

namespace {

using nlohmann::ordered_json;

std::string big_str(const BigInt& v) { return v.str(); }

ordered_json complex_json(const Complex& c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json params_json(const SystemParams& p) {
  ordered_json j;
  j["K"] = p.K;
  j["L"] = p.L;
  j["gamma"] = p.gamma.str();
  j["s_max"] = p.s_max ? ordered_json(big_str(*p.s_max)) : ordered_json(nullptr);
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string to_json(const PlacementLayout& layout) {
  ordered_json j;
  j["K"] = layout.K;
  j["L"] = layout.L;
  j["group_count"] = layout.group_count;
  j["N"] = layout.file_count;
  j["gamma"] = layout.gamma.str();
  j["algorithm"] = layout.algorithm;
  j["groups"] = layout.groups;
  j["tau_family"] = layout.tau_family.subsets();
  j["per_group_cache"] = layout.per_group_cache;
  return j.dump(2);
}

std::string to_json(const DeliveryReport& r, bool include_records) {
  ordered_json j;
  j["K"] = r.K;
  j["L"] = r.L;
  j["gamma"] = r.gamma.str();
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["transmissions"] = r.transmissions;
  j["subpacketization"] = r.subpacketization;
  j["measured_delay"] = r.measured_delay.str();
  j["achieved_dof"] = r.achieved_dof.str();
  j["max_error"] = r.max_error;
  j["max_zf_residual"] = r.max_zf_residual;
  j["complete"] = r.complete;
  j["locality_violations"] = r.locality_violations;
  j["requests"] = r.requests;
  if (include_records) {
    ordered_json users = ordered_json::array();
    for (std::size_t k = 0; k < r.per_user.size(); ++k) {
      ordered_json u;
      u["user"] = k + 1;
      ordered_json recs = ordered_json::array();
      for (const auto& rec : r.per_user[k]) {
        ordered_json e;
        e["file"] = rec.subfile.file;
        e["tau"] = rec.subfile.tau;
        e["recovered"] = complex_json(rec.recovered);
        e["reference"] = complex_json(rec.reference);
        e["error"] = rec.error;
        recs.push_back(std::move(e));
      }
      u["records"] = std::move(recs);
      users.push_back(std::move(u));
    }
    j["users"] = std::move(users);
  }
  return j.dump(2);
}

std::string to_json(const MemorySharingPlan& plan) {
  ordered_json j;
  j["K"] = plan.K;
  j["L"] = plan.L;
  j["gamma"] = plan.gamma.str();
  j["K_hat"] = plan.K_hat;
  j["gamma_low"] = plan.gamma_low.str();
  j["gamma_high"] = plan.gamma_high.str();
  j["p"] = plan.p.str();
  ordered_json parts = ordered_json::array();
  for (const auto& part : plan.parts) {
    ordered_json pj;
    pj["fraction"] = part.fraction.str();
    pj["params"] = params_json(part.params);
    pj["group_count"] = part.group_count;
    pj["redundancy"] = part.redundancy;
    pj["subpacketization"] = big_str(part.subpacketization);
    pj["cliques"] = big_str(part.cliques);
    pj["transmitted"] = big_str(part.transmitted);
    pj["slot_duration"] = part.slot_duration.str();
    parts.push_back(std::move(pj));
  }
  j["parts"] = std::move(parts);
  j["total_subpacketization"] = big_str(plan.total_subpacketization);
  j["analytic_delay"] = plan.analytic_delay.str();
  j["exact_delay"] = plan.exact_delay.str();
  j["realized_dof"] = realized_dof(plan).str();
  j["gap_bound"] = plan.gap_bound.str();
  const GapCheck gap = check_gap(plan);
  j["target_dof"] = gap.target_dof.str();
  j["within_gap_bound"] = gap.within_bound;
  const SubpacketizationBounds b = subpacketization_bounds(plan);
  j["k_factor_bound"] = big_str(b.k_factor_bound);
  j["within_k_factor_bound"] = b.within_k_bound;
  j["l_factor_bound"] = big_str(b.l_factor_bound);
  j["within_l_factor_bound"] = b.within_l_bound;
  j["bounds_applicable"] = b.applicable;
  return j.dump(2);
}

std::string to_json(const TransmitterPlacement& p) {
  ordered_json j;
  j["K_T"] = p.K_T;
  j["M_T"] = p.M_T;
  j["N"] = p.N;
  j["L_T"] = p.L_T;
  j["gamma_T"] = p.gamma_T().str();
  j["redundancy"] = p.redundancy();
  j["emulated_antennas"] = p.emulated_antennas();
  j["per_tx_files"] = p.per_tx_files;
  return j.dump(2);
}

std::string to_json(const SystemParams& params, const GainReport& g) {
  ordered_json j = params_json(params);
  j["effective_K"] = g.effective_K;
  j["effective_gain"] = g.effective_gain;
  j["effective_dof"] = g.effective_dof;
  j["theoretical_gain"] = g.theoretical_gain;
  j["theoretical_dof"] = g.theoretical_dof;
  j["subpacketization"] = big_str(g.subpacketization);
  j["lower_bound_gain"] = g.lower_bound_gain;
  j["single_antenna_K"] = g.single_antenna_K;
  j["single_antenna_gain"] = g.single_antenna_gain;
  return j.dump(2);
}

std::string to_csv_summary(const DeliveryReport& r) {
  std::string out = csv_row({"user", "requested_file", "subfiles_recovered", "max_error"});
  for (std::size_t k = 0; k < r.per_user.size(); ++k) {
    double worst = 0.0;
    for (const auto& rec : r.per_user[k]) worst = std::max(worst, rec.error);
    out += csv_row({std::to_string(k + 1), std::to_string(r.requests.at(k)),
                    std::to_string(r.per_user[k].size()), format_double(worst)});
  }
  return out;
}

std::vector<std::string> gap_csv_header() {
  return {"K", "L", "gamma", "K_hat", "p", "total_subpacketization", "exact_delay",
          "analytic_delay", "realized_dof", "target_dof", "gap_bound", "within_gap_bound",
          "within_k_factor_bound", "within_l_factor_bound", "bounds_applicable"};
}

std::vector<std::string> gap_csv_fields(const MemorySharingPlan& plan) {
  const GapCheck gap = check_gap(plan);
  const SubpacketizationBounds b = subpacketization_bounds(plan);
  return {std::to_string(plan.K),
          std::to_string(plan.L),
          plan.gamma.str(),
          std::to_string(plan.K_hat),
          plan.p.str(),
          big_str(plan.total_subpacketization),
          plan.exact_delay.str(),
          plan.analytic_delay.str(),
          gap.realized_dof.str(),
          gap.target_dof.str(),
          gap.gap_bound.str(),
          gap.within_bound ? "true" : "false",
          b.within_k_bound ? "true" : "false",
          b.within_l_bound ? "true" : "false",
          b.applicable ? "true" : "false"};
}

}  // namespace gcache
