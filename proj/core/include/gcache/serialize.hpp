#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gcache/delivery.hpp"
#include "gcache/interference.hpp"
#include "gcache/memory_sharing.hpp"
#include "gcache/placement.hpp"
#include "gcache/scheme_params.hpp"

namespace gcache {

// Structured-text output is JSON. Big integers and rationals are written as
// strings ("190", "7/4") so they survive any JSON reader exactly; complex
// numbers are [re, im] pairs.

std::string to_json(const PlacementLayout& layout);
std::string to_json(const DeliveryReport& report, bool include_records = true);
std::string to_json(const MemorySharingPlan& plan);
std::string to_json(const TransmitterPlacement& placement);
std::string to_json(const SystemParams& params, const GainReport& gains);

/// Shortest decimal that round-trips the double.
std::string format_double(double value);

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted and
/// embedded quotes doubled.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

/// One row per user: user, requested_file, subfiles_recovered, max_error.
std::string to_csv_summary(const DeliveryReport& report);

std::vector<std::string> gap_csv_header();
std::vector<std::string> gap_csv_fields(const MemorySharingPlan& plan);

}  // namespace gcache
