#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "laxton/classifier.hpp"

namespace laxton {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// One json-lines record. Keys in fixed order: instance, splitting, s, d0,
/// rank, g_order, gstar_order, invariants, predicted, verdict, then
/// computed, checks, schema and (optionally) timing_ms.
Json record_json(const RecurrenceParams& params, const StructureReport& rep, std::optional<double> timing_ms);
/// Record for an instance that raised an error.
Json error_json(const Int& P, const Int& Q, std::uint64_t p, const std::string& message);

std::string csv_header(bool timing);
std::string csv_row(const RecurrenceParams& params, const StructureReport& rep, std::optional<double> timing_ms);
std::string csv_error_row(const Int& P, const Int& Q, std::uint64_t p, const std::string& message, bool timing);

Json group_json(const GroupDesc& g);
Json membership_json(const Instance& inst, const MembershipReport& m);
Json checks_json(const std::vector<Check>& checks);

}  // namespace laxton
