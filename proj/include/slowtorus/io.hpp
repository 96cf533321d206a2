#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowtorus/verifier.hpp"

namespace slowtorus {

// State serialization: integers and rationals as decimal strings, r_k in the
// canonical dyadic form "2^-e", a deferred M_p as null (its defining
// threshold y_p is always present).
nlohmann::json state_to_json(const ConstructionState& st, const AlphaCertificate& ac);
std::pair<ConstructionState, AlphaCertificate> state_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& cert);

// Growth table as CSV; every number is a directed-rounded decimal endpoint,
// never a midpoint.
std::string growth_csv(const std::vector<GrowthRecord>& rows);

// Two-column plot data (N plus the Gamma/phi ratio enclosure), derived from
// a previously written growth CSV.
std::string plot_data_from_csv(const std::string& csv);

// FNV-1a 64-bit digest, hex-encoded; keyed on the serialized state.
std::uint64_t fnv1a64(const std::string& s);
std::string digest_hex(const std::string& s);

// Write via a temp file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace slowtorus
