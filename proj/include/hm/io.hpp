#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include <json.hpp>

#include "hm/absorbing.hpp"
#include "hm/constructions.hpp"
#include "hm/hypergraph.hpp"
#include "hm/lattice.hpp"
#include "hm/matching.hpp"

namespace hm {

// `.hg` text format: '#' comment lines, then "n k", then one edge per line
// as k space-separated vertex ids.  Files ending in .json use the mirror
// {"n":…, "k":…, "edges":[[…],…]}.
Hypergraph read_hypergraph(const std::filesystem::path& path);
Hypergraph read_hypergraph_text(std::istream& in);
void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path);
std::string hypergraph_to_text(const Hypergraph& h);

nlohmann::json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// {"parts": [[…],…]}, order significant
OrderedPartition read_partition(const std::filesystem::path& path, int n);
nlohmann::json partition_to_json(const OrderedPartition& p);
void write_partition(const OrderedPartition& p, const std::filesystem::path& path);

nlohmann::json matching_to_json(const Matching& m);
Matching matching_from_json(const nlohmann::json& j);
nlohmann::json tiling_to_json(const Tiling& t, const std::string& pattern_name);
Tiling tiling_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ConstructionReport& rep);
nlohmann::json report_to_json(const FamilyReport& rep);
nlohmann::json report_to_json(const Claim41Report& rep);
nlohmann::json diagnostics_to_json(const BarrierDiagnostics& diag);

}  // namespace hm
