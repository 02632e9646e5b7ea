#pragma once

#include <string>

#include "tmesh/json_util.hpp"
#include "tmesh/mesh.hpp"
#include "tmesh/stability.hpp"

namespace tmesh {

json edge_json(const GEdge& e);
json edge_json(const LEdge& e);

json analyze_report(const TMesh& m, std::size_t d, bool dump_matrix = false);
json dimension_report(const TMesh& m, std::size_t d);
json partition_report(const GT& g, std::size_t d);
json validation_report(const ValidationReport& r);
json witness_report(const WitnessReport& w);
json histogram_json(const std::map<std::size_t, std::size_t>& hist);
json isomorphism_json(const std::optional<IsoMap>& m);
json similarity_json(const SimilarityResult& r);

std::string render_svg(const TMesh& m);

}  // namespace tmesh
