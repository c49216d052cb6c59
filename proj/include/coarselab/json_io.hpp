#pragma once

#include <json.hpp>

#include "coarselab/dimension.hpp"
#include "coarselab/functions.hpp"
#include "coarselab/generators.hpp"
#include "coarselab/group.hpp"
#include "coarselab/hamming.hpp"

namespace coarselab {

// nlohmann::json keeps object keys sorted, which gives byte-stable reports.
using json = nlohmann::json;

/// Rejects keys outside the allowed set (configs round-trip losslessly).
void check_known_keys(const json& obj, std::initializer_list<const char*> keys, const char* what);

json int_to_json(const Int& v);
Int int_from_json(const json& j);
json rat_to_json(const Rat& v);
Rat rat_from_json(const json& j);

json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const json& j);

json element_to_json(const Element& e);
/// Accepts {"entries":[[i,v],...]}, a bare [[i,v],...] array, or a bare
/// integer (coordinate 0 shorthand).
Element element_from_json(const json& j, const GroupSpec& spec);
json elements_to_json(const std::vector<Element>& es);
std::vector<Element> elements_from_json(const json& j, const GroupSpec& spec);

/// {"kind":"list"|"powers"|"basis", ...}
std::vector<Element> generators_from_json(const json& j, const GroupSpec& spec);
json generators_to_json(const GeneratorSystem& sys);

json window_shape_to_json(const WindowShape& shape);
WindowShape window_shape_from_json(const json& j);

json hamming_point_to_json(const HammingPoint& p);
HammingPoint hamming_point_from_json(const json& j);

json certificate_to_json(const EmbeddingCertificate& cert);
EmbeddingCertificate certificate_from_json(const json& j, const GroupSpec& spec);
json embed_report_to_json(const EmbeddingReport& report);

json witness_to_json(const CoverWitness& w);
CoverWitness witness_from_json(const json& j);
json witness_verdict_to_json(const WitnessVerdict& v);
json dim_profile_to_json(const DimProfile& profile, bool include_witnesses);
std::string dim_profile_to_csv(const DimProfile& profile);

json distance_to_json(const DistanceResult& d);
json cover_radius_to_json(const CoverRadiusResult& r);

/// Built-in families (support_size, parity, coordinate_indicator,
/// point_indicator, affine) or explicit value tables.
WindowFunction function_from_json(const json& j, const Window& window);

json oscillation_to_json(const OscillationTable& t);
std::string oscillation_to_csv(const OscillationTable& t);
json class_report_to_json(const ClassReport& report);
std::string class_report_to_csv(const ClassReport& report);

/// {"kind":"singletons"|"balls"|"bricks", ...}; "factor" entries scale with r.
std::vector<std::vector<Element>> candidates_from_json(const json& j, const Window& window,
                                                       const GeneratorSystem& sys,
                                                       std::uint32_t r);

}  // namespace coarselab
