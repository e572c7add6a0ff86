#ifndef GRPEXT_JSON_IO_HPP
#define GRPEXT_JSON_IO_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grpext/refine.hpp"

namespace grpext {

using Json = nlohmann::json;

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Groupoid format:
///   {"objects": [...], "arrows": [{"id","src","tgt"}...],
///    "unit": {obj: arrowId}, "inverse": {arrowId: arrowId},
///    "compose": [[g, h, gh], ...]}
/// Objects and arrows are re-sorted by identifier on load; duplicate or
/// missing entries are rejected with ParseError.
GroupoidData groupoid_data_from_json(const Json& j);
Json groupoid_to_json(const FiniteGroupoid& g);

GroupoidData load_groupoid_data(const std::string& path);
/// Loads and validates; throws ParseError on malformed input and Error when
/// the groupoid axioms fail.
GroupoidPtr load_groupoid(const std::string& path);

/// Morphism format: {"f0": {objId: objId}, "f1": {arrowId: arrowId}}.
StrictMorphism morphism_from_json(const Json& j, GroupoidPtr dom, GroupoidPtr cod);
Json morphism_to_json(const StrictMorphism& f);

/// Cover format: {"subsets": [[objId, ...], ...]}.
OpenCover cover_from_json(const Json& j, const FiniteGroupoid& k);
Json cover_to_json(const OpenCover& u, const FiniteGroupoid& k);

/// Cocycle format: {"lambda": {arrowId: autIndex},
///                  "omega": [[xi, eta, a, arrowId], ...]}.
/// autIndex refers to the canonical enumeration of strict automorphisms of
/// the fiber; the resolution into actual maps happens in the extension layer.
struct CocycleJson {
  std::vector<std::pair<std::string, int>> lambda;
  std::vector<std::array<std::string, 4>> omega;
};
CocycleJson cocycle_json_from_json(const Json& j);
Json cocycle_json_to_json(const CocycleJson& c);

/// Band format: {"band": {arrowId: coarseIndex}}.
struct BandJson {
  std::vector<std::pair<std::string, int>> values;
};
BandJson band_json_from_json(const Json& j);
Json band_json_to_json(const BandJson& b);

/// Product bundle format: a groupoid together with the identification of its
/// objects/arrows as fiber x base pairs:
///   {"groupoid": {...}, "fiber_object": {gObj: aObj}, "base_object": {...},
///    "fiber_arrow": {gArr: aArr}, "base_arrow": {...}}.
struct BundleJson {
  GroupoidPtr groupoid;
  std::vector<int> fiber_object, base_object;  // per bundle object index
  std::vector<int> fiber_arrow, base_arrow;    // per bundle arrow index
};
BundleJson bundle_from_json(const Json& j, const FiniteGroupoid& fiber,
                            const FiniteGroupoid& base);
Json bundle_to_json(const BundleJson& b, const FiniteGroupoid& fiber,
                    const FiniteGroupoid& base);

}  // namespace grpext

#endif
