#ifndef GRPEXT_REFINE_HPP
#define GRPEXT_REFINE_HPP

#include <string>
#include <vector>

#include "grpext/morphism.hpp"

namespace grpext {

/// A cover of a groupoid's object set by nonempty subsets. Subsets may
/// overlap and repeat; the labels are their positions in the list.
struct OpenCover {
  std::vector<std::vector<int>> subsets;  // object indices, each sorted
};

std::optional<std::string> cover_violation(const FiniteGroupoid& k, const OpenCover& u);

struct Refinement {
  GroupoidPtr refined;           // K[U]
  StrictMorphism projection;     // q_U : K[U] -> K
  std::vector<std::pair<int, int>> object_origin;  // refined object -> (subset, object)
};

/// Builds the refinement groupoid K[U]: objects are pairs (subset, member),
/// arrows are triples (p, g, q) with g : q0(p) -> q0(q).
Refinement refine(GroupoidPtr k, const OpenCover& u);

/// When every subset of `fine` is contained in a subset of `coarse`, returns
/// for each fine subset the least index of a containing coarse subset.
std::optional<std::vector<int>> refines(const OpenCover& fine, const OpenCover& coarse);

/// The functor K[W] -> K[U] induced by a refinement map of covers.
StrictMorphism refinement_morphism(const Refinement& fine, const Refinement& coarse,
                                   const std::vector<int>& subset_map);

/// Nonempty pairwise intersections, labeled lexicographically by (i, j).
OpenCover common_refinement(const OpenCover& u, const OpenCover& v);

}  // namespace grpext

#endif
