#ifndef GRPEXT_MORPHISM_HPP
#define GRPEXT_MORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "grpext/groupoid.hpp"

namespace grpext {

/// A functor between finite groupoids, given by its object and arrow maps.
struct StrictMorphism {
  GroupoidPtr dom;
  GroupoidPtr cod;
  std::vector<int> obj_map;    // f0: dom objects -> cod objects
  std::vector<int> arrow_map;  // f1: dom arrows -> cod arrows

  bool operator==(const StrictMorphism& other) const {
    return obj_map == other.obj_map && arrow_map == other.arrow_map &&
           same_groupoid(dom, other.dom) && same_groupoid(cod, other.cod);
  }

  static bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
    return a == b || (a && b && a->same_tables(*b));
  }
};

/// Failure description for functor/naturality checks, empty when valid.
std::optional<std::string> functor_violation(const StrictMorphism& f);
bool is_functor(const StrictMorphism& f);

StrictMorphism identity_morphism(GroupoidPtr g);

/// Pointwise composite "f followed by g"; requires cod(f) = dom(g).
StrictMorphism compose_morphisms(const StrictMorphism& f, const StrictMorphism& g);

/// Inverse of a bijective functor.
StrictMorphism invert_morphism(const StrictMorphism& f);

bool is_bijective(const StrictMorphism& f);

/// Finite-case equivalence criterion: fully faithful and essentially
/// surjective.
bool is_equivalence(const StrictMorphism& f);

/// A 2-cell sigma: source => target between parallel functors; component[x]
/// is an arrow f0(x) -> g0(x) in the codomain.
struct NaturalTransformation {
  StrictMorphism source;
  StrictMorphism target;
  std::vector<int> component;

  bool operator==(const NaturalTransformation& other) const {
    return component == other.component && source == other.source &&
           target == other.target;
  }
};

std::optional<std::string> naturality_violation(const NaturalTransformation& r);
bool is_natural(const NaturalTransformation& r);

NaturalTransformation identity_transformation(const StrictMorphism& f);

/// Vertical composition r1 (.) r2 : source(r1) => target(r2), defined when
/// target(r1) = source(r2); component-wise a |-> r1(a) * r2(a).
NaturalTransformation vertical_compose(const NaturalTransformation& r1,
                                       const NaturalTransformation& r2);

/// Vertical inverse: target => source, component-wise arrow inverse.
NaturalTransformation vertical_inverse(const NaturalTransformation& r);

/// Horizontal composition of r3: k => j (B -> C) after r1: f => g (A -> B),
/// yielding k.f => j.g with a |-> k1(r1(a)) * r3(g0(a)).
NaturalTransformation horizontal_compose(const NaturalTransformation& r3,
                                         const NaturalTransformation& r1);

/// Horizontal inverse of a 2-cell between bijective functors:
/// r: f => g gives f^{-1} => g^{-1} with a |-> (f^{-1}(r(g^{-1}(a))))^{-1}.
NaturalTransformation horizontal_inverse(const NaturalTransformation& r);

/// All natural transformations f => g in canonical (lexicographic) order.
std::vector<NaturalTransformation> all_transformations(const StrictMorphism& f,
                                                       const StrictMorphism& g);

}  // namespace grpext

#endif
