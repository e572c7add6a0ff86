#ifndef GRPEXT_AUTALG_HPP
#define GRPEXT_AUTALG_HPP

#include <map>
#include <string>
#include <vector>

#include "grpext/abelian.hpp"
#include "grpext/morphism.hpp"

namespace grpext {

/// Object -> arrow assignments (sections of the arrow space over objects).
using ObjectSection = std::vector<int>;

struct IsotropyGroup {
  GroupoidPtr groupoid;
  int base;
  std::vector<int> elements;  // loops at base, canonical order
};

IsotropyGroup isotropy(GroupoidPtr a, int object);

/// Central loops of an isotropy group: elements commuting with every loop.
std::vector<int> central_loops(const FiniteGroupoid& a, int object);

/// The action groupoid ZA on central isotropy elements: objects are pairs
/// (a, g) with g central at a, arrows are pairs (h, (a, g)) acting by
/// conjugation g |-> h^{-1} g h.
struct CenterGroupoid {
  GroupoidPtr za;
  std::vector<std::pair<int, int>> objects;  // (object, central loop)
  std::vector<std::pair<int, int>> arrows;   // (arrow of A, source ZA-object)
  StrictMorphism projection;                 // p : ZA -> A
};

CenterGroupoid center_object_space(GroupoidPtr a);

/// The center Z_A: all A-invariant central sections with pointwise
/// multiplication, plus its abstract abelian structure.
struct CenterGroup {
  GroupoidPtr groupoid;
  std::vector<ObjectSection> sections;  // canonical (lexicographic) order
  FiniteAbelianGroup group;             // indexed like `sections`
  int index_of(const ObjectSection& s) const;
};

bool is_central_section(const FiniteGroupoid& a, const ObjectSection& s);
CenterGroup center(GroupoidPtr a);

/// The 2-groupoid of strict automorphisms: objects are automorphisms in
/// canonical order, arrows all natural transformations between them.
struct SAutGroupoid {
  GroupoidPtr groupoid;
  std::vector<StrictMorphism> autos;
  struct Cell {
    int source, target;          // auto indices
    std::vector<int> component;  // object -> arrow
  };
  std::vector<Cell> cells;  // canonical order by (source, target, component)

  int num_autos() const { return static_cast<int>(autos.size()); }
  int auto_index(const StrictMorphism& f) const;
  /// Index of "f followed by g" (apply f first).
  int compose_autos(int f, int g) const;
  int invert_auto(int f) const;
  /// Cells source => target, as indices into `cells`.
  std::vector<int> cells_between(int source, int target) const;
  bool connected(int f, int g) const { return !cells_between(f, g).empty(); }

  NaturalTransformation cell_transformation(int cell) const;

 private:
  friend SAutGroupoid enumerate_saut(GroupoidPtr, int);
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> auto_index_;
  std::vector<std::vector<int>> comp_table_;
  std::vector<int> inv_table_;
};

/// Every strict automorphism (backtracking over object bijections, then
/// arrow images constrained by endpoints and the composition table) and
/// every natural transformation between each ordered pair.
SAutGroupoid enumerate_saut(GroupoidPtr a, int size_cap = 12);

/// The group N_A of sections sigma with s(sigma(x)) = x and x -> t(sigma(x))
/// bijective, under horizontal composition; mult(i, j) is "i followed by j".
struct NAGroup {
  GroupoidPtr groupoid;
  std::vector<ObjectSection> sections;  // canonical order
  std::vector<std::vector<int>> mult;
  std::vector<int> inverse;
  int identity;
  std::vector<int> t_saut;  // section -> automorphism index in the SAut list

  int index_of(const ObjectSection& s) const;
};

NAGroup n_group(GroupoidPtr a, const SAutGroupoid& saut);

/// The automorphism induced by a section: f0 = t . sigma and
/// f1(g) = sigma(src g)^{-1} * g * sigma(tgt g).
StrictMorphism section_automorphism(GroupoidPtr a, const ObjectSection& s);

/// Coarse automorphism group SAut0 / Im(t_saut) with canonical (least-index)
/// coset representatives; mult(u, v) is "u followed by v".
struct CoarseSAut {
  std::vector<int> class_of;        // auto index -> class
  std::vector<int> representative;  // class -> least auto index
  std::vector<std::vector<int>> mult;
  std::vector<int> inverse;
  int identity;

  int num_classes() const { return static_cast<int>(representative.size()); }
};

CoarseSAut coarse_saut(const SAutGroupoid& saut, const NAGroup& na);

/// Checks of the four-term exact sequence and the related structure.
struct SAutSequenceReport {
  bool center_injects = false;          // Z_A -> N_A injective
  bool kernel_is_center = false;        // ker t_saut = Z_A
  bool image_normal = false;            // t_saut(N_A) normal in SAut0
  bool coarse_kernel_matches = false;   // ker(pi) = Im t_saut
  bool stabilizers_match = false;       // every stabilizer equals Z_A
  bool ok() const {
    return center_injects && kernel_is_center && image_normal &&
           coarse_kernel_matches && stabilizers_match;
  }
};

SAutSequenceReport verify_saut_sequence(const CenterGroup& z, const SAutGroupoid& saut,
                                        const NAGroup& na, const CoarseSAut& coarse);

/// Builds the action groupoid SAut0 x| N_A and verifies the explicit functor
/// pair between it and the SAut groupoid, arrow by arrow.
bool semidirect_check(const SAutGroupoid& saut, const NAGroup& na);

}  // namespace grpext

#endif
