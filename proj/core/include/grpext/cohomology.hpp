#ifndef GRPEXT_COHOMOLOGY_HPP
#define GRPEXT_COHOMOLOGY_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "grpext/abelian.hpp"
#include "grpext/autalg.hpp"

namespace grpext {

/// The set of n-composable arrow tuples of a groupoid, in lexicographic
/// order; degree 0 is the object list. A tuple is degenerate when some
/// component is a unit arrow.
struct TupleSpace {
  int degree = 0;
  std::vector<std::vector<int>> tuples;
  std::vector<char> degenerate;
  std::map<std::vector<int>, int> index;

  int size() const { return static_cast<int>(tuples.size()); }
  int index_of(const std::vector<int>& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
  }
};

TupleSpace composable_tuples(const FiniteGroupoid& k, int degree);

/// A K-module: an abelian group E with arrows acting by automorphisms so
/// that act(h) after act(g) equals act(gh) for composable g, h.
struct KModule {
  GroupoidPtr k;
  FiniteAbelianGroup e;
  std::vector<std::vector<int>> action;      // per arrow: permutation of E
  std::vector<std::vector<int>> action_inv;

  static KModule make(GroupoidPtr k, FiniteAbelianGroup e,
                      std::vector<std::vector<int>> action);
};

/// Values over the full tuple space of the cochain's degree.
struct Cochain {
  int degree = 0;
  std::vector<int> values;

  bool operator==(const Cochain& o) const {
    return degree == o.degree && values == o.values;
  }
};

Cochain zero_cochain(const KModule& m, int degree);
bool is_zero_cochain(const KModule& m, const Cochain& c);
Cochain add_cochains(const KModule& m, const Cochain& a, const Cochain& b);
Cochain negate_cochain(const KModule& m, const Cochain& a);

/// The coboundary map of the groupoid cochain complex.
Cochain coboundary(const KModule& m, const Cochain& c);

enum class Backend { Exhaustive, Snf, Both };

struct CohomologyOptions {
  Backend backend = Backend::Both;
  bool normalized = false;
  unsigned long long exhaustive_cap = 1ull << 18;
};

/// H^n of the complex, with representative cocycles for each generator and
/// a membership test giving class coordinates.
class CohomologyGroup {
 public:
  int degree() const;
  bool normalized() const;
  const std::vector<long long>& invariant_factors() const;
  const std::vector<Cochain>& generators() const;
  unsigned long long order() const;

  /// Coordinates of [z] with respect to the generators; throws NotACocycle
  /// when dz != 0.
  std::vector<long long> class_of(const Cochain& z) const;

  /// A cochain c with dc = z, when [z] = 0 and degree >= 1.
  std::optional<Cochain> coboundary_witness(const Cochain& z) const;

  /// The representative cocycle with the given coordinates.
  Cochain representative(const std::vector<long long>& coords) const;

  /// All class coordinate tuples in canonical (odometer) order.
  std::vector<std::vector<long long>> all_classes() const;

  struct Impl;
  std::shared_ptr<const Impl> impl;
};

CohomologyGroup cohomology(const KModule& m, int degree, const CohomologyOptions& opts);

/// The K-action on Z_A induced by the automorphisms lambda (one per arrow
/// of K, identity on units): sigma |-> lambda . sigma . lambda^{-1}.
/// Throws NotABand when the assignment fails the action composition law.
KModule induced_action(const CenterGroup& z, GroupoidPtr k,
                       const std::vector<StrictMorphism>& lambda);

}  // namespace grpext

#endif
