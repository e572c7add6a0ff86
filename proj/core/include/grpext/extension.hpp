#ifndef GRPEXT_EXTENSION_HPP
#define GRPEXT_EXTENSION_HPP

#include <array>
#include <functional>
#include <optional>
#include <random>

#include "grpext/cohomology.hpp"
#include "grpext/json_io.hpp"
#include "grpext/refine.hpp"

namespace grpext {

/// Shared automorphism data of a fiber groupoid A.
struct AutContext {
  GroupoidPtr a;
  SAutGroupoid saut;
  NAGroup na;
  CoarseSAut coarse;
  CenterGroup z;
};

AutContext make_aut_context(GroupoidPtr a, int saut_cap = 12);

/// An outer-action datum: one coarse automorphism class per arrow of K,
/// compatible with units and composition.
struct Band {
  GroupoidPtr k;
  std::vector<int> values;  // per K-arrow -> coarse class index
};

Band trivial_band(const AutContext& ctx, GroupoidPtr k);

struct BandReport {
  bool ok = false;
  std::vector<std::string> violations;
};
BandReport check_band(const AutContext& ctx, const Band& band);

/// All valid bands K -> coarse SAut(A), in canonical order.
std::vector<Band> enumerate_bands(const AutContext& ctx, GroupoidPtr k);

/// A lifting Lambda: K^1 -> SAut0(A) with Lambda(1) = id, together with the
/// cofactor Omega: one arrow per (composable pair, fiber object).
struct GeneralizedCocycle {
  GroupoidPtr a, k;
  std::vector<int> lambda;              // per K-arrow -> automorphism index
  std::vector<std::vector<int>> omega;  // per K^[2] pair -> per A-object -> arrow

  bool operator==(const GeneralizedCocycle& o) const {
    return lambda == o.lambda && omega == o.omega;
  }
};

Band band_of(const AutContext& ctx, const GeneralizedCocycle& gc);

struct CocycleReport {
  bool ok = false;
  bool structure_ok = false;  // Lambda/Omega shape, naturality, normalization
  std::vector<std::string> violations;
};
CocycleReport check_generalized_cocycle(const AutContext& ctx,
                                        const GeneralizedCocycle& gc);

/// Canonical lifting of a band: least automorphism per class, least 2-cell
/// per composable pair, units forced. The result need not satisfy the
/// cocycle condition; that failure is measured by the obstruction.
GeneralizedCocycle lift_band(const AutContext& ctx, const Band& band);

/// All lambda assignments lifting the band (units forced to the identity).
std::vector<std::vector<int>> all_liftings(const AutContext& ctx, const Band& band);

/// The canonically least normalized Omega for a fixed lambda.
GeneralizedCocycle canonical_omega(const AutContext& ctx, GroupoidPtr k,
                                   const std::vector<int>& lambda);

/// A uniformly random normalized Omega for a fixed lambda.
GeneralizedCocycle random_omega(const AutContext& ctx, GroupoidPtr k,
                                const std::vector<int>& lambda, std::mt19937_64& rng);

/// Enumerates normalized transformation families over a fixed lambda; with
/// `require_cocycle` the search prunes by the cocycle condition and emits
/// generalized cocycles only.
void enumerate_omegas(const AutContext& ctx, GroupoidPtr k,
                      const std::vector<int>& lambda, bool require_cocycle,
                      const std::function<void(const GeneralizedCocycle&)>& visit);

/// A groupoid whose objects and arrows are identified with fiber x base
/// pairs, satisfying the product axioms: s = s_A x s_K, u = u_A x u_K,
/// t(alpha, 1_x) = (t alpha, x), base projection functorial, and kernel
/// multiplication agreeing with A.
struct ProductBundle {
  GroupoidPtr a, k, g;
  std::vector<int> fiber_object, base_object;
  std::vector<int> fiber_arrow, base_arrow;
  std::vector<int> object_pair_index;  // (aobj * |K0| + kobj) -> g object
  std::vector<int> arrow_pair_index;   // (aarr * |K1| + karr) -> g arrow

  int object_at(int aobj, int kobj) const {
    return object_pair_index[aobj * k->num_objects() + kobj];
  }
  int arrow_at(int aarr, int karr) const {
    return arrow_pair_index[aarr * k->num_arrows() + karr];
  }
  StrictMorphism projection() const;            // G -> K
  StrictMorphism kernel_embedding(int x) const;  // A -> G over the base object x
};

/// Validates the product axioms; throws NotAProductBundle.
ProductBundle make_product_bundle(GroupoidPtr a, GroupoidPtr k, GroupoidPtr g,
                                  std::vector<int> fiber_object,
                                  std::vector<int> base_object,
                                  std::vector<int> fiber_arrow,
                                  std::vector<int> base_arrow);

ProductBundle bundle_from_file(GroupoidPtr a, GroupoidPtr k, const BundleJson& bj);
BundleJson bundle_to_file(const ProductBundle& b);

/// The extension A x|_{Lambda,Omega} K of Theorem-style structure maps;
/// throws CocycleViolation when the data fails the cocycle condition.
struct ExtensionGroupoid {
  GroupoidPtr a, k, g;
  GeneralizedCocycle cocycle;
  ProductBundle bundle;
};

ExtensionGroupoid build_extension(const AutContext& ctx, const GeneralizedCocycle& gc);

/// Reads the pre-action map and cofactor off a product bundle.
GeneralizedCocycle extract_cocycle(const AutContext& ctx, const ProductBundle& b);

struct RoundTrip {
  GeneralizedCocycle cocycle;
  ExtensionGroupoid rebuilt;
  StrictMorphism iso;  // bundle.g -> rebuilt.g
};

/// The explicit isomorphism G = A x|_{Lambda,Omega} K for the extracted
/// cocycle, verified to be a fiber-preserving isomorphism.
RoundTrip extension_round_trip(const AutContext& ctx, const ProductBundle& b);

/// The degree-3 defect of (Lambda, Omega): a Z_A-valued cochain over the
/// induced module, verified central, A-invariant, and closed.
struct ObstructionCocycle {
  KModule module;
  Cochain xi;
};

ObstructionCocycle obstruction(const AutContext& ctx, const GeneralizedCocycle& gc);

/// The three cyclic rewritings of the defect; all equal xi.
std::array<Cochain, 3> obstruction_cyclic_variants(const AutContext& ctx,
                                                   const GeneralizedCocycle& gc);

struct Trivialization {
  Cochain witness;               // 2-cochain c with dc = xi
  GeneralizedCocycle corrected;  // (Lambda, c * Omega), a generalized cocycle
};

/// Throws ObstructionNonzero (with class coordinates) when [xi] != 0.
Trivialization trivialize_obstruction(const AutContext& ctx, const GeneralizedCocycle& gc,
                                      const ObstructionCocycle& obs,
                                      const CohomologyGroup& h3);

/// One 2-cell component vector per K-arrow.
using TransformationFamily = std::vector<std::vector<int>>;

/// Searches a family rho(xi): Lambda_xi => Lambda'_xi with rho(1) = u
/// relating the two cofactors; exhaustive up to propagation. Throws
/// BandMismatch when the cocycles have different bands.
std::optional<TransformationFamily> cocycle_equivalent(const AutContext& ctx,
                                                       const GeneralizedCocycle& gc1,
                                                       const GeneralizedCocycle& gc2);

/// Fiber-preserving isomorphism search: covers id_K and fixes the kernel
/// pointwise. Throws ShapeMismatch when fibers or bases differ.
std::optional<StrictMorphism> extensions_isomorphic(const ProductBundle& b1,
                                                    const ProductBundle& b2);

struct Classification {
  bool obstructed = false;
  std::vector<long long> obstruction_coords;
  GeneralizedCocycle reference;  // (Lambda_0, Omega_0)
  CohomologyGroup h2;
  std::vector<std::vector<long long>> class_coords;
  std::vector<GeneralizedCocycle> cocycles;
  std::vector<ExtensionGroupoid> extensions;
};

Classification classify(const AutContext& ctx, GroupoidPtr k, const Band& band,
                        unsigned long long exhaustive_cap = 1ull << 18);

/// Pairwise non-equivalence of the emitted classes plus an exhaustive sweep
/// matching every generalized cocycle over every lifting of the band to
/// exactly one class.
bool verify_classification(const AutContext& ctx, const Band& band,
                           const Classification& cls);

/// Pullback of a cocycle along a functor into its base (refinement
/// projections and cover-refinement morphisms).
GeneralizedCocycle pullback_cocycle_along(const AutContext& ctx,
                                          const GeneralizedCocycle& gc,
                                          const StrictMorphism& f);

GeneralizedCocycle pullback_cocycle(const AutContext& ctx, const GeneralizedCocycle& gc,
                                    const Refinement& r);

/// The canonical isomorphism between the extension built from the pulled
/// back cocycle and the refinement of the built extension.
StrictMorphism pullback_extension_isomorphism(const AutContext& ctx,
                                              const GeneralizedCocycle& gc,
                                              const Refinement& r);

struct RefinementVerdict {
  bool equivalent = false;
  std::string reason;
  std::optional<TransformationFamily> witness;
};

/// Pulls both cocycles back to the common refinement of the two covers and
/// runs the equivalence search there.
RefinementVerdict equivalent_over_refinements(const AutContext& ctx, GroupoidPtr k,
                                              const GeneralizedCocycle& gc_u,
                                              const OpenCover& u,
                                              const GeneralizedCocycle& gc_v,
                                              const OpenCover& v);

// --- JSON bridges -------------------------------------------------------------

CocycleJson cocycle_to_file(const AutContext& ctx, const GeneralizedCocycle& gc);
GeneralizedCocycle cocycle_from_file(const AutContext& ctx, GroupoidPtr k,
                                     const CocycleJson& cj);
BandJson band_to_file(const AutContext& ctx, const Band& band);
Band band_from_file(const AutContext& ctx, GroupoidPtr k, const BandJson& bj);

}  // namespace grpext

#endif
