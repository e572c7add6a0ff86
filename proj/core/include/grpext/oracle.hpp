#ifndef GRPEXT_ORACLE_HPP
#define GRPEXT_ORACLE_HPP

#include "grpext/extension.hpp"

namespace grpext::oracle {

/// Ground-truth census: enumerates every product-bundle structure on
/// A^1 x K^1 by raw search over target maps and composition tables, then
/// partitions the findings by fiber-preserving isomorphism.
struct CensusResult {
  std::vector<ProductBundle> bundles;      // canonical enumeration order
  std::vector<int> class_of;               // bundle -> class index
  std::vector<std::vector<int>> classes;   // class -> bundle indices
  int num_classes() const { return static_cast<int>(classes.size()); }
};

CensusResult census_extensions(const AutContext& ctx, GroupoidPtr k,
                               const std::optional<Band>& band_filter, int cap = 16);

/// A classical group module for the bar-resolution oracle: a finite group
/// with multiplication "g then h", coefficients sum Z_{moduli[j]}, and one
/// integer matrix per element acting on coordinates (a left action:
/// action[g] * action[h] = action[mult[g][h]] as matrix products).
struct GroupModule {
  std::vector<std::vector<int>> mult;
  int identity = 0;
  std::vector<long long> moduli;
  std::vector<std::vector<std::vector<long long>>> action;
};

/// Invariant factors of the classical H^degree(G; M), computed by solution
/// counting over prime-power moduli; independent of the groupoid engine.
std::vector<long long> group_cohomology_oracle(const GroupModule& gm, int degree);

}  // namespace grpext::oracle

#endif
