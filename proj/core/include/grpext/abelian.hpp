#ifndef GRPEXT_ABELIAN_HPP
#define GRPEXT_ABELIAN_HPP

#include <vector>

namespace grpext {

/// A finite abelian group given by its addition table, with a computed
/// basis realizing the invariant-factor decomposition d1 | d2 | ... .
/// Element 0..n-1 are abstract indices; coordinates express every element
/// uniquely as sum(c_i * basis_i) with c_i in Z_{d_i}.
class FiniteAbelianGroup {
 public:
  /// The trivial group.
  FiniteAbelianGroup() : add_{{0}}, zero_(0), neg_{0}, coords_{{}} {}

  /// Verifies the table is an abelian group; throws Error otherwise.
  static FiniteAbelianGroup from_table(std::vector<std::vector<int>> add, int zero);

  /// The group Z_{d1} x ... x Z_{dk} (ds may be 1, dropped internally).
  static FiniteAbelianGroup direct_sum_of_cyclic(const std::vector<int>& ds);

  int order() const { return static_cast<int>(add_.size()); }
  int add(int a, int b) const { return add_[a][b]; }
  int zero() const { return zero_; }
  int neg(int a) const { return neg_[a]; }
  int scale(long long k, int a) const;  // k * a
  int element_order(int a) const;

  /// Invariant factors in ascending divisibility order, each > 1.
  const std::vector<long long>& invariant_factors() const { return factors_; }
  /// One basis element per invariant factor; basis_[i] has order factors_[i].
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<long long>& coordinates(int a) const { return coords_[a]; }
  int element_from_coordinates(const std::vector<long long>& c) const;

  bool isomorphic_to(const FiniteAbelianGroup& other) const {
    return factors_ == other.factors_;
  }

 private:
  void compute_decomposition();

  std::vector<std::vector<int>> add_;
  int zero_ = 0;
  std::vector<int> neg_;
  std::vector<long long> factors_;
  std::vector<int> basis_;
  std::vector<std::vector<long long>> coords_;
};

}  // namespace grpext

#endif
