#ifndef GRPEXT_INTMAT_HPP
#define GRPEXT_INTMAT_HPP

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace grpext {

using BigInt = boost::multiprecision::cpp_int;

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<BigInt> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const BigInt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n);
  IntMat mul(const IntMat& other) const;
  IntMat hstack(const IntMat& other) const;   // [this | other]
  IntMat columns(const std::vector<int>& idx) const;
  IntMat top_rows(int r) const;
};

/// P * A * Q = S with P, Q unimodular and S diagonal, each diagonal entry
/// nonnegative and dividing the next.
struct SmithResult {
  IntMat s, p, q;
  int rank = 0;  // number of nonzero diagonal entries
};
SmithResult smith_normal_form(IntMat m);

/// Basis (as columns) of the lattice spanned by the columns of m.
IntMat column_lattice_basis(const IntMat& m);

/// Integer solution of A u = z, if one exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMat& m,
                                                 const std::vector<BigInt>& z);

/// Basis (as columns) of the integer kernel of m.
IntMat kernel_basis(const IntMat& m);

/// Inverse of a unimodular matrix.
IntMat unimodular_inverse(const IntMat& m);

/// Repeated integer solves against a fixed matrix, sharing one SNF.
class IntSolver {
 public:
  explicit IntSolver(IntMat m);
  std::optional<std::vector<BigInt>> solve(const std::vector<BigInt>& z) const;

 private:
  SmithResult snf_;
  int rows_, cols_;
};

}  // namespace grpext

#endif
