#include <gtest/gtest.h>

#include <random>

#include "grpext/intmat.hpp"

using namespace grpext;

namespace {

IntMat random_matrix(std::mt19937_64& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

bool is_diagonal_divisibility_chain(const IntMat& s) {
  for (int i = 0; i < s.rows; ++i)
    for (int j = 0; j < s.cols; ++j)
      if (i != j && s.at(i, j) != 0) return false;
  BigInt prev = 0;
  for (int i = 0; i < std::min(s.rows, s.cols); ++i) {
    const BigInt& d = s.at(i, i);
    if (d < 0) return false;
    if (prev != 0 && d != 0 && d % prev != 0) return false;
    if (prev == 0 && i > 0 && d != 0) return false;  // zeros must trail
    prev = d;
  }
  return true;
}

}  // namespace

TEST(IntMat, SmithPropertyOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    auto m = random_matrix(rng, r, c, -6, 6);
    auto snf = smith_normal_form(m);
    EXPECT_TRUE(is_diagonal_divisibility_chain(snf.s));
    auto lhs = snf.p.mul(m).mul(snf.q);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) EXPECT_EQ(lhs.at(i, j), snf.s.at(i, j));
  }
}

TEST(IntMat, SmithKnownCase) {
  IntMat m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 4;
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.s.at(0, 0), 2);
  EXPECT_EQ(snf.s.at(1, 1), 4);
  m.at(0, 1) = 1;
  snf = smith_normal_form(m);
  EXPECT_EQ(snf.s.at(0, 0), 1);
  EXPECT_EQ(snf.s.at(1, 1), 8);  // determinant preserved up to sign
}

TEST(IntMat, KernelBasis) {
  // x + y + z = 0 over Z: kernel rank 2.
  IntMat m(1, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(0, 2) = 1;
  auto k = kernel_basis(m);
  EXPECT_EQ(k.cols, 2);
  for (int j = 0; j < k.cols; ++j) {
    BigInt acc = 0;
    for (int i = 0; i < 3; ++i) acc += k.at(i, j);
    EXPECT_EQ(acc, 0);
  }
}

TEST(IntMat, SolveInteger) {
  IntMat m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 1;
  m.at(1, 0) = 0;
  m.at(1, 1) = 3;
  auto sol = solve_integer(m, {5, 3});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(2 * (*sol)[0] + (*sol)[1], 5);
  EXPECT_EQ(3 * (*sol)[1], 3);
  EXPECT_FALSE(solve_integer(m, {5, 2}).has_value());  // 3 does not divide 2
}

TEST(IntMat, ColumnLatticeBasisPreservesLattice) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 6);
    auto m = random_matrix(rng, r, c, -5, 5);
    auto b = column_lattice_basis(m);
    // Every original column solves over the basis, and vice versa.
    IntSolver sb(b), sm(m);
    for (int j = 0; j < c; ++j) {
      std::vector<BigInt> col(r);
      for (int i = 0; i < r; ++i) col[i] = m.at(i, j);
      EXPECT_TRUE(sb.solve(col).has_value());
    }
    for (int j = 0; j < b.cols; ++j) {
      std::vector<BigInt> col(r);
      for (int i = 0; i < r; ++i) col[i] = b.at(i, j);
      EXPECT_TRUE(sm.solve(col).has_value());
    }
  }
}

TEST(IntMat, UnimodularInverse) {
  IntMat m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 1;
  auto inv = unimodular_inverse(m);
  auto prod = m.mul(inv);
  EXPECT_EQ(prod.at(0, 0), 1);
  EXPECT_EQ(prod.at(0, 1), 0);
  EXPECT_EQ(prod.at(1, 0), 0);
  EXPECT_EQ(prod.at(1, 1), 1);
}
