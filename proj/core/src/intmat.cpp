#include "grpext/intmat.hpp"

#include <algorithm>

#include "grpext/errors.hpp"

namespace grpext {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::mul(const IntMat& other) const {
  if (cols != other.rows) throw Error("IntMat::mul: shape mismatch");
  IntMat r(rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const BigInt& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < other.cols; ++j) r.at(i, j) += v * other.at(k, j);
    }
  return r;
}

IntMat IntMat::hstack(const IntMat& other) const {
  if (rows != other.rows) throw Error("IntMat::hstack: shape mismatch");
  IntMat r(rows, cols + other.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < other.cols; ++j) r.at(i, cols + j) = other.at(i, j);
  }
  return r;
}

IntMat IntMat::columns(const std::vector<int>& idx) const {
  IntMat r(rows, static_cast<int>(idx.size()));
  for (int i = 0; i < rows; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return r;
}

IntMat IntMat::top_rows(int r) const {
  IntMat out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = at(i, j);
  return out;
}

namespace {

void swap_rows(IntMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void swap_cols(IntMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}
void negate_col(IntMat& m, int j) {
  for (int r = 0; r < m.rows; ++r) m.at(r, j) = -m.at(r, j);
}
// row i += f * row j
void add_row(IntMat& m, int i, int j, const BigInt& f) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) += f * m.at(j, c);
}
// col i += f * col j
void add_col(IntMat& m, int i, int j, const BigInt& f) {
  for (int r = 0; r < m.rows; ++r) m.at(r, i) += f * m.at(r, j);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithResult smith_normal_form(IntMat m) {
  SmithResult out;
  const int rows = m.rows, cols = m.cols;
  out.p = IntMat::identity(rows);
  out.q = IntMat::identity(cols);

  int t = 0;
  const int bound = std::min(rows, cols);
  while (t < bound) {
    // Find a pivot of least absolute value in the remaining block.
    int pi = -1, pj = -1;
    BigInt best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (m.at(i, j) == 0) continue;
        BigInt v = abs(m.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    if (pi != t) {
      swap_rows(m, t, pi);
      swap_rows(out.p, t, pi);
    }
    if (pj != t) {
      swap_cols(m, t, pj);
      swap_cols(out.q, t, pj);
    }

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (m.at(i, t) == 0) continue;
      BigInt f = -floor_div(m.at(i, t), m.at(t, t));
      add_row(m, i, t, f);
      add_row(out.p, i, t, f);
      if (m.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (m.at(t, j) == 0) continue;
      BigInt f = -floor_div(m.at(t, j), m.at(t, t));
      add_col(m, j, t, f);
      add_col(out.q, j, t, f);
      if (m.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;

    // Enforce divisibility of the remaining block by the pivot.
    bool divisible = true;
    for (int i = t + 1; i < rows && divisible; ++i)
      for (int j = t + 1; j < cols && divisible; ++j)
        if (m.at(i, j) % m.at(t, t) != 0) {
          add_row(m, t, i, 1);
          add_row(out.p, t, i, 1);
          divisible = false;
        }
    if (!divisible) continue;

    if (m.at(t, t) < 0) {
      negate_row(m, t);
      negate_row(out.p, t);
    }
    ++t;
  }
  out.rank = t;
  out.s = std::move(m);
  return out;
}

IntMat column_lattice_basis(const IntMat& m) {
  IntMat w = m;
  int pivot_col = 0;
  std::vector<int> pivots;
  for (int r = 0; r < w.rows && pivot_col < w.cols; ++r) {
    // Reduce row r over the columns >= pivot_col to a single entry by gcd.
    while (true) {
      int jmin = -1;
      BigInt best = 0;
      for (int j = pivot_col; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        BigInt v = abs(w.at(r, j));
        if (jmin < 0 || v < best) {
          best = v;
          jmin = j;
        }
      }
      if (jmin < 0) break;
      if (jmin != pivot_col) swap_cols(w, pivot_col, jmin);
      bool clean = true;
      for (int j = pivot_col + 1; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        BigInt f = -floor_div(w.at(r, j), w.at(r, pivot_col));
        add_col(w, j, pivot_col, f);
        if (w.at(r, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w.at(r, pivot_col) != 0) {
      if (w.at(r, pivot_col) < 0) negate_col(w, pivot_col);
      pivots.push_back(pivot_col);
      ++pivot_col;
    }
  }
  std::vector<int> keep;
  for (int j = 0; j < pivot_col; ++j) keep.push_back(j);
  return w.columns(keep);
}

namespace {

std::optional<std::vector<BigInt>> solve_with_snf(const SmithResult& snf, int rows,
                                                  int cols,
                                                  const std::vector<BigInt>& z) {
  if (static_cast<int>(z.size()) != rows) throw Error("solve_integer: size mismatch");
  std::vector<BigInt> y(rows);
  for (int i = 0; i < rows; ++i) {
    BigInt acc = 0;
    for (int j = 0; j < rows; ++j) acc += snf.p.at(i, j) * z[j];
    y[i] = acc;
  }
  std::vector<BigInt> v(cols);
  for (int i = 0; i < rows; ++i) {
    if (i < snf.rank) {
      if (y[i] % snf.s.at(i, i) != 0) return std::nullopt;
      v[i] = y[i] / snf.s.at(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> u(cols);
  for (int i = 0; i < cols; ++i) {
    BigInt acc = 0;
    for (int j = 0; j < cols; ++j) acc += snf.q.at(i, j) * v[j];
    u[i] = acc;
  }
  return u;
}

}  // namespace

std::optional<std::vector<BigInt>> solve_integer(const IntMat& m,
                                                 const std::vector<BigInt>& z) {
  return solve_with_snf(smith_normal_form(m), m.rows, m.cols, z);
}

IntSolver::IntSolver(IntMat m) : rows_(m.rows), cols_(m.cols) {
  snf_ = smith_normal_form(std::move(m));
}

std::optional<std::vector<BigInt>> IntSolver::solve(const std::vector<BigInt>& z) const {
  return solve_with_snf(snf_, rows_, cols_, z);
}

IntMat kernel_basis(const IntMat& m) {
  auto snf = smith_normal_form(m);
  std::vector<int> idx;
  for (int j = snf.rank; j < m.cols; ++j) idx.push_back(j);
  return snf.q.columns(idx);
}

IntMat unimodular_inverse(const IntMat& m) {
  if (m.rows != m.cols) throw Error("unimodular_inverse: not square");
  auto snf = smith_normal_form(m);
  for (int i = 0; i < m.rows; ++i)
    if (snf.s.at(i, i) != 1) throw Error("unimodular_inverse: matrix is not unimodular");
  // P m Q = I, so m^{-1} = Q P.
  return snf.q.mul(snf.p);
}

}  // namespace grpext
