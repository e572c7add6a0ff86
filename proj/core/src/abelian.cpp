#include "grpext/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "grpext/errors.hpp"

namespace grpext {

FiniteAbelianGroup FiniteAbelianGroup::from_table(std::vector<std::vector<int>> add,
                                                  int zero) {
  const int n = static_cast<int>(add.size());
  if (n == 0) throw Error("abelian group: empty table");
  for (const auto& row : add)
    if (static_cast<int>(row.size()) != n) throw Error("abelian group: ragged table");

  FiniteAbelianGroup g;
  g.add_ = std::move(add);
  g.zero_ = zero;
  g.neg_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (g.add_[a][zero] != a || g.add_[zero][a] != a)
      throw Error("abelian group: zero law fails");
    for (int b = 0; b < n; ++b) {
      if (g.add_[a][b] != g.add_[b][a]) throw Error("abelian group: not commutative");
      if (g.add_[a][b] == zero) g.neg_[a] = b;
      for (int c = 0; c < n; ++c)
        if (g.add_[g.add_[a][b]][c] != g.add_[a][g.add_[b][c]])
          throw Error("abelian group: not associative");
    }
    if (g.neg_[a] < 0) throw Error("abelian group: element without inverse");
  }
  g.compute_decomposition();
  return g;
}

FiniteAbelianGroup FiniteAbelianGroup::direct_sum_of_cyclic(const std::vector<int>& ds) {
  int n = 1;
  for (int d : ds) n *= std::max(d, 1);
  std::vector<int> strides(ds.size());
  {
    int s = 1;
    for (size_t i = 0; i < ds.size(); ++i) {
      strides[i] = s;
      s *= std::max(ds[i], 1);
    }
  }
  auto decode = [&](int e) {
    std::vector<int> c(ds.size());
    for (size_t i = 0; i < ds.size(); ++i) c[i] = (e / strides[i]) % std::max(ds[i], 1);
    return c;
  };
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ca = decode(a), cb = decode(b);
      int e = 0;
      for (size_t i = 0; i < ds.size(); ++i)
        e += ((ca[i] + cb[i]) % std::max(ds[i], 1)) * strides[i];
      add[a][b] = e;
    }
  return from_table(std::move(add), 0);
}

int FiniteAbelianGroup::scale(long long k, int a) const {
  int n = order();
  long long kk = ((k % n) + n) % n;  // order(a) divides n
  int acc = zero_;
  int base = a;
  while (kk > 0) {
    if (kk & 1) acc = add_[acc][base];
    base = add_[base][base];
    kk >>= 1;
  }
  return acc;
}

int FiniteAbelianGroup::element_order(int a) const {
  int x = a, k = 1;
  while (x != zero_) {
    x = add_[x][a];
    ++k;
  }
  return k;
}

int FiniteAbelianGroup::element_from_coordinates(const std::vector<long long>& c) const {
  if (c.size() != factors_.size()) throw Error("coordinate size mismatch");
  int e = zero_;
  for (size_t i = 0; i < c.size(); ++i) e = add_[e][scale(c[i], basis_[i])];
  return e;
}

namespace {

// A small group-on-labels view used while peeling off cyclic summands.
struct LabeledGroup {
  std::vector<int> elems;              // labels into the ambient group
  std::vector<std::vector<int>> add;   // local indices
  int zero;
};

int local_order(const LabeledGroup& g, int x) {
  int acc = x, k = 1;
  while (acc != g.zero) {
    acc = g.add[acc][x];
    ++k;
  }
  return k;
}

int local_scale(const LabeledGroup& g, long long k, int x) {
  int acc = g.zero;
  for (long long i = 0; i < k; ++i) acc = g.add[acc][x];
  return acc;
}

// Basis of a finite abelian p-group, returned as local indices with orders.
// Peels a maximal-order cyclic summand and lifts a basis of the quotient.
std::vector<std::pair<int, int>> p_group_basis(const LabeledGroup& g, int p) {
  const int n = static_cast<int>(g.elems.size());
  if (n == 1) return {};

  int a = -1, max_ord = 1;
  for (int x = 0; x < n; ++x) {
    int o = local_order(g, x);
    if (o > max_ord) {
      max_ord = o;
      a = x;
    }
  }

  // Quotient by <a>: canonical representative = least local index in coset.
  std::vector<int> rep(n, -1);
  for (int x = 0; x < n; ++x) {
    int best = x, y = x;
    do {
      y = g.add[y][a];
      best = std::min(best, y);
    } while (y != x);
    rep[x] = best;
  }
  std::vector<int> q_elems;
  std::vector<int> local_of_rep(n, -1);
  for (int x = 0; x < n; ++x)
    if (rep[x] == x) {
      local_of_rep[x] = static_cast<int>(q_elems.size());
      q_elems.push_back(x);
    }
  LabeledGroup q;
  q.elems = q_elems;
  q.zero = local_of_rep[rep[g.zero]];
  q.add.assign(q_elems.size(), std::vector<int>(q_elems.size()));
  for (size_t i = 0; i < q_elems.size(); ++i)
    for (size_t j = 0; j < q_elems.size(); ++j)
      q.add[i][j] = local_of_rep[rep[g.add[q_elems[i]][q_elems[j]]]];

  auto q_basis = p_group_basis(q, p);

  std::vector<std::pair<int, int>> out;
  out.emplace_back(a, max_ord);
  for (auto [qy, qord] : q_basis) {
    int y = q.elems[qy];
    // p^f * y lands in <a>; adjust by a multiple of a to get exact order p^f.
    int pf = qord;
    int target = local_scale(g, pf, y);
    int m = 0, acc = g.zero;
    while (acc != target) {
      acc = g.add[acc][a];
      ++m;
    }
    if (m % pf != 0) throw Error("abelian basis: lift divisibility failed");
    int t = (max_ord - (m / pf) % max_ord) % max_ord;
    int z = g.add[y][local_scale(g, t, a)];
    if (local_order(g, z) != pf) throw Error("abelian basis: lifted order mismatch");
    out.emplace_back(z, pf);
  }
  return out;
}

}  // namespace

void FiniteAbelianGroup::compute_decomposition() {
  const int n = order();

  std::vector<int> primes;
  {
    int m = n;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back(p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes.push_back(m);
  }

  // Primary components and their bases.
  std::map<int, std::vector<std::pair<int, int>>> primary;  // p -> (elem, order)
  for (int p : primes) {
    int pe = 1;
    int m = n;
    while (m % p == 0) {
      pe *= p;
      m /= p;
    }
    std::vector<int> elems;
    std::vector<int> local_of(n, -1);
    for (int x = 0; x < n; ++x)
      if (scale(pe, x) == zero_) {
        local_of[x] = static_cast<int>(elems.size());
        elems.push_back(x);
      }
    LabeledGroup g;
    g.elems = elems;
    g.zero = local_of[zero_];
    g.add.assign(elems.size(), std::vector<int>(elems.size()));
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = 0; j < elems.size(); ++j)
        g.add[i][j] = local_of[add_[elems[i]][elems[j]]];
    auto basis = p_group_basis(g, p);
    std::sort(basis.begin(), basis.end(),
              [](auto& a, auto& b) { return a.second > b.second; });
    auto& list = primary[p];
    for (auto [local, ord] : basis) list.emplace_back(elems[local], ord);
  }

  size_t k = 0;
  for (auto& [p, list] : primary) k = std::max(k, list.size());

  // Assemble invariant factors largest-first, then store ascending.
  std::vector<long long> desc_factors(k, 1);
  std::vector<int> desc_basis(k, zero_);
  for (auto& [p, list] : primary)
    for (size_t j = 0; j < list.size(); ++j) {
      desc_factors[j] *= list[j].second;
      desc_basis[j] = add_[desc_basis[j]][list[j].first];
    }
  factors_.assign(desc_factors.rbegin(), desc_factors.rend());
  basis_.assign(desc_basis.rbegin(), desc_basis.rend());

  long long total = 1;
  for (long long f : factors_) total *= f;
  if (total != n) throw Error("abelian basis: factor product mismatch");

  // Coordinates of every element; also proves the decomposition is direct.
  coords_.assign(n, {});
  std::vector<char> seen(n, 0);
  std::vector<long long> c(factors_.size(), 0);
  while (true) {
    int e = element_from_coordinates(c);
    if (seen[e]) throw Error("abelian basis: decomposition not direct");
    seen[e] = 1;
    coords_[e] = c;
    size_t i = 0;
    while (i < c.size() && c[i] + 1 == factors_[i]) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end() && n > 1)
    throw Error("abelian basis: decomposition does not cover the group");
}

}  // namespace grpext
