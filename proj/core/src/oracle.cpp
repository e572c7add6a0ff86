#include "grpext/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "grpext/errors.hpp"

namespace grpext::oracle {

// --- Census ---------------------------------------------------------------------

CensusResult census_extensions(const AutContext& ctx, GroupoidPtr k,
                               const std::optional<Band>& band_filter, int cap) {
  const auto& a = *ctx.a;
  const int na1 = a.num_arrows(), nk1 = k->num_arrows();
  const int na0 = a.num_objects(), nk0 = k->num_objects();
  if (na1 * nk1 > cap)
    throw CapExceeded("census: |A1| * |K1| = " + std::to_string(na1 * nk1) +
                      " exceeds cap " + std::to_string(cap));

  CensusResult out;
  const int narr = na1 * nk1;
  const int nobj = na0 * nk0;
  auto arr = [&](int al, int xi) { return al * nk1 + xi; };
  auto obj = [&](int ao, int ko) { return ao * nk0 + ko; };

  // Free choices of the target map: the fiber object of t(alpha, xi) for
  // non-unit xi; unit arrows must target (t alpha, x).
  std::vector<int> free_targets;
  for (int al = 0; al < na1; ++al)
    for (int xi = 0; xi < nk1; ++xi)
      if (!k->is_unit(xi)) free_targets.push_back(arr(al, xi));

  std::vector<int> tau(narr, -1);
  for (int al = 0; al < na1; ++al)
    for (int xi = 0; xi < nk1; ++xi)
      if (k->is_unit(xi)) tau[arr(al, xi)] = a.tgt(al);

  std::vector<int> g_src(narr), g_tgt(narr);
  std::vector<int> table(static_cast<size_t>(narr) * narr, -1);
  std::vector<std::pair<int, int>> entries;

  auto slot = [&](int g1, int g2) -> int& { return table[g1 * narr + g2]; };

  auto try_finish = [&]() {
    GroupoidData d;
    for (int o = 0; o < nobj; ++o) d.object_names.push_back(padded_name("p", o, nobj));
    for (int g1 = 0; g1 < narr; ++g1) d.arrow_names.push_back(padded_name("g", g1, narr));
    d.src = g_src;
    d.tgt = g_tgt;
    d.unit.resize(nobj);
    for (int ao = 0; ao < na0; ++ao)
      for (int ko = 0; ko < nk0; ++ko) d.unit[obj(ao, ko)] = arr(a.unit(ao), k->unit(ko));
    d.inv.assign(narr, -1);
    for (int g1 = 0; g1 < narr; ++g1) {
      for (int g2 = 0; g2 < narr; ++g2)
        if (g_tgt[g1] == g_src[g2] && slot(g1, g2) == d.unit[g_src[g1]] &&
            g_tgt[g2] == g_src[g1] && slot(g2, g1) == d.unit[g_src[g2]]) {
          d.inv[g1] = g2;
          break;
        }
      if (d.inv[g1] < 0) return;  // no two-sided inverse
    }
    for (const auto& [g1, g2] : entries) d.compose.push_back({g1, g2, slot(g1, g2)});

    auto validated = FiniteGroupoid::validate(std::move(d));
    if (!validated.ok()) return;

    std::vector<int> fo(nobj), bo(nobj), fa(narr), ba(narr);
    for (int ao = 0; ao < na0; ++ao)
      for (int ko = 0; ko < nk0; ++ko) {
        fo[obj(ao, ko)] = ao;
        bo[obj(ao, ko)] = ko;
      }
    for (int al = 0; al < na1; ++al)
      for (int xi = 0; xi < nk1; ++xi) {
        fa[arr(al, xi)] = al;
        ba[arr(al, xi)] = xi;
      }
    ProductBundle bundle;
    try {
      bundle = make_product_bundle(ctx.a, k, validated.groupoid, fo, bo, fa, ba);
    } catch (const NotAProductBundle&) {
      return;
    }
    GeneralizedCocycle gc;
    try {
      gc = extract_cocycle(ctx, bundle);
    } catch (const Error&) {
      return;  // pre-action not by automorphisms: a bundle but not an extension
    }
    if (band_filter && band_of(ctx, gc).values != band_filter->values) return;
    out.bundles.push_back(std::move(bundle));
  };

  // Associativity closure over defined entries; false on contradiction.
  auto propagate = [&]() -> bool {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [x, y] : entries) {
        int xy = slot(x, y);
        if (xy < 0) continue;
        for (int z = 0; z < narr; ++z) {
          if (g_tgt[y] != g_src[z]) continue;
          int yz = slot(y, z);
          if (yz < 0) continue;
          int lhs = slot(xy, z);
          int rhs = slot(x, yz);
          if (lhs >= 0 && rhs >= 0) {
            if (lhs != rhs) return false;
          } else if (lhs >= 0) {
            slot(x, yz) = lhs;
            changed = true;
          } else if (rhs >= 0) {
            slot(xy, z) = rhs;
            changed = true;
          }
        }
      }
    }
    return true;
  };

  std::function<void()> complete = [&]() {
    int e1 = -1, e2 = -1;
    for (const auto& [g1, g2] : entries)
      if (slot(g1, g2) < 0) {
        e1 = g1;
        e2 = g2;
        break;
      }
    if (e1 < 0) {
      try_finish();
      return;
    }
    int xi = e1 % nk1, eta = e2 % nk1;
    int prod_base = k->compose(xi, eta);
    for (int de = 0; de < na1; ++de) {
      int cand = arr(de, prod_base);
      if (g_src[cand] != g_src[e1] || g_tgt[cand] != g_tgt[e2]) continue;
      // Cancellation: a fixed factor acts injectively.
      bool ok = true;
      for (int g2 = 0; g2 < narr && ok; ++g2)
        if (g2 != e2 && g_tgt[e1] == g_src[g2] && slot(e1, g2) == cand) ok = false;
      for (int g1 = 0; g1 < narr && ok; ++g1)
        if (g1 != e1 && g_tgt[g1] == g_src[e2] && slot(g1, e2) == cand) ok = false;
      if (!ok) continue;
      auto backup = table;
      slot(e1, e2) = cand;
      if (propagate()) complete();
      table = backup;
    }
  };

  std::vector<size_t> pick(free_targets.size(), 0);
  while (true) {
    for (size_t i = 0; i < free_targets.size(); ++i)
      tau[free_targets[i]] = static_cast<int>(pick[i]);
    for (int al = 0; al < na1; ++al)
      for (int xi = 0; xi < nk1; ++xi) {
        g_src[arr(al, xi)] = obj(a.src(al), k->src(xi));
        g_tgt[arr(al, xi)] = obj(tau[arr(al, xi)], k->tgt(xi));
      }
    entries.clear();
    for (int g1 = 0; g1 < narr; ++g1)
      for (int g2 = 0; g2 < narr; ++g2)
        if (g_tgt[g1] == g_src[g2]) entries.emplace_back(g1, g2);

    std::fill(table.begin(), table.end(), -1);
    bool consistent = true;
    auto force = [&](int g1, int g2, int value) {
      int& s = slot(g1, g2);
      if (s == -1)
        s = value;
      else if (s != value)
        consistent = false;
    };
    for (const auto& [g1, g2] : entries) {
      int al = g1 / nk1, xi = g1 % nk1;
      int be = g2 / nk1, eta = g2 % nk1;
      if (a.is_unit(al) && k->is_unit(xi)) force(g1, g2, g2);
      if (a.is_unit(be) && k->is_unit(eta)) force(g1, g2, g1);
      if (k->is_unit(xi) && k->is_unit(eta))
        force(g1, g2, arr(a.compose(al, be), xi));  // kernel multiplies as A
    }
    if (consistent && propagate()) complete();

    size_t i = 0;
    while (i < free_targets.size() && pick[i] + 1 == static_cast<size_t>(na0))
      pick[i++] = 0;
    if (i == free_targets.size()) break;
    ++pick[i];
  }

  out.class_of.assign(out.bundles.size(), -1);
  for (size_t i = 0; i < out.bundles.size(); ++i) {
    if (out.class_of[i] >= 0) continue;
    int cls = static_cast<int>(out.classes.size());
    out.classes.push_back({static_cast<int>(i)});
    out.class_of[i] = cls;
    for (size_t j = i + 1; j < out.bundles.size(); ++j) {
      if (out.class_of[j] >= 0) continue;
      if (extensions_isomorphic(out.bundles[i], out.bundles[j])) {
        out.class_of[j] = cls;
        out.classes[cls].push_back(static_cast<int>(j));
      }
    }
  }
  return out;
}

// --- Bar-resolution oracle ---------------------------------------------------------

namespace {

using SmallMat = std::vector<std::vector<long long>>;

long long pow_ll(long long p, int e) {
  long long r = 1;
  while (e-- > 0) r *= p;
  return r;
}

// Number of x with x_i in Z_{p^{col_exp[i]}} solving row j = 0 mod
// p^{row_exp[j]}; returned as the exponent of p.
int count_solutions_exponent(const SmallMat& m, const std::vector<int>& row_exp,
                             const std::vector<int>& col_exp, long long p) {
  const int rows = static_cast<int>(row_exp.size());
  const int cols = static_cast<int>(col_exp.size());
  int big = 0;
  for (int e : row_exp) big = std::max(big, e);
  for (int e : col_exp) big = std::max(big, e);
  if (big == 0) return 0;
  const long long pe = pow_ll(p, big);

  // Scale row j to a congruence mod p^big and reduce.
  SmallMat b(rows, std::vector<long long>(cols, 0));
  for (int j = 0; j < rows; ++j) {
    long long scale = pow_ll(p, big - row_exp[j]);
    for (int i = 0; i < cols; ++i) {
      long long v = ((j < static_cast<int>(m.size()) ? m[j][i] : 0) % pe + pe) % pe;
      b[j][i] = static_cast<long long>(static_cast<__int128>(v) * scale % pe);
    }
  }

  auto valuation = [&](long long v) {
    if (v % pe == 0) return big;
    int val = 0;
    while (v % p == 0) {
      v /= p;
      ++val;
    }
    return val;
  };
  auto inv_unit = [&](long long u) {
    long long r = 1, base = (u % pe + pe) % pe;
    long long exp = pe / p * (p - 1) - 1;  // phi(p^big) - 1
    while (exp > 0) {
      if (exp & 1) r = static_cast<long long>(static_cast<__int128>(r) * base % pe);
      base = static_cast<long long>(static_cast<__int128>(base) * base % pe);
      exp >>= 1;
    }
    return r;
  };

  // Diagonalize over Z_{p^big} by minimal-valuation pivoting.
  int t = 0;
  std::vector<int> pivot_vals;
  const int bound = std::min(rows, cols);
  while (t < bound) {
    int pi = -1, pj = -1, best = big + 1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (b[i][j] % pe == 0) continue;
        int v = valuation(b[i][j]);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    std::swap(b[pi], b[t]);
    for (int i = 0; i < rows; ++i) std::swap(b[i][pj], b[i][t]);
    long long unit = b[t][t] / pow_ll(p, best);
    long long unit_inv = inv_unit(unit);
    for (int i = t + 1; i < rows; ++i) {
      if (b[i][t] % pe == 0) continue;
      long long q = static_cast<long long>(
          static_cast<__int128>(b[i][t] / pow_ll(p, best)) * unit_inv % pe);
      for (int j = t; j < cols; ++j)
        b[i][j] = static_cast<long long>(
            ((b[i][j] - static_cast<__int128>(q) * b[t][j]) % pe + pe) % pe);
    }
    for (int j = t + 1; j < cols; ++j) {
      if (b[t][j] % pe == 0) continue;
      long long q = static_cast<long long>(
          static_cast<__int128>(b[t][j] / pow_ll(p, best)) * unit_inv % pe);
      for (int i = t; i < rows; ++i)
        b[i][j] = static_cast<long long>(
            ((b[i][j] - static_cast<__int128>(q) * b[i][t]) % pe + pe) % pe);
    }
    pivot_vals.push_back(best);
    ++t;
  }

  int exponent = 0;
  for (int v : pivot_vals) exponent += v;           // pivot column solutions
  exponent += (cols - t) * big;                      // free columns
  for (int e : col_exp) exponent -= big - e;         // undo the lift overcount
  return exponent;
}

struct BarComplex {
  const GroupModule* gm;
  int n;      // |G|
  int krank;  // coordinates of M

  explicit BarComplex(const GroupModule& g)
      : gm(&g), n(static_cast<int>(g.mult.size())),
        krank(static_cast<int>(g.moduli.size())) {}

  long long tuples(int deg) const {
    long long t = 1;
    for (int i = 0; i < deg; ++i) t *= n;
    return t;
  }
  int coords(int deg) const { return static_cast<int>(tuples(deg)) * krank; }

  // Little-endian digits: tuple = g1 + g2 n + ... + g_deg n^{deg-1}.
  std::vector<int> digits(long long tuple, int deg) const {
    std::vector<int> g(deg);
    for (int i = 0; i < deg; ++i) {
      g[i] = static_cast<int>(tuple % n);
      tuple /= n;
    }
    return g;
  }
  long long tuple_of(const std::vector<int>& g) const {
    long long t = 0;
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) t = t * n + g[i];
    return t;
  }

  // d c(g1..g_{deg+1}) = R(g1) c(g2..) + sum (-1)^i c(.. gi g_{i+1} ..)
  //                      + (-1)^{deg+1} c(g1..g_deg)
  SmallMat differential(int deg) const {
    SmallMat d(coords(deg + 1), std::vector<long long>(coords(deg), 0));
    const long long cod_tuples = tuples(deg + 1);
    for (long long t = 0; t < cod_tuples; ++t) {
      auto g = digits(t, deg + 1);
      // Twisted leading term.
      {
        std::vector<int> tail(g.begin() + 1, g.end());
        long long s = tuple_of(tail);
        const auto& r = gm->action[g[0]];
        for (int jj = 0; jj < krank; ++jj)
          for (int j = 0; j < krank; ++j)
            d[t * krank + jj][s * krank + j] += r[jj][j];
      }
      for (int i = 1; i <= deg; ++i) {
        std::vector<int> u;
        u.reserve(deg);
        for (int j = 0; j < deg + 1; ++j) {
          if (j == i - 1) {
            u.push_back(gm->mult[g[i - 1]][g[i]]);
            ++j;
          } else {
            u.push_back(g[j]);
          }
        }
        long long s = tuple_of(u);
        long long sign = i % 2 == 1 ? -1 : 1;
        for (int j = 0; j < krank; ++j) d[t * krank + j][s * krank + j] += sign;
      }
      {
        std::vector<int> head(g.begin(), g.end() - 1);
        long long s = tuple_of(head);
        long long sign = (deg + 1) % 2 == 1 ? -1 : 1;
        for (int j = 0; j < krank; ++j) d[t * krank + j][s * krank + j] += sign;
      }
    }
    return d;
  }
};

}  // namespace

std::vector<long long> group_cohomology_oracle(const GroupModule& gm, int degree) {
  const int n = static_cast<int>(gm.mult.size());
  if (n == 0) throw Error("oracle: empty group");
  BarComplex bc(gm);
  if (bc.tuples(degree + 1) * std::max(bc.krank, 1) > 4096)
    throw CapExceeded("oracle: bar complex too large");

  // Sanity of the module: identity acts as identity, action is closed.
  for (int j = 0; j < bc.krank; ++j)
    for (int i = 0; i < bc.krank; ++i) {
      long long want = i == j ? 1 : 0;
      if (((gm.action[gm.identity][j][i] - want) % gm.moduli[j] + gm.moduli[j]) %
              gm.moduli[j] !=
          0)
        throw Error("oracle: identity does not act trivially");
    }

  SmallMat dn = bc.differential(degree);
  SmallMat dprev = degree >= 1 ? bc.differential(degree - 1) : SmallMat{};
  const int cn = bc.coords(degree);
  const int cn1 = bc.coords(degree + 1);
  const int cp = degree >= 1 ? bc.coords(degree - 1) : 0;

  auto coord_moduli = [&](int deg) {
    std::vector<long long> m;
    long long t = bc.tuples(deg);
    for (long long i = 0; i < t; ++i)
      for (long long v : gm.moduli) m.push_back(v);
    return m;
  };
  auto mod_n = coord_moduli(degree);
  auto mod_n1 = coord_moduli(degree + 1);
  auto mod_p = degree >= 1 ? coord_moduli(degree - 1) : std::vector<long long>{};

  std::set<long long> primes;
  for (long long m : gm.moduli) {
    long long v = m;
    for (long long p = 2; p * p <= v; ++p)
      while (v % p == 0) {
        primes.insert(p);
        v /= p;
      }
    if (v > 1) primes.insert(v);
  }

  // Per prime: partition of the p-part of H from torsion counts.
  std::map<long long, std::vector<int>> partitions;
  for (long long p : primes) {
    auto exps = [&](const std::vector<long long>& mods) {
      std::vector<int> e;
      for (long long m : mods) {
        int v = 0;
        while (m % p == 0) {
          m /= p;
          ++v;
        }
        e.push_back(v);
      }
      return e;
    };
    auto col_n = exps(mod_n), row_n1 = exps(mod_n1), col_p = exps(mod_p);

    int v_ker = count_solutions_exponent(dn, row_n1, col_n, p);
    int v_ker_prev = 0, v_cprev = 0;
    if (degree >= 1) {
      v_ker_prev = count_solutions_exponent(dprev, exps(mod_n), col_p, p);
      for (int e : col_p) v_cprev += e;
    }
    int v_h = v_ker - (v_cprev - v_ker_prev);
    if (v_h < 0) throw Error("oracle: negative quotient size");

    // Count the p^k-torsion of H via the combined system in (z, w).
    std::vector<int> parts;
    int prev_m = 0;
    for (int kk = 1; prev_m < v_h; ++kk) {
      SmallMat sys(cn1 + cn, std::vector<long long>(cn + cp, 0));
      for (int i = 0; i < cn1; ++i)
        for (int j = 0; j < cn; ++j) sys[i][j] = dn[i][j];
      long long pk = pow_ll(p, kk);
      for (int i = 0; i < cn; ++i) {
        sys[cn1 + i][i] = pk;
        for (int j = 0; j < cp; ++j) sys[cn1 + i][cn + j] = -dprev[i][j];
      }
      std::vector<int> row_exp = exps(mod_n1);
      for (int e : exps(mod_n)) row_exp.push_back(e);
      std::vector<int> col_exp = exps(mod_n);
      for (int e : exps(mod_p)) col_exp.push_back(e);

      int v_pairs = count_solutions_exponent(sys, row_exp, col_exp, p);
      int m_k = v_pairs - v_ker_prev;
      int new_parts = m_k - prev_m;
      if (new_parts < 0 || (!parts.empty() && new_parts > parts.back()))
        throw Error("oracle: inconsistent torsion counts");
      parts.push_back(new_parts);
      prev_m = m_k;
      if (kk > 64) throw Error("oracle: torsion counting did not terminate");
    }
    // parts[k-1] = #{invariant p-exponents >= k}; convert to exponents.
    std::vector<int> exps_desc;
    for (int i = 0; i < (parts.empty() ? 0 : parts[0]); ++i) {
      int e = 0;
      for (int part : parts)
        if (part > i) ++e;
      exps_desc.push_back(e);
    }
    partitions[p] = exps_desc;
  }

  size_t width = 0;
  for (auto& [p, parts] : partitions) width = std::max(width, parts.size());
  std::vector<long long> desc(width, 1);
  for (auto& [p, parts] : partitions)
    for (size_t i = 0; i < parts.size(); ++i) desc[i] *= pow_ll(p, parts[i]);
  std::vector<long long> out(desc.rbegin(), desc.rend());
  return out;
}

}  // namespace grpext::oracle
