#include "grpext/cohomology.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "grpext/errors.hpp"
#include "grpext/intmat.hpp"

namespace grpext {

TupleSpace composable_tuples(const FiniteGroupoid& k, int degree) {
  if (degree < 0) throw DegreeMismatch("composable_tuples: negative degree");
  TupleSpace out;
  out.degree = degree;
  if (degree == 0) {
    for (int x = 0; x < k.num_objects(); ++x) {
      out.tuples.push_back({x});
      out.degenerate.push_back(0);
    }
  } else {
    std::vector<int> t;
    // Lexicographic depth-first enumeration over arrow indices.
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == degree) {
        bool degen = false;
        for (int a : t)
          if (k.is_unit(a)) degen = true;
        out.tuples.push_back(t);
        out.degenerate.push_back(degen ? 1 : 0);
        return;
      }
      for (int a = 0; a < k.num_arrows(); ++a) {
        if (depth > 0 && k.tgt(t.back()) != k.src(a)) continue;
        t.push_back(a);
        self(self, depth + 1);
        t.pop_back();
      }
    };
    rec(rec, 0);
  }
  for (size_t i = 0; i < out.tuples.size(); ++i)
    out.index[out.tuples[i]] = static_cast<int>(i);
  return out;
}

KModule KModule::make(GroupoidPtr k, FiniteAbelianGroup e,
                      std::vector<std::vector<int>> action) {
  const int ne = e.order();
  if (static_cast<int>(action.size()) != k->num_arrows())
    throw Error("KModule: one action entry per arrow required");
  KModule m;
  m.k = k;
  m.e = std::move(e);
  m.action = std::move(action);
  m.action_inv.resize(m.action.size());
  for (size_t g = 0; g < m.action.size(); ++g) {
    const auto& p = m.action[g];
    if (static_cast<int>(p.size()) != ne) throw Error("KModule: action size mismatch");
    std::vector<char> seen(ne, 0);
    for (int v : p) {
      if (v < 0 || v >= ne || seen[v]) throw Error("KModule: action is not a bijection");
      seen[v] = 1;
    }
    for (int x = 0; x < ne; ++x)
      for (int y = 0; y < ne; ++y)
        if (p[m.e.add(x, y)] != m.e.add(p[x], p[y]))
          throw Error("KModule: action is not additive");
    m.action_inv[g].resize(ne);
    for (int x = 0; x < ne; ++x) m.action_inv[g][p[x]] = x;
  }
  for (int x = 0; x < k->num_objects(); ++x)
    for (int v = 0; v < ne; ++v)
      if (m.action[k->unit(x)][v] != v)
        throw Error("KModule: unit arrows must act as the identity");
  for (int g = 0; g < k->num_arrows(); ++g)
    for (int h = 0; h < k->num_arrows(); ++h) {
      if (!k->composable(g, h)) continue;
      int gh = k->compose(g, h);
      for (int v = 0; v < ne; ++v)
        if (m.action[gh][v] != m.action[h][m.action[g][v]])
          throw Error("KModule: action violates the composition law");
    }
  return m;
}

Cochain zero_cochain(const KModule& m, int degree) {
  Cochain c;
  c.degree = degree;
  c.values.assign(composable_tuples(*m.k, degree).size(), m.e.zero());
  return c;
}

bool is_zero_cochain(const KModule& m, const Cochain& c) {
  for (int v : c.values)
    if (v != m.e.zero()) return false;
  return true;
}

Cochain add_cochains(const KModule& m, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.values.size() != b.values.size())
    throw DegreeMismatch("add_cochains: degree mismatch");
  Cochain c;
  c.degree = a.degree;
  c.values.resize(a.values.size());
  for (size_t i = 0; i < a.values.size(); ++i)
    c.values[i] = m.e.add(a.values[i], b.values[i]);
  return c;
}

Cochain negate_cochain(const KModule& m, const Cochain& a) {
  Cochain c;
  c.degree = a.degree;
  c.values.reserve(a.values.size());
  for (int v : a.values) c.values.push_back(m.e.neg(v));
  return c;
}

/// Precomputed index plan for one coboundary degree: per codomain tuple, the
/// domain tuple of each term of the alternating sum together with its sign
/// and the twisting arrow of the leading term.
struct CoboundaryPlan {
  int degree = 0;  // domain degree n
  int dom_size = 0, cod_size = 0;
  struct Entry {
    int twist_arrow;                         // first arrow, for action_inv
    int head;                                // index of (g2..g_{n+1})
    std::vector<std::pair<int, int>> terms;  // (domain index, sign)
  };
  std::vector<Entry> entries;
};

CoboundaryPlan make_coboundary_plan(const KModule& m, int degree) {
  const auto& k = *m.k;
  auto dom = composable_tuples(k, degree);
  auto cod = composable_tuples(k, degree + 1);
  CoboundaryPlan plan;
  plan.degree = degree;
  plan.dom_size = dom.size();
  plan.cod_size = cod.size();
  plan.entries.resize(cod.size());
  for (int t = 0; t < cod.size(); ++t) {
    const auto& g = cod.tuples[t];
    auto& e = plan.entries[t];
    e.twist_arrow = g[0];
    if (degree == 0) {
      e.head = k.tgt(g[0]);
      e.terms.emplace_back(k.src(g[0]), -1);
    } else {
      const int n = degree;
      e.head = dom.index_of(std::vector<int>(g.begin() + 1, g.end()));
      for (int i = 1; i <= n; ++i) {
        std::vector<int> u;
        u.reserve(n);
        for (int j = 0; j < n + 1; ++j) {
          if (j == i - 1) {
            u.push_back(k.compose(g[i - 1], g[i]));
            ++j;  // skip g[i]
          } else {
            u.push_back(g[j]);
          }
        }
        e.terms.emplace_back(dom.index_of(u), i % 2 == 1 ? -1 : 1);
      }
      e.terms.emplace_back(dom.index_of(std::vector<int>(g.begin(), g.end() - 1)),
                           (n + 1) % 2 == 1 ? -1 : 1);
    }
  }
  return plan;
}

Cochain apply_coboundary(const KModule& m, const CoboundaryPlan& plan, const Cochain& c) {
  if (c.degree != plan.degree || static_cast<int>(c.values.size()) != plan.dom_size)
    throw DegreeMismatch("coboundary: cochain size does not match its degree");
  Cochain out;
  out.degree = plan.degree + 1;
  out.values.resize(plan.entries.size());
  for (size_t t = 0; t < plan.entries.size(); ++t) {
    const auto& e = plan.entries[t];
    int acc = m.action_inv[e.twist_arrow][c.values[e.head]];
    for (const auto& [idx, sign] : e.terms) {
      int term = c.values[idx];
      acc = m.e.add(acc, sign < 0 ? m.e.neg(term) : term);
    }
    out.values[t] = acc;
  }
  return out;
}

Cochain coboundary(const KModule& m, const Cochain& c) {
  return apply_coboundary(m, make_coboundary_plan(m, c.degree), c);
}

// --- Cohomology groups --------------------------------------------------------

struct CohomologyGroup::Impl {
  KModule module;
  int degree = 0;
  bool normalized = false;

  TupleSpace space_n, space_np1, space_nm1;
  std::vector<int> free_n, free_nm1;  // tuple indices used as coordinates

  std::vector<long long> invariant_factors;
  std::vector<Cochain> generators;

  // SNF backend data.
  bool has_snf = false;
  std::vector<long long> mod_n, mod_nm1;
  std::unique_ptr<IntSolver> lattice_solver;   // B_L w = z
  std::unique_ptr<IntSolver> witness_solver;   // [D_{n-1} | diag(mod_n)] u = z
  IntMat coord_p;                              // c = P w
  std::vector<long long> diag;                 // full SNF diagonal of X
  std::vector<int> factor_pos;                 // positions with diag > 1

  // Exhaustive backend data.
  bool has_exh = false;
  std::vector<long long> exh_factors;
  std::map<std::vector<int>, std::vector<long long>> exh_class;
  std::map<std::vector<int>, Cochain> exh_witness;
  std::vector<Cochain> exh_generators;

  int k_rank() const { return static_cast<int>(module.e.invariant_factors().size()); }

  std::vector<BigInt> to_coords(const Cochain& c) const {
    const int k = k_rank();
    std::vector<BigInt> out(free_n.size() * k);
    for (size_t i = 0; i < free_n.size(); ++i) {
      const auto& ec = module.e.coordinates(c.values[free_n[i]]);
      for (int j = 0; j < k; ++j) out[i * k + j] = ec[j];
    }
    return out;
  }

  Cochain from_coords(const std::vector<BigInt>& v, int deg, const TupleSpace& space,
                      const std::vector<int>& free) const {
    const int k = k_rank();
    Cochain c;
    c.degree = deg;
    c.values.assign(space.size(), module.e.zero());
    const auto& factors = module.e.invariant_factors();
    for (size_t i = 0; i < free.size(); ++i) {
      std::vector<long long> ec(k);
      for (int j = 0; j < k; ++j) {
        BigInt r = v[i * k + j] % factors[j];
        if (r < 0) r += factors[j];
        ec[j] = r.convert_to<long long>();
      }
      c.values[free[i]] = module.e.element_from_coordinates(ec);
    }
    return c;
  }
};

namespace {

std::vector<int> free_tuples(const TupleSpace& s, bool normalized) {
  std::vector<int> out;
  for (int i = 0; i < s.size(); ++i)
    if (!normalized || !s.degenerate[i]) out.push_back(i);
  return out;
}

// Integer matrix of d : C^deg -> C^{deg+1} restricted to the free
// coordinates on both sides. Columns are indexed by (tuple, E-basis) pairs.
IntMat differential_matrix(const KModule& m, int deg, const TupleSpace& dom_space,
                           const std::vector<int>& dom_free, const TupleSpace& cod_space,
                           const std::vector<int>& cod_free, bool normalized) {
  const int k = static_cast<int>(m.e.invariant_factors().size());
  IntMat d(static_cast<int>(cod_free.size()) * k,
           static_cast<int>(dom_free.size()) * k);
  auto plan = make_coboundary_plan(m, deg);
  Cochain basis;
  basis.degree = deg;
  basis.values.assign(dom_space.size(), m.e.zero());
  for (size_t col_t = 0; col_t < dom_free.size(); ++col_t) {
    for (int j = 0; j < k; ++j) {
      basis.values[dom_free[col_t]] = m.e.basis()[j];
      Cochain image = apply_coboundary(m, plan, basis);
      basis.values[dom_free[col_t]] = m.e.zero();
      if (normalized) {
        // The normalized cochains form a subcomplex; check it numerically.
        for (int t = 0; t < cod_space.size(); ++t)
          if (cod_space.degenerate[t] && image.values[t] != m.e.zero())
            throw Error("cohomology: normalized subcomplex violated");
      }
      for (size_t row_t = 0; row_t < cod_free.size(); ++row_t) {
        const auto& ec = m.e.coordinates(image.values[cod_free[row_t]]);
        for (int jj = 0; jj < k; ++jj)
          d.at(static_cast<int>(row_t) * k + jj,
               static_cast<int>(col_t) * k + j) = ec[jj];
      }
    }
  }
  return d;
}

std::vector<long long> moduli_vector(const KModule& m, size_t free_count) {
  const auto& f = m.e.invariant_factors();
  std::vector<long long> out;
  out.reserve(free_count * f.size());
  for (size_t i = 0; i < free_count; ++i)
    for (long long v : f) out.push_back(v);
  return out;
}

IntMat diag_matrix(const std::vector<long long>& mods) {
  IntMat d(static_cast<int>(mods.size()), static_cast<int>(mods.size()));
  for (size_t i = 0; i < mods.size(); ++i) d.at(static_cast<int>(i), static_cast<int>(i)) = mods[i];
  return d;
}

void build_snf_backend(CohomologyGroup::Impl& im) {
  const KModule& m = im.module;
  const int k = im.k_rank();
  const int deg = im.degree;
  const auto& cod_free = free_tuples(im.space_np1, im.normalized);
  const int M_n = static_cast<int>(im.free_n.size()) * k;
  const int M_np1 = static_cast<int>(cod_free.size()) * k;

  im.mod_n = moduli_vector(m, im.free_n.size());
  if (deg >= 1) im.mod_nm1 = moduli_vector(m, im.free_nm1.size());

  // Cocycle lattice L = {x : D_n x = 0 mod m_{n+1}} lifted to Z^{M_n}.
  IntMat gl;
  if (M_np1 == 0) {
    gl = diag_matrix(std::vector<long long>(M_n, 1));  // everything is a cocycle
  } else {
    IntMat dn = differential_matrix(m, deg, im.space_n, im.free_n, im.space_np1,
                                    cod_free, im.normalized);
    IntMat aug = dn.hstack(diag_matrix(moduli_vector(m, cod_free.size())));
    IntMat ker = kernel_basis(aug).top_rows(M_n);
    gl = ker.hstack(diag_matrix(im.mod_n));
  }
  IntMat bl = column_lattice_basis(gl);
  if (bl.cols != M_n) throw Error("cohomology: cocycle lattice is not full rank");

  // Coboundary lattice I = D_{n-1} Z^{M_{n-1}} + diag(mod_n) Z^{M_n}.
  IntMat dprev;
  IntMat gi;
  if (deg >= 1) {
    dprev = differential_matrix(m, deg - 1, im.space_nm1, im.free_nm1, im.space_n,
                                im.free_n, im.normalized);
    gi = dprev.hstack(diag_matrix(im.mod_n));
  } else {
    gi = diag_matrix(im.mod_n);
  }
  IntMat bi = column_lattice_basis(gi);
  if (bi.cols != M_n) throw Error("cohomology: coboundary lattice is not full rank");

  // X = B_L^{-1} B_I, then SNF(X) gives H = L / I.
  IntSolver bl_solver{bl};
  IntMat x(M_n, M_n);
  for (int j = 0; j < M_n; ++j) {
    std::vector<BigInt> col(M_n);
    for (int i = 0; i < M_n; ++i) col[i] = bi.at(i, j);
    auto sol = bl_solver.solve(col);
    if (!sol) throw Error("cohomology: coboundaries are not cocycles");
    for (int i = 0; i < M_n; ++i) x.at(i, j) = (*sol)[i];
  }
  auto snf = smith_normal_form(x);
  if (snf.rank != M_n) throw Error("cohomology: quotient is not finite");

  im.coord_p = snf.p;
  im.diag.resize(M_n);
  for (int i = 0; i < M_n; ++i)
    im.diag[i] = snf.s.at(i, i).convert_to<long long>();
  for (int i = 0; i < M_n; ++i)
    if (im.diag[i] > 1) im.factor_pos.push_back(i);

  // Generator representatives: columns of B_L P^{-1} at the factor positions.
  if (!im.factor_pos.empty()) {
    IntMat blp = bl.mul(unimodular_inverse(snf.p));
    for (int pos : im.factor_pos) {
      std::vector<BigInt> col(M_n);
      for (int i = 0; i < M_n; ++i) col[i] = blp.at(i, pos);
      im.generators.push_back(im.from_coords(col, deg, im.space_n, im.free_n));
      im.invariant_factors.push_back(im.diag[pos]);
    }
  }

  im.lattice_solver = std::make_unique<IntSolver>(bl);
  if (deg >= 1) {
    im.witness_solver = std::make_unique<IntSolver>(dprev.hstack(diag_matrix(im.mod_n)));
  }
  im.has_snf = true;
}

void build_exhaustive_backend(CohomologyGroup::Impl& im, unsigned long long cap) {
  const KModule& m = im.module;
  const int ne = m.e.order();
  const int deg = im.degree;

  auto count_cochains = [&](size_t coords) {
    unsigned long long total = 1;
    for (size_t i = 0; i < coords; ++i) {
      if (total > cap) return total;
      total *= static_cast<unsigned long long>(ne);
    }
    return total;
  };
  if (count_cochains(im.free_n.size()) > cap ||
      (deg >= 1 && count_cochains(im.free_nm1.size()) > cap))
    throw CapExceeded("cohomology: exhaustive enumeration cap exceeded");

  // Free coordinates run over raw element indices 0..|E|-1; non-free
  // coordinates stay at the zero element.
  auto enumerate = [&](int degree, const TupleSpace& space, const std::vector<int>& free,
                       auto&& visit) {
    Cochain c;
    c.degree = degree;
    c.values.assign(space.size(), m.e.zero());
    for (int f : free) c.values[f] = 0;
    std::vector<int> pick(free.size(), 0);
    while (true) {
      visit(c);
      size_t i = 0;
      while (i < free.size() && pick[i] + 1 == ne) {
        pick[i] = 0;
        c.values[free[i]] = 0;
        ++i;
      }
      if (i == free.size()) break;
      ++pick[i];
      c.values[free[i]] = pick[i];
    }
  };

  // Image of d_{n-1} with witnesses.
  std::vector<Cochain> image_list;
  if (deg >= 1) {
    auto plan_prev = make_coboundary_plan(m, deg - 1);
    enumerate(deg - 1, im.space_nm1, im.free_nm1, [&](const Cochain& w) {
      Cochain dw = apply_coboundary(m, plan_prev, w);
      if (im.exh_witness.emplace(dw.values, w).second) image_list.push_back(dw);
    });
  } else {
    image_list.push_back(zero_cochain(m, 0));
    im.exh_witness.emplace(image_list[0].values, Cochain{-1, {}});
  }

  // Kernel of d_n, partitioned into cosets of the image.
  auto plan = make_coboundary_plan(m, deg);
  std::vector<Cochain> reps;
  std::map<std::vector<int>, int> class_of;
  enumerate(deg, im.space_n, im.free_n, [&](const Cochain& z) {
    if (!is_zero_cochain(m, apply_coboundary(m, plan, z))) return;
    if (class_of.count(z.values)) return;
    int cls = static_cast<int>(reps.size());
    reps.push_back(z);
    for (const auto& img : image_list) {
      auto member = add_cochains(m, z, img);
      class_of[member.values] = cls;
    }
  });

  // Group structure on the classes.
  const int h = static_cast<int>(reps.size());
  std::vector<std::vector<int>> add(h, std::vector<int>(h));
  int zero_class = class_of.at(zero_cochain(m, deg).values);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      add[i][j] = class_of.at(add_cochains(m, reps[i], reps[j]).values);
  // Re-index so the zero class is element `zero` of the table; from_table
  // accepts any zero position, so keep indices as-is.
  FiniteAbelianGroup quotient = FiniteAbelianGroup::from_table(add, zero_class);

  im.exh_factors = quotient.invariant_factors();
  for (int b : quotient.basis()) im.exh_generators.push_back(reps[b]);
  for (const auto& [values, cls] : class_of)
    im.exh_class.emplace(values, quotient.coordinates(cls));
  im.has_exh = true;

  if (!im.has_snf) {
    im.invariant_factors = im.exh_factors;
    im.generators = im.exh_generators;
  }
}

void check_backend_agreement(const CohomologyGroup::Impl& im) {
  if (!(im.has_snf && im.has_exh)) return;
  if (im.invariant_factors != im.exh_factors)
    throw Error("cohomology: backends disagree on the group structure");
  // The snf coordinates of the exhaustive class representatives must hit
  // every coordinate tuple exactly once.
  std::vector<long long> c(im.exh_factors.size(), 0);
  CohomologyGroup view;
  view.impl = std::shared_ptr<const CohomologyGroup::Impl>(&im, [](const auto*) {});
  std::set<std::vector<long long>> seen;
  while (true) {
    Cochain rep = zero_cochain(im.module, im.degree);
    for (size_t i = 0; i < c.size(); ++i) {
      Cochain scaled = rep;
      for (long long t = 0; t < c[i]; ++t)
        scaled = add_cochains(im.module, scaled, im.exh_generators[i]);
      rep = scaled;
    }
    if (!seen.insert(view.class_of(rep)).second)
      throw Error("cohomology: backends disagree on class membership");
    size_t i = 0;
    while (i < c.size() && c[i] + 1 == im.exh_factors[i]) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
}

}  // namespace

int CohomologyGroup::degree() const { return impl->degree; }
bool CohomologyGroup::normalized() const { return impl->normalized; }
const std::vector<long long>& CohomologyGroup::invariant_factors() const {
  return impl->invariant_factors;
}
const std::vector<Cochain>& CohomologyGroup::generators() const {
  return impl->generators;
}
unsigned long long CohomologyGroup::order() const {
  unsigned long long o = 1;
  for (long long f : impl->invariant_factors) o *= static_cast<unsigned long long>(f);
  return o;
}

std::vector<long long> CohomologyGroup::class_of(const Cochain& z) const {
  const auto& im = *impl;
  if (z.degree != im.degree || static_cast<int>(z.values.size()) != im.space_n.size())
    throw DegreeMismatch("class_of: degree mismatch");
  if (!is_zero_cochain(im.module, coboundary(im.module, z)))
    throw NotACocycle("class_of: dz != 0");
  if (im.normalized) {
    for (int t = 0; t < im.space_n.size(); ++t)
      if (im.space_n.degenerate[t] && z.values[t] != im.module.e.zero())
        throw NotACocycle("class_of: cochain is not normalized");
  }
  if (im.has_snf) {
    auto w = im.lattice_solver->solve(im.to_coords(z));
    if (!w) throw NotACocycle("class_of: cochain is outside the cocycle lattice");
    std::vector<long long> out;
    for (int pos : im.factor_pos) {
      BigInt acc = 0;
      for (int j = 0; j < im.coord_p.cols; ++j) acc += im.coord_p.at(pos, j) * (*w)[j];
      BigInt r = acc % im.diag[pos];
      if (r < 0) r += im.diag[pos];
      out.push_back(r.convert_to<long long>());
    }
    return out;
  }
  auto it = im.exh_class.find(z.values);
  if (it == im.exh_class.end()) throw NotACocycle("class_of: unknown cocycle");
  return it->second;
}

std::optional<Cochain> CohomologyGroup::coboundary_witness(const Cochain& z) const {
  const auto& im = *impl;
  auto coords = class_of(z);
  for (long long c : coords)
    if (c != 0) return std::nullopt;
  if (im.degree == 0) return std::nullopt;
  if (im.has_snf) {
    auto u = im.witness_solver->solve(im.to_coords(z));
    if (!u) return std::nullopt;
    std::vector<BigInt> w(u->begin(),
                          u->begin() + static_cast<long>(im.free_nm1.size()) *
                                           im.k_rank());
    return im.from_coords(w, im.degree - 1, im.space_nm1, im.free_nm1);
  }
  auto it = im.exh_witness.find(z.values);
  if (it == im.exh_witness.end()) return std::nullopt;
  return it->second;
}

Cochain CohomologyGroup::representative(const std::vector<long long>& coords) const {
  const auto& im = *impl;
  if (coords.size() != im.invariant_factors.size())
    throw Error("representative: coordinate size mismatch");
  Cochain out = zero_cochain(im.module, im.degree);
  for (size_t i = 0; i < coords.size(); ++i)
    for (long long t = 0; t < coords[i]; ++t)
      out = add_cochains(im.module, out, im.generators[i]);
  return out;
}

std::vector<std::vector<long long>> CohomologyGroup::all_classes() const {
  std::vector<std::vector<long long>> out;
  std::vector<long long> c(impl->invariant_factors.size(), 0);
  while (true) {
    out.push_back(c);
    size_t i = 0;
    while (i < c.size() && c[i] + 1 == impl->invariant_factors[i]) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

CohomologyGroup cohomology(const KModule& m, int degree, const CohomologyOptions& opts) {
  if (degree < 0) throw DegreeMismatch("cohomology: negative degree");
  auto im = std::make_shared<CohomologyGroup::Impl>();
  im->module = m;
  im->degree = degree;
  im->normalized = opts.normalized;
  im->space_n = composable_tuples(*m.k, degree);
  im->space_np1 = composable_tuples(*m.k, degree + 1);
  if (degree >= 1) im->space_nm1 = composable_tuples(*m.k, degree - 1);
  im->free_n = free_tuples(im->space_n, opts.normalized && degree >= 1);
  if (degree >= 1)
    im->free_nm1 = free_tuples(im->space_nm1, opts.normalized && degree - 1 >= 1);

  if (opts.backend == Backend::Snf || opts.backend == Backend::Both)
    build_snf_backend(*im);
  if (opts.backend == Backend::Exhaustive) {
    build_exhaustive_backend(*im, opts.exhaustive_cap);
  } else if (opts.backend == Backend::Both) {
    try {
      build_exhaustive_backend(*im, opts.exhaustive_cap);
    } catch (const CapExceeded&) {
      // SNF carries the result alone beyond the enumeration cap.
    }
  }
  check_backend_agreement(*im);

  CohomologyGroup out;
  out.impl = im;
  return out;
}

KModule induced_action(const CenterGroup& z, GroupoidPtr k,
                       const std::vector<StrictMorphism>& lambda) {
  if (static_cast<int>(lambda.size()) != k->num_arrows())
    throw Error("induced_action: one automorphism per K-arrow required");
  const auto& a = *z.groupoid;
  const int ne = static_cast<int>(z.sections.size());

  std::vector<std::vector<int>> action(lambda.size());
  for (size_t g = 0; g < lambda.size(); ++g) {
    const auto& f = lambda[g];
    if (!is_functor(f) || !is_bijective(f) ||
        !StrictMorphism::same_groupoid(f.dom, z.groupoid))
      throw Error("induced_action: lambda values must be automorphisms of A");
    auto f_inv = invert_morphism(f);
    action[g].resize(ne);
    for (int i = 0; i < ne; ++i) {
      ObjectSection moved(a.num_objects());
      for (int x = 0; x < a.num_objects(); ++x)
        moved[x] = f.arrow_map[z.sections[i][f_inv.obj_map[x]]];
      int j = z.index_of(moved);
      if (j < 0) throw Error("induced_action: action left the center");
      action[g][i] = j;
    }
  }
  for (int x = 0; x < k->num_objects(); ++x)
    for (int i = 0; i < ne; ++i)
      if (action[k->unit(x)][i] != i)
        throw NotABand("induced_action: unit arrow does not act trivially");
  for (int g = 0; g < k->num_arrows(); ++g)
    for (int h = 0; h < k->num_arrows(); ++h) {
      if (!k->composable(g, h)) continue;
      int gh = k->compose(g, h);
      for (int i = 0; i < ne; ++i)
        if (action[gh][i] != action[h][action[g][i]])
          throw NotABand("induced_action: coarse classes do not form a band");
    }
  return KModule::make(k, z.group, std::move(action));
}

}  // namespace grpext
