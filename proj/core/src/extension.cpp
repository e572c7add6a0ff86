#include "grpext/extension.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "grpext/errors.hpp"

namespace grpext {

AutContext make_aut_context(GroupoidPtr a, int saut_cap) {
  AutContext ctx;
  ctx.a = a;
  ctx.saut = enumerate_saut(a, saut_cap);
  ctx.na = n_group(a, ctx.saut);
  ctx.coarse = coarse_saut(ctx.saut, ctx.na);
  ctx.z = center(a);
  return ctx;
}

Band trivial_band(const AutContext& ctx, GroupoidPtr k) {
  Band b;
  b.k = k;
  b.values.assign(k->num_arrows(), ctx.coarse.identity);
  return b;
}

BandReport check_band(const AutContext& ctx, const Band& band) {
  BandReport rep;
  const auto& k = *band.k;
  if (static_cast<int>(band.values.size()) != k.num_arrows()) {
    rep.violations.push_back("one coarse class per arrow required");
    return rep;
  }
  for (int v : band.values)
    if (v < 0 || v >= ctx.coarse.num_classes()) {
      rep.violations.push_back("coarse class index out of range");
      return rep;
    }
  for (int x = 0; x < k.num_objects(); ++x)
    if (band.values[k.unit(x)] != ctx.coarse.identity)
      rep.violations.push_back("unit arrow " + k.arrow_name(k.unit(x)) +
                               " does not map to the identity class");
  for (int g = 0; g < k.num_arrows(); ++g)
    for (int h = 0; h < k.num_arrows(); ++h) {
      if (!k.composable(g, h)) continue;
      if (band.values[k.compose(g, h)] !=
          ctx.coarse.mult[band.values[g]][band.values[h]])
        rep.violations.push_back("composition law fails on (" + k.arrow_name(g) + ", " +
                                 k.arrow_name(h) + ")");
    }
  rep.ok = rep.violations.empty();
  return rep;
}

std::vector<Band> enumerate_bands(const AutContext& ctx, GroupoidPtr k) {
  std::vector<Band> out;
  const int n = k->num_arrows();
  std::vector<int> values(n, -1);
  for (int x = 0; x < k->num_objects(); ++x)
    values[k->unit(x)] = ctx.coarse.identity;

  // Propagate composites of assigned arrows; -2 marks a contradiction.
  auto propagate = [&](std::vector<int> v) -> std::optional<std::vector<int>> {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          if (!k->composable(g, h) || v[g] < 0 || v[h] < 0) continue;
          int gh = k->compose(g, h);
          int want = ctx.coarse.mult[v[g]][v[h]];
          if (v[gh] < 0) {
            v[gh] = want;
            changed = true;
          } else if (v[gh] != want) {
            return std::nullopt;
          }
        }
    }
    return v;
  };

  auto rec = [&](auto&& self, std::vector<int> v) -> void {
    auto propagated = propagate(std::move(v));
    if (!propagated) return;
    auto& cur = *propagated;
    int next = -1;
    for (int g = 0; g < n; ++g)
      if (cur[g] < 0) {
        next = g;
        break;
      }
    if (next < 0) {
      Band b{k, cur};
      if (check_band(ctx, b).ok) out.push_back(std::move(b));
      return;
    }
    for (int c = 0; c < ctx.coarse.num_classes(); ++c) {
      auto branch = cur;
      branch[next] = c;
      self(self, std::move(branch));
    }
  };
  rec(rec, values);
  std::sort(out.begin(), out.end(),
            [](const Band& a, const Band& b) { return a.values < b.values; });
  return out;
}

// --- Cocycle evaluation helpers -----------------------------------------------

namespace {

/// Cached morphism data for evaluating one (Lambda, Omega) pair.
struct CocycleCalc {
  const AutContext* ctx;
  GroupoidPtr k;
  TupleSpace pairs;    // K^[2]
  TupleSpace triples;  // K^[3]
  std::vector<int> lambda;
  std::vector<const StrictMorphism*> lam;
  std::vector<StrictMorphism> lam_inv;
  std::vector<int> theta;  // per pair: automorphism index of L_{xy}^{-1} L_y L_x

  CocycleCalc(const AutContext& c, GroupoidPtr kk, const std::vector<int>& lambda_idx)
      : ctx(&c), k(kk), lambda(lambda_idx) {
    const auto& saut = c.saut;
    if (static_cast<int>(lambda.size()) != k->num_arrows())
      throw Error("cocycle: one automorphism per K-arrow required");
    for (int l : lambda)
      if (l < 0 || l >= saut.num_autos())
        throw Error("cocycle: automorphism index out of range");
    pairs = composable_tuples(*k, 2);
    triples = composable_tuples(*k, 3);
    lam.resize(lambda.size());
    lam_inv.resize(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) {
      lam[i] = &saut.autos[lambda[i]];
      lam_inv[i] = saut.autos[saut.invert_auto(lambda[i])];
    }
    theta.resize(pairs.size());
    for (int p = 0; p < pairs.size(); ++p) {
      int xi = pairs.tuples[p][0], eta = pairs.tuples[p][1];
      int comp = k->compose(xi, eta);
      theta[p] = saut.compose_autos(saut.compose_autos(lambda[xi], lambda[eta]),
                                    saut.invert_auto(lambda[comp]));
    }
  }

  int pair_of(int xi, int eta) const { return pairs.index_of({xi, eta}); }
  const StrictMorphism& theta_m(int p) const { return ctx->saut.autos[theta[p]]; }
};

// The four Omega positions of the cocycle condition for one triple.
struct TriplePairs {
  int p_xy, p_cz, p_yz, p_xw;  // (x,y), (xy,z), (y,z), (x,yz)
};

TriplePairs triple_pairs(const CocycleCalc& cc, int t) {
  const auto& tr = cc.triples.tuples[t];
  int xi = tr[0], eta = tr[1], zeta = tr[2];
  const auto& k = *cc.k;
  return {cc.pair_of(xi, eta), cc.pair_of(k.compose(xi, eta), zeta),
          cc.pair_of(eta, zeta), cc.pair_of(xi, k.compose(eta, zeta))};
}

// Eq-style condition: Om(x,y,a) Om(xy,z,a4) == Lx^{-1}(Om(y,z,a1)) Om(x,yz,a5).
bool cocycle_condition_at(const CocycleCalc& cc,
                          const std::vector<std::vector<int>>& omega, int t, int obj) {
  const auto& a = *cc.ctx->a;
  const auto& tr = cc.triples.tuples[t];
  int xi = tr[0];
  auto tp = triple_pairs(cc, t);
  int a1 = cc.lam[xi]->obj_map[obj];
  int a4 = cc.theta_m(tp.p_xy).obj_map[obj];
  int a5 = cc.lam_inv[xi].obj_map[cc.theta_m(tp.p_yz).obj_map[a1]];
  int lhs = a.compose(omega[tp.p_xy][obj], omega[tp.p_cz][a4]);
  int rhs = a.compose(cc.lam_inv[xi].arrow_map[omega[tp.p_yz][a1]], omega[tp.p_xw][a5]);
  return lhs == rhs;
}

bool omega_is_transformation(const CocycleCalc& cc, int pair,
                             const std::vector<int>& values, std::string* why) {
  NaturalTransformation r{identity_morphism(cc.ctx->a), cc.theta_m(pair), values};
  if (auto v = naturality_violation(r)) {
    if (why) *why = *v;
    return false;
  }
  return true;
}

std::vector<int> unit_section_of(const FiniteGroupoid& a) {
  std::vector<int> s(a.num_objects());
  for (int x = 0; x < a.num_objects(); ++x) s[x] = a.unit(x);
  return s;
}

}  // namespace

Band band_of(const AutContext& ctx, const GeneralizedCocycle& gc) {
  Band b;
  b.k = gc.k;
  b.values.reserve(gc.lambda.size());
  for (int l : gc.lambda) b.values.push_back(ctx.coarse.class_of[l]);
  return b;
}

CocycleReport check_generalized_cocycle(const AutContext& ctx,
                                        const GeneralizedCocycle& gc) {
  CocycleReport rep;
  const auto& a = *ctx.a;
  const auto& k = *gc.k;

  if (static_cast<int>(gc.lambda.size()) != k.num_arrows()) {
    rep.violations.push_back("lambda must assign one automorphism per K-arrow");
    return rep;
  }
  CocycleCalc cc(ctx, gc.k, gc.lambda);
  if (static_cast<int>(gc.omega.size()) != cc.pairs.size()) {
    rep.violations.push_back("omega must cover every composable pair");
    return rep;
  }
  for (const auto& vals : gc.omega)
    if (static_cast<int>(vals.size()) != a.num_objects()) {
      rep.violations.push_back("omega entries must cover every fiber object");
      return rep;
    }

  int id_auto = ctx.saut.auto_index(identity_morphism(ctx.a));
  for (int x = 0; x < k.num_objects(); ++x)
    if (gc.lambda[k.unit(x)] != id_auto)
      rep.violations.push_back("lambda(" + k.arrow_name(k.unit(x)) +
                               ") is not the identity");

  for (int p = 0; p < cc.pairs.size(); ++p) {
    std::string why;
    if (!omega_is_transformation(cc, p, gc.omega[p], &why)) {
      rep.violations.push_back("omega at pair (" + k.arrow_name(cc.pairs.tuples[p][0]) +
                               ", " + k.arrow_name(cc.pairs.tuples[p][1]) +
                               ") is not a 2-cell: " + why);
    }
    if (k.is_unit(cc.pairs.tuples[p][0]) || k.is_unit(cc.pairs.tuples[p][1])) {
      for (int obj = 0; obj < a.num_objects(); ++obj)
        if (gc.omega[p][obj] != a.unit(obj)) {
          rep.violations.push_back("normalization fails at pair (" +
                                   k.arrow_name(cc.pairs.tuples[p][0]) + ", " +
                                   k.arrow_name(cc.pairs.tuples[p][1]) + ")");
          break;
        }
    }
  }
  rep.structure_ok = rep.violations.empty();
  if (!rep.structure_ok) return rep;

  for (int t = 0; t < cc.triples.size(); ++t)
    for (int obj = 0; obj < a.num_objects(); ++obj)
      if (!cocycle_condition_at(cc, gc.omega, t, obj)) {
        const auto& tr = cc.triples.tuples[t];
        rep.violations.push_back("cocycle condition fails at (" + k.arrow_name(tr[0]) +
                                 ", " + k.arrow_name(tr[1]) + ", " + k.arrow_name(tr[2]) +
                                 ") over " + a.object_name(obj));
      }

  // Special case: Om(x, x^{-1}, a) = Lx^{-1}(Om(x^{-1}, x, L_x(a))).
  for (int xi = 0; xi < k.num_arrows(); ++xi) {
    int inv = k.inverse(xi);
    int p1 = cc.pair_of(xi, inv), p2 = cc.pair_of(inv, xi);
    for (int obj = 0; obj < a.num_objects(); ++obj) {
      int a1 = cc.lam[xi]->obj_map[obj];
      if (gc.omega[p1][obj] != cc.lam_inv[xi].arrow_map[gc.omega[p2][a1]]) {
        rep.violations.push_back("inverse-pair identity fails at " + k.arrow_name(xi) +
                                 " over " + a.object_name(obj));
        break;
      }
    }
  }

  rep.ok = rep.violations.empty();
  return rep;
}

GeneralizedCocycle lift_band(const AutContext& ctx, const Band& band) {
  auto br = check_band(ctx, band);
  if (!br.ok) throw NotABand("lift_band: " + br.violations.front());
  std::vector<int> lambda(band.values.size());
  for (size_t i = 0; i < band.values.size(); ++i)
    lambda[i] = ctx.coarse.representative[band.values[i]];
  return canonical_omega(ctx, band.k, lambda);
}

std::vector<std::vector<int>> all_liftings(const AutContext& ctx, const Band& band) {
  auto br = check_band(ctx, band);
  if (!br.ok) throw NotABand("all_liftings: " + br.violations.front());
  const auto& k = *band.k;
  std::vector<std::vector<int>> per_arrow(k.num_arrows());
  for (int g = 0; g < k.num_arrows(); ++g) {
    if (k.is_unit(g)) {
      per_arrow[g] = {ctx.saut.auto_index(identity_morphism(ctx.a))};
    } else {
      for (int f = 0; f < ctx.saut.num_autos(); ++f)
        if (ctx.coarse.class_of[f] == band.values[g]) per_arrow[g].push_back(f);
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<size_t> pick(k.num_arrows(), 0);
  if (k.num_arrows() == 0) return {std::vector<int>{}};
  while (true) {
    std::vector<int> lambda(k.num_arrows());
    for (int g = 0; g < k.num_arrows(); ++g) lambda[g] = per_arrow[g][pick[g]];
    out.push_back(std::move(lambda));
    int g = k.num_arrows() - 1;
    while (g >= 0 && pick[g] + 1 == per_arrow[g].size()) pick[g--] = 0;
    if (g < 0) break;
    ++pick[g];
  }
  return out;
}

namespace {

// Candidate 2-cells id => theta(p) as component vectors, canonical order.
std::vector<std::vector<int>> omega_candidates(const CocycleCalc& cc, int p) {
  int id_auto = cc.ctx->saut.auto_index(identity_morphism(cc.ctx->a));
  std::vector<std::vector<int>> out;
  for (int cell : cc.ctx->saut.cells_between(id_auto, cc.theta[p]))
    out.push_back(cc.ctx->saut.cells[cell].component);
  return out;
}

}  // namespace

GeneralizedCocycle canonical_omega(const AutContext& ctx, GroupoidPtr k,
                                   const std::vector<int>& lambda) {
  CocycleCalc cc(ctx, k, lambda);
  GeneralizedCocycle gc{ctx.a, k, lambda, {}};
  gc.omega.resize(cc.pairs.size());
  auto units = unit_section_of(*ctx.a);
  for (int p = 0; p < cc.pairs.size(); ++p) {
    if (k->is_unit(cc.pairs.tuples[p][0]) || k->is_unit(cc.pairs.tuples[p][1])) {
      gc.omega[p] = units;
      continue;
    }
    auto cands = omega_candidates(cc, p);
    if (cands.empty())
      throw NoNaturalTransformation(
          "canonical_omega: no 2-cell id => theta; the band data is inconsistent");
    gc.omega[p] = cands.front();
  }
  return gc;
}

GeneralizedCocycle random_omega(const AutContext& ctx, GroupoidPtr k,
                                const std::vector<int>& lambda, std::mt19937_64& rng) {
  CocycleCalc cc(ctx, k, lambda);
  GeneralizedCocycle gc{ctx.a, k, lambda, {}};
  gc.omega.resize(cc.pairs.size());
  auto units = unit_section_of(*ctx.a);
  for (int p = 0; p < cc.pairs.size(); ++p) {
    if (k->is_unit(cc.pairs.tuples[p][0]) || k->is_unit(cc.pairs.tuples[p][1])) {
      gc.omega[p] = units;
      continue;
    }
    auto cands = omega_candidates(cc, p);
    if (cands.empty())
      throw NoNaturalTransformation("random_omega: no 2-cell id => theta");
    gc.omega[p] = cands[rng() % cands.size()];
  }
  return gc;
}

void enumerate_omegas(const AutContext& ctx, GroupoidPtr k,
                      const std::vector<int>& lambda, bool require_cocycle,
                      const std::function<void(const GeneralizedCocycle&)>& visit) {
  CocycleCalc cc(ctx, k, lambda);
  const auto& a = *ctx.a;
  auto units = unit_section_of(a);

  std::vector<int> free;  // pairs with a free Omega choice
  std::vector<std::vector<std::vector<int>>> cands;
  GeneralizedCocycle gc{ctx.a, k, lambda, {}};
  gc.omega.assign(cc.pairs.size(), units);
  for (int p = 0; p < cc.pairs.size(); ++p) {
    if (k->is_unit(cc.pairs.tuples[p][0]) || k->is_unit(cc.pairs.tuples[p][1])) continue;
    free.push_back(p);
    cands.push_back(omega_candidates(cc, p));
    if (cands.back().empty())
      throw NoNaturalTransformation("enumerate_omegas: no 2-cell id => theta");
  }
  // For pruning: triples checkable once all four pair slots are known.
  std::vector<int> order_of_pair(cc.pairs.size(), -1);
  for (size_t i = 0; i < free.size(); ++i) order_of_pair[free[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> triples_ready_at(free.size());
  std::vector<char> always_ready_checked(cc.triples.size(), 0);
  for (int t = 0; t < cc.triples.size(); ++t) {
    auto tp = triple_pairs(cc, t);
    int last = -1;
    for (int p : {tp.p_xy, tp.p_cz, tp.p_yz, tp.p_xw}) last = std::max(last, order_of_pair[p]);
    if (last >= 0)
      triples_ready_at[last].push_back(t);
    else
      always_ready_checked[t] = 1;  // all slots forced by normalization
  }

  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == free.size()) {
      if (require_cocycle) {
        for (int t = 0; t < cc.triples.size(); ++t)
          if (always_ready_checked[t])
            for (int obj = 0; obj < a.num_objects(); ++obj)
              if (!cocycle_condition_at(cc, gc.omega, t, obj)) return;
      }
      visit(gc);
      return;
    }
    for (const auto& cand : cands[i]) {
      gc.omega[free[i]] = cand;
      bool ok = true;
      if (require_cocycle) {
        for (int t : triples_ready_at[i]) {
          for (int obj = 0; obj < a.num_objects() && ok; ++obj)
            if (!cocycle_condition_at(cc, gc.omega, t, obj)) ok = false;
          if (!ok) break;
        }
      }
      if (ok) self(self, i + 1);
    }
    gc.omega[free[i]] = units;
  };
  rec(rec, 0);
}

// --- Product bundles -----------------------------------------------------------

StrictMorphism ProductBundle::projection() const {
  StrictMorphism f;
  f.dom = g;
  f.cod = k;
  f.obj_map = base_object;
  f.arrow_map = base_arrow;
  return f;
}

StrictMorphism ProductBundle::kernel_embedding(int x) const {
  StrictMorphism f;
  f.dom = a;
  f.cod = g;
  f.obj_map.resize(a->num_objects());
  f.arrow_map.resize(a->num_arrows());
  for (int o = 0; o < a->num_objects(); ++o) f.obj_map[o] = object_at(o, x);
  for (int al = 0; al < a->num_arrows(); ++al)
    f.arrow_map[al] = arrow_at(al, k->unit(x));
  return f;
}

ProductBundle make_product_bundle(GroupoidPtr a, GroupoidPtr k, GroupoidPtr g,
                                  std::vector<int> fiber_object,
                                  std::vector<int> base_object,
                                  std::vector<int> fiber_arrow,
                                  std::vector<int> base_arrow) {
  ProductBundle b;
  b.a = a;
  b.k = k;
  b.g = g;
  b.fiber_object = std::move(fiber_object);
  b.base_object = std::move(base_object);
  b.fiber_arrow = std::move(fiber_arrow);
  b.base_arrow = std::move(base_arrow);

  if (g->num_objects() != a->num_objects() * k->num_objects() ||
      g->num_arrows() != a->num_arrows() * k->num_arrows())
    throw NotAProductBundle("object/arrow counts are not fiber x base products");

  b.object_pair_index.assign(g->num_objects(), -1);
  for (int o = 0; o < g->num_objects(); ++o) {
    int slot = b.fiber_object[o] * k->num_objects() + b.base_object[o];
    if (b.object_pair_index[slot] != -1)
      throw NotAProductBundle("object pair identification is not a bijection");
    b.object_pair_index[slot] = o;
  }
  b.arrow_pair_index.assign(g->num_arrows(), -1);
  for (int ar = 0; ar < g->num_arrows(); ++ar) {
    int slot = b.fiber_arrow[ar] * k->num_arrows() + b.base_arrow[ar];
    if (b.arrow_pair_index[slot] != -1)
      throw NotAProductBundle("arrow pair identification is not a bijection");
    b.arrow_pair_index[slot] = ar;
  }

  for (int ar = 0; ar < g->num_arrows(); ++ar) {
    if (g->src(ar) != b.object_at(a->src(b.fiber_arrow[ar]), k->src(b.base_arrow[ar])))
      throw NotAProductBundle("source map is not s_A x s_K at " + g->arrow_name(ar));
  }
  for (int o = 0; o < g->num_objects(); ++o) {
    if (g->unit(o) != b.arrow_at(a->unit(b.fiber_object[o]), k->unit(b.base_object[o])))
      throw NotAProductBundle("unit map is not u_A x u_K at " + g->object_name(o));
  }
  for (int al = 0; al < a->num_arrows(); ++al)
    for (int x = 0; x < k->num_objects(); ++x) {
      int ar = b.arrow_at(al, k->unit(x));
      if (g->tgt(ar) != b.object_at(a->tgt(al), x))
        throw NotAProductBundle("target rule fails on the kernel arrow (" +
                                a->arrow_name(al) + ", 1_" + k->object_name(x) + ")");
    }
  if (!is_functor(b.projection()))
    throw NotAProductBundle("base projection is not a functor");
  // The kernel over each base object multiplies as A does.
  for (int x = 0; x < k->num_objects(); ++x) {
    int u = k->unit(x);
    for (int al = 0; al < a->num_arrows(); ++al)
      for (int be = 0; be < a->num_arrows(); ++be) {
        if (!a->composable(al, be)) continue;
        if (g->compose(b.arrow_at(al, u), b.arrow_at(be, u)) !=
            b.arrow_at(a->compose(al, be), u))
          throw NotAProductBundle("kernel multiplication differs from the fiber at (" +
                                  a->arrow_name(al) + ", " + a->arrow_name(be) + ")");
      }
  }
  return b;
}

ProductBundle bundle_from_file(GroupoidPtr a, GroupoidPtr k, const BundleJson& bj) {
  return make_product_bundle(a, k, bj.groupoid, bj.fiber_object, bj.base_object,
                             bj.fiber_arrow, bj.base_arrow);
}

BundleJson bundle_to_file(const ProductBundle& b) {
  BundleJson bj;
  bj.groupoid = b.g;
  bj.fiber_object = b.fiber_object;
  bj.base_object = b.base_object;
  bj.fiber_arrow = b.fiber_arrow;
  bj.base_arrow = b.base_arrow;
  return bj;
}

// --- Builder --------------------------------------------------------------------

ExtensionGroupoid build_extension(const AutContext& ctx, const GeneralizedCocycle& gc) {
  auto rep = check_generalized_cocycle(ctx, gc);
  if (!rep.ok)
    throw CocycleViolation("build_extension: " + rep.violations.front());

  const auto& a = *ctx.a;
  const auto& k = *gc.k;
  CocycleCalc cc(ctx, gc.k, gc.lambda);

  const int nk0 = k.num_objects(), nk1 = k.num_arrows();
  const int nobj = a.num_objects() * nk0;
  const int narr = a.num_arrows() * nk1;
  auto obj = [&](int ao, int ko) { return ao * nk0 + ko; };
  auto arr = [&](int al, int ka) { return al * nk1 + ka; };

  GroupoidData d;
  for (int o = 0; o < nobj; ++o) d.object_names.push_back(padded_name("p", o, nobj));
  for (int ar = 0; ar < narr; ++ar) d.arrow_names.push_back(padded_name("g", ar, narr));
  d.src.resize(narr);
  d.tgt.resize(narr);
  d.inv.resize(narr);
  d.unit.resize(nobj);

  for (int al = 0; al < a.num_arrows(); ++al)
    for (int xi = 0; xi < nk1; ++xi) {
      int ar = arr(al, xi);
      d.src[ar] = obj(a.src(al), k.src(xi));
      d.tgt[ar] = obj(cc.lam[xi]->obj_map[a.tgt(al)], k.tgt(xi));
      // (al, xi)^{-1} = (L_xi(al^{-1}) * L_{xi^{-1}}^{-1}(Om(xi, xi^{-1}, s al)^{-1}), xi^{-1})
      int xinv = k.inverse(xi);
      int p = cc.pair_of(xi, xinv);
      int fiber =
          a.compose(cc.lam[xi]->arrow_map[a.inverse(al)],
                    cc.lam_inv[xinv].arrow_map[a.inverse(gc.omega[p][a.src(al)])]);
      d.inv[ar] = arr(fiber, xinv);
    }
  for (int ao = 0; ao < a.num_objects(); ++ao)
    for (int ko = 0; ko < nk0; ++ko)
      d.unit[obj(ao, ko)] = arr(a.unit(ao), k.unit(ko));

  for (int al = 0; al < a.num_arrows(); ++al)
    for (int xi = 0; xi < nk1; ++xi) {
      int g1 = arr(al, xi);
      for (int be = 0; be < a.num_arrows(); ++be)
        for (int eta = 0; eta < nk1; ++eta) {
          int g2 = arr(be, eta);
          if (d.tgt[g1] != d.src[g2]) continue;
          int p = cc.pair_of(xi, eta);
          const auto& after = ctx.saut.autos[ctx.saut.compose_autos(
              gc.lambda[eta], ctx.saut.invert_auto(gc.lambda[k.compose(xi, eta)]))];
          int fiber = a.compose(
              a.compose(gc.omega[p][a.src(al)], cc.theta_m(p).arrow_map[al]),
              after.arrow_map[be]);
          d.compose.push_back({g1, g2, arr(fiber, k.compose(xi, eta))});
        }
    }

  auto validated = FiniteGroupoid::validate(std::move(d));
  if (!validated.ok())
    throw CocycleViolation("build_extension: assembled groupoid invalid: " +
                           validated.violations.front().message);

  ExtensionGroupoid ext;
  ext.a = ctx.a;
  ext.k = gc.k;
  ext.g = validated.groupoid;
  ext.cocycle = gc;

  std::vector<int> fo(nobj), bo(nobj), fa(narr), ba(narr);
  for (int ao = 0; ao < a.num_objects(); ++ao)
    for (int ko = 0; ko < nk0; ++ko) {
      fo[obj(ao, ko)] = ao;
      bo[obj(ao, ko)] = ko;
    }
  for (int al = 0; al < a.num_arrows(); ++al)
    for (int xi = 0; xi < nk1; ++xi) {
      fa[arr(al, xi)] = al;
      ba[arr(al, xi)] = xi;
    }
  ext.bundle = make_product_bundle(ctx.a, gc.k, ext.g, fo, bo, fa, ba);
  return ext;
}

// --- Extraction and round trip ---------------------------------------------------

GeneralizedCocycle extract_cocycle(const AutContext& ctx, const ProductBundle& b) {
  const auto& a = *b.a;
  const auto& k = *b.k;
  const auto& g = *b.g;
  if (!StrictMorphism::same_groupoid(b.a, ctx.a))
    throw ShapeMismatch("extract_cocycle: fiber differs from the context groupoid");

  GeneralizedCocycle gc{b.a, b.k, {}, {}};
  gc.lambda.resize(k.num_arrows());
  for (int xi = 0; xi < k.num_arrows(); ++xi) {
    int x = k.src(xi);
    StrictMorphism f{b.a, b.a, {}, {}};
    f.obj_map.resize(a.num_objects());
    for (int ao = 0; ao < a.num_objects(); ++ao)
      f.obj_map[ao] = b.fiber_object[g.tgt(b.arrow_at(a.unit(ao), xi))];
    f.arrow_map.resize(a.num_arrows());
    for (int al = 0; al < a.num_arrows(); ++al) {
      int w = g.compose(g.compose(g.inverse(b.arrow_at(a.unit(a.src(al)), xi)),
                                  b.arrow_at(al, k.unit(x))),
                        b.arrow_at(a.unit(a.tgt(al)), xi));
      if (!k.is_unit(b.base_arrow[w]))
        throw NotAProductBundle("extract_cocycle: pre-action left the kernel");
      f.arrow_map[al] = b.fiber_arrow[w];
    }
    if (!is_functor(f) || !is_bijective(f))
      throw PreActionNotAutomorphism("extract_cocycle: pre-action at " +
                                     k.arrow_name(xi) + " is not an automorphism");
    gc.lambda[xi] = ctx.saut.auto_index(f);
    if (gc.lambda[xi] < 0)
      throw PreActionNotAutomorphism("extract_cocycle: automorphism not enumerated");
  }

  CocycleCalc cc(ctx, b.k, gc.lambda);
  gc.omega.resize(cc.pairs.size());
  for (int p = 0; p < cc.pairs.size(); ++p) {
    int xi = cc.pairs.tuples[p][0], eta = cc.pairs.tuples[p][1];
    gc.omega[p].resize(a.num_objects());
    for (int ao = 0; ao < a.num_objects(); ++ao) {
      int a1 = cc.lam[xi]->obj_map[ao];
      int a4 = cc.theta_m(p).obj_map[ao];
      int w = g.compose(g.compose(b.arrow_at(a.unit(ao), xi), b.arrow_at(a.unit(a1), eta)),
                        g.inverse(b.arrow_at(a.unit(a4), k.compose(xi, eta))));
      if (!k.is_unit(b.base_arrow[w]))
        throw NotAProductBundle("extract_cocycle: cofactor left the kernel");
      gc.omega[p][ao] = b.fiber_arrow[w];
    }
  }

  auto rep = check_generalized_cocycle(ctx, gc);
  if (!rep.ok)
    throw NotAProductBundle("extract_cocycle: extracted data fails the cocycle check: " +
                            rep.violations.front());
  return gc;
}

RoundTrip extension_round_trip(const AutContext& ctx, const ProductBundle& b) {
  RoundTrip rt;
  rt.cocycle = extract_cocycle(ctx, b);
  rt.rebuilt = build_extension(ctx, rt.cocycle);

  const auto& a = *b.a;
  const auto& k = *b.k;
  const auto& g = *b.g;
  CocycleCalc cc(ctx, b.k, rt.cocycle.lambda);

  StrictMorphism iso{b.g, rt.rebuilt.g, {}, {}};
  iso.obj_map.resize(g.num_objects());
  for (int o = 0; o < g.num_objects(); ++o)
    iso.obj_map[o] = rt.rebuilt.bundle.object_at(b.fiber_object[o], b.base_object[o]);
  iso.arrow_map.resize(g.num_arrows());
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    int xi = b.base_arrow[ar];
    int target_fiber = b.fiber_object[g.tgt(ar)];
    int w = g.compose(ar,
                      g.inverse(b.arrow_at(a.unit(cc.lam_inv[xi].obj_map[target_fiber]), xi)));
    if (!k.is_unit(b.base_arrow[w]))
      throw NotAProductBundle("round trip: comparison arrow left the kernel");
    iso.arrow_map[ar] = rt.rebuilt.bundle.arrow_at(b.fiber_arrow[w], xi);
  }
  if (!is_functor(iso) || !is_bijective(iso))
    throw Error("round trip: the comparison map is not an isomorphism");
  // Fiber preserving: commutes with the projections and fixes the kernel.
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    if (rt.rebuilt.bundle.base_arrow[iso.arrow_map[ar]] != b.base_arrow[ar])
      throw Error("round trip: projection compatibility fails");
    if (k.is_unit(b.base_arrow[ar]) &&
        rt.rebuilt.bundle.fiber_arrow[iso.arrow_map[ar]] != b.fiber_arrow[ar])
      throw Error("round trip: kernel is not fixed");
  }
  rt.iso = std::move(iso);
  return rt;
}

// --- Obstruction ------------------------------------------------------------------

namespace {

std::vector<StrictMorphism> lambda_morphisms(const AutContext& ctx,
                                             const std::vector<int>& lambda) {
  std::vector<StrictMorphism> out;
  out.reserve(lambda.size());
  for (int l : lambda) out.push_back(ctx.saut.autos[l]);
  return out;
}

// Defect value at one object: Om(x,y,a) Om(xy,z,a4) Om(x,yz,a5)^{-1}
// Lx^{-1}(Om(y,z,a1)^{-1}), a loop at a.
int defect_loop(const CocycleCalc& cc, const std::vector<std::vector<int>>& omega, int t,
                int obj) {
  const auto& a = *cc.ctx->a;
  const auto& tr = cc.triples.tuples[t];
  int xi = tr[0];
  auto tp = triple_pairs(cc, t);
  int a1 = cc.lam[xi]->obj_map[obj];
  int a4 = cc.theta_m(tp.p_xy).obj_map[obj];
  int a5 = cc.lam_inv[xi].obj_map[cc.theta_m(tp.p_yz).obj_map[a1]];
  int acc = a.compose(omega[tp.p_xy][obj], omega[tp.p_cz][a4]);
  acc = a.compose(acc, a.inverse(omega[tp.p_xw][a5]));
  acc = a.compose(acc, cc.lam_inv[xi].arrow_map[a.inverse(omega[tp.p_yz][a1])]);
  return acc;
}

}  // namespace

ObstructionCocycle obstruction(const AutContext& ctx, const GeneralizedCocycle& gc) {
  auto rep = check_generalized_cocycle(ctx, gc);
  if (!rep.structure_ok)
    throw CocycleViolation("obstruction: " + rep.violations.front());

  const auto& a = *ctx.a;
  CocycleCalc cc(ctx, gc.k, gc.lambda);

  ObstructionCocycle out;
  out.module = induced_action(ctx.z, gc.k, lambda_morphisms(ctx, gc.lambda));
  out.xi.degree = 3;
  out.xi.values.resize(cc.triples.size());
  for (int t = 0; t < cc.triples.size(); ++t) {
    ObjectSection section(a.num_objects());
    for (int obj = 0; obj < a.num_objects(); ++obj)
      section[obj] = defect_loop(cc, gc.omega, t, obj);
    if (!is_central_section(a, section))
      throw Error("obstruction: defect is not a central section (convention bug)");
    int idx = ctx.z.index_of(section);
    if (idx < 0) throw Error("obstruction: defect section not in the center");
    out.xi.values[t] = idx;
  }
  if (!is_zero_cochain(out.module, coboundary(out.module, out.xi)))
    throw Error("obstruction: defect cochain is not closed (convention bug)");
  return out;
}

std::array<Cochain, 3> obstruction_cyclic_variants(const AutContext& ctx,
                                                   const GeneralizedCocycle& gc) {
  const auto& a = *ctx.a;
  const auto& k = *gc.k;
  CocycleCalc cc(ctx, gc.k, gc.lambda);

  auto lam = [&](int arrow) -> const StrictMorphism& { return *cc.lam[arrow]; };
  auto lam_inv = [&](int arrow) -> const StrictMorphism& { return cc.lam_inv[arrow]; };
  auto om = [&](int xi, int eta, int obj) { return gc.omega[cc.pair_of(xi, eta)][obj]; };

  std::array<Cochain, 3> out;
  for (auto& c : out) {
    c.degree = 3;
    c.values.resize(cc.triples.size());
  }
  for (int t = 0; t < cc.triples.size(); ++t) {
    const auto& tr = cc.triples.tuples[t];
    int xi = tr[0], eta = tr[1], zeta = tr[2];
    int xe = k.compose(xi, eta), ez = k.compose(eta, zeta);
    int xez = k.compose(xi, ez);

    ObjectSection s1(a.num_objects()), s2(a.num_objects()), s3(a.num_objects());
    for (int obj = 0; obj < a.num_objects(); ++obj) {
      {  // Xi_1 = Om(xe,z,a) Om(x,ez,b1)^{-1} Lx^{-1}(Om(y,z,b2)^{-1}) Om(x,y,b3)
        int b2 = lam_inv(eta).obj_map[lam(xe).obj_map[obj]];
        int b3 = lam_inv(xi).obj_map[lam_inv(eta).obj_map[lam(xe).obj_map[obj]]];
        int b1 = lam_inv(xi).obj_map[lam_inv(ez).obj_map[lam(zeta).obj_map[lam(xe).obj_map[obj]]]];
        int acc = a.compose(om(xe, zeta, obj), a.inverse(om(xi, ez, b1)));
        acc = a.compose(acc, lam_inv(xi).arrow_map[a.inverse(om(eta, zeta, b2))]);
        acc = a.compose(acc, om(xi, eta, b3));
        s1[obj] = acc;
      }
      {  // Xi_2 = Om(x,ez,c1)^{-1} Lx^{-1}(Om(y,z,c2)^{-1}) Om(x,y,c3) Om(xe,z,c4)
        int top = lam(xez).obj_map[obj];
        int c1 = lam_inv(xi).obj_map[lam_inv(ez).obj_map[top]];
        int c2 = lam_inv(eta).obj_map[lam_inv(zeta).obj_map[top]];
        int c3 = lam_inv(xi).obj_map[c2];
        int c4 = lam_inv(xe).obj_map[lam_inv(zeta).obj_map[top]];
        int acc = a.compose(a.inverse(om(xi, ez, c1)),
                            lam_inv(xi).arrow_map[a.inverse(om(eta, zeta, c2))]);
        acc = a.compose(acc, om(xi, eta, c3));
        acc = a.compose(acc, om(xe, zeta, c4));
        s2[obj] = acc;
      }
      {  // Xi_3 = Lx^{-1}(Om(y,z,e1)^{-1}) Om(x,y,e2) Om(xe,z,e3) Om(x,ez,a)^{-1}
        int top = lam(ez).obj_map[lam(xi).obj_map[obj]];
        int e1 = lam_inv(eta).obj_map[lam_inv(zeta).obj_map[top]];
        int e2 = lam_inv(xi).obj_map[e1];
        int e3 = lam_inv(xe).obj_map[lam_inv(zeta).obj_map[top]];
        int acc = a.compose(lam_inv(xi).arrow_map[a.inverse(om(eta, zeta, e1))],
                            om(xi, eta, e2));
        acc = a.compose(acc, om(xe, zeta, e3));
        acc = a.compose(acc, a.inverse(om(xi, ez, obj)));
        s3[obj] = acc;
      }
    }
    for (auto [c, s] : {std::pair{&out[0], &s1}, {&out[1], &s2}, {&out[2], &s3}}) {
      if (!is_central_section(a, *s))
        throw Error("obstruction variant: defect is not a central section");
      int idx = ctx.z.index_of(*s);
      if (idx < 0) throw Error("obstruction variant: section not in the center");
      c->values[t] = idx;
    }
  }
  return out;
}

Trivialization trivialize_obstruction(const AutContext& ctx, const GeneralizedCocycle& gc,
                                      const ObstructionCocycle& obs,
                                      const CohomologyGroup& h3) {
  auto coords = h3.class_of(obs.xi);
  for (long long c : coords)
    if (c != 0)
      throw ObstructionNonzero("trivialize_obstruction: class is nonzero", coords);
  auto witness = h3.coboundary_witness(obs.xi);
  if (!witness) throw Error("trivialize_obstruction: no witness despite zero class");

  const auto& a = *ctx.a;
  GeneralizedCocycle corrected = gc;
  for (size_t p = 0; p < corrected.omega.size(); ++p) {
    const auto& section = ctx.z.sections[witness->values[p]];
    for (int obj = 0; obj < a.num_objects(); ++obj)
      corrected.omega[p][obj] = a.compose(section[obj], gc.omega[p][obj]);
  }
  auto rep = check_generalized_cocycle(ctx, corrected);
  if (!rep.ok)
    throw Error("trivialize_obstruction: corrected data fails the cocycle check: " +
                rep.violations.front());
  return {*witness, std::move(corrected)};
}

// --- Equivalence -------------------------------------------------------------------

namespace {

struct EquivalenceSearch {
  const AutContext* ctx;
  GroupoidPtr k;
  const GeneralizedCocycle* g1;
  const GeneralizedCocycle* g2;
  std::unique_ptr<CocycleCalc> c1, c2;
  std::vector<std::vector<std::vector<int>>> candidates;  // per arrow
  // Required theta1(p) => theta2(p) cell per pair: a |-> Om1(a)^{-1} Om2(a).
  std::vector<std::vector<int>> needed;

  NaturalTransformation as_cell(int arrow, const std::vector<int>& comp) const {
    return {ctx->saut.autos[g1->lambda[arrow]], ctx->saut.autos[g2->lambda[arrow]], comp};
  }

  // rho(xi eta) forced by rho(xi), rho(eta):
  //   D = hinv(rho_c) (*) (rho_eta (*) rho_xi)  =>  rho_c = hinv(D (*) hinv(P)).
  std::optional<std::vector<int>> solve_composite(int p, const std::vector<int>& rxi,
                                                  const std::vector<int>& reta) const {
    int xi = c1->pairs.tuples[p][0], eta = c1->pairs.tuples[p][1];
    int comp = k->compose(xi, eta);
    auto P = horizontal_compose(as_cell(eta, reta), as_cell(xi, rxi));
    NaturalTransformation D{c1->theta_m(p), c2->theta_m(p), needed[p]};
    auto q = horizontal_compose(D, horizontal_inverse(P));
    auto rc = horizontal_inverse(q);
    if (!(rc.source == ctx->saut.autos[g1->lambda[comp]]) ||
        !(rc.target == ctx->saut.autos[g2->lambda[comp]]))
      return std::nullopt;
    return rc.component;
  }

  std::optional<std::vector<int>> solve_second(int p, const std::vector<int>& rxi,
                                               const std::vector<int>& rcomp) const {
    int xi = c1->pairs.tuples[p][0], eta = c1->pairs.tuples[p][1];
    int comp = k->compose(xi, eta);
    NaturalTransformation D{c1->theta_m(p), c2->theta_m(p), needed[p]};
    auto P = horizontal_compose(as_cell(comp, rcomp), D);
    auto reta = horizontal_compose(P, horizontal_inverse(as_cell(xi, rxi)));
    if (!(reta.source == ctx->saut.autos[g1->lambda[eta]]) ||
        !(reta.target == ctx->saut.autos[g2->lambda[eta]]))
      return std::nullopt;
    return reta.component;
  }

  std::optional<std::vector<int>> solve_first(int p, const std::vector<int>& reta,
                                              const std::vector<int>& rcomp) const {
    int xi = c1->pairs.tuples[p][0], eta = c1->pairs.tuples[p][1];
    int comp = k->compose(xi, eta);
    NaturalTransformation D{c1->theta_m(p), c2->theta_m(p), needed[p]};
    auto P = horizontal_compose(as_cell(comp, rcomp), D);
    auto rxi = horizontal_compose(horizontal_inverse(as_cell(eta, reta)), P);
    if (!(rxi.source == ctx->saut.autos[g1->lambda[xi]]) ||
        !(rxi.target == ctx->saut.autos[g2->lambda[xi]]))
      return std::nullopt;
    return rxi.component;
  }

  bool relation_holds(int p, const std::vector<int>& rxi, const std::vector<int>& reta,
                      const std::vector<int>& rcomp) const {
    auto P = horizontal_compose(as_cell(c1->pairs.tuples[p][1], reta),
                                as_cell(c1->pairs.tuples[p][0], rxi));
    int comp = k->compose(c1->pairs.tuples[p][0], c1->pairs.tuples[p][1]);
    auto d = horizontal_compose(horizontal_inverse(as_cell(comp, rcomp)), P);
    return d.component == needed[p];
  }

  // Returns false on contradiction.
  bool propagate(std::vector<std::optional<std::vector<int>>>& value) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p = 0; p < c1->pairs.size(); ++p) {
        int xi = c1->pairs.tuples[p][0], eta = c1->pairs.tuples[p][1];
        int comp = k->compose(xi, eta);
        int unknowns = !value[xi] + !value[eta] + !value[comp];
        if (unknowns == 0) {
          if (!relation_holds(p, *value[xi], *value[eta], *value[comp])) return false;
          continue;
        }
        if (unknowns != 1) continue;
        std::optional<std::vector<int>> solved;
        int slot;
        if (!value[comp]) {
          solved = solve_composite(p, *value[xi], *value[eta]);
          slot = comp;
        } else if (!value[eta]) {
          solved = solve_second(p, *value[xi], *value[comp]);
          slot = eta;
        } else {
          solved = solve_first(p, *value[eta], *value[comp]);
          slot = xi;
        }
        if (!solved) return false;
        value[slot] = std::move(*solved);
        changed = true;
      }
    }
    return true;
  }

  std::optional<TransformationFamily> search(
      std::vector<std::optional<std::vector<int>>> value) const {
    if (!propagate(value)) return std::nullopt;
    int next = -1;
    for (int g = 0; g < k->num_arrows(); ++g)
      if (!value[g]) {
        next = g;
        break;
      }
    if (next < 0) {
      TransformationFamily family(k->num_arrows());
      for (int g = 0; g < k->num_arrows(); ++g) family[g] = *value[g];
      return family;
    }
    for (const auto& cand : candidates[next]) {
      auto branch = value;
      branch[next] = cand;
      if (auto found = search(std::move(branch))) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<TransformationFamily> cocycle_equivalent(const AutContext& ctx,
                                                       const GeneralizedCocycle& gc1,
                                                       const GeneralizedCocycle& gc2) {
  if (!StrictMorphism::same_groupoid(gc1.k, gc2.k) ||
      !StrictMorphism::same_groupoid(gc1.a, gc2.a))
    throw ShapeMismatch("cocycle_equivalent: different fiber or base");
  if (band_of(ctx, gc1).values != band_of(ctx, gc2).values)
    throw BandMismatch("cocycle_equivalent: the cocycles have different bands");

  EquivalenceSearch s;
  s.ctx = &ctx;
  s.k = gc1.k;
  s.g1 = &gc1;
  s.g2 = &gc2;
  s.c1 = std::make_unique<CocycleCalc>(ctx, gc1.k, gc1.lambda);
  s.c2 = std::make_unique<CocycleCalc>(ctx, gc2.k, gc2.lambda);

  const auto& a = *ctx.a;
  const auto& k = *gc1.k;
  s.needed.resize(s.c1->pairs.size());
  for (int p = 0; p < s.c1->pairs.size(); ++p) {
    s.needed[p].resize(a.num_objects());
    for (int obj = 0; obj < a.num_objects(); ++obj)
      s.needed[p][obj] =
          a.compose(a.inverse(gc1.omega[p][obj]), gc2.omega[p][obj]);
  }

  s.candidates.resize(k.num_arrows());
  for (int g = 0; g < k.num_arrows(); ++g) {
    for (int cell : ctx.saut.cells_between(gc1.lambda[g], gc2.lambda[g]))
      s.candidates[g].push_back(ctx.saut.cells[cell].component);
    if (s.candidates[g].empty())
      throw BandMismatch("cocycle_equivalent: no 2-cell between the liftings at " +
                         k.arrow_name(g));
  }

  std::vector<std::optional<std::vector<int>>> value(k.num_arrows());
  auto units = unit_section_of(a);
  for (int x = 0; x < k.num_objects(); ++x) value[k.unit(x)] = units;
  return s.search(std::move(value));
}

std::optional<StrictMorphism> extensions_isomorphic(const ProductBundle& b1,
                                                    const ProductBundle& b2) {
  if (!StrictMorphism::same_groupoid(b1.a, b2.a) ||
      !StrictMorphism::same_groupoid(b1.k, b2.k))
    throw ShapeMismatch("extensions_isomorphic: different fiber or base");
  const auto& a = *b1.a;
  const auto& k = *b1.k;
  const auto& g1 = *b1.g;
  const auto& g2 = *b2.g;

  StrictMorphism phi{b1.g, b2.g, {}, {}};
  phi.obj_map.resize(g1.num_objects());
  for (int o = 0; o < g1.num_objects(); ++o)
    phi.obj_map[o] = b2.object_at(b1.fiber_object[o], b1.base_object[o]);

  std::vector<int> image(g1.num_arrows(), -1);
  std::vector<char> used(g2.num_arrows(), 0);
  // Kernel arrows are fixed pointwise.
  std::vector<int> order;
  for (int ar = 0; ar < g1.num_arrows(); ++ar) {
    if (k.is_unit(b1.base_arrow[ar])) {
      int im = b2.arrow_at(b1.fiber_arrow[ar], b1.base_arrow[ar]);
      image[ar] = im;
      used[im] = 1;
    } else {
      order.push_back(ar);
    }
  }

  auto consistent = [&](int ar) {
    for (int br = 0; br < g1.num_arrows(); ++br) {
      if (image[br] < 0) continue;
      if (g1.composable(ar, br)) {
        int pr = g1.compose(ar, br);
        if (!g2.composable(image[ar], image[br])) return false;
        if (image[pr] >= 0 && g2.compose(image[ar], image[br]) != image[pr]) return false;
      }
      if (br != ar && g1.composable(br, ar)) {
        int pr = g1.compose(br, ar);
        if (!g2.composable(image[br], image[ar])) return false;
        if (image[pr] >= 0 && g2.compose(image[br], image[ar]) != image[pr]) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == order.size()) return true;
    int ar = order[i];
    int src_pair = phi.obj_map[g1.src(ar)];
    int tgt_pair = phi.obj_map[g1.tgt(ar)];
    for (int beta = 0; beta < a.num_arrows(); ++beta) {
      int cand = b2.arrow_at(beta, b1.base_arrow[ar]);
      if (used[cand] || g2.src(cand) != src_pair || g2.tgt(cand) != tgt_pair) continue;
      image[ar] = cand;
      used[cand] = 1;
      if (consistent(ar) && self(self, i + 1)) return true;
      image[ar] = -1;
      used[cand] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  phi.arrow_map = image;
  if (!is_functor(phi)) throw Error("extensions_isomorphic: search produced a non-functor");
  return phi;
}

// --- Classification ------------------------------------------------------------------

namespace {

GeneralizedCocycle scale_omega(const AutContext& ctx, const GeneralizedCocycle& gc,
                               const Cochain& c) {
  if (c.degree != 2 || c.values.size() != gc.omega.size())
    throw DegreeMismatch("scale_omega: a 2-cochain over K is required");
  const auto& a = *ctx.a;
  GeneralizedCocycle out = gc;
  for (size_t p = 0; p < out.omega.size(); ++p) {
    const auto& section = ctx.z.sections[c.values[p]];
    for (int obj = 0; obj < a.num_objects(); ++obj)
      out.omega[p][obj] = a.compose(section[obj], gc.omega[p][obj]);
  }
  return out;
}

}  // namespace

Classification classify(const AutContext& ctx, GroupoidPtr k, const Band& band,
                        unsigned long long exhaustive_cap) {
  Classification out;
  auto lifted = lift_band(ctx, band);
  auto obs = obstruction(ctx, lifted);

  CohomologyOptions opts;
  opts.backend = Backend::Both;
  opts.normalized = true;
  opts.exhaustive_cap = exhaustive_cap;

  auto h3 = cohomology(obs.module, 3, opts);
  auto coords = h3.class_of(obs.xi);
  bool zero = std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
  if (!zero) {
    out.obstructed = true;
    out.obstruction_coords = coords;
    out.reference = lifted;
    return out;
  }
  auto triv = trivialize_obstruction(ctx, lifted, obs, h3);
  out.reference = triv.corrected;

  out.h2 = cohomology(obs.module, 2, opts);
  for (const auto& cls : out.h2.all_classes()) {
    auto rep = out.h2.representative(cls);
    auto gc = scale_omega(ctx, out.reference, rep);
    auto check = check_generalized_cocycle(ctx, gc);
    if (!check.ok)
      throw Error("classify: scaled representative is not a generalized cocycle");
    out.class_coords.push_back(cls);
    out.cocycles.push_back(gc);
    out.extensions.push_back(build_extension(ctx, gc));
  }
  return out;
}

bool verify_classification(const AutContext& ctx, const Band& band,
                           const Classification& cls) {
  if (cls.obstructed) return false;
  // Pairwise non-equivalent, both at the cocycle and the bundle level.
  for (size_t i = 0; i < cls.cocycles.size(); ++i)
    for (size_t j = i + 1; j < cls.cocycles.size(); ++j) {
      if (cocycle_equivalent(ctx, cls.cocycles[i], cls.cocycles[j])) return false;
      if (extensions_isomorphic(cls.extensions[i].bundle, cls.extensions[j].bundle))
        return false;
    }
  // Every generalized cocycle over every lifting matches exactly one class.
  bool ok = true;
  for (const auto& lambda : all_liftings(ctx, band)) {
    enumerate_omegas(ctx, band.k, lambda, true, [&](const GeneralizedCocycle& gc) {
      if (!ok) return;
      int matches = 0;
      for (const auto& rep : cls.cocycles)
        if (cocycle_equivalent(ctx, gc, rep)) ++matches;
      if (matches != 1) ok = false;
    });
    if (!ok) break;
  }
  return ok;
}

// --- Refinement pullbacks ---------------------------------------------------------------

GeneralizedCocycle pullback_cocycle_along(const AutContext& ctx,
                                          const GeneralizedCocycle& gc,
                                          const StrictMorphism& f) {
  if (!StrictMorphism::same_groupoid(f.cod, gc.k))
    throw DomainMismatch("pullback_cocycle_along: functor does not land in the base");
  GeneralizedCocycle out{gc.a, f.dom, {}, {}};
  out.lambda.resize(f.dom->num_arrows());
  for (int g = 0; g < f.dom->num_arrows(); ++g) out.lambda[g] = gc.lambda[f.arrow_map[g]];

  auto dom_pairs = composable_tuples(*f.dom, 2);
  auto cod_pairs = composable_tuples(*gc.k, 2);
  out.omega.resize(dom_pairs.size());
  for (int p = 0; p < dom_pairs.size(); ++p) {
    int xi = dom_pairs.tuples[p][0], eta = dom_pairs.tuples[p][1];
    out.omega[p] = gc.omega[cod_pairs.index_of({f.arrow_map[xi], f.arrow_map[eta]})];
  }
  auto rep = check_generalized_cocycle(ctx, out);
  if (!rep.ok)
    throw Error("pullback_cocycle_along: pullback fails the cocycle check: " +
                rep.violations.front());
  return out;
}

GeneralizedCocycle pullback_cocycle(const AutContext& ctx, const GeneralizedCocycle& gc,
                                    const Refinement& r) {
  return pullback_cocycle_along(ctx, gc, r.projection);
}

StrictMorphism pullback_extension_isomorphism(const AutContext& ctx,
                                              const GeneralizedCocycle& gc,
                                              const Refinement& r) {
  auto ext = build_extension(ctx, gc);
  auto gc_u = pullback_cocycle(ctx, gc, r);
  auto ext_u = build_extension(ctx, gc_u);

  const auto& a = *ctx.a;
  const auto& k = *gc.k;
  const auto& ku = *r.refined;

  // Pull the cover back to the total space: subsets A^0 x U_i.
  OpenCover pulled;
  {
    std::vector<std::vector<int>> by_subset;
    int nsubsets = 0;
    for (const auto& o : r.object_origin) nsubsets = std::max(nsubsets, o.first + 1);
    by_subset.resize(nsubsets);
    for (const auto& o : r.object_origin) by_subset[o.first].push_back(o.second);
    for (const auto& members : by_subset) {
      std::vector<int> subset;
      for (int ao = 0; ao < a.num_objects(); ++ao)
        for (int x : members) subset.push_back(ext.bundle.object_at(ao, x));
      std::sort(subset.begin(), subset.end());
      subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
      pulled.subsets.push_back(std::move(subset));
    }
  }
  auto rg = refine(ext.g, pulled);

  // Refined-base object (subset, x) -> K[U] index.
  auto ku_object = [&](int subset, int x) {
    for (size_t p = 0; p < r.object_origin.size(); ++p)
      if (r.object_origin[p].first == subset && r.object_origin[p].second == x)
        return static_cast<int>(p);
    throw Error("pullback iso: missing refined base object");
  };
  auto ku_arrow = [&](int p, int xi, int q) {
    for (int b = 0; b < ku.num_arrows(); ++b)
      if (ku.src(b) == p && ku.tgt(b) == q && r.projection.arrow_map[b] == xi) return b;
    throw Error("pullback iso: missing refined base arrow");
  };

  StrictMorphism iso{rg.refined, ext_u.g, {}, {}};
  iso.obj_map.resize(rg.refined->num_objects());
  for (size_t o = 0; o < rg.object_origin.size(); ++o) {
    auto [subset, gobj] = rg.object_origin[o];
    int ao = ext.bundle.fiber_object[gobj];
    int x = ext.bundle.base_object[gobj];
    iso.obj_map[o] = ext_u.bundle.object_at(ao, ku_object(subset, x));
  }
  iso.arrow_map.resize(rg.refined->num_arrows());
  for (int ar = 0; ar < rg.refined->num_arrows(); ++ar) {
    int p = rg.refined->src(ar), q = rg.refined->tgt(ar);
    int garr = rg.projection.arrow_map[ar];
    auto [ps, pg] = rg.object_origin[p];
    auto [qs, qg] = rg.object_origin[q];
    int al = ext.bundle.fiber_arrow[garr];
    int xi = ext.bundle.base_arrow[garr];
    int pk = ku_object(ps, ext.bundle.base_object[pg]);
    int qk = ku_object(qs, ext.bundle.base_object[qg]);
    iso.arrow_map[ar] = ext_u.bundle.arrow_at(al, ku_arrow(pk, xi, qk));
  }
  if (!is_functor(iso) || !is_bijective(iso))
    throw Error("pullback iso: canonical comparison is not an isomorphism");
  return iso;
}

RefinementVerdict equivalent_over_refinements(const AutContext& ctx, GroupoidPtr k,
                                              const GeneralizedCocycle& gc_u,
                                              const OpenCover& u,
                                              const GeneralizedCocycle& gc_v,
                                              const OpenCover& v) {
  RefinementVerdict verdict;
  auto w = common_refinement(u, v);
  auto rw = refine(k, w);
  auto ru = refine(k, u);
  auto rv = refine(k, v);
  if (!StrictMorphism::same_groupoid(gc_u.k, ru.refined) ||
      !StrictMorphism::same_groupoid(gc_v.k, rv.refined))
    throw ShapeMismatch("equivalent_over_refinements: cocycles do not live over the covers");

  auto map_u = refines(w, u);
  auto map_v = refines(w, v);
  if (!map_u || !map_v)
    throw InvalidCover("equivalent_over_refinements: intersection cover fails to refine");
  auto mu = refinement_morphism(rw, ru, *map_u);
  auto mv = refinement_morphism(rw, rv, *map_v);
  auto pu = pullback_cocycle_along(ctx, gc_u, mu);
  auto pv = pullback_cocycle_along(ctx, gc_v, mv);

  if (band_of(ctx, pu).values != band_of(ctx, pv).values) {
    verdict.reason = "bands differ on the common refinement";
    return verdict;
  }
  auto witness = cocycle_equivalent(ctx, pu, pv);
  if (witness) {
    verdict.equivalent = true;
    verdict.witness = std::move(witness);
  } else {
    verdict.reason = "exhaustive transformation search found no equivalence";
  }
  return verdict;
}

// --- JSON bridges -------------------------------------------------------------------------

CocycleJson cocycle_to_file(const AutContext& ctx, const GeneralizedCocycle& gc) {
  CocycleJson cj;
  const auto& k = *gc.k;
  for (int g = 0; g < k.num_arrows(); ++g)
    cj.lambda.emplace_back(k.arrow_name(g), gc.lambda[g]);
  auto pairs = composable_tuples(k, 2);
  const auto& a = *gc.a;
  for (int p = 0; p < pairs.size(); ++p)
    for (int obj = 0; obj < a.num_objects(); ++obj)
      cj.omega.push_back({k.arrow_name(pairs.tuples[p][0]),
                          k.arrow_name(pairs.tuples[p][1]), a.object_name(obj),
                          a.arrow_name(gc.omega[p][obj])});
  return cj;
}

GeneralizedCocycle cocycle_from_file(const AutContext& ctx, GroupoidPtr k,
                                     const CocycleJson& cj) {
  const auto& a = *ctx.a;
  GeneralizedCocycle gc{ctx.a, k, {}, {}};
  gc.lambda.assign(k->num_arrows(), -1);
  for (const auto& [name, idx] : cj.lambda) {
    int arrow = k->arrow_index(name);
    if (arrow < 0) throw ParseError("cocycle: unknown base arrow \"" + name + "\"");
    if (idx < 0 || idx >= ctx.saut.num_autos())
      throw ParseError("cocycle: automorphism index out of range");
    gc.lambda[arrow] = idx;
  }
  for (int g = 0; g < k->num_arrows(); ++g)
    if (gc.lambda[g] < 0)
      throw ParseError("cocycle: missing lambda entry for \"" + k->arrow_name(g) + "\"");

  auto pairs = composable_tuples(*k, 2);
  gc.omega.assign(pairs.size(), std::vector<int>(a.num_objects(), -1));
  for (const auto& e : cj.omega) {
    int xi = k->arrow_index(e[0]);
    int eta = k->arrow_index(e[1]);
    int obj = a.object_index(e[2]);
    int val = a.arrow_index(e[3]);
    if (xi < 0 || eta < 0 || obj < 0 || val < 0)
      throw ParseError("cocycle: unknown identifier in omega entry");
    int p = pairs.index_of({xi, eta});
    if (p < 0) throw ParseError("cocycle: omega entry on a non-composable pair");
    gc.omega[p][obj] = val;
  }
  for (int p = 0; p < pairs.size(); ++p)
    for (int obj = 0; obj < a.num_objects(); ++obj)
      if (gc.omega[p][obj] < 0)
        throw ParseError("cocycle: omega does not cover every (pair, object)");
  return gc;
}

BandJson band_to_file(const AutContext& ctx, const Band& band) {
  (void)ctx;
  BandJson bj;
  for (int g = 0; g < band.k->num_arrows(); ++g)
    bj.values.emplace_back(band.k->arrow_name(g), band.values[g]);
  return bj;
}

Band band_from_file(const AutContext& ctx, GroupoidPtr k, const BandJson& bj) {
  Band band{k, std::vector<int>(k->num_arrows(), -1)};
  for (const auto& [name, idx] : bj.values) {
    int arrow = k->arrow_index(name);
    if (arrow < 0) throw ParseError("band: unknown base arrow \"" + name + "\"");
    if (idx < 0 || idx >= ctx.coarse.num_classes())
      throw ParseError("band: coarse class index out of range");
    band.values[arrow] = idx;
  }
  for (int g = 0; g < k->num_arrows(); ++g)
    if (band.values[g] < 0)
      throw ParseError("band: missing entry for \"" + k->arrow_name(g) + "\"");
  return band;
}

}  // namespace grpext
