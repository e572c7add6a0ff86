#include "grpext/morphism.hpp"

#include <cassert>
#include <numeric>

#include "grpext/errors.hpp"

namespace grpext {

std::optional<std::string> functor_violation(const StrictMorphism& f) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  if (static_cast<int>(f.obj_map.size()) != A.num_objects() ||
      static_cast<int>(f.arrow_map.size()) != A.num_arrows())
    return "object/arrow map sizes do not match the domain";
  for (int x : f.obj_map)
    if (x < 0 || x >= B.num_objects()) return "object map value out of range";
  for (int a : f.arrow_map)
    if (a < 0 || a >= B.num_arrows()) return "arrow map value out of range";
  for (int a = 0; a < A.num_arrows(); ++a) {
    int fa = f.arrow_map[a];
    if (B.src(fa) != f.obj_map[A.src(a)] || B.tgt(fa) != f.obj_map[A.tgt(a)])
      return "arrow " + A.arrow_name(a) + " maps with wrong endpoints";
  }
  for (int x = 0; x < A.num_objects(); ++x)
    if (f.arrow_map[A.unit(x)] != B.unit(f.obj_map[x]))
      return "unit of " + A.object_name(x) + " not preserved";
  for (int g = 0; g < A.num_arrows(); ++g)
    for (int h = 0; h < A.num_arrows(); ++h)
      if (A.composable(g, h) &&
          f.arrow_map[A.compose(g, h)] != B.compose(f.arrow_map[g], f.arrow_map[h]))
        return "composition of " + A.arrow_name(g) + ", " + A.arrow_name(h) +
               " not preserved";
  return std::nullopt;
}

bool is_functor(const StrictMorphism& f) { return !functor_violation(f); }

StrictMorphism identity_morphism(GroupoidPtr g) {
  StrictMorphism f;
  f.dom = g;
  f.cod = g;
  f.obj_map.resize(g->num_objects());
  f.arrow_map.resize(g->num_arrows());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  return f;
}

StrictMorphism compose_morphisms(const StrictMorphism& f, const StrictMorphism& g) {
  if (!StrictMorphism::same_groupoid(f.cod, g.dom))
    throw DomainMismatch("compose_morphisms: cod(f) != dom(g)");
  StrictMorphism r;
  r.dom = f.dom;
  r.cod = g.cod;
  r.obj_map.reserve(f.obj_map.size());
  r.arrow_map.reserve(f.arrow_map.size());
  for (int x : f.obj_map) r.obj_map.push_back(g.obj_map[x]);
  for (int a : f.arrow_map) r.arrow_map.push_back(g.arrow_map[a]);
  assert(is_functor(r));
  return r;
}

bool is_bijective(const StrictMorphism& f) {
  if (f.dom->num_objects() != f.cod->num_objects() ||
      f.dom->num_arrows() != f.cod->num_arrows())
    return false;
  std::vector<char> seen_obj(f.obj_map.size(), 0), seen_arr(f.arrow_map.size(), 0);
  for (int x : f.obj_map) {
    if (seen_obj[x]) return false;
    seen_obj[x] = 1;
  }
  for (int a : f.arrow_map) {
    if (seen_arr[a]) return false;
    seen_arr[a] = 1;
  }
  return true;
}

StrictMorphism invert_morphism(const StrictMorphism& f) {
  if (!is_bijective(f)) throw DomainMismatch("invert_morphism: functor not bijective");
  StrictMorphism r;
  r.dom = f.cod;
  r.cod = f.dom;
  r.obj_map.resize(f.obj_map.size());
  r.arrow_map.resize(f.arrow_map.size());
  for (size_t x = 0; x < f.obj_map.size(); ++x) r.obj_map[f.obj_map[x]] = static_cast<int>(x);
  for (size_t a = 0; a < f.arrow_map.size(); ++a)
    r.arrow_map[f.arrow_map[a]] = static_cast<int>(a);
  assert(is_functor(r));
  return r;
}

bool is_equivalence(const StrictMorphism& f) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  // Essentially surjective: every codomain object is linked to an image object.
  auto comp = B.object_components();
  std::vector<char> comp_hit(B.num_objects() + 1, 0);
  for (int x : f.obj_map) comp_hit[comp[x]] = 1;
  for (int y = 0; y < B.num_objects(); ++y)
    if (!comp_hit[comp[y]]) return false;
  // Fully faithful: bijective on every hom set.
  for (int x = 0; x < A.num_objects(); ++x)
    for (int y = 0; y < A.num_objects(); ++y) {
      auto dom_hom = A.hom(x, y);
      auto cod_hom = B.hom(f.obj_map[x], f.obj_map[y]);
      if (dom_hom.size() != cod_hom.size()) return false;
      std::vector<char> used(B.num_arrows(), 0);
      for (int a : dom_hom) {
        int fa = f.arrow_map[a];
        if (used[fa]) return false;
        used[fa] = 1;
      }
    }
  return true;
}

std::optional<std::string> naturality_violation(const NaturalTransformation& r) {
  const auto& f = r.source;
  const auto& g = r.target;
  if (!StrictMorphism::same_groupoid(f.dom, g.dom) ||
      !StrictMorphism::same_groupoid(f.cod, g.cod))
    return "source and target functors are not parallel";
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  if (static_cast<int>(r.component.size()) != A.num_objects())
    return "component size does not match the domain objects";
  for (int x = 0; x < A.num_objects(); ++x) {
    int s = r.component[x];
    if (s < 0 || s >= B.num_arrows()) return "component out of range";
    if (B.src(s) != f.obj_map[x] || B.tgt(s) != g.obj_map[x])
      return "component at " + A.object_name(x) + " has wrong endpoints";
  }
  for (int a = 0; a < A.num_arrows(); ++a) {
    int x = A.src(a), y = A.tgt(a);
    if (B.compose(f.arrow_map[a], r.component[y]) !=
        B.compose(r.component[x], g.arrow_map[a]))
      return "naturality square fails at arrow " + A.arrow_name(a);
  }
  return std::nullopt;
}

bool is_natural(const NaturalTransformation& r) { return !naturality_violation(r); }

NaturalTransformation identity_transformation(const StrictMorphism& f) {
  NaturalTransformation r;
  r.source = f;
  r.target = f;
  r.component.reserve(f.obj_map.size());
  for (int x : f.obj_map) r.component.push_back(f.cod->unit(x));
  return r;
}

NaturalTransformation vertical_compose(const NaturalTransformation& r1,
                                       const NaturalTransformation& r2) {
  if (!(r1.target == r2.source))
    throw CompositionMismatch("vertical_compose: target(r1) != source(r2)");
  NaturalTransformation r;
  r.source = r1.source;
  r.target = r2.target;
  const auto& B = *r1.source.cod;
  r.component.reserve(r1.component.size());
  for (size_t x = 0; x < r1.component.size(); ++x)
    r.component.push_back(B.compose(r1.component[x], r2.component[x]));
  assert(is_natural(r));
  return r;
}

NaturalTransformation vertical_inverse(const NaturalTransformation& r) {
  NaturalTransformation out;
  out.source = r.target;
  out.target = r.source;
  const auto& B = *r.source.cod;
  out.component.reserve(r.component.size());
  for (int s : r.component) out.component.push_back(B.inverse(s));
  return out;
}

NaturalTransformation horizontal_compose(const NaturalTransformation& r3,
                                         const NaturalTransformation& r1) {
  const auto& k = r3.source;
  const auto& j = r3.target;
  const auto& f = r1.source;
  const auto& g = r1.target;
  if (!StrictMorphism::same_groupoid(f.cod, k.dom))
    throw CompositionMismatch("horizontal_compose: cod of inner != dom of outer");
  NaturalTransformation r;
  r.source = compose_morphisms(f, k);
  r.target = compose_morphisms(g, j);
  const auto& C = *k.cod;
  r.component.reserve(r1.component.size());
  for (size_t a = 0; a < r1.component.size(); ++a)
    r.component.push_back(
        C.compose(k.arrow_map[r1.component[a]], r3.component[g.obj_map[a]]));
  assert(is_natural(r));
  return r;
}

NaturalTransformation horizontal_inverse(const NaturalTransformation& r) {
  auto f_inv = invert_morphism(r.source);
  auto g_inv = invert_morphism(r.target);
  const auto& B = *r.source.cod;
  NaturalTransformation out;
  out.source = f_inv;
  out.target = g_inv;
  out.component.resize(r.component.size());
  for (size_t a = 0; a < out.component.size(); ++a) {
    int pre = g_inv.obj_map[static_cast<int>(a)];
    out.component[a] = B.inverse(f_inv.arrow_map[r.component[pre]]);
  }
  assert(is_natural(out));
  return out;
}

std::vector<NaturalTransformation> all_transformations(const StrictMorphism& f,
                                                       const StrictMorphism& g) {
  std::vector<NaturalTransformation> out;
  if (!StrictMorphism::same_groupoid(f.dom, g.dom) ||
      !StrictMorphism::same_groupoid(f.cod, g.cod))
    return out;
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  const int n = A.num_objects();
  std::vector<std::vector<int>> candidates(n);
  for (int x = 0; x < n; ++x) {
    candidates[x] = B.hom(f.obj_map[x], g.obj_map[x]);
    if (candidates[x].empty()) return out;
  }
  std::vector<int> pick(n, 0);
  NaturalTransformation r;
  r.source = f;
  r.target = g;
  r.component.resize(n);
  while (true) {
    for (int x = 0; x < n; ++x) r.component[x] = candidates[x][pick[x]];
    if (is_natural(r)) out.push_back(r);
    int i = n - 1;
    while (i >= 0 && pick[i] + 1 == static_cast<int>(candidates[i].size())) {
      pick[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

}  // namespace grpext
