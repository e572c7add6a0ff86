#include "grpext/refine.hpp"

#include <algorithm>
#include <cassert>

#include "grpext/errors.hpp"

namespace grpext {

std::optional<std::string> cover_violation(const FiniteGroupoid& k, const OpenCover& u) {
  std::vector<char> covered(k.num_objects(), 0);
  for (size_t i = 0; i < u.subsets.size(); ++i) {
    const auto& s = u.subsets[i];
    if (s.empty()) return "subset " + std::to_string(i) + " is empty";
    for (int x : s) {
      if (x < 0 || x >= k.num_objects())
        return "subset " + std::to_string(i) + " has an out-of-range object";
      covered[x] = 1;
    }
  }
  for (int x = 0; x < k.num_objects(); ++x)
    if (!covered[x]) return "object " + k.object_name(x) + " is not covered";
  return std::nullopt;
}

Refinement refine(GroupoidPtr k, const OpenCover& u) {
  if (auto why = cover_violation(*k, u)) throw InvalidCover("refine: " + *why);

  Refinement out;
  for (size_t i = 0; i < u.subsets.size(); ++i)
    for (int x : u.subsets[i])
      out.object_origin.emplace_back(static_cast<int>(i), x);

  const int nobj = static_cast<int>(out.object_origin.size());
  GroupoidData d;
  for (int p = 0; p < nobj; ++p) d.object_names.push_back(padded_name("q", p, nobj));

  // Arrows (p, g, q), enumerated by (p, q, g) in canonical order.
  struct Triple {
    int p, g, q;
  };
  std::vector<Triple> triples;
  std::vector<std::vector<std::vector<int>>> idx(
      nobj, std::vector<std::vector<int>>(nobj, std::vector<int>(k->num_arrows(), -1)));
  for (int p = 0; p < nobj; ++p)
    for (int q = 0; q < nobj; ++q) {
      int x = out.object_origin[p].second, y = out.object_origin[q].second;
      for (int g : k->hom(x, y)) {
        idx[p][q][g] = static_cast<int>(triples.size());
        triples.push_back({p, g, q});
      }
    }

  const int narr = static_cast<int>(triples.size());
  for (int a = 0; a < narr; ++a) d.arrow_names.push_back(padded_name("t", a, narr));
  for (const auto& t : triples) {
    d.src.push_back(t.p);
    d.tgt.push_back(t.q);
    d.inv.push_back(idx[t.q][t.p][k->inverse(t.g)]);
  }
  for (int p = 0; p < nobj; ++p)
    d.unit.push_back(idx[p][p][k->unit(out.object_origin[p].second)]);
  for (int a = 0; a < narr; ++a)
    for (int b = 0; b < narr; ++b) {
      const auto& ta = triples[a];
      const auto& tb = triples[b];
      if (ta.q != tb.p) continue;
      d.compose.push_back({a, b, idx[ta.p][tb.q][k->compose(ta.g, tb.g)]});
    }

  auto validated = FiniteGroupoid::validate(std::move(d));
  if (!validated.ok())
    throw Error("refine: constructed groupoid invalid: " +
                validated.violations.front().message);
  out.refined = validated.groupoid;

  out.projection.dom = out.refined;
  out.projection.cod = k;
  for (const auto& o : out.object_origin) out.projection.obj_map.push_back(o.second);
  for (const auto& t : triples) out.projection.arrow_map.push_back(t.g);
  assert(is_functor(out.projection));
  return out;
}

std::optional<std::vector<int>> refines(const OpenCover& fine, const OpenCover& coarse) {
  std::vector<int> map;
  for (const auto& s : fine.subsets) {
    int found = -1;
    for (size_t j = 0; j < coarse.subsets.size(); ++j) {
      if (std::includes(coarse.subsets[j].begin(), coarse.subsets[j].end(), s.begin(),
                        s.end())) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) return std::nullopt;
    map.push_back(found);
  }
  return map;
}

StrictMorphism refinement_morphism(const Refinement& fine, const Refinement& coarse,
                                   const std::vector<int>& subset_map) {
  StrictMorphism f;
  f.dom = fine.refined;
  f.cod = coarse.refined;

  auto coarse_object = [&](int subset, int obj) {
    for (size_t p = 0; p < coarse.object_origin.size(); ++p)
      if (coarse.object_origin[p].first == subset && coarse.object_origin[p].second == obj)
        return static_cast<int>(p);
    throw InvalidCover("refinement_morphism: subset map is not a refinement");
  };

  for (const auto& o : fine.object_origin)
    f.obj_map.push_back(coarse_object(subset_map[o.first], o.second));

  const auto& kw = *fine.refined;
  const auto& base = *fine.projection.cod;
  (void)base;
  for (int a = 0; a < kw.num_arrows(); ++a) {
    int p = f.obj_map[kw.src(a)];
    int q = f.obj_map[kw.tgt(a)];
    int g = fine.projection.arrow_map[a];
    int found = -1;
    for (int b = 0; b < coarse.refined->num_arrows(); ++b)
      if (coarse.refined->src(b) == p && coarse.refined->tgt(b) == q &&
          coarse.projection.arrow_map[b] == g) {
        found = b;
        break;
      }
    if (found < 0) throw InvalidCover("refinement_morphism: missing arrow image");
    f.arrow_map.push_back(found);
  }
  assert(is_functor(f));
  return f;
}

OpenCover common_refinement(const OpenCover& u, const OpenCover& v) {
  OpenCover w;
  for (const auto& a : u.subsets)
    for (const auto& b : v.subsets) {
      std::vector<int> inter;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(inter));
      if (!inter.empty()) w.subsets.push_back(std::move(inter));
    }
  return w;
}

}  // namespace grpext
