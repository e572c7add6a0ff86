#include "grpext/autalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <set>

#include "grpext/errors.hpp"

namespace grpext {

IsotropyGroup isotropy(GroupoidPtr a, int object) {
  if (object < 0 || object >= a->num_objects())
    throw UnknownObject("isotropy: object index out of range");
  return {a, object, a->loops_at(object)};
}

std::vector<int> central_loops(const FiniteGroupoid& a, int object) {
  auto loops = a.loops_at(object);
  std::vector<int> out;
  for (int g : loops) {
    bool central = true;
    for (int h : loops)
      if (a.compose(g, h) != a.compose(h, g)) {
        central = false;
        break;
      }
    if (central) out.push_back(g);
  }
  return out;
}

CenterGroupoid center_object_space(GroupoidPtr a) {
  CenterGroupoid out;
  std::vector<std::vector<int>> obj_index(a->num_objects(),
                                          std::vector<int>(a->num_arrows(), -1));
  for (int x = 0; x < a->num_objects(); ++x)
    for (int g : central_loops(*a, x)) {
      obj_index[x][g] = static_cast<int>(out.objects.size());
      out.objects.emplace_back(x, g);
    }

  const int nobj = static_cast<int>(out.objects.size());
  GroupoidData d;
  for (int p = 0; p < nobj; ++p) d.object_names.push_back(padded_name("z", p, nobj));

  auto conj = [&](int h, int g) {
    return a->compose(a->compose(a->inverse(h), g), h);
  };

  std::vector<std::vector<int>> arrow_index(nobj, std::vector<int>(a->num_arrows(), -1));
  for (int p = 0; p < nobj; ++p) {
    auto [x, g] = out.objects[p];
    for (int h = 0; h < a->num_arrows(); ++h) {
      if (a->src(h) != x) continue;
      arrow_index[p][h] = static_cast<int>(out.arrows.size());
      out.arrows.emplace_back(h, p);
    }
  }
  const int narr = static_cast<int>(out.arrows.size());
  for (int e = 0; e < narr; ++e) d.arrow_names.push_back(padded_name("w", e, narr));
  for (const auto& [h, p] : out.arrows) {
    auto [x, g] = out.objects[p];
    int q = obj_index[a->tgt(h)][conj(h, g)];
    if (q < 0) throw Error("center_object_space: conjugate left the central set");
    d.src.push_back(p);
    d.tgt.push_back(q);
    d.inv.push_back(arrow_index[q][a->inverse(h)]);
  }
  for (int p = 0; p < nobj; ++p) {
    auto [x, g] = out.objects[p];
    d.unit.push_back(arrow_index[p][a->unit(x)]);
  }
  for (int e1 = 0; e1 < narr; ++e1)
    for (int e2 = 0; e2 < narr; ++e2) {
      if (d.tgt[e1] != d.src[e2]) continue;
      int h1 = out.arrows[e1].first, h2 = out.arrows[e2].first;
      d.compose.push_back({e1, e2, arrow_index[d.src[e1]][a->compose(h1, h2)]});
    }

  auto validated = FiniteGroupoid::validate(std::move(d));
  if (!validated.ok())
    throw Error("center_object_space: invalid action groupoid: " +
                validated.violations.front().message);
  out.za = validated.groupoid;

  out.projection.dom = out.za;
  out.projection.cod = a;
  for (const auto& [x, g] : out.objects) out.projection.obj_map.push_back(x);
  for (const auto& [h, p] : out.arrows) out.projection.arrow_map.push_back(h);
  assert(is_functor(out.projection));
  return out;
}

bool is_central_section(const FiniteGroupoid& a, const ObjectSection& s) {
  if (static_cast<int>(s.size()) != a.num_objects()) return false;
  for (int x = 0; x < a.num_objects(); ++x) {
    int g = s[x];
    if (a.src(g) != x || a.tgt(g) != x) return false;
    for (int h : a.loops_at(x))
      if (a.compose(g, h) != a.compose(h, g)) return false;
  }
  for (int h = 0; h < a.num_arrows(); ++h) {
    int x = a.src(h), y = a.tgt(h);
    if (a.compose(a.compose(a.inverse(h), s[x]), h) != s[y]) return false;
  }
  return true;
}

int CenterGroup::index_of(const ObjectSection& s) const {
  auto it = std::lower_bound(sections.begin(), sections.end(), s);
  if (it == sections.end() || *it != s) return -1;
  return static_cast<int>(it - sections.begin());
}

CenterGroup center(GroupoidPtr a) {
  CenterGroup out;
  out.groupoid = a;

  const int nobj = a->num_objects();
  auto comp = a->object_components();
  int ncomp = nobj == 0 ? 0 : 1 + *std::max_element(comp.begin(), comp.end());

  // Per component: propagate each central loop at the least object along a
  // spanning tree, then keep the fully invariant sections.
  std::vector<std::vector<ObjectSection>> per_component(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    int rep = -1;
    std::vector<int> members;
    for (int x = 0; x < nobj; ++x)
      if (comp[x] == c) {
        members.push_back(x);
        if (rep < 0) rep = x;
      }
    std::vector<int> tree_arrow(nobj, -1);  // arrow from parent into x
    std::vector<int> parent(nobj, -1);
    std::vector<char> seen(nobj, 0);
    std::queue<int> bfs;
    bfs.push(rep);
    seen[rep] = 1;
    while (!bfs.empty()) {
      int x = bfs.front();
      bfs.pop();
      for (int h = 0; h < a->num_arrows(); ++h)
        if (a->src(h) == x && !seen[a->tgt(h)]) {
          seen[a->tgt(h)] = 1;
          parent[a->tgt(h)] = x;
          tree_arrow[a->tgt(h)] = h;
          bfs.push(a->tgt(h));
        }
    }
    std::vector<int> order(members);  // BFS-consistent: parents precede children
    std::sort(order.begin(), order.end(), [&](int u, int v) {
      int du = 0, dv = 0;
      for (int w = u; parent[w] >= 0; w = parent[w]) ++du;
      for (int w = v; parent[w] >= 0; w = parent[w]) ++dv;
      return du != dv ? du < dv : u < v;
    });

    for (int z : central_loops(*a, rep)) {
      ObjectSection s(nobj, -1);
      s[rep] = z;
      for (int x : order) {
        if (x == rep) continue;
        int h = tree_arrow[x];
        s[x] = a->compose(a->compose(a->inverse(h), s[parent[x]]), h);
      }
      per_component[c].push_back(std::move(s));
    }
  }

  // Cartesian product across components, then filter by full invariance.
  std::vector<ObjectSection> candidates;
  ObjectSection acc(nobj, -1);
  std::vector<size_t> pick(ncomp, 0);
  if (ncomp == 0) {
    candidates.push_back({});
  } else {
    while (true) {
      for (int c = 0; c < ncomp; ++c)
        for (int x = 0; x < nobj; ++x)
          if (comp[x] == c) acc[x] = per_component[c][pick[c]][x];
      candidates.push_back(acc);
      int c = ncomp - 1;
      while (c >= 0 && pick[c] + 1 == per_component[c].size()) pick[c--] = 0;
      if (c < 0) break;
      ++pick[c];
    }
  }
  for (auto& s : candidates)
    if (is_central_section(*a, s)) out.sections.push_back(s);
  std::sort(out.sections.begin(), out.sections.end());

  const int n = static_cast<int>(out.sections.size());
  std::vector<std::vector<int>> add(n, std::vector<int>(n, -1));
  int zero = -1;
  ObjectSection unit_section(nobj);
  for (int x = 0; x < nobj; ++x) unit_section[x] = a->unit(x);
  for (int i = 0; i < n; ++i) {
    if (out.sections[i] == unit_section) zero = i;
    for (int j = 0; j < n; ++j) {
      ObjectSection s(nobj);
      for (int x = 0; x < nobj; ++x)
        s[x] = a->compose(out.sections[i][x], out.sections[j][x]);
      add[i][j] = out.index_of(s);
      if (add[i][j] < 0) throw Error("center: sections not closed under product");
    }
  }
  if (zero < 0) throw Error("center: unit section missing");
  out.group = FiniteAbelianGroup::from_table(std::move(add), zero);
  return out;
}

// --- SAut -------------------------------------------------------------------

int SAutGroupoid::auto_index(const StrictMorphism& f) const {
  auto it = auto_index_.find({f.obj_map, f.arrow_map});
  return it == auto_index_.end() ? -1 : it->second;
}

int SAutGroupoid::compose_autos(int f, int g) const { return comp_table_[f][g]; }
int SAutGroupoid::invert_auto(int f) const { return inv_table_[f]; }

std::vector<int> SAutGroupoid::cells_between(int source, int target) const {
  std::vector<int> out;
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].source == source && cells[i].target == target)
      out.push_back(static_cast<int>(i));
  return out;
}

NaturalTransformation SAutGroupoid::cell_transformation(int cell) const {
  NaturalTransformation r;
  r.source = autos[cells[cell].source];
  r.target = autos[cells[cell].target];
  r.component = cells[cell].component;
  return r;
}

namespace {

void search_arrow_images(const FiniteGroupoid& a, const std::vector<int>& obj_map,
                         std::vector<int>& arrow_map, std::vector<char>& used, int next,
                         std::vector<StrictMorphism>& out, GroupoidPtr aptr) {
  const int n = a.num_arrows();
  if (next == n) {
    StrictMorphism f{aptr, aptr, obj_map, arrow_map};
    if (is_functor(f)) out.push_back(std::move(f));
    return;
  }
  if (arrow_map[next] >= 0) {
    search_arrow_images(a, obj_map, arrow_map, used, next + 1, out, aptr);
    return;
  }
  int x = obj_map[a.src(next)], y = obj_map[a.tgt(next)];
  for (int v = 0; v < n; ++v) {
    if (used[v] || a.src(v) != x || a.tgt(v) != y) continue;
    // Incremental consistency on products whose factors are already set.
    arrow_map[next] = v;
    used[v] = 1;
    bool ok = true;
    for (int b = 0; b <= next && ok; ++b) {
      if (arrow_map[b] < 0) continue;
      if (a.composable(next, b)) {
        int c = a.compose(next, b);
        if (arrow_map[c] >= 0 && arrow_map[c] != a.compose(v, arrow_map[b])) ok = false;
      }
      if (ok && a.composable(b, next)) {
        int c = a.compose(b, next);
        if (arrow_map[c] >= 0 && arrow_map[c] != a.compose(arrow_map[b], v)) ok = false;
      }
    }
    if (ok) search_arrow_images(a, obj_map, arrow_map, used, next + 1, out, aptr);
    arrow_map[next] = -1;
    used[v] = 0;
  }
}

}  // namespace

SAutGroupoid enumerate_saut(GroupoidPtr a, int size_cap) {
  if (a->num_arrows() > size_cap)
    throw SizeCapExceeded("enumerate_saut: |A1| = " + std::to_string(a->num_arrows()) +
                          " exceeds cap " + std::to_string(size_cap));
  SAutGroupoid out;
  out.groupoid = a;

  const int nobj = a->num_objects();
  std::vector<int> loop_count(nobj);
  for (int x = 0; x < nobj; ++x) loop_count[x] = static_cast<int>(a->loops_at(x).size());

  std::vector<int> perm(nobj);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool profile_ok = true;
    for (int x = 0; x < nobj && profile_ok; ++x)
      if (loop_count[perm[x]] != loop_count[x]) profile_ok = false;
    if (!profile_ok) continue;

    std::vector<int> arrow_map(a->num_arrows(), -1);
    std::vector<char> used(a->num_arrows(), 0);
    for (int x = 0; x < nobj; ++x) {
      arrow_map[a->unit(x)] = a->unit(perm[x]);
      used[a->unit(perm[x])] = 1;
    }
    search_arrow_images(*a, perm, arrow_map, used, 0, out.autos, a);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::sort(out.autos.begin(), out.autos.end(),
            [](const StrictMorphism& f, const StrictMorphism& g) {
              return std::tie(f.obj_map, f.arrow_map) < std::tie(g.obj_map, g.arrow_map);
            });
  for (size_t i = 0; i < out.autos.size(); ++i)
    out.auto_index_[{out.autos[i].obj_map, out.autos[i].arrow_map}] =
        static_cast<int>(i);

  const int na = out.num_autos();
  out.comp_table_.assign(na, std::vector<int>(na, -1));
  out.inv_table_.assign(na, -1);
  for (int f = 0; f < na; ++f) {
    for (int g = 0; g < na; ++g) {
      out.comp_table_[f][g] = out.auto_index(compose_morphisms(out.autos[f], out.autos[g]));
      if (out.comp_table_[f][g] < 0) throw Error("enumerate_saut: not closed");
    }
    out.inv_table_[f] = out.auto_index(invert_morphism(out.autos[f]));
    if (out.inv_table_[f] < 0) throw Error("enumerate_saut: no inverse");
  }

  for (int f = 0; f < na; ++f)
    for (int g = 0; g < na; ++g)
      for (const auto& r : all_transformations(out.autos[f], out.autos[g]))
        out.cells.push_back({f, g, r.component});
  return out;
}

// --- N_A ---------------------------------------------------------------------

StrictMorphism section_automorphism(GroupoidPtr a, const ObjectSection& s) {
  StrictMorphism f;
  f.dom = a;
  f.cod = a;
  f.obj_map.resize(a->num_objects());
  for (int x = 0; x < a->num_objects(); ++x) f.obj_map[x] = a->tgt(s[x]);
  f.arrow_map.resize(a->num_arrows());
  for (int g = 0; g < a->num_arrows(); ++g)
    f.arrow_map[g] =
        a->compose(a->compose(a->inverse(s[a->src(g)]), g), s[a->tgt(g)]);
  return f;
}

int NAGroup::index_of(const ObjectSection& s) const {
  auto it = std::lower_bound(sections.begin(), sections.end(), s);
  if (it == sections.end() || *it != s) return -1;
  return static_cast<int>(it - sections.begin());
}

NAGroup n_group(GroupoidPtr a, const SAutGroupoid& saut) {
  NAGroup out;
  out.groupoid = a;

  const int nobj = a->num_objects();
  std::vector<std::vector<int>> outgoing(nobj);
  for (int g = 0; g < a->num_arrows(); ++g) outgoing[a->src(g)].push_back(g);

  ObjectSection s(nobj, -1);
  std::vector<size_t> pick(nobj, 0);
  if (nobj == 0) {
    out.sections.push_back({});
  } else {
    while (true) {
      for (int x = 0; x < nobj; ++x) s[x] = outgoing[x][pick[x]];
      std::vector<char> hit(nobj, 0);
      bool bijective = true;
      for (int x = 0; x < nobj; ++x) {
        int y = a->tgt(s[x]);
        if (hit[y]) {
          bijective = false;
          break;
        }
        hit[y] = 1;
      }
      if (bijective) out.sections.push_back(s);
      int x = nobj - 1;
      while (x >= 0 && pick[x] + 1 == outgoing[x].size()) pick[x--] = 0;
      if (x < 0) break;
      ++pick[x];
    }
  }
  std::sort(out.sections.begin(), out.sections.end());

  const int n = static_cast<int>(out.sections.size());
  ObjectSection unit_section(nobj);
  for (int x = 0; x < nobj; ++x) unit_section[x] = a->unit(x);
  out.identity = out.index_of(unit_section);
  if (out.identity < 0) throw Error("n_group: unit section missing");

  // mult(i, j) = "i followed by j": x -> s_i(x) * s_j(t(s_i(x))).
  out.mult.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ObjectSection m(nobj);
      for (int x = 0; x < nobj; ++x)
        m[x] = a->compose(out.sections[i][x], out.sections[j][a->tgt(out.sections[i][x])]);
      out.mult[i][j] = out.index_of(m);
      if (out.mult[i][j] < 0) throw Error("n_group: not closed under composition");
    }
  out.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<int> t_inv(nobj);
    for (int x = 0; x < nobj; ++x) t_inv[a->tgt(out.sections[i][x])] = x;
    ObjectSection inv(nobj);
    for (int x = 0; x < nobj; ++x) inv[x] = a->inverse(out.sections[i][t_inv[x]]);
    out.inverse[i] = out.index_of(inv);
    if (out.inverse[i] < 0 || out.mult[i][out.inverse[i]] != out.identity ||
        out.mult[out.inverse[i]][i] != out.identity)
      throw Error("n_group: inverse law fails");
  }

  out.t_saut.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    out.t_saut[i] = saut.auto_index(section_automorphism(a, out.sections[i]));
    if (out.t_saut[i] < 0) throw Error("n_group: section automorphism not in SAut");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (out.t_saut[out.mult[i][j]] !=
          saut.compose_autos(out.t_saut[i], out.t_saut[j]))
        throw Error("n_group: t_saut is not a homomorphism");
  return out;
}

CoarseSAut coarse_saut(const SAutGroupoid& saut, const NAGroup& na) {
  const int n = saut.num_autos();
  std::set<int> image;
  for (int t : na.t_saut) image.insert(t);

  CoarseSAut out;
  out.class_of.assign(n, -1);
  for (int f = 0; f < n; ++f) {
    if (out.class_of[f] >= 0) continue;
    int cls = static_cast<int>(out.representative.size());
    out.representative.push_back(f);
    for (int h : image) {
      int member = saut.compose_autos(f, h);
      if (out.class_of[member] >= 0 && out.class_of[member] != cls)
        throw Error("coarse_saut: cosets are inconsistent");
      out.class_of[member] = cls;
    }
  }

  const int k = out.num_classes();
  out.mult.assign(k, std::vector<int>(k, -1));
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      int prod =
          out.class_of[saut.compose_autos(out.representative[u], out.representative[v])];
      out.mult[u][v] = prod;
    }
  // Well-definedness across representatives, i.e. normality of the image.
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g)
      if (out.class_of[saut.compose_autos(f, g)] !=
          out.mult[out.class_of[f]][out.class_of[g]])
        throw Error("coarse_saut: quotient multiplication ill-defined");

  int id_auto = saut.auto_index(identity_morphism(saut.groupoid));
  out.identity = out.class_of[id_auto];
  out.inverse.assign(k, -1);
  for (int u = 0; u < k; ++u)
    out.inverse[u] = out.class_of[saut.invert_auto(out.representative[u])];
  return out;
}

SAutSequenceReport verify_saut_sequence(const CenterGroup& z, const SAutGroupoid& saut,
                                        const NAGroup& na, const CoarseSAut& coarse) {
  SAutSequenceReport rep;

  std::set<int> center_in_na;
  rep.center_injects = true;
  for (const auto& s : z.sections) {
    int i = na.index_of(s);
    if (i < 0 || !center_in_na.insert(i).second) rep.center_injects = false;
  }

  int id_auto = saut.auto_index(identity_morphism(saut.groupoid));
  std::set<int> kernel;
  for (size_t i = 0; i < na.sections.size(); ++i)
    if (na.t_saut[i] == id_auto) kernel.insert(static_cast<int>(i));
  rep.kernel_is_center = kernel == center_in_na;

  std::set<int> image(na.t_saut.begin(), na.t_saut.end());
  rep.image_normal = true;
  for (int f = 0; f < saut.num_autos(); ++f)
    for (int h : image) {
      int conj = saut.compose_autos(saut.compose_autos(saut.invert_auto(f), h), f);
      if (!image.count(conj)) rep.image_normal = false;
    }

  rep.coarse_kernel_matches = true;
  for (int f = 0; f < saut.num_autos(); ++f) {
    bool in_image = image.count(f) > 0;
    bool in_kernel = coarse.class_of[f] == coarse.identity;
    if (in_image != in_kernel) rep.coarse_kernel_matches = false;
  }

  rep.stabilizers_match = true;
  for (int f = 0; f < saut.num_autos(); ++f) {
    std::set<int> stab;
    for (size_t i = 0; i < na.sections.size(); ++i)
      if (saut.compose_autos(f, na.t_saut[i]) == f) stab.insert(static_cast<int>(i));
    if (stab != center_in_na) rep.stabilizers_match = false;
  }
  return rep;
}

namespace {

// The SAut 2-groupoid realized as a finite groupoid: objects are the strict
// automorphisms, arrows the 2-cells, composition is vertical.
struct SAutAsGroupoid {
  GroupoidPtr g;
  std::map<std::tuple<int, int, std::vector<int>>, int> cell_index;
};

SAutAsGroupoid saut_as_groupoid(const SAutGroupoid& saut) {
  SAutAsGroupoid out;
  GroupoidData d;
  const int no = saut.num_autos();
  const int na = static_cast<int>(saut.cells.size());
  for (int i = 0; i < no; ++i) d.object_names.push_back(padded_name("f", i, no));
  for (int i = 0; i < na; ++i) {
    d.arrow_names.push_back(padded_name("c", i, na));
    d.src.push_back(saut.cells[i].source);
    d.tgt.push_back(saut.cells[i].target);
    out.cell_index[{saut.cells[i].source, saut.cells[i].target,
                    saut.cells[i].component}] = i;
  }
  const auto& a = *saut.groupoid;
  auto find_cell = [&](int s, int t, const std::vector<int>& comp) {
    auto it = out.cell_index.find({s, t, comp});
    if (it == out.cell_index.end()) throw Error("saut groupoid: missing cell");
    return it->second;
  };
  d.unit.resize(no);
  for (int f = 0; f < no; ++f) {
    std::vector<int> comp(a.num_objects());
    for (int x = 0; x < a.num_objects(); ++x) comp[x] = a.unit(saut.autos[f].obj_map[x]);
    d.unit[f] = find_cell(f, f, comp);
  }
  d.inv.resize(na);
  for (int i = 0; i < na; ++i) {
    std::vector<int> comp(saut.cells[i].component.size());
    for (size_t x = 0; x < comp.size(); ++x) comp[x] = a.inverse(saut.cells[i].component[x]);
    d.inv[i] = find_cell(saut.cells[i].target, saut.cells[i].source, comp);
  }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      if (saut.cells[i].target != saut.cells[j].source) continue;
      std::vector<int> comp(saut.cells[i].component.size());
      for (size_t x = 0; x < comp.size(); ++x)
        comp[x] = a.compose(saut.cells[i].component[x], saut.cells[j].component[x]);
      d.compose.push_back({i, j, find_cell(saut.cells[i].source, saut.cells[j].target, comp)});
    }
  auto validated = FiniteGroupoid::validate(std::move(d));
  if (!validated.ok()) throw Error("saut groupoid: invalid");
  out.g = validated.groupoid;
  return out;
}

}  // namespace

bool semidirect_check(const SAutGroupoid& saut, const NAGroup& na) {
  auto saut_gpd = saut_as_groupoid(saut);

  // Action groupoid SAut0 x| N_A: arrows (g, alpha) : g -> t(alpha) . g.
  const int no = saut.num_autos();
  const int nn = static_cast<int>(na.sections.size());
  GroupoidData d;
  for (int i = 0; i < no; ++i) d.object_names.push_back(padded_name("f", i, no));
  struct Arrow {
    int base, alpha;
  };
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> arrow_index(no, std::vector<int>(nn));
  for (int g = 0; g < no; ++g)
    for (int al = 0; al < nn; ++al) {
      arrow_index[g][al] = static_cast<int>(arrows.size());
      arrows.push_back({g, al});
    }
  const int narr = static_cast<int>(arrows.size());
  for (int i = 0; i < narr; ++i) d.arrow_names.push_back(padded_name("n", i, narr));
  auto act_target = [&](int g, int al) { return saut.compose_autos(g, na.t_saut[al]); };
  for (const auto& [g, al] : arrows) {
    d.src.push_back(g);
    d.tgt.push_back(act_target(g, al));
    d.inv.push_back(arrow_index[act_target(g, al)][na.inverse[al]]);
  }
  for (int g = 0; g < no; ++g) d.unit.push_back(arrow_index[g][na.identity]);
  for (int i = 0; i < narr; ++i)
    for (int j = 0; j < narr; ++j) {
      if (d.tgt[i] != d.src[j]) continue;
      d.compose.push_back(
          {i, j, arrow_index[arrows[i].base][na.mult[arrows[i].alpha][arrows[j].alpha]]});
    }
  auto validated = FiniteGroupoid::validate(std::move(d));
  if (!validated.ok()) return false;
  GroupoidPtr action_gpd = validated.groupoid;

  const auto& a = *saut.groupoid;

  // phi: SAut => action groupoid; on a cell alpha: f => g it is the pair
  // (f, alpha (*) 1_{f^{-1}}), an element of N_A.
  StrictMorphism phi{saut_gpd.g, action_gpd, {}, {}};
  phi.obj_map.resize(no);
  std::iota(phi.obj_map.begin(), phi.obj_map.end(), 0);
  for (const auto& cell : saut.cells) {
    NaturalTransformation alpha{saut.autos[cell.source], saut.autos[cell.target],
                                cell.component};
    auto f_inv = invert_morphism(saut.autos[cell.source]);
    auto n_elem = horizontal_compose(alpha, identity_transformation(f_inv));
    int al = na.index_of(n_elem.component);
    if (al < 0) return false;
    phi.arrow_map.push_back(arrow_index[cell.source][al]);
  }
  if (!is_functor(phi)) return false;

  // psi: action groupoid => SAut; (g, alpha: id => f) |-> alpha (*) 1_g.
  StrictMorphism psi{action_gpd, saut_gpd.g, {}, {}};
  psi.obj_map.resize(no);
  std::iota(psi.obj_map.begin(), psi.obj_map.end(), 0);
  int id_auto = saut.auto_index(identity_morphism(saut.groupoid));
  if (id_auto < 0) return false;
  for (const auto& [g, al] : arrows) {
    NaturalTransformation alpha{saut.autos[id_auto],
                                saut.autos[na.t_saut[al]],
                                na.sections[al]};
    auto cell_nt = horizontal_compose(alpha, identity_transformation(saut.autos[g]));
    auto it = saut_gpd.cell_index.find(
        {g, act_target(g, al), cell_nt.component});
    if (it == saut_gpd.cell_index.end()) return false;
    psi.arrow_map.push_back(it->second);
  }
  if (!is_functor(psi)) return false;

  // Mutually inverse, arrow by arrow.
  for (int i = 0; i < saut_gpd.g->num_arrows(); ++i)
    if (psi.arrow_map[phi.arrow_map[i]] != i) return false;
  for (int i = 0; i < action_gpd->num_arrows(); ++i)
    if (phi.arrow_map[psi.arrow_map[i]] != i) return false;
  (void)a;
  return true;
}

}  // namespace grpext
