#include "grpext/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "grpext/errors.hpp"

namespace grpext {

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Structural: return "Structural";
    case ViolationKind::CompositionDomain: return "CompositionDomainError";
    case ViolationKind::Associativity: return "AssociativityViolation";
    case ViolationKind::Unit: return "UnitViolation";
    case ViolationKind::Inverse: return "InverseViolation";
  }
  return "Unknown";
}

FiniteGroupoid::FiniteGroupoid(GroupoidData data) : data_(std::move(data)) {
  const int n = num_arrows();
  table_.assign(static_cast<size_t>(n) * n, -1);
  for (const auto& e : data_.compose) table_[e[0] * n + e[1]] = e[2];
  is_unit_.assign(n, 0);
  for (int u : data_.unit) is_unit_[u] = 1;
}

int FiniteGroupoid::object_index(const std::string& name) const {
  for (int i = 0; i < num_objects(); ++i)
    if (data_.object_names[i] == name) return i;
  return -1;
}

int FiniteGroupoid::arrow_index(const std::string& name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (data_.arrow_names[i] == name) return i;
  return -1;
}

std::vector<int> FiniteGroupoid::loops_at(int x) const {
  std::vector<int> out;
  for (int a = 0; a < num_arrows(); ++a)
    if (src(a) == x && tgt(a) == x) out.push_back(a);
  return out;
}

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
  std::vector<int> out;
  for (int a = 0; a < num_arrows(); ++a)
    if (src(a) == x && tgt(a) == y) out.push_back(a);
  return out;
}

std::vector<int> FiniteGroupoid::object_components() const {
  const int n = num_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < num_arrows(); ++a) {
    int rs = find(src(a)), rt = find(tgt(a));
    if (rs != rt) parent[std::max(rs, rt)] = std::min(rs, rt);
  }
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (comp[r] < 0) comp[r] = next++;
    comp[x] = comp[r];
  }
  return comp;
}

bool FiniteGroupoid::same_tables(const FiniteGroupoid& other) const {
  return data_.src == other.data_.src && data_.tgt == other.data_.tgt &&
         data_.unit == other.data_.unit && data_.inv == other.data_.inv &&
         table_ == other.table_ &&
         data_.object_names == other.data_.object_names &&
         data_.arrow_names == other.data_.arrow_names;
}

namespace {

bool in_range(int i, size_t n) { return i >= 0 && static_cast<size_t>(i) < n; }

}  // namespace

ValidationResult FiniteGroupoid::validate(GroupoidData data) {
  ValidationResult result;
  auto add = [&](ViolationKind k, std::string msg) {
    result.violations.push_back({k, std::move(msg)});
  };

  const size_t nobj = data.object_names.size();
  const size_t narr = data.arrow_names.size();
  if (data.src.size() != narr || data.tgt.size() != narr ||
      data.inv.size() != narr || data.unit.size() != nobj) {
    add(ViolationKind::Structural, "table sizes inconsistent with object/arrow counts");
    return result;
  }
  bool ranges_ok = true;
  for (size_t a = 0; a < narr; ++a) {
    if (!in_range(data.src[a], nobj) || !in_range(data.tgt[a], nobj) ||
        !in_range(data.inv[a], narr)) {
      add(ViolationKind::Structural,
          "arrow " + data.arrow_names[a] + " has out-of-range src/tgt/inverse");
      ranges_ok = false;
    }
  }
  for (size_t x = 0; x < nobj; ++x) {
    if (!in_range(data.unit[x], narr)) {
      add(ViolationKind::Structural,
          "object " + data.object_names[x] + " has out-of-range unit");
      ranges_ok = false;
    }
  }
  for (const auto& e : data.compose) {
    if (!in_range(e[0], narr) || !in_range(e[1], narr) || !in_range(e[2], narr)) {
      add(ViolationKind::Structural, "composition entry with out-of-range arrow index");
      ranges_ok = false;
    }
  }
  if (!ranges_ok) return result;

  const int n = static_cast<int>(narr);
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (const auto& e : data.compose) {
    int& slot = table[e[0] * n + e[1]];
    if (slot != -1 && slot != e[2]) {
      add(ViolationKind::Structural,
          "duplicate composition entry for (" + data.arrow_names[e[0]] + ", " +
              data.arrow_names[e[1]] + ")");
    }
    slot = e[2];
  }

  auto aname = [&](int a) { return data.arrow_names[a]; };

  // Composition defined exactly on composable pairs, with the src/tgt laws.
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      int gh = table[g * n + h];
      bool comp = data.tgt[g] == data.src[h];
      if (comp && gh < 0)
        add(ViolationKind::CompositionDomain,
            "composable pair (" + aname(g) + ", " + aname(h) + ") has no composite");
      if (!comp && gh >= 0)
        add(ViolationKind::CompositionDomain,
            "non-composable pair (" + aname(g) + ", " + aname(h) + ") has a composite");
      if (comp && gh >= 0) {
        if (data.src[gh] != data.src[g] || data.tgt[gh] != data.tgt[h])
          add(ViolationKind::CompositionDomain,
              "composite " + aname(g) + "*" + aname(h) + " = " + aname(gh) +
                  " violates src/tgt laws");
      }
    }
  }
  if (!result.violations.empty()) return result;

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (data.tgt[g] != data.src[h]) continue;
      int gh = table[g * n + h];
      for (int k = 0; k < n; ++k) {
        if (data.tgt[h] != data.src[k]) continue;
        int hk = table[h * n + k];
        if (table[gh * n + k] != table[g * n + hk])
          add(ViolationKind::Associativity,
              "(" + aname(g) + "*" + aname(h) + ")*" + aname(k) + " != " + aname(g) +
                  "*(" + aname(h) + "*" + aname(k) + ")");
      }
    }

  for (size_t x = 0; x < nobj; ++x) {
    int u = data.unit[x];
    if (data.src[u] != static_cast<int>(x) || data.tgt[u] != static_cast<int>(x))
      add(ViolationKind::Unit,
          "unit of " + data.object_names[x] + " is not a loop at it");
  }
  for (int g = 0; g < n; ++g) {
    int lu = data.unit[data.src[g]], ru = data.unit[data.tgt[g]];
    if (table[lu * n + g] != g)
      add(ViolationKind::Unit, "1_src * " + aname(g) + " != " + aname(g));
    if (table[g * n + ru] != g)
      add(ViolationKind::Unit, aname(g) + " * 1_tgt != " + aname(g));
  }

  for (int g = 0; g < n; ++g) {
    int gi = data.inv[g];
    if (data.src[gi] != data.tgt[g] || data.tgt[gi] != data.src[g]) {
      add(ViolationKind::Inverse, "inverse of " + aname(g) + " has wrong endpoints");
      continue;
    }
    if (table[g * n + gi] != data.unit[data.src[g]])
      add(ViolationKind::Inverse, aname(g) + " * inv != 1_src");
    if (table[gi * n + g] != data.unit[data.tgt[g]])
      add(ViolationKind::Inverse, "inv * " + aname(g) + " != 1_tgt");
  }

  if (result.violations.empty())
    result.groupoid = GroupoidPtr(new FiniteGroupoid(std::move(data)));
  return result;
}

// --- Standard groupoids -----------------------------------------------------

std::string padded_name(const std::string& prefix, int i, int count) {
  int width = 1;
  for (int c = count - 1; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(i);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

namespace {

GroupoidPtr checked(GroupoidData data) {
  auto result = FiniteGroupoid::validate(std::move(data));
  if (!result.ok())
    throw Error("internal groupoid construction failed: " +
                result.violations.front().message);
  return result.groupoid;
}

}  // namespace

GroupoidPtr group_groupoid(const std::vector<std::vector<int>>& mult,
                           const std::vector<std::string>& element_names,
                           const std::string& object_name) {
  const int n = static_cast<int>(mult.size());
  GroupoidData d;
  d.object_names = {object_name};
  d.arrow_names = element_names;
  d.src.assign(n, 0);
  d.tgt.assign(n, 0);
  d.unit = {0};
  d.inv.assign(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      d.compose.push_back({g, h, mult[g][h]});
      if (mult[g][h] == 0) d.inv[g] = h;
    }
  return checked(std::move(d));
}

GroupoidPtr cyclic_group_groupoid(int n) {
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  names[0] = "e";
  for (int i = 1; i < n; ++i) names[i] = padded_name("g", i, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  return group_groupoid(mult, names);
}

GroupoidPtr klein_four_groupoid() {
  // Elements e, a, b, c with a^2 = b^2 = c^2 = e and ab = c.
  std::vector<std::vector<int>> mult = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return group_groupoid(mult, {"e", "va", "vb", "vc"});
}

GroupoidPtr symmetric3_groupoid() {
  // Permutations of {0,1,2}; composition "p followed by q" is x -> q(p(x)).
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  std::vector<std::string> names = {"e", "r1", "r2", "s0", "s1", "s2"};
  const int n = 6;
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[h][perms[g][x]];
      mult[g][h] = index_of(c);
    }
  return group_groupoid(mult, names);
}

GroupoidPtr pair_groupoid(int n) {
  GroupoidData d;
  for (int i = 0; i < n; ++i) d.object_names.push_back(padded_name("p", i, n));
  auto arrow = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.arrow_names.push_back(padded_name("a", arrow(i, j), n * n));
      d.src.push_back(i);
      d.tgt.push_back(j);
      d.inv.push_back(arrow(j, i));
    }
  for (int i = 0; i < n; ++i) d.unit.push_back(arrow(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d.compose.push_back({arrow(i, j), arrow(j, k), arrow(i, k)});
  return checked(std::move(d));
}

GroupoidPtr unit_groupoid(int n) {
  GroupoidData d;
  for (int i = 0; i < n; ++i) {
    d.object_names.push_back(padded_name("x", i, n));
    d.arrow_names.push_back(padded_name("i", i, n));
    d.src.push_back(i);
    d.tgt.push_back(i);
    d.unit.push_back(i);
    d.inv.push_back(i);
    d.compose.push_back({i, i, i});
  }
  return checked(std::move(d));
}

GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts) {
  GroupoidData d;
  int obj_base = 0, arr_base = 0;
  const int np = static_cast<int>(parts.size());
  for (int p = 0; p < np; ++p) {
    const auto& g = *parts[p];
    std::string pre = padded_name("u", p, np) + "_";
    for (int x = 0; x < g.num_objects(); ++x)
      d.object_names.push_back(pre + g.object_name(x));
    for (int a = 0; a < g.num_arrows(); ++a) {
      d.arrow_names.push_back(pre + g.arrow_name(a));
      d.src.push_back(obj_base + g.src(a));
      d.tgt.push_back(obj_base + g.tgt(a));
      d.inv.push_back(arr_base + g.inverse(a));
    }
    for (int x = 0; x < g.num_objects(); ++x)
      d.unit.push_back(arr_base + g.unit(x));
    for (int a = 0; a < g.num_arrows(); ++a)
      for (int b = 0; b < g.num_arrows(); ++b)
        if (g.composable(a, b))
          d.compose.push_back({arr_base + a, arr_base + b, arr_base + g.compose(a, b)});
    obj_base += g.num_objects();
    arr_base += g.num_arrows();
  }
  return checked(std::move(d));
}

}  // namespace grpext
