#include "grpext/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "grpext/errors.hpp"

namespace grpext {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::map<std::string, int> index_by_name(const std::vector<std::string>& names,
                                         const char* what) {
  std::map<std::string, int> out;
  for (size_t i = 0; i < names.size(); ++i)
    if (!out.emplace(names[i], static_cast<int>(i)).second)
      throw ParseError(std::string("duplicate ") + what + " id \"" + names[i] + "\"");
  return out;
}

int lookup(const std::map<std::string, int>& index, const std::string& name,
           const char* what) {
  auto it = index.find(name);
  if (it == index.end())
    throw ParseError(std::string("unknown ") + what + " id \"" + name + "\"");
  return it->second;
}

}  // namespace

GroupoidData groupoid_data_from_json(const Json& j) {
  GroupoidData d;
  for (const auto& o : field(j, "objects")) d.object_names.push_back(o.get<std::string>());
  std::sort(d.object_names.begin(), d.object_names.end());
  auto obj_index = index_by_name(d.object_names, "object");

  struct ArrowRec {
    std::string id, src, tgt;
  };
  std::vector<ArrowRec> recs;
  for (const auto& a : field(j, "arrows"))
    recs.push_back({field(a, "id").get<std::string>(), field(a, "src").get<std::string>(),
                    field(a, "tgt").get<std::string>()});
  std::sort(recs.begin(), recs.end(),
            [](const ArrowRec& a, const ArrowRec& b) { return a.id < b.id; });
  for (const auto& r : recs) d.arrow_names.push_back(r.id);
  auto arr_index = index_by_name(d.arrow_names, "arrow");
  for (const auto& r : recs) {
    d.src.push_back(lookup(obj_index, r.src, "object"));
    d.tgt.push_back(lookup(obj_index, r.tgt, "object"));
  }

  d.unit.assign(d.object_names.size(), -1);
  for (const auto& [obj, arrow] : field(j, "unit").items()) {
    int x = lookup(obj_index, obj, "object");
    if (d.unit[x] != -1) throw ParseError("duplicate unit entry for \"" + obj + "\"");
    d.unit[x] = lookup(arr_index, arrow.get<std::string>(), "arrow");
  }
  for (size_t x = 0; x < d.unit.size(); ++x)
    if (d.unit[x] < 0)
      throw ParseError("missing unit entry for \"" + d.object_names[x] + "\"");

  d.inv.assign(d.arrow_names.size(), -1);
  for (const auto& [arrow, image] : field(j, "inverse").items()) {
    int a = lookup(arr_index, arrow, "arrow");
    if (d.inv[a] != -1) throw ParseError("duplicate inverse entry for \"" + arrow + "\"");
    d.inv[a] = lookup(arr_index, image.get<std::string>(), "arrow");
  }
  for (size_t a = 0; a < d.inv.size(); ++a)
    if (d.inv[a] < 0)
      throw ParseError("missing inverse entry for \"" + d.arrow_names[a] + "\"");

  std::set<std::pair<int, int>> seen;
  for (const auto& e : field(j, "compose")) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("compose entries must be [g, h, gh] triples");
    int g = lookup(arr_index, e[0].get<std::string>(), "arrow");
    int h = lookup(arr_index, e[1].get<std::string>(), "arrow");
    int gh = lookup(arr_index, e[2].get<std::string>(), "arrow");
    if (!seen.emplace(g, h).second)
      throw ParseError("duplicate compose entry for (" + e[0].get<std::string>() + ", " +
                       e[1].get<std::string>() + ")");
    d.compose.push_back({g, h, gh});
  }
  std::sort(d.compose.begin(), d.compose.end());
  return d;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json j;
  j["objects"] = Json::array();
  for (int x = 0; x < g.num_objects(); ++x) j["objects"].push_back(g.object_name(x));
  j["arrows"] = Json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    j["arrows"].push_back({{"id", g.arrow_name(a)},
                           {"src", g.object_name(g.src(a))},
                           {"tgt", g.object_name(g.tgt(a))}});
  j["unit"] = Json::object();
  for (int x = 0; x < g.num_objects(); ++x)
    j["unit"][g.object_name(x)] = g.arrow_name(g.unit(x));
  j["inverse"] = Json::object();
  for (int a = 0; a < g.num_arrows(); ++a)
    j["inverse"][g.arrow_name(a)] = g.arrow_name(g.inverse(a));
  j["compose"] = Json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b)
      if (g.composable(a, b))
        j["compose"].push_back(
            {g.arrow_name(a), g.arrow_name(b), g.arrow_name(g.compose(a, b))});
  return j;
}

GroupoidData load_groupoid_data(const std::string& path) {
  return groupoid_data_from_json(read_json_file(path));
}

GroupoidPtr load_groupoid(const std::string& path) {
  auto result = FiniteGroupoid::validate(load_groupoid_data(path));
  if (!result.ok())
    throw Error(path + ": groupoid axioms violated: " +
                result.violations.front().message);
  return result.groupoid;
}

StrictMorphism morphism_from_json(const Json& j, GroupoidPtr dom, GroupoidPtr cod) {
  StrictMorphism f;
  f.dom = dom;
  f.cod = cod;
  f.obj_map.assign(dom->num_objects(), -1);
  f.arrow_map.assign(dom->num_arrows(), -1);
  for (const auto& [from, to] : field(j, "f0").items()) {
    int x = dom->object_index(from);
    if (x < 0) throw ParseError("f0: unknown object \"" + from + "\"");
    int y = cod->object_index(to.get<std::string>());
    if (y < 0) throw ParseError("f0: unknown image object \"" + to.get<std::string>() + "\"");
    f.obj_map[x] = y;
  }
  for (const auto& [from, to] : field(j, "f1").items()) {
    int a = dom->arrow_index(from);
    if (a < 0) throw ParseError("f1: unknown arrow \"" + from + "\"");
    int b = cod->arrow_index(to.get<std::string>());
    if (b < 0) throw ParseError("f1: unknown image arrow \"" + to.get<std::string>() + "\"");
    f.arrow_map[a] = b;
  }
  for (int v : f.obj_map)
    if (v < 0) throw ParseError("f0 does not cover every domain object");
  for (int v : f.arrow_map)
    if (v < 0) throw ParseError("f1 does not cover every domain arrow");
  return f;
}

Json morphism_to_json(const StrictMorphism& f) {
  Json j;
  j["f0"] = Json::object();
  for (size_t x = 0; x < f.obj_map.size(); ++x)
    j["f0"][f.dom->object_name(static_cast<int>(x))] = f.cod->object_name(f.obj_map[x]);
  j["f1"] = Json::object();
  for (size_t a = 0; a < f.arrow_map.size(); ++a)
    j["f1"][f.dom->arrow_name(static_cast<int>(a))] = f.cod->arrow_name(f.arrow_map[a]);
  return j;
}

OpenCover cover_from_json(const Json& j, const FiniteGroupoid& k) {
  OpenCover u;
  for (const auto& s : field(j, "subsets")) {
    std::vector<int> subset;
    for (const auto& o : s) {
      int x = k.object_index(o.get<std::string>());
      if (x < 0) throw ParseError("cover: unknown object \"" + o.get<std::string>() + "\"");
      subset.push_back(x);
    }
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    u.subsets.push_back(std::move(subset));
  }
  return u;
}

Json cover_to_json(const OpenCover& u, const FiniteGroupoid& k) {
  Json j;
  j["subsets"] = Json::array();
  for (const auto& s : u.subsets) {
    Json subset = Json::array();
    for (int x : s) subset.push_back(k.object_name(x));
    j["subsets"].push_back(subset);
  }
  return j;
}

CocycleJson cocycle_json_from_json(const Json& j) {
  CocycleJson c;
  for (const auto& [arrow, idx] : field(j, "lambda").items())
    c.lambda.emplace_back(arrow, idx.get<int>());
  std::sort(c.lambda.begin(), c.lambda.end());
  for (const auto& e : field(j, "omega")) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError("omega entries must be [xi, eta, a, arrowId]");
    c.omega.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                       e[2].get<std::string>(), e[3].get<std::string>()});
  }
  return c;
}

Json cocycle_json_to_json(const CocycleJson& c) {
  Json j;
  j["lambda"] = Json::object();
  for (const auto& [arrow, idx] : c.lambda) j["lambda"][arrow] = idx;
  j["omega"] = Json::array();
  for (const auto& e : c.omega) j["omega"].push_back({e[0], e[1], e[2], e[3]});
  return j;
}

BandJson band_json_from_json(const Json& j) {
  BandJson b;
  for (const auto& [arrow, idx] : field(j, "band").items())
    b.values.emplace_back(arrow, idx.get<int>());
  std::sort(b.values.begin(), b.values.end());
  return b;
}

Json band_json_to_json(const BandJson& b) {
  Json j;
  j["band"] = Json::object();
  for (const auto& [arrow, idx] : b.values) j["band"][arrow] = idx;
  return j;
}

BundleJson bundle_from_json(const Json& j, const FiniteGroupoid& fiber,
                            const FiniteGroupoid& base) {
  BundleJson b;
  auto validated = FiniteGroupoid::validate(groupoid_data_from_json(field(j, "groupoid")));
  if (!validated.ok())
    throw Error("bundle groupoid axioms violated: " +
                validated.violations.front().message);
  b.groupoid = validated.groupoid;

  auto resolve = [&](const char* key, const FiniteGroupoid& side, bool objects,
                     std::vector<int>& out) {
    out.assign(objects ? b.groupoid->num_objects() : b.groupoid->num_arrows(), -1);
    for (const auto& [from, to] : field(j, key).items()) {
      int i = objects ? b.groupoid->object_index(from) : b.groupoid->arrow_index(from);
      if (i < 0) throw ParseError(std::string(key) + ": unknown id \"" + from + "\"");
      int v = objects ? side.object_index(to.get<std::string>())
                      : side.arrow_index(to.get<std::string>());
      if (v < 0)
        throw ParseError(std::string(key) + ": unknown image \"" +
                         to.get<std::string>() + "\"");
      out[i] = v;
    }
    for (int v : out)
      if (v < 0) throw ParseError(std::string(key) + " does not cover the bundle");
  };
  resolve("fiber_object", fiber, true, b.fiber_object);
  resolve("base_object", base, true, b.base_object);
  resolve("fiber_arrow", fiber, false, b.fiber_arrow);
  resolve("base_arrow", base, false, b.base_arrow);
  return b;
}

Json bundle_to_json(const BundleJson& b, const FiniteGroupoid& fiber,
                    const FiniteGroupoid& base) {
  Json j;
  j["groupoid"] = groupoid_to_json(*b.groupoid);
  j["fiber_object"] = Json::object();
  j["base_object"] = Json::object();
  for (int x = 0; x < b.groupoid->num_objects(); ++x) {
    j["fiber_object"][b.groupoid->object_name(x)] = fiber.object_name(b.fiber_object[x]);
    j["base_object"][b.groupoid->object_name(x)] = base.object_name(b.base_object[x]);
  }
  j["fiber_arrow"] = Json::object();
  j["base_arrow"] = Json::object();
  for (int a = 0; a < b.groupoid->num_arrows(); ++a) {
    j["fiber_arrow"][b.groupoid->arrow_name(a)] = fiber.arrow_name(b.fiber_arrow[a]);
    j["base_arrow"][b.groupoid->arrow_name(a)] = base.arrow_name(b.base_arrow[a]);
  }
  return j;
}

}  // namespace grpext
