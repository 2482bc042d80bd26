#include "fanlab/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fanlab/errors.hpp"

namespace fanlab {

namespace {

using nlohmann::json;

json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

Int int_from_json(const json& j, const std::string& path) {
  std::string literal;
  if (j.is_number_integer() || j.is_number_unsigned())
    literal = j.dump();
  else if (j.is_string())
    literal = j.get<std::string>();
  else
    fail(ErrorCode::SchemaError, path + ": expected an integer");
  try {
    return Int(literal);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::SchemaError, path + ": '" + literal + "' is not an integer");
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::SchemaError, path + ": missing key '" + key + "'");
  return *it;
}

void allow_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find_if(keys.begin(), keys.end(),
                     [&](const char* k) { return it.key() == k; }) == keys.end())
      fail(ErrorCode::SchemaError, path + ": unknown key '" + it.key() + "'");
}

void expect(bool cond, const std::string& path, const std::string& what) {
  if (!cond) fail(ErrorCode::SchemaError, path + ": " + what);
}

std::size_t index_from_json(const json& j, const std::string& path, std::size_t bound,
                            const char* what) {
  expect(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
         path, std::string("expected a nonnegative ") + what);
  auto v = j.get<std::uint64_t>();
  expect(v < bound, path, std::string(what) + " " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

IntVec vector_from_json(const json& j, const std::string& path, std::size_t rank) {
  expect(j.is_array(), path, "expected an array");
  expect(j.size() == rank, path,
         "expected " + std::to_string(rank) + " entries, found " + std::to_string(j.size()));
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

}  // namespace

ParsedDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  expect(root.is_object(), "$", "expected an object");
  allow_keys(root, "$",
             {"format_version", "mode", "lattice_rank", "rays", "maximal_cones",
              "color_table", "datum", "valuation_halfspaces"});

  const json& version = member(root, "$", "format_version");
  expect(version.is_number_integer() && version.get<std::int64_t>() == 1,
         "$.format_version", "expected 1");

  const json& mode_j = member(root, "$", "mode");
  expect(mode_j.is_string(), "$.mode", "expected a string");
  ParsedDocument doc;
  std::string mode = mode_j.get<std::string>();
  if (mode == "toric")
    doc.mode = DocMode::Toric;
  else if (mode == "horospherical")
    doc.mode = DocMode::Horospherical;
  else if (mode == "spherical-validate-only")
    doc.mode = DocMode::SphericalValidateOnly;
  else
    fail(ErrorCode::SchemaError, "$.mode: unknown mode '" + mode + "'");

  ColoredFan& fan = doc.embedding.fan;
  fan.lattice_rank = index_from_json(member(root, "$", "lattice_rank"), "$.lattice_rank",
                                     SIZE_MAX, "rank");

  const json& rays = member(root, "$", "rays");
  expect(rays.is_array(), "$.rays", "expected an array");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::string path = "$.rays[" + std::to_string(i) + "]";
    IntVec v = vector_from_json(rays[i], path, fan.lattice_rank);
    auto dup = std::find(fan.rays.begin(), fan.rays.end(), v);
    expect(dup == fan.rays.end(), path,
           "duplicate of rays[" + std::to_string(dup - fan.rays.begin()) + "]");
    fan.rays.push_back(std::move(v));
  }

  const json& colors = member(root, "$", "color_table");
  expect(colors.is_object(), "$.color_table", "expected an object");
  expect(doc.mode != DocMode::Toric || colors.empty(), "$.color_table",
         "must be empty in toric mode");
  for (auto it = colors.begin(); it != colors.end(); ++it)
    fan.color_table[it.key()] =
        vector_from_json(it.value(), "$.color_table." + it.key(), fan.lattice_rank);

  const json& cones = member(root, "$", "maximal_cones");
  expect(cones.is_array(), "$.maximal_cones", "expected an array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    std::string path = "$.maximal_cones[" + std::to_string(i) + "]";
    const json& c = cones[i];
    expect(c.is_object(), path, "expected an object");
    allow_keys(c, path, {"rays", "colors"});
    ColoredFan::MaxCone mc;
    const json& idx = member(c, path, "rays");
    expect(idx.is_array(), path + ".rays", "expected an array");
    for (std::size_t j = 0; j < idx.size(); ++j)
      mc.ray_indices.push_back(index_from_json(
          idx[j], path + ".rays[" + std::to_string(j) + "]", fan.rays.size(), "ray index"));
    if (auto it = c.find("colors"); it != c.end()) {
      expect(it->is_array(), path + ".colors", "expected an array");
      for (std::size_t j = 0; j < it->size(); ++j) {
        std::string cpath = path + ".colors[" + std::to_string(j) + "]";
        expect((*it)[j].is_string(), cpath, "expected a string");
        std::string label = (*it)[j].get<std::string>();
        expect(fan.color_table.count(label) == 1, cpath,
               "label '" + label + "' not in color_table");
        mc.colors.insert(std::move(label));
      }
    }
    fan.maximal_cones.push_back(std::move(mc));
  }

  if (auto it = root.find("valuation_halfspaces"); it != root.end()) {
    expect(doc.mode == DocMode::SphericalValidateOnly, "$.valuation_halfspaces",
           "only allowed in spherical-validate-only mode");
    expect(it->is_array(), "$.valuation_halfspaces", "expected an array");
    fan.valuation_mode = ValuationMode::HalfspaceList;
    for (std::size_t i = 0; i < it->size(); ++i)
      fan.valuation_halfspaces.push_back(vector_from_json(
          (*it)[i], "$.valuation_halfspaces[" + std::to_string(i) + "]", fan.lattice_rank));
  }

  if (doc.mode != DocMode::Horospherical) {
    expect(root.find("datum") == root.end(), "$.datum",
           "only allowed in horospherical mode");
    if (doc.mode == DocMode::Toric) doc.embedding.datum = toric_datum(fan.lattice_rank);
    return doc;
  }

  const json& datum = member(root, "$", "datum");
  expect(datum.is_object(), "$.datum", "expected an object");
  allow_keys(datum, "$.datum", {"diagram", "parabolic", "m_basis"});

  const json& diagram = member(datum, "$.datum", "diagram");
  expect(diagram.is_array(), "$.datum.diagram", "expected an array");
  std::vector<DynkinComponent> comps;
  for (std::size_t i = 0; i < diagram.size(); ++i) {
    std::string path = "$.datum.diagram[" + std::to_string(i) + "]";
    const json& comp = diagram[i];
    expect(comp.is_object(), path, "expected an object");
    allow_keys(comp, path, {"type", "rank"});
    const json& type = member(comp, path, "type");
    expect(type.is_string() && type.get<std::string>().size() == 1, path + ".type",
           "expected a one-letter string");
    std::size_t rank =
        index_from_json(member(comp, path, "rank"), path + ".rank", SIZE_MAX, "rank");
    comps.push_back({type.get<std::string>()[0], rank});
  }
  try {
    doc.embedding.datum.diagram = DynkinDiagram(std::move(comps));
  } catch (const Error& e) {
    fail(ErrorCode::SchemaError, std::string("$.datum.diagram: ") + e.what());
  }
  const DynkinDiagram& d = doc.embedding.datum.diagram;

  const json& parabolic = member(datum, "$.datum", "parabolic");
  expect(parabolic.is_array(), "$.datum.parabolic", "expected an array");
  for (std::size_t i = 0; i < parabolic.size(); ++i) {
    std::string path = "$.datum.parabolic[" + std::to_string(i) + "]";
    expect(parabolic[i].is_string(), path, "expected a string");
    std::string node = parabolic[i].get<std::string>();
    expect(d.has_node(node), path, "'" + node + "' is not a node of the diagram");
    doc.embedding.datum.parabolic.insert(std::move(node));
  }

  const json& m_basis = member(datum, "$.datum", "m_basis");
  expect(m_basis.is_array(), "$.datum.m_basis", "expected an array");
  expect(m_basis.size() == fan.lattice_rank, "$.datum.m_basis",
         "expected " + std::to_string(fan.lattice_rank) + " characters");
  for (std::size_t i = 0; i < m_basis.size(); ++i) {
    std::string path = "$.datum.m_basis[" + std::to_string(i) + "]";
    const json& w = m_basis[i];
    expect(w.is_object(), path, "expected an object");
    Weight weight;
    for (auto it = w.begin(); it != w.end(); ++it) {
      expect(d.has_node(it.key()), path + "." + it.key(),
             "'" + it.key() + "' is not a node of the diagram");
      weight[it.key()] = int_from_json(it.value(), path + "." + it.key());
    }
    doc.embedding.datum.m_basis.push_back(std::move(weight));
  }
  return doc;
}

std::string serialize_document(const ParsedDocument& doc) {
  const ColoredFan& fan = doc.embedding.fan;
  json root;
  root["format_version"] = 1;
  root["mode"] = doc.mode == DocMode::Toric            ? "toric"
                 : doc.mode == DocMode::Horospherical  ? "horospherical"
                                                       : "spherical-validate-only";
  root["lattice_rank"] = fan.lattice_rank;

  json rays = json::array();
  for (const IntVec& v : fan.rays) {
    json row = json::array();
    for (const Int& x : v) row.push_back(int_to_json(x));
    rays.push_back(std::move(row));
  }
  root["rays"] = std::move(rays);

  json colors = json::object();
  for (const auto& [label, rho] : fan.color_table) {
    json row = json::array();
    for (const Int& x : rho) row.push_back(int_to_json(x));
    colors[label] = std::move(row);
  }
  root["color_table"] = std::move(colors);

  json cones = json::array();
  for (const auto& mc : fan.maximal_cones) {
    json c;
    c["rays"] = mc.ray_indices;
    c["colors"] = mc.colors;
    cones.push_back(std::move(c));
  }
  root["maximal_cones"] = std::move(cones);

  if (fan.valuation_mode == ValuationMode::HalfspaceList) {
    json hs = json::array();
    for (const IntVec& v : fan.valuation_halfspaces) {
      json row = json::array();
      for (const Int& x : v) row.push_back(int_to_json(x));
      hs.push_back(std::move(row));
    }
    root["valuation_halfspaces"] = std::move(hs);
  }

  if (doc.mode == DocMode::Horospherical) {
    const HorosphericalDatum& datum = doc.embedding.datum;
    json dj;
    json comps = json::array();
    for (const DynkinComponent& c : datum.diagram.components())
      comps.push_back({{"rank", c.rank}, {"type", std::string(1, c.type)}});
    dj["diagram"] = std::move(comps);
    dj["parabolic"] = datum.parabolic;
    json basis = json::array();
    for (const Weight& w : datum.m_basis) {
      json wj = json::object();
      for (const auto& [node, value] : w) wj[node] = int_to_json(value);
      basis.push_back(std::move(wj));
    }
    dj["m_basis"] = std::move(basis);
    root["datum"] = std::move(dj);
  }

  return root.dump(2) + "\n";
}

namespace {

IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ParsedDocument toric_doc(std::size_t rank, std::vector<IntVec> rays,
                         std::vector<std::vector<std::size_t>> cones) {
  ParsedDocument doc;
  doc.mode = DocMode::Toric;
  doc.embedding.datum = toric_datum(rank);
  doc.embedding.fan.lattice_rank = rank;
  doc.embedding.fan.rays = std::move(rays);
  for (auto& c : cones) doc.embedding.fan.maximal_cones.push_back({std::move(c), {}});
  return doc;
}

ParsedDocument hirzebruch_doc(long a) {
  if (a < 0) fail(ErrorCode::BadParams, "hirzebruch requires a >= 0");
  return toric_doc(2, {vec({1, 0}), vec({0, 1}), {Int(-1), Int(a)}, vec({0, -1})},
                   {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

ParsedDocument product_doc(const ParsedDocument& a, const ParsedDocument& b) {
  const ColoredFan& fa = a.embedding.fan;
  const ColoredFan& fb = b.embedding.fan;
  ParsedDocument doc;
  doc.mode = DocMode::Toric;
  doc.embedding.datum = toric_datum(fa.lattice_rank + fb.lattice_rank);
  ColoredFan& fan = doc.embedding.fan;
  fan.lattice_rank = fa.lattice_rank + fb.lattice_rank;
  for (const IntVec& v : fa.rays) {
    IntVec w = v;
    w.resize(fan.lattice_rank, Int(0));
    fan.rays.push_back(std::move(w));
  }
  for (const IntVec& v : fb.rays) {
    IntVec w(fa.lattice_rank, Int(0));
    w.insert(w.end(), v.begin(), v.end());
    fan.rays.push_back(std::move(w));
  }
  for (const auto& ca : fa.maximal_cones)
    for (const auto& cb : fb.maximal_cones) {
      std::vector<std::size_t> idx = ca.ray_indices;
      for (std::size_t i : cb.ray_indices) idx.push_back(i + fa.rays.size());
      fan.maximal_cones.push_back({std::move(idx), {}});
    }
  return doc;
}

// The rank-one family under SL_{m+1}: pairs of incident subspaces, with the
// open orbit cut out by the character difference of the two middle
// fundamental weights.
ParsedDocument incidence_doc(long m, long k) {
  if (m < 3 || k < 2 || k > m - 1)
    fail(ErrorCode::BadParams, "incidence requires m >= 3 and 2 <= k <= m-1");
  auto node = [](long i) { return "a" + std::to_string(i); };
  ParsedDocument doc;
  doc.mode = DocMode::Horospherical;
  HorosphericalEmbedding& emb = doc.embedding;
  emb.datum.diagram = DynkinDiagram({{'A', static_cast<std::size_t>(m)}});
  for (long i = 1; i <= m; ++i)
    if (i < k - 1 || i > k + 1) emb.datum.parabolic.insert(node(i));
  emb.datum.m_basis = {{{node(k), Int(1)}, {node(k + 1), Int(-1)}}};
  emb.fan.lattice_rank = 1;
  emb.fan.rays = {vec({1}), vec({-1})};
  emb.fan.color_table = {{node(k - 1), vec({0})}, {node(k), vec({1})},
                         {node(k + 1), vec({-1})}};
  emb.fan.maximal_cones = {{{0}, {node(k)}}, {{1}, {node(k + 1)}}};
  return doc;
}

long take_param(std::map<std::string, long>& params, const std::string& name,
                const char* key) {
  auto it = params.find(key);
  if (it == params.end())
    fail(ErrorCode::BadParams, name + " requires parameter '" + key + "'");
  long v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

ParsedDocument catalog_document(const std::string& name,
                                const std::map<std::string, long>& params_in) {
  std::map<std::string, long> params = params_in;
  ParsedDocument doc;
  if (name == "p2") {
    doc = toric_doc(2, {vec({1, 0}), vec({0, 1}), vec({-1, -1})}, {{0, 1}, {0, 2}, {1, 2}});
  } else if (name == "p1xp1") {
    doc = hirzebruch_doc(0);
  } else if (name == "p1p1p1") {
    doc = product_doc(hirzebruch_doc(0), toric_doc(1, {vec({1}), vec({-1})}, {{0}, {1}}));
  } else if (name == "p112") {
    doc = toric_doc(2, {vec({1, 0}), vec({0, 1}), vec({-1, -2})}, {{0, 1}, {0, 2}, {1, 2}});
  } else if (name == "f1") {
    doc = hirzebruch_doc(1);
  } else if (name == "f1xp1") {
    doc = product_doc(hirzebruch_doc(1), toric_doc(1, {vec({1}), vec({-1})}, {{0}, {1}}));
  } else if (name == "hirzebruch") {
    doc = hirzebruch_doc(take_param(params, name, "a"));
  } else if (name == "incidence" || name == "incidence-blowup") {
    long m = take_param(params, name, "m");
    long k = take_param(params, name, "k");
    doc = incidence_doc(m, k);
    if (name == "incidence-blowup") doc.embedding.fan.maximal_cones[0].colors.clear();
  } else {
    fail(ErrorCode::UnknownName, "no catalog entry named '" + name + "'");
  }
  if (!params.empty())
    fail(ErrorCode::BadParams,
         name + " does not take a parameter '" + params.begin()->first + "'");
  return doc;
}

std::vector<std::string> catalog_names() {
  return {"p2",   "p1xp1",        "p1p1p1",        "p112",
          "f1",   "f1xp1",        "hirzebruch(a)", "incidence(m,k)",
          "incidence-blowup(m,k)"};
}

}  // namespace fanlab
