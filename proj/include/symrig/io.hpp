#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "symrig/genframe.hpp"
#include "symrig/hinge.hpp"
#include "symrig/matroid.hpp"
#include "symrig/rigidity.hpp"

namespace symrig {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Model { body_bar, body_hinge };

inline const char* model_name(Model m) { return m == Model::body_bar ? "body-bar" : "body-hinge"; }

/// A parsed input document.
struct Problem {
  Model model = Model::body_bar;
  PointRepresentation rep = PointRepresentation::trivial(3);
  GainGraph graph;
  std::optional<BarConfiguration> bars;      // explicit body-bar configuration
  std::optional<HingeConfiguration> hinges;  // explicit body-hinge configuration
};

namespace detail {

// Accessors that report the JSON path of the offending field.
struct Cursor {
  const Json& node;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("field " + (path.empty() ? std::string("/") : path) + ": " + what);
  }

  Cursor at(const std::string& key) const {
    if (!node.is_object()) fail("expected an object");
    auto it = node.find(key);
    if (it == node.end()) fail("missing field '" + key + "'");
    return Cursor{*it, path + "/" + key};
  }

  std::optional<Cursor> find(const std::string& key) const {
    if (!node.is_object()) fail("expected an object");
    auto it = node.find(key);
    if (it == node.end() || it->is_null()) return std::nullopt;
    return Cursor{*it, path + "/" + key};
  }

  Cursor at(std::size_t i) const { return Cursor{node.at(i), path + "/" + std::to_string(i)}; }

  std::size_t size() const {
    if (!node.is_array()) fail("expected an array");
    return node.size();
  }

  std::string str() const {
    if (!node.is_string()) fail("expected a string");
    return node.get<std::string>();
  }

  long integer() const {
    if (!node.is_number_integer()) fail("expected an integer");
    return node.get<long>();
  }

  bool boolean() const {
    if (!node.is_boolean()) fail("expected a boolean");
    return node.get<bool>();
  }

  Rational rational() const {
    if (node.is_number_integer()) return Rational(node.get<long>());
    if (!node.is_string()) fail("expected a rational string \"p/q\" or an integer");
    try {
      return parse_rational(node.get<std::string>());
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  RationalVector vector() const {
    RationalVector v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(at(i).rational());
    return v;
  }
};

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline RationalVector homogeneous_point(const Cursor& c, std::size_t d) {
  auto v = c.vector();
  if (v.size() == d) return homogeneous(v);
  if (v.size() != d + 1) c.fail("expected " + std::to_string(d) + " or " + std::to_string(d + 1) + " coordinates");
  if (sgn(v.back()) == 0) c.fail("point at infinity is not allowed");
  // scaled so the last coordinate is 1
  const Rational w = v.back();
  for (auto& x : v) x /= w;
  return v;
}

inline GroupElement parse_element(const Cursor& c, const AbelianGroup& group) {
  std::vector<int> comps;
  for (std::size_t i = 0; i < c.size(); ++i) comps.push_back(static_cast<int>(c.at(i).integer()));
  try {
    return group.make(comps);
  } catch (const InputError& e) {
    c.fail(e.what());
  }
}

}  // namespace detail

/// Parses the group and representation fragment. Without a representation only the trivial
/// group is accepted and `default_d` is used.
inline PointRepresentation parse_representation(const Json& doc, std::size_t default_d) {
  detail::Cursor root{doc, ""};
  std::vector<int> orders;
  if (auto g = root.find("group")) {
    auto o = g->at("orders");
    for (std::size_t i = 0; i < o.size(); ++i) {
      const long k = o.at(i).integer();
      if (k < 1) o.at(i).fail("cyclic factor order must be positive");
      orders.push_back(static_cast<int>(k));
    }
  }
  AbelianGroup group(orders);
  auto r = root.find("representation");
  if (!r) {
    if (group.order() != 1) root.fail("missing field 'representation' for a nontrivial group");
    return PointRepresentation(group, default_d, {});
  }
  const long d = r->at("d").integer();
  if (d < 1) r->at("d").fail("dimension must be positive");
  auto gens = r->at("generators");
  std::vector<RationalMatrix> mats;
  for (std::size_t t = 0; t < gens.size(); ++t) {
    auto rows = gens.at(t);
    if (rows.size() != static_cast<std::size_t>(d)) rows.fail("expected " + std::to_string(d) + " rows");
    std::vector<RationalVector> vs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      vs.push_back(rows.at(i).vector());
      if (vs.back().size() != static_cast<std::size_t>(d)) rows.at(i).fail("expected " + std::to_string(d) + " entries");
    }
    mats.push_back(RationalMatrix::from_rows(vs));
  }
  try {
    return PointRepresentation(group, static_cast<std::size_t>(d), mats);
  } catch (const InputError& e) {
    r->fail(e.what());
  }
}

inline GainGraph parse_gain_graph(const Json& node, const AbelianGroup& group) {
  detail::Cursor g{node, "/graph"};
  std::vector<std::string> names;
  auto vs = g.at("vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) names.push_back(vs.at(i).str());
  std::vector<GainEdge> edges;
  auto es = g.at("edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto c = es.at(i);
    GainEdge e;
    e.id = static_cast<int>(c.at("id").integer());
    auto endpoint = [&](const char* key) {
      auto f = c.at(key);
      const auto name = f.str();
      for (std::size_t v = 0; v < names.size(); ++v)
        if (names[v] == name) return v;
      f.fail("unknown vertex '" + name + "'");
    };
    e.tail = endpoint("tail");
    e.head = endpoint("head");
    if (auto gain = c.find("gain"))
      e.gain = detail::parse_element(*gain, group);
    else
      e.gain = group.identity();
    if (auto l = c.find("inL")) e.in_loop_set = l->boolean();
    edges.push_back(std::move(e));
  }
  try {
    return GainGraph(group, std::move(names), std::move(edges));
  } catch (const InputError& e) {
    g.fail(e.what());
  }
}

/// Explicit bars: one entry per edge id, either points "p","q" or an "extensor".
inline BarConfiguration parse_bars(const detail::Cursor& c, const GainGraph& h, std::size_t d) {
  BarConfiguration b;
  b.d = d;
  std::vector<std::optional<Bar>> slots(h.num_edges());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto entry = c.at(i);
    const int id = static_cast<int>(entry.at("edge").integer());
    std::size_t pos;
    try {
      pos = h.edge_position(id);
    } catch (const InputError& e) {
      entry.at("edge").fail(e.what());
    }
    if (slots[pos]) entry.fail("duplicate bar for edge " + std::to_string(id));
    Bar bar;
    if (auto p = entry.find("p")) {
      auto pp = detail::homogeneous_point(*p, d);
      auto qq = detail::homogeneous_point(entry.at("q"), d);
      bar.extensor = wedge(pp, qq, d);
      bar.points = std::make_pair(std::move(pp), std::move(qq));
    } else {
      auto x = entry.at("extensor");
      auto coords = x.vector();
      if (coords.size() != binomial(d + 1, 2)) x.fail("expected " + std::to_string(binomial(d + 1, 2)) + " coordinates");
      bar.extensor = RationalExtensor(d, 2, std::move(coords));
    }
    if (bar.extensor.is_zero()) entry.fail("degenerate bar (zero extensor)");
    slots[pos] = std::move(bar);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) c.fail("missing bar for edge " + std::to_string(h.edges()[i].id));
    b.bars.push_back(std::move(*slots[i]));
  }
  return b;
}

inline HingeConfiguration parse_hinges(const detail::Cursor& c, const GainGraph& h, std::size_t d) {
  HingeConfiguration cfg;
  cfg.d = d;
  std::vector<std::optional<Hinge>> slots(h.num_edges());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto entry = c.at(i);
    const int id = static_cast<int>(entry.at("edge").integer());
    std::size_t pos;
    try {
      pos = h.edge_position(id);
    } catch (const InputError& e) {
      entry.at("edge").fail(e.what());
    }
    if (slots[pos]) entry.fail("duplicate hinge for edge " + std::to_string(id));
    Hinge hinge;
    auto pts = entry.at("points");
    if (pts.size() != d - 1) pts.fail("a hinge needs " + std::to_string(d - 1) + " points");
    for (std::size_t k = 0; k < pts.size(); ++k) hinge.points.push_back(detail::homogeneous_point(pts.at(k), d));
    hinge.extensor = wedge(hinge.points, d);
    if (hinge.extensor.is_zero()) entry.fail("degenerate hinge (dependent points)");
    slots[pos] = std::move(hinge);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) c.fail("missing hinge for edge " + std::to_string(h.edges()[i].id));
    cfg.hinges.push_back(std::move(*slots[i]));
  }
  return cfg;
}

inline Problem parse_problem(const Json& doc, std::optional<std::size_t> dim = std::nullopt) {
  detail::Cursor root{doc, ""};
  if (!doc.is_object()) root.fail("expected an object");
  if (auto s = root.find("schema"))
    if (s->integer() != kSchemaVersion) s->fail("unsupported schema version " + std::to_string(s->integer()));
  Problem p;
  if (auto m = root.find("model")) {
    const auto name = m->str();
    if (name == "body-bar")
      p.model = Model::body_bar;
    else if (name == "body-hinge")
      p.model = Model::body_hinge;
    else
      m->fail("unknown model '" + name + "'");
  }
  std::size_t default_d = dim.value_or(3);
  if (auto d = root.find("d")) {
    const long v = d->integer();
    if (v < 1) d->fail("dimension must be positive");
    if (dim && *dim != static_cast<std::size_t>(v)) d->fail("conflicts with --dim");
    default_d = static_cast<std::size_t>(v);
  }
  p.rep = parse_representation(doc, default_d);
  if (dim && p.rep.d() != *dim) root.at("representation").fail("dimension conflicts with --dim");
  p.graph = parse_gain_graph(root.at("graph").node, p.rep.group());
  if (auto cfg = root.find("configuration")) {
    if (auto bars = cfg->find("bars")) {
      if (p.model != Model::body_bar) bars->fail("bars given for a body-hinge model");
      p.bars = parse_bars(*bars, p.graph, p.rep.d());
    }
    if (auto hinges = cfg->find("hinges")) {
      if (p.model != Model::body_hinge) hinges->fail("hinges given for a body-bar model");
      p.hinges = parse_hinges(*hinges, p.graph, p.rep.d());
    }
  }
  return p;
}

/// Parses text; syntax errors carry line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    std::string msg = e.what();
    if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline Problem load_problem(const std::string& path, std::optional<std::size_t> dim = std::nullopt) {
  return parse_problem(read_json_file(path), dim);
}

// ---- serialization ----

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const GroupElement& g) { return Json(g.components); }

inline Json representation_json(const PointRepresentation& rep) {
  Json gens = Json::array();
  for (const auto& m : rep.generators()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      RationalVector row(m.row(i).begin(), m.row(i).end());
      rows.push_back(to_json(row));
    }
    gens.push_back(std::move(rows));
  }
  return Json{{"d", rep.d()}, {"generators", std::move(gens)}};
}

inline Json graph_json(const GainGraph& h) {
  Json edges = Json::array();
  for (const auto& e : h.edges()) {
    Json j{{"id", e.id}, {"tail", h.vertices()[e.tail]}, {"head", h.vertices()[e.head]}, {"gain", to_json(e.gain)}};
    if (e.in_loop_set) j["inL"] = true;
    edges.push_back(std::move(j));
  }
  return Json{{"vertices", h.vertices()}, {"edges", std::move(edges)}};
}

inline Json bars_json(const GainGraph& h, const BarConfiguration& b) {
  Json out = Json::array();
  for (std::size_t i = 0; i < b.bars.size(); ++i) {
    const auto& bar = b.bars[i];
    Json j{{"edge", h.edges()[i].id}};
    if (bar.points) {
      j["p"] = to_json(bar.points->first);
      j["q"] = to_json(bar.points->second);
    } else {
      j["extensor"] = to_json(bar.extensor.coords);
    }
    out.push_back(std::move(j));
  }
  return out;
}

inline Json hinges_json(const GainGraph& h, const HingeConfiguration& cfg) {
  Json out = Json::array();
  for (std::size_t i = 0; i < cfg.hinges.size(); ++i) {
    Json pts = Json::array();
    for (const auto& p : cfg.hinges[i].points) pts.push_back(to_json(p));
    out.push_back(Json{{"edge", h.edges()[i].id}, {"points", std::move(pts)}});
  }
  return out;
}

/// Full input document; parse_problem(problem_json(p)) reproduces p.
inline Json problem_json(const Problem& p) {
  Json doc{{"schema", kSchemaVersion},
           {"model", model_name(p.model)},
           {"group", Json{{"orders", p.rep.group().orders()}}},
           {"representation", representation_json(p.rep)},
           {"graph", graph_json(p.graph)}};
  if (p.bars) doc["configuration"] = Json{{"bars", bars_json(p.graph, *p.bars)}};
  if (p.hinges) doc["configuration"] = Json{{"hinges", hinges_json(p.graph, *p.hinges)}};
  return doc;
}

inline Json irrep_report_json(const IrrepReport& r) {
  return Json{{"irrep", to_json(r.irrep)}, {"rank", r.rank},   {"trivial", r.trivial},
              {"flex", r.flex},            {"rigid", r.rigid}, {"exact", r.exact}};
}

inline const char* count_relation(std::size_t edges, long target) {
  const long e = static_cast<long>(edges);
  return e > target ? "over" : e == target ? "exact" : "under";
}

/// Edge ids of the certificate, keyed by pair label.
inline Json decomposition_json(const CombinatorialVerdict& v, std::size_t d) {
  LexIndex pairs(d + 1, 2);
  Json dec = Json::object();
  for (std::size_t p = 0; p < v.certificate.parts.size(); ++p) {
    if (v.certificate.parts[p].empty()) continue;
    Json ids = Json::array();
    for (auto e : v.certificate.parts[p]) ids.push_back(v.reduced.edges()[e].id);
    dec[pairs.label(p)] = std::move(ids);
  }
  return dec;
}

inline Json violation_json(const CountingViolation& c, const GainGraph& reduced, std::size_t d) {
  LexIndex pairs(d + 1, 2);
  Json ids = Json::array();
  for (auto e : c.edges) ids.push_back(reduced.edges()[e].id);
  Json alpha = Json::object();
  for (std::size_t p = 0; p < c.alpha.size(); ++p) alpha[pairs.label(p)] = c.alpha[p];
  return Json{{"kind", "counting"}, {"edges", std::move(ids)}, {"size", c.size}, {"bound", c.bound}, {"alpha", std::move(alpha)}};
}

/// Certificate for one irrep: the decomposition always, plus a violation when not rigid.
inline Json certificate_json(const CombinatorialVerdict& v, std::size_t d, const std::optional<CountingViolation>& counting) {
  Json j{{"irrep", to_json(v.irrep)},
         {"target", v.target},
         {"rank", v.rank},
         {"rigid", v.rigid},
         {"edges", v.edge_count},
         {"count", count_relation(v.edge_count, v.target)},
         {"decomposition", decomposition_json(v, d)}};
  if (!v.rigid) {
    Json viol{{"kind", "rank"}, {"target", v.target}, {"max_rank", v.rank}, {"deficiency", v.deficiency}};
    if (counting) viol["counting"] = violation_json(*counting, v.reduced, d);
    j["violation"] = std::move(viol);
  }
  return j;
}

}  // namespace symrig
