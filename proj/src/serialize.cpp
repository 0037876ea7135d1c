#include "c444/serialize.hpp"

#include <fmt/format.h>

namespace c444 {

using nlohmann::json;

json to_json(Report const &r)
{
  json checks = json::array();
  for (auto const &c : r.checks) {
    json v = json::array();
    for (auto const &x : c.violations) v.push_back({{"anchor", x.anchor}, {"witness", x.witness}});
    checks.push_back({{"id", c.id}, {"checked", c.checked}, {"violations", v}, {"dropped", c.dropped}, {"notes", c.notes}});
  }
  return {{"ok", r.ok()}, {"checks", checks}};
}

Report report_from_json(json const &j)
{
  Report r;
  for (auto const &c : j.at("checks")) {
    Check &k = r.add(c.at("id").get<std::string>());
    k.checked = c.at("checked").get<std::size_t>();
    for (auto const &v : c.at("violations")) k.violations.push_back({v.at("anchor"), v.at("witness")});
    k.dropped = c.value("dropped", std::size_t{0});
    k.notes = c.value("notes", std::vector<std::string>{});
  }
  return r;
}

namespace {

json roots_json(std::vector<Root> const &rs)
{
  json a = json::array();
  for (auto const &x : rs) a.push_back(to_string(x));
  return a;
}

std::vector<Root> roots_from(json const &j)
{
  std::vector<Root> out;
  for (auto const &x : j) out.push_back(parse_root(x.get<std::string>()));
  return out;
}

json words_json(WordSet const &s)
{
  json a = json::array();
  for (auto const &w : s) a.push_back(w);
  return a;
}

} // namespace

json to_json(LevelData const &L)
{
  return {{"i", L.i}, {"C", words_json(L.C)}, {"D", words_json(L.D)}, {"generators", roots_json(L.generators)}};
}

LevelData level_from_json(json const &j)
{
  LevelData L;
  L.i = j.at("i");
  for (auto const &w : j.at("C")) L.C.insert(w.get<std::string>());
  for (auto const &w : j.at("D")) L.D.insert(w.get<std::string>());
  L.generators = roots_from(j.at("generators"));
  return L;
}

TreeShape tree_shape(TreeOfGroups const &t)
{
  TreeShape s;
  s.name = t.name();
  for (int v = 0; v < t.nv(); ++v) {
    auto const &g = *t.vertex(v);
    s.vertices.push_back({g.name(), g.roots(), g.elements() ? g.elements()->size() : 0});
  }
  s.edges = t.edges();
  return s;
}

json to_json(TreeShape const &t)
{
  json vs = json::array(), es = json::array();
  for (auto const &v : t.vertices) vs.push_back({{"name", v.name}, {"roots", roots_json(v.roots)}, {"order", v.order}});
  for (auto const &[a, b] : t.edges) es.push_back({a, b});
  return {{"name", t.name}, {"vertices", vs}, {"edges", es}};
}

TreeShape tree_shape_from_json(json const &j)
{
  TreeShape t;
  t.name = j.at("name");
  for (auto const &v : j.at("vertices")) t.vertices.push_back({v.at("name"), roots_from(v.at("roots")), v.at("order")});
  for (auto const &e : j.at("edges")) t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return t;
}

std::string to_dot(TreeShape const &t)
{
  std::string out = fmt::format("graph \"{}\" {{\n  rankdir=LR;\n  node [shape=box];\n", t.name);
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    auto const &x = t.vertices[v];
    out += fmt::format("  v{} [label=\"{}\\n|{}| = {}\"];\n", v, x.name, x.name, x.order);
  }
  for (auto const &[a, b] : t.edges) out += fmt::format("  v{} -- v{};\n", a, b);
  return out + "}\n";
}

} // namespace c444
