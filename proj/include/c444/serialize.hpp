#pragma once

#include <json.hpp>

#include "c444/tower.hpp"

// JSON forms of reports, levels and trees of groups.
namespace c444 {

nlohmann::json to_json(Report const &r);
Report         report_from_json(nlohmann::json const &j);

nlohmann::json to_json(LevelData const &L);
LevelData      level_from_json(nlohmann::json const &j);

// structure of a tree of groups: vertex names with generating roots, and edges
struct TreeShape
{
  struct Vertex
  {
    std::string       name;
    std::vector<Root> roots;
    std::size_t       order = 0; // 0 for infinite vertex groups
    friend bool operator==(Vertex const &, Vertex const &) = default;
  };
  std::string                      name;
  std::vector<Vertex>              vertices;
  std::vector<std::pair<int, int>> edges;
  friend bool operator==(TreeShape const &, TreeShape const &) = default;
};
TreeShape      tree_shape(TreeOfGroups const &t);
nlohmann::json to_json(TreeShape const &t);
TreeShape      tree_shape_from_json(nlohmann::json const &j);

// left-to-right chain diagram in DOT
std::string to_dot(TreeShape const &t);

} // namespace c444
