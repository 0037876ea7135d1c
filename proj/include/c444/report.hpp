#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace c444 {

struct Violation
{
  std::string anchor;  // instance the check ran on
  std::string witness; // what went wrong
};

struct Check
{
  std::string            id; // lemma / axiom id
  std::size_t            checked = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes; // logged, not failures

  bool ok() const { return violations.empty(); }
  void fail(std::string anchor, std::string witness)
  {
    if (violations.size() < 200) violations.push_back({std::move(anchor), std::move(witness)});
    else dropped++;
  }
  std::size_t dropped = 0;
};

struct Report
{
  std::deque<Check> checks; // add() references stay valid

  bool   ok() const;
  Check &add(std::string id);
  void   merge(Report const &o);
  std::string text() const;
};

} // namespace c444
