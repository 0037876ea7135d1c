#include "c444/report.hpp"

#include <fmt/format.h>

namespace c444 {

bool Report::ok() const
{
  for (auto const &c : checks)
    if (!c.ok()) return false;
  return true;
}

Check &Report::add(std::string id)
{
  checks.push_back({});
  checks.back().id = std::move(id);
  return checks.back();
}

void Report::merge(Report const &o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

std::string Report::text() const
{
  std::string out;
  for (auto const &c : checks) {
    out += fmt::format("{:<40} {:>8} checked  {}\n", c.id, c.checked,
                       c.ok() ? "ok" : fmt::format("{} violations", c.violations.size() + c.dropped));
    for (auto const &v : c.violations) out += fmt::format("    at {}: {}\n", v.anchor, v.witness);
    for (auto const &n : c.notes) out += fmt::format("    note: {}\n", n);
  }
  return out;
}

} // namespace c444
