#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "c444/report.hpp"
#include "c444/roots.hpp"

namespace c444 {

// (gallery type, i, j), 1-based, i < j
using BlueprintKey = std::tuple<Word, int, int>;

struct BlueprintError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// A commutator blueprint M^G_{a,b}. The built-in base returns the open interval for extreme pairs of
// rank-2 residues (crossing, order 4, two roots strictly between) and nothing otherwise.
class Blueprint
{
public:
  enum class Base { KacMoody, Empty };
  enum class Closure { Weyl, Local, None };

  Blueprint() = default;
  Blueprint(Base base, Closure closure = Closure::None) : base_(base), closure_(closure) {}

  static Blueprint kac_moody() { return Blueprint(Base::KacMoody); }
  static Blueprint empty() { return Blueprint(Base::Empty); }

  // overrides are stored as given; closure() saturates them within a radius
  void set_override(Word type, int i, int j, std::vector<Root> m);
  void close(int radius);

  std::vector<Root> query(std::string_view type, int i, int j) const;
  // roots given by position in the gallery (1-based), for callers that already have crossed(type)
  std::vector<int> query_positions(std::string_view type, int i, int j) const;

  Base    base() const { return base_; }
  Closure closure() const { return closure_; }
  int     closure_radius() const { return closure_radius_; }
  std::map<BlueprintKey, std::vector<Root>> const &seeds() const { return seeds_; }
  std::map<BlueprintKey, std::vector<Root>> const &closed() const { return closed_; }

  nlohmann::json   to_json() const;
  static Blueprint from_json(nlohmann::json const &j);
  static Blueprint load(std::string const &path);

private:
  std::vector<Root> base_query(Root const &a, Root const &b) const;

  Base                                       base_ = Base::KacMoody;
  Closure                                    closure_ = Closure::None;
  int                                        closure_radius_ = 0;
  std::map<BlueprintKey, std::vector<Root>>  seeds_;
  std::map<BlueprintKey, std::vector<Root>>  closed_;

  struct PairHash
  {
    std::size_t operator()(std::pair<Root, Root> const &p) const noexcept
    {
      return RootHash{}(p.first) * 31 ^ RootHash{}(p.second);
    }
  };
  mutable std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  mutable std::shared_ptr<std::unordered_map<std::pair<Root, Root>, std::vector<Root>, PairHash>> km_cache_ =
    std::make_shared<std::unordered_map<std::pair<Root, Root>, std::vector<Root>, PairHash>>();
};

// every reduced word of length <= radius, ShortLex order
std::vector<Word> all_galleries(int radius);

Check validate_cb1(Blueprint const &p, int radius);
Check validate_cb2(Blueprint const &p);
Check validate_weyl(Blueprint const &p, int radius, bool local);
Check validate_intervals(Blueprint const &p, int radius); // answers lie in (a,b), ordered by the gallery

// Corollary D_n at blueprint level: clause one on shallow nested pairs, clause two existence.
struct DnReport
{
  Check clause1;
  Check clause2;
};
DnReport corollary_dn_check(Blueprint const &p, int n, int radius);
// Kac-Moody plus one override on a nested pair whose witnesses all have length > n
Blueprint perturbed_dn_provider(int n, int radius);

} // namespace c444
