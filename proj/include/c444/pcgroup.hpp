#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "c444/blueprint.hpp"

// U_w as a power-commutator presentation over F_2. Elements are bitmasks: bit i is the exponent of u_{i+1},
// generators ordered along the ShortLex gallery of w. The relation for i < j is [u_i, u_j] = T_ij with
// [a,b] = a^-1 b^-1 a b, which collects as u_j u_i = u_i T_ij u_j.
namespace c444 {

using PcElem = std::uint32_t;

struct CollectionError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

enum class Certificate { Unchecked, Consistent, Inconsistent };

struct PcGroup
{
  Word              word; // base gallery
  std::vector<Root> gens;
  std::vector<PcElem> tails; // tails[j * n + i], i < j (0-based)
  Certificate       cert = Certificate::Unchecked;

  int    n() const { return static_cast<int>(gens.size()); }
  PcElem tail(int i, int j) const { return tails[static_cast<std::size_t>(j * n() + i)]; }
  void   set_tail(int i, int j, PcElem t) { tails[static_cast<std::size_t>(j * n() + i)] = t; cert = Certificate::Unchecked; }
  std::size_t order_bound() const { return std::size_t{1} << n(); }

  static PcElem gen(int i) { return PcElem{1} << i; }
  std::optional<int> index_of(Root const &a) const;

  PcElem multiply(PcElem x, PcElem y) const;
  PcElem inverse(PcElem x) const;
  PcElem commutator(PcElem x, PcElem y) const; // x^-1 y^-1 x y
  // product of generators in the given order
  PcElem word_value(std::vector<int> const &letters) const;
  std::string str(PcElem x) const; // "u1 u3" or "1"

private:
  PcElem collect(PcElem c, std::vector<int> &stack) const;
};

int  ugroup_max();
void set_ugroup_max(int n); // at most 20

PcGroup build_ugroup(Blueprint const &p, std::string_view w);

struct Cb3Certificate
{
  Report      report; // overlaps, other galleries, brute force (n <= brute_max)
  bool        consistent() const { return report.ok(); }
};
Cb3Certificate certify_cb3(PcGroup &g, Blueprint const &p, int brute_max = 8);

struct Subgroup
{
  Word                word; // ambient group's base gallery
  std::vector<PcElem> members; // sorted
  std::vector<Root>   generator_roots;

  std::size_t size() const { return members.size(); }
  bool        contains(PcElem x) const;
  friend bool operator==(Subgroup const &a, Subgroup const &b) { return a.members == b.members; }
};

Subgroup closure(PcGroup const &g, std::vector<PcElem> const &gens);
Subgroup root_subgroup(PcGroup const &g, std::vector<Root> const &roots); // <u_a | a in roots>, roots in Phi(w)
Subgroup u_subgroup(PcGroup const &g, std::string_view v);               // U_v for v below w
Subgroup intersect(Subgroup const &a, Subgroup const &b);

struct EmbedCertificate
{
  Check            check;
  std::vector<int> map; // small generator index -> big generator index
  std::size_t      image_order = 0;
};
EmbedCertificate embed(PcGroup const &small, PcGroup const &big);

// V = <U_{w_R s} u U_{w_R t}> inside g = U_{w_R r_{s,t}}
struct VSubgroup
{
  Subgroup v;
  Check    check; // index 2, no single non-simple residue generator inside
};
VSubgroup v_subgroup(PcGroup const &g, Residue const &R);

// Key lemma parts a and b for w with l(ws) = l(w)+1 = l(wt)
Check key_lemma(Blueprint const &p, std::string_view w, char s, char t, char part);
Check key_lemma_sweep(Blueprint const &p, int max_len, char part);

} // namespace c444
