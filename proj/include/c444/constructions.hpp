#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "c444/amalgam.hpp"

// Rank-2 residue classes by level and the named sequences of groups built on them.
namespace c444 {

struct ConstructionError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// all rank-2 residues R with l(w_R) = i
std::vector<Residue> level_residues(int i);
bool                 in_t1(Residue const &R);
// the partner T_R of a residue outside T_{i,1}
Residue partner(Residue const &R);

struct ResidueClassification
{
  int                                     i = 0;
  std::vector<Residue>                    all;
  std::vector<Residue>                    t1;
  std::vector<std::pair<Residue, Residue>> t2; // {R, T_R} with R < T_R
};
ResidueClassification classify_level(int i);

enum class Kind { VR, OR, HR, JRt, GR, ERs, URs, XR, HRR, JRR, GRR, C, CRR };
inline constexpr Kind kAllKinds[] = {Kind::VR,  Kind::OR,  Kind::HR,  Kind::JRt, Kind::GR,  Kind::ERs, Kind::URs,
                                     Kind::XR,  Kind::HRR, Kind::JRR, Kind::GRR, Kind::C,   Kind::CRR};
std::string         kind_name(Kind k);
std::optional<Kind> parse_kind(std::string_view s);
bool                is_pair_kind(Kind k);

// abstract letters r, s, t of the vertex lists, as concrete generators
struct Labeling
{
  char r = 'r', s = 's', t = 't';
  char operator()(char abstract) const;
};

// T_{i,1} anchors carry R and a labeling of its type; pair anchors carry (R, R') with R' = T_R.
struct Anchor
{
  Residue                R;
  Labeling               lab;
  std::optional<Residue> Rp;

  std::string str() const;
};
// s: the abstract s of the labeling (0 picks the first type letter); t is the other type letter
Anchor t1_anchor(Residue const &R, char s = 0);
Anchor pair_anchor(Residue const &R);
Anchor swapped(Anchor const &a); // (R', R)

struct VertexSpec
{
  bool        is_v = false;
  Word        word;     // U_word, or V_word with word = gate * r_J
  Word        gate;     // V only
  unsigned    mask = 0; // V only
  std::string notation; // abstract form, e.g. "V w st[rs]"

  std::string name() const { return (is_v ? "V_" : "U_") + (word.empty() ? Word("1") : word); }
};

std::vector<std::string> const &vertex_notation(Kind k);
// concrete vertex words; throws ConstructionError naming the failed side condition
std::vector<VertexSpec> vertex_specs(Kind k, Anchor const &a);

// CB3-certified vertex groups shared between constructions
class GroupBank
{
public:
  explicit GroupBank(Blueprint const &p) : p_(p) {}
  explicit GroupBank(Blueprint &&) = delete; // the bank keeps a reference
  GroupPtr         get(VertexSpec const &v);
  GroupPtr         u(std::string_view w);
  GroupPtr         v(Residue const &R);
  Blueprint const &blueprint() const { return p_; }
  Report           certificates() const; // failed CB3 certificates, one check per group word

private:
  Blueprint const                &p_;
  mutable std::mutex              mu_;
  std::map<std::string, GroupPtr> groups_;
  Check                           cb3_{"CB3", 0, {}, {}, 0};
  std::map<Word, bool>            certified_;
  void                            certify(Word const &w);
};

struct NamedConstruction
{
  Kind                    kind = Kind::VR;
  Anchor                  anchor;
  std::vector<VertexSpec> specs;
  TreePtr                 tree;
};
NamedConstruction build_named(Kind k, Anchor const &a, GroupBank &bank);

std::vector<Root> generator_support(NamedConstruction const &c);

// vertex map of small into big by root containment, adjacent vertices to adjacent vertices
std::optional<std::vector<int>> find_vertex_map(TreeOfGroups const &big, TreeOfGroups const &small);

// Generator-level isomorphism of the sequence amalgam X_0 *_{K_1} X_1 * ... with target:
// root maps both ways are homomorphisms and every shared root passes through the amalgamated subgroups.
Check certify_iso(std::vector<GroupPtr> const &factors, std::vector<GroupPtr> const &amalgamated,
                  Group const &target, std::string const &claim);

// all injectivity, isomorphism and intersection statements about the given kind's anchor
Report verify_construction(Kind k, Anchor const &a, GroupBank &bank, int samples = 40);
// every statement for P in T_i (both labelings, both orders of a pair)
Report verify_level(int i, GroupBank &bank, int samples = 40);

struct NonSimpleRootData
{
  Root    delta, gamma;
  Residue R_delta, R_gamma;
};
NonSimpleRootData nonsimple_data(Residue const &R);                         // P in T_{i,1}
NonSimpleRootData nonsimple_data(Residue const &R, Residue const &Rp);      // P = {R, R'}
std::vector<Root> hat_phi(Residue const &R);                                // non-simple roots of the four residues
std::vector<Root> hat_phi(Residue const &R, Residue const &Rp);

Report lemma_suite_nonsimple(int i_max);

} // namespace c444
