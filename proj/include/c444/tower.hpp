#pragma once

#include <set>
#include <string>
#include <vector>

#include "c444/constructions.hpp"

// Prefix cones C(w), the increasing sets C_i and D_i, and the groups G_i kept as presentations.
namespace c444 {

struct ShortLexLess
{
  bool operator()(Word const &a, Word const &b) const { return shortlex_less(a, b); }
};
using WordSet = std::set<Word, ShortLexLess>;

WordSet prefix_set(std::string_view w);                      // C(w) = {w' : w' < w in the prefix order}
WordSet residue_cone(Residue const &R);                      // C(R)
WordSet pair_cone(Residue const &R, Residue const &Rp);      // C({R, R'})
WordSet cprime(Residue const &R);                            // C'(P), P in T_{i,1}
WordSet cprime(Residue const &R, Residue const &Rp);

int  tower_max();
void set_tower_max(int i); // at most 6

struct LevelData
{
  int               i = 0;
  WordSet           C, D;
  std::vector<Root> generators; // alpha with C_i not inside alpha
};
LevelData const &level(int i); // memoized

// P in T_i: a residue, or a pair {R, T_R}
struct TowerPiece
{
  Residue                R;
  std::optional<Residue> Rp;
  std::string            str() const;
};
std::vector<TowerPiece> pieces(int i);
WordSet                 piece_cone(TowerPiece const &P);
NonSimpleRootData       piece_roots(TowerPiece const &P);

// defining relations of a finite vertex group on its root generators: [x_a, x_b] = word, and x_a^2 = word when a == b
struct Relation
{
  std::string       source; // vertex group name, e.g. "U_rst"
  Root              a, b;
  std::vector<Root> rhs;
  friend bool operator==(Relation const &, Relation const &) = default;
};
std::vector<Relation> vertex_relations(Group const &g);
// shortest word over the root generators for each element, shortlex in the order of g.roots()
std::vector<std::vector<Root>> canonical_words(Group const &g); // parallel to *g.elements()

struct GiPresentation
{
  int                                        i = 0;
  std::vector<Root>                          generators;
  std::map<std::string, std::vector<Relation>> relations; // by source group
  std::vector<GroupPtr>                      groups;    // U_w for w in C_i, V_w' for w' in D_i
  std::size_t                                relation_count() const;
};
// refuses groups whose CB3 certificate fails
GiPresentation build_gi(int i, GroupBank &bank);

Check check_hp_to_gi(TowerPiece const &P, LevelData const &L, GiPresentation const *gi, GroupBank *bank);

// B_P = G_i *_{H_P} G_P, kept as generator sets
struct BpData
{
  TowerPiece        P;
  std::vector<Root> edge;      // generators of H_P
  std::vector<Root> periphery; // generators of G_P
};
struct StarPlan
{
  int                 i = 0;
  std::vector<Root>   center; // generators of G_i
  std::vector<BpData> leaves;
};
BpData   assemble_bp(int i, TowerPiece const &P, GroupBank &bank);
StarPlan star_plan(int i, GroupBank &bank);

struct ProbeResult
{
  Word                     w;
  std::size_t              elements = 0;
  std::size_t              distinct = 0;   // images not collapsed within the bound, identity included
  std::vector<std::string> collapses;     // explicit derivations of a nontrivial element to 1
  bool                     inconclusive = false;
};
// Bounded word problem in G_i: every nontrivial element of U_w is rewritten inside the vertex groups of G_i
// for at most `depth` steps; reaching the empty word is a collapse.
ProbeResult faithfulness_probe(GiPresentation const &gi, Blueprint const &p, std::string_view w, int depth = 10,
                               std::vector<GroupPtr> const &extra = {});

// tower lemma battery: unique P, C'(P) in C_{i+1}, C_i in alpha for alpha in hat-Phi_P, four distinct roots
Report tower_suite(int i_max);

} // namespace c444
