#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "c444/coxeter.hpp"
#include "c444/report.hpp"

namespace c444 {

// A root as a vector of the reflection representation. w lies in the half-space iff w^-1(v) is positive.
struct Root
{
  Vec3 v = Vec3::Zero();

  bool positive() const { return vec_sign(v) > 0; }
  bool contains(std::string_view w) const { return vec_sign(act_inv(w, v)) > 0; }
  Root operator-() const { return {-v}; }

  friend bool operator==(Root const &x, Root const &y) { return x.v == y.v; }
  friend bool operator!=(Root const &x, Root const &y) { return !(x == y); }
};

struct RootHash
{
  std::size_t operator()(Root const &r) const noexcept
  {
    std::size_t h = 0;
    for (int i = 0; i < 3; ++i) h = h * 0x100000001B3ull ^ Ring2Hash{}(r.v(i));
    return h;
  }
};

using RootSet = std::unordered_set<Root, RootHash>;

Root simple_root(char g);
Root act(std::string_view w, Root const &a);

struct CanonicalPair
{
  Word v;
  char g = 'r';
};

// ShortLex-least v of minimal length with a = v alpha_g (positive a), or the pair of -a for negative a
CanonicalPair canonical_pair(Root const &a);
int           k_alpha(Root const &a);            // positive roots only
Residue       distinguished_panel(Root const &a); // P_alpha
Word          reflection(Root const &a);         // r_alpha as an element
std::string   to_string(Root const &a);          // "word:gen"; negative roots as (v g):g
Root          parse_root(std::string_view text);

// Roots of a rank-2 residue, positive ones: w_R {alpha_a, alpha_b, a alpha_b, b alpha_a}
std::vector<Root> residue_roots(Residue const &R);
// the two non-simple roots of a rank-2 residue: w_R a alpha_b and w_R b alpha_a
std::vector<Root> nonsimple_roots(Residue const &R);
bool stabilizes(Root const &a, Residue const &R); // r_alpha R = R

// crossed roots of the gallery of the given type from 1_W (type must be reduced)
std::vector<Root> crossed(std::string_view type);
std::vector<Root> phi_of(std::string_view w);
bool              is_reduced(std::string_view type);

// all reduced words of w, lexicographically sorted (Min(w)); with first letter s when l(sw) < l(w)
std::vector<Word> enumerate_min(std::string_view w);
std::vector<Word> enumerate_min_s(std::string_view w, char s);
// type of sG for G in Min_s(w)
Word shift_gallery(char s, std::string_view type);

// positive roots with k_alpha <= k, sorted by (k, canonical pair)
std::vector<Root> roots_upto(int k);

enum class PairKind { Equal, Opposite, Crossing, Nested, CoNested, Disjoint };

struct PairClass
{
  PairKind kind = PairKind::Crossing;
  int      order = 0;      // o(r_a r_b) for crossing pairs
  bool     a_in_b = false; // nested direction
  bool prenilpotent() const { return kind == PairKind::Crossing || kind == PairKind::Nested; }
};

PairClass   classify_pair(Root const &a, Root const &b);
std::string kind_name(PairClass const &c);
bool        root_subset(Root const &a, Root const &b); // a is contained in b as half-spaces
// B-form shortcut for positive pairs with disjoint walls: nested iff 2B >= 2
std::optional<bool> nested_by_form(Root const &a, Root const &b);

// closed interval [a,b] for prenilpotent pairs; empty otherwise
std::vector<Root> interval(Root const &a, Root const &b);
std::vector<Root> open_interval(Root const &a, Root const &b);

// the rank-2 residue where two crossing walls meet
std::optional<Residue> crossing_residue(Root const &a, Root const &b);

// The wall of a positive root, walked from P_alpha in both directions.
// panels[i] = in-chamber x with {x, xg} in the wall and x in alpha; rank2[i] sits between panels[i] and panels[i+1].
struct WallData
{
  char              g = 'r';
  std::size_t       base = 0; // index of P_alpha in panels
  std::vector<Word> panels;
  std::vector<Residue> rank2;

  Residue panel(std::size_t i) const { return residue(gen_bit(g), panels[i]); }
  int     panel_length(std::size_t i) const; // l(proj of 1 onto the panel)
};

WallData wall_data(Root const &a, int radius);

// the residue on the walk from P_alpha towards panel index q (q != base)
Residue first_residue_towards(WallData const &wd, std::size_t q);

Report lemma_suite_core(int max_len);

} // namespace c444
