#include <doctest.h>

#include <bitset>
#include <random>
#include <set>

#include "c444/roots.hpp"

using namespace c444;

namespace {
// membership bitsets over a ball, used as an independent half-space oracle
struct BallOracle
{
  std::shared_ptr<Ball const> b;
  std::size_t                 n;
  explicit BallOracle(int radius) : b(ball(radius)), n(b->count_upto(radius)) {}
  std::vector<bool> bits(Root const &a) const
  {
    std::vector<bool> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = vec_sign(b->inv[i] * a.v) > 0;
    return out;
  }
};
} // namespace

TEST_CASE("simple roots and the action")
{
  Root const as = simple_root('s');
  CHECK(as.contains(""));
  CHECK_FALSE(as.contains("s"));
  CHECK(as.contains("t"));
  CHECK(act("", as) == as);
  CHECK(act("s", as) == -as);
  Root const tas = act("t", as);
  CHECK(tas.positive());
  auto const b = ball(4);
  for (std::size_t i = 0; i < b->count_upto(4); ++i) {
    Word const &w = b->words[i];
    // w in t alpha_s iff t w in alpha_s
    CHECK(tas.contains(w) == as.contains(canon("t" + w)));
  }
}

TEST_CASE("act is a group action")
{
  auto const b = ball(4);
  for (char g : {'r', 's', 't'})
    for (std::size_t i = 0; i < b->count_upto(3); ++i)
      for (std::size_t j = 0; j < b->count_upto(3); j += 3)
        CHECK(act(b->words[i], act(b->words[j], simple_root(g))) == act(multiply(b->words[i], b->words[j]), simple_root(g)));
}

TEST_CASE("phi_of and minimal galleries")
{
  auto const st = phi_of("st");
  REQUIRE(st.size() == 2);
  CHECK(st[0] == simple_root('s'));
  CHECK(st[1] == act("s", simple_root('t')));
  CHECK(phi_of("").empty());
  CHECK(enumerate_min("stst").size() == 2);
  CHECK(enumerate_min("s").size() == 1);
  CHECK(enumerate_min("rst").size() == 1);
  CHECK(enumerate_min_s("stst", 't') == std::vector<Word>{"tsts"});
  CHECK(enumerate_min_s("st", 'r').size() == 1);

  auto const b = ball(8);
  for (std::size_t i = 0; i < b->count_upto(8); ++i) {
    Word const &w = b->words[i];
    auto const phi = phi_of(w);
    RootSet set(phi.begin(), phi.end());
    CHECK(set.size() == w.size());
    for (auto const &a : phi) {
      CHECK(a.positive());
      CHECK_FALSE(a.contains(w)); // Phi(w) = positive roots not containing w
    }
    if (w.size() <= 7)
      for (auto const &u : enumerate_min(w)) {
        auto const other = crossed(u);
        CHECK(RootSet(other.begin(), other.end()) == set);
      }
  }
}

TEST_CASE("shift_gallery")
{
  CHECK(shift_gallery('s', "s") == "");
  CHECK(shift_gallery('s', "t") == "st");
  CHECK_THROWS_AS(shift_gallery('t', "stst"), std::invalid_argument);
  std::mt19937 rng(7);
  auto const   b = ball(7);
  int          done = 0;
  while (done < 100) {
    Word const &w = b->words[rng() % b->count_upto(7)];
    char const  s = kGens[rng() % 3];
    auto const  gs = enumerate_min_s(w, s);
    if (gs.empty()) continue;
    Word const G = gs[rng() % gs.size()];
    Word const sG = shift_gallery(s, G);
    CHECK(canon(sG) == multiply(std::string{s}, w));
    RootSet expect{simple_root(s)};
    for (auto const &a : crossed(G))
      if (a != simple_root(s)) expect.insert(act(std::string{s}, a));
    auto got = crossed(sG);
    RootSet gotset(got.begin(), got.end());
    // sG crosses alpha_s exactly when it was prefixed
    if (sG.size() < G.size()) expect.erase(simple_root(s));
    CHECK(gotset == expect);
    ++done;
  }
}

TEST_CASE("canonical pairs, k_alpha and serialization")
{
  CHECK(k_alpha(simple_root('s')) == 1);
  CHECK(distinguished_panel(simple_root('s')) == residue("s", ""));
  // s t s alpha_t is alpha_t itself; the non-simple roots of the st-residue are s alpha_t and t alpha_s
  CHECK(act("sts", simple_root('t')) == simple_root('t'));
  CHECK(k_alpha(act("s", simple_root('t'))) == 2);
  CHECK(k_alpha(act("t", simple_root('s'))) == 2);
  CHECK(to_string(act("st", simple_root('r'))) == "st:r");
  CHECK(parse_root(":s") == simple_root('s'));
  CHECK_THROWS(parse_root("st"));
  for (auto const &a : roots_upto(7)) {
    auto const cp = canonical_pair(a);
    CHECK(canon(cp.v) == cp.v);
    CHECK(length(cp.v + cp.g) == static_cast<int>(cp.v.size()) + 1);
    CHECK(act(cp.v, simple_root(cp.g)) == a);
    CHECK(parse_root(to_string(a)) == a);
    CHECK(parse_root(to_string(-a)) == -a);
    CHECK(form2(a.v, a.v) == Ring2Value(2));
    // r_alpha swaps the panel chambers
    Word const r = reflection(a);
    CHECK(multiply(r, cp.v) == canon(cp.v + cp.g));
  }
}

TEST_CASE("k_alpha is the shortest gallery ending on the wall")
{
  // oracle: first ball sphere in which the root occurs as a last crossed root
  auto const b = ball(7);
  std::unordered_map<Root, int, RootHash> first;
  for (std::size_t i = 1; i < b->count_upto(7); ++i) {
    Word const &w = b->words[i];
    Root const  last = act(w.substr(0, w.size() - 1), simple_root(w.back()));
    first.emplace(last, static_cast<int>(w.size()));
  }
  for (auto const &a : roots_upto(7)) CHECK(first.at(a) == k_alpha(a));
}

TEST_CASE("pair classification")
{
  auto const c = classify_pair(simple_root('s'), simple_root('t'));
  CHECK(c.kind == PairKind::Crossing);
  CHECK(c.order == 4);
  CHECK_THROWS_AS(classify_pair(simple_root('s'), -simple_root('s')), std::invalid_argument);
  auto const st = interval(simple_root('s'), simple_root('t'));
  CHECK(st.size() == 4);
  auto const ro = residue_roots(residue("st", ""));
  CHECK(RootSet(st.begin(), st.end()) == RootSet(ro.begin(), ro.end()));
  // ordered from alpha_s to alpha_t along the gallery stst
  CHECK(st == crossed("stst"));
  // a right-angle pair inside the residue still has a root between them
  auto const rt = interval(simple_root('s'), act("t", simple_root('s')));
  CHECK(rt.size() == 3);
}

TEST_CASE("classification agrees with the ball oracle and with the form sign")
{
  set_ball_max(16);
  auto const roots = roots_upto(6);
  BallOracle const o(16);
  std::vector<std::vector<bool>> bits;
  for (auto const &a : roots) bits.push_back(o.bits(a));
  int compared = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      auto const &a = roots[i];
      auto const &b = roots[j];
      std::size_t const lim = o.b->count_upto(k_alpha(a) + k_alpha(b) + 4);
      bool in_a_not_b = false, in_b_not_a = false, in_neither = false;
      for (std::size_t w = 0; w < lim; ++w) {
        in_a_not_b |= bits[i][w] && !bits[j][w];
        in_b_not_a |= !bits[i][w] && bits[j][w];
        in_neither |= !bits[i][w] && !bits[j][w];
      }
      auto const c = classify_pair(a, b);
      if (c.kind == PairKind::Crossing) {
        CHECK((in_a_not_b && in_b_not_a && in_neither));
        CHECK_FALSE(nested_by_form(a, b).has_value());
        continue;
      }
      ++compared;
      auto const form = nested_by_form(a, b);
      REQUIRE(form.has_value());
      bool const oracle_nested = !in_a_not_b || !in_b_not_a;
      CHECK(*form == oracle_nested);
      CHECK((c.kind == PairKind::Nested) == oracle_nested);
      if (c.kind == PairKind::Nested) CHECK(c.a_in_b == !in_a_not_b);
      if (c.kind == PairKind::CoNested) CHECK_FALSE(in_neither);
      CHECK(c.kind != PairKind::Disjoint);
      // symmetry
      auto const d = classify_pair(b, a);
      CHECK(d.kind == c.kind);
      if (c.kind == PairKind::Nested) CHECK(d.a_in_b != c.a_in_b);
    }
  CHECK(compared > 100);
}

TEST_CASE("intervals agree with the ball oracle")
{
  auto const pairs = roots_upto(4);
  auto const cands = roots_upto(9);
  BallOracle const o(13);
  std::vector<std::vector<bool>> cb;
  for (auto const &g : cands) cb.push_back(o.bits(g));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto const &a = pairs[i];
      auto const &b = pairs[j];
      auto const  c = classify_pair(a, b);
      auto const  iv = interval(a, b);
      if (!c.prenilpotent()) {
        CHECK(iv.empty());
        continue;
      }
      auto const ba = o.bits(a), bb = o.bits(b);
      RootSet expect;
      for (std::size_t g = 0; g < cands.size(); ++g) {
        bool ok = true;
        for (std::size_t w = 0; w < o.n && ok; ++w) {
          if (ba[w] && bb[w] && !cb[g][w]) ok = false;
          if (!ba[w] && !bb[w] && cb[g][w]) ok = false;
        }
        if (ok) expect.insert(cands[g]);
      }
      CHECK(RootSet(iv.begin(), iv.end()) == expect);
      CHECK(iv.front() == a);
      CHECK(iv.back() == b);
    }
}

TEST_CASE("wall data")
{
  auto const wd = wall_data(simple_root('s'), 1);
  CHECK(std::find(wd.panels.begin(), wd.panels.end(), Word("")) != wd.panels.end());
  for (auto const &a : roots_upto(5)) {
    auto const w = wall_data(a, 9);
    CHECK(w.rank2.size() == w.panels.size() + 1);
    CHECK(w.panel(w.base) == distinguished_panel(a));
    for (std::size_t i = 0; i < w.panels.size(); ++i) {
      CHECK(a.contains(w.panels[i]));
      CHECK_FALSE(a.contains(w.panels[i] + w.g));
      CHECK(stabilizes(a, w.panel(i)));
      CHECK(w.rank2[i].contains(w.panels[i]));
      CHECK(w.rank2[i + 1].contains(w.panels[i]));
    }
    for (auto const &R : w.rank2) CHECK(stabilizes(a, R));
    // a residue where the root is not simple exists when k > 1
    if (k_alpha(a) > 1) {
      bool found = false;
      for (auto const &R : w.rank2) {
        bool simple = false;
        for (std::size_t i = 0; i < w.panels.size(); ++i)
          if (R.contains(w.panels[i]) && projection("", w.panel(i)) == R.w) simple = true;
        found |= !simple;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("core lemma suite")
{
  CHECK(lemma_suite_core(0).ok());
  auto const rep = lemma_suite_core(6);
  INFO(rep.text());
  CHECK(rep.ok());
}
