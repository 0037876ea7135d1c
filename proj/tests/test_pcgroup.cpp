#include <doctest.h>

#include <bit>
#include <random>

#include "c444/pcgroup.hpp"

using namespace c444;

namespace {

PcElem u(int i) { return PcGroup::gen(i - 1); }

} // namespace

TEST_CASE("small presentations")
{
  auto const km = Blueprint::kac_moody();
  auto const g1 = build_ugroup(km, "s");
  CHECK(g1.n() == 1);
  CHECK(closure(g1, {u(1)}).size() == 2);

  auto const g = build_ugroup(km, "stst");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(g.tail(i, j) == (i == 0 && j == 3 ? (u(2) | u(3)) : 0u));
  CHECK(g.multiply(u(4), u(1)) == (u(1) | u(2) | u(3) | u(4)));
  CHECK(g.multiply(u(1), u(4)) == (u(1) | u(4)));
  CHECK(g.commutator(u(1), u(4)) == (u(2) | u(3)));
  CHECK(g.str(u(4) | u(1)) == "u1 u4");
  for (PcElem x = 0; x < 16; ++x) {
    CHECK(g.multiply(x, 0) == x);
    CHECK(g.multiply(0, x) == x);
    CHECK(g.multiply(x, g.inverse(x)) == 0);
  }
  // not every element is an involution once a tail is nontrivial
  CHECK(g.multiply(u(1) | u(4), u(1) | u(4)) != 0);

  CHECK_THROWS_AS(build_ugroup(km, "rstrstrstrstr"), ResourceLimit);
}

TEST_CASE("empty blueprint gives elementary abelian groups")
{
  auto const e = Blueprint::empty();
  auto       g = build_ugroup(e, "rstrs");
  for (PcElem x = 0; x < g.order_bound(); ++x) CHECK(g.multiply(x, x) == 0);
  CHECK(certify_cb3(g, e).consistent());
  CHECK(g.cert == Certificate::Consistent);
}

TEST_CASE("CB3 for Kac-Moody up to length 6")
{
  auto const km = Blueprint::kac_moody();
  auto const b = ball(6);
  for (std::size_t k = 0; k < b->count_upto(6); ++k) {
    auto       g = build_ugroup(km, b->words[k]);
    auto const c = certify_cb3(g, km);
    CHECK_MESSAGE(c.consistent(), c.report.text());
    CHECK(c.report.checks.size() == 4); // brute force ran
  }
}

TEST_CASE("group law is associative with involutive generators")
{
  auto const   km = Blueprint::kac_moody();
  auto const   g = build_ugroup(km, "rstsrtrs");
  std::mt19937 rng(7);
  std::uniform_int_distribution<PcElem> d(0, static_cast<PcElem>(g.order_bound() - 1));
  for (int k = 0; k < 2000; ++k) {
    PcElem const x = d(rng), y = d(rng), z = d(rng);
    CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
    CHECK(g.multiply(g.inverse(x), x) == 0);
  }
  for (int i = 0; i < g.n(); ++i) CHECK(g.multiply(PcGroup::gen(i), PcGroup::gen(i)) == 0);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) CHECK(g.commutator(PcGroup::gen(i), PcGroup::gen(j)) == g.tail(i, j));
}

TEST_CASE("CB3 negative fixtures")
{
  auto const km = Blueprint::kac_moody();
  SUBCASE("tail outside the interval")
  {
    auto g = build_ugroup(km, "stst");
    g.set_tail(0, 1, u(4));
    auto const c = certify_cb3(g, km);
    CHECK_FALSE(c.consistent());
    CHECK(g.cert == Certificate::Inconsistent);
    CHECK_FALSE(c.report.checks[0].ok());
  }
  SUBCASE("tail inside the interval but inconsistent with the blueprint")
  {
    auto g = build_ugroup(km, "stst");
    g.set_tail(0, 3, u(2));
    CHECK_FALSE(certify_cb3(g, km).consistent());
  }
  SUBCASE("broken CB2 table")
  {
    auto p = Blueprint::kac_moody();
    p.set_override("stst", 1, 4, {});
    auto       g = build_ugroup(p, "stst");
    auto const c = certify_cb3(g, p);
    CHECK_FALSE(c.consistent());
    CHECK(c.report.checks[2].violations.front().anchor.rfind("G=tsts", 0) == 0);
  }
  SUBCASE("foreign tail root")
  {
    auto p = Blueprint::kac_moody();
    p.set_override("stst", 1, 4, {simple_root('r')});
    try {
      build_ugroup(p, "stst");
      FAIL("expected rejection");
    } catch (BlueprintError const &e) {
      CHECK(std::string(e.what()).find(":r") != std::string::npos);
    }
  }
}

TEST_CASE("embeddings")
{
  auto const km = Blueprint::kac_moody();
  auto const a = embed(build_ugroup(km, "s"), build_ugroup(km, "st"));
  CHECK(a.check.ok());
  CHECK(a.image_order == 2);
  auto const b = embed(build_ugroup(km, "st"), build_ugroup(km, "stst"));
  CHECK(b.check.ok());
  CHECK(b.image_order == 4);

  auto const bl = ball(6);
  int        pairs = 0;
  for (std::size_t k = 0; k < bl->count_upto(5); ++k)
    for (char x : kGens) {
      Word const v = bl->words[k];
      if (length(v + x) != (int)v.size() + 1) continue;
      auto const gv = build_ugroup(km, v), gw = build_ugroup(km, v + x);
      auto const e = embed(gv, gw);
      CHECK_MESSAGE(e.check.ok(), v, " -> ", v + x);
      pairs++;
      // composing two steps agrees with the direct map
      for (char y : kGens) {
        if (length(v + x + y) != (int)v.size() + 2 || (int)v.size() + 2 > 6) continue;
        auto const g3 = build_ugroup(km, v + x + y);
        auto const e2 = embed(gw, g3), e3 = embed(gv, g3);
        for (std::size_t i = 0; i < e.map.size(); ++i) CHECK(e2.map[e.map[i]] == e3.map[i]);
      }
    }
  // covering pairs counted from the other end: right descents of every w with 1 <= l(w) <= 6
  int down = 0;
  for (std::size_t k = 1; k < bl->count_upto(6); ++k) down += std::popcount(right_descents(bl->words[k]));
  CHECK(pairs == down);}

TEST_CASE("V subgroup")
{
  auto const R = residue("st", "");
  {
    auto const km = Blueprint::kac_moody();
    auto const g = build_ugroup(km, "stst");
    auto const v = v_subgroup(g, R);
    CHECK(v.check.ok());
    CHECK(v.v.size() == 8);
  }
  {
    // all tails trivial: V = <u1, u4> has index 4, the empty family is not a blueprint (CB2 fails)
    auto const e = Blueprint::empty();
    auto const v = v_subgroup(build_ugroup(e, "stst"), R);
    CHECK_FALSE(v.check.ok());
    CHECK(v.v.size() == 4);
  }
  {
    auto       p = Blueprint::kac_moody();
    auto const rs = crossed("stst");
    p.set_override("stst", 1, 4, {rs[1]});
    auto const v = v_subgroup(build_ugroup(p, "stst"), R);
    // [u1,u4] = u2 drags a single non-simple generator into V
    CHECK_FALSE(v.check.ok());
    CHECK(v.v.size() == 8);
    CHECK(v.v.contains(u(2)));
    CHECK(v.check.violations.front().witness.find("V contains u") == 0);
  }
  // every rank-2 residue with l(w_R) <= 3
  auto const km = Blueprint::kac_moody();
  auto const b = ball(3);
  for (std::size_t k = 0; k < b->count_upto(3); ++k)
    for (unsigned mask : {3u, 5u, 6u}) {
      auto const Q = residue(mask, b->words[k]);
      if (Q.w != b->words[k]) continue;
      auto const v = v_subgroup(build_ugroup(km, Q.w + longest_element(mask)), Q);
      CHECK_MESSAGE(v.check.ok(), Q.str());
    }
  CHECK_THROWS_AS(v_subgroup(build_ugroup(km, "stst"), residue("rs", "")), std::invalid_argument);
}

TEST_CASE("key lemma")
{
  auto const km = Blueprint::kac_moody();
  CHECK(key_lemma(km, "", 's', 't', 'a').ok());
  CHECK(key_lemma(km, "", 's', 't', 'a').checked == 2);
  CHECK(key_lemma(km, "", 's', 't', 'b').ok());
  auto const a = key_lemma_sweep(km, 3, 'a');
  CHECK(a.ok());
  CHECK(a.checked == 96);
  auto const b = key_lemma_sweep(km, 3, 'b');
  CHECK(b.ok());
  CHECK(b.checked == 48);
  CHECK_FALSE(key_lemma_sweep(Blueprint::empty(), 2, 'a').ok());
  CHECK_THROWS_AS(key_lemma(km, "s", 's', 't', 'a'), std::invalid_argument);
}
