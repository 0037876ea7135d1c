#include <doctest.h>

#include "c444/blueprint.hpp"

using namespace c444;

namespace {

Blueprint cb2_seeded(Blueprint::Closure cl, int radius)
{
  Blueprint p(Blueprint::Base::Empty, cl);
  for (auto [a, b] : {std::pair{'r', 's'}, {'r', 't'}, {'s', 't'}})
    for (Word const &g : {Word{a, b, a, b}, Word{b, a, b, a}}) {
      auto const rs = crossed(g);
      p.set_override(g, 1, 4, {rs[1], rs[2]});
    }
  p.close(radius);
  return p;
}

std::size_t bad(Check const &c) { return c.violations.size() + c.dropped; }

} // namespace

TEST_CASE("galleries of the ball")
{
  auto const gs = all_galleries(4);
  // 1 + 3 + 6 + 12 + 24 reduced words; stst and tsts both present
  CHECK(gs.size() == 1 + 3 + 6 + 12 + 24);
  CHECK(std::find(gs.begin(), gs.end(), "stst") != gs.end());
  CHECK(std::find(gs.begin(), gs.end(), "tsts") != gs.end());
  for (auto const &g : gs) CHECK(is_reduced(g));
}

TEST_CASE("Kac-Moody queries")
{
  auto const km = Blueprint::kac_moody();
  auto const rs = crossed("stst");
  CHECK(km.query("stst", 1, 4) == std::vector<Root>{rs[1], rs[2]});
  CHECK(km.query_positions("stst", 1, 4) == std::vector<int>{2, 3});
  CHECK(km.query("stst", 1, 3).empty());
  CHECK(km.query("stst", 2, 3).empty());
  CHECK_THROWS_AS(km.query("stst", 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(km.query("stst", 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(km.query("stst", 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(km.query("ss", 1, 2), std::invalid_argument);

  // nested pairs never get commutators
  int nested = 0;
  for (auto const &g : all_galleries(6)) {
    auto const r = crossed(g);
    for (int i = 1; i <= (int)g.size(); ++i)
      for (int j = i + 1; j <= (int)g.size(); ++j)
        if (classify_pair(r[i - 1], r[j - 1]).kind == PairKind::Nested) {
          nested++;
          CHECK(km.query(g, i, j).empty());
        }
  }
  CHECK(nested > 0);
}

TEST_CASE("Kac-Moody passes CB1, CB2, Weyl and interval checks")
{
  auto const km = Blueprint::kac_moody();
  CHECK(validate_cb1(km, 6).ok());
  CHECK(validate_cb1(km, 0).checked == 0);
  auto const c2 = validate_cb2(km);
  CHECK(c2.ok());
  CHECK(c2.checked == 36);
  CHECK(validate_weyl(km, 6, false).ok());
  CHECK(validate_weyl(km, 6, true).ok());
  CHECK(validate_intervals(km, 6).ok());
  CHECK(validate_weyl(km, 1, false).ok());
  CHECK(validate_weyl(Blueprint::empty(), 1, false).ok());
}

TEST_CASE("negative fixtures")
{
  auto const rs = crossed("stst");
  {
    auto p = Blueprint::kac_moody();
    p.set_override("stst", 1, 4, {});
    CHECK(bad(validate_cb2(p)) == 1);
  }
  {
    auto p = Blueprint::kac_moody();
    p.set_override("stst", 2, 3, {rs[1]});
    CHECK(bad(validate_cb2(p)) == 1);
    CHECK_FALSE(validate_intervals(p, 4).ok());
  }
  {
    auto p = Blueprint::kac_moody();
    p.set_override("ststr", 1, 4, {});
    auto const c = validate_cb1(p, 5);
    REQUIRE(bad(c) == 1);
    CHECK(c.violations[0].anchor == "G=ststr H=stst (i,j)=(1,4)");
  }
  {
    auto p = Blueprint::kac_moody();
    p.set_override("rstst", 2, 5, {});
    auto const w = validate_weyl(p, 5, false);
    CHECK_FALSE(w.ok());
    bool seen = false;
    for (auto const &v : w.violations) seen |= v.anchor.rfind("s=r G=rstst", 0) == 0;
    CHECK(seen);
    CHECK_FALSE(validate_weyl(p, 5, true).ok());
  }
  CHECK_FALSE(validate_cb2(Blueprint::empty()).ok());
}

TEST_CASE("Weyl closure")
{
  SUBCASE("empty seed")
  {
    Blueprint p(Blueprint::Base::Empty, Blueprint::Closure::Weyl);
    p.close(5);
    CHECK(p.closed().empty());
    CHECK(bad(validate_cb2(p)) == 6);
  }
  SUBCASE("CB2 table reproduces Kac-Moody up to length 6")
  {
    auto const p = cb2_seeded(Blueprint::Closure::Weyl, 6);
    auto const km = Blueprint::kac_moody();
    for (auto const &g : all_galleries(6))
      for (int i = 1; i <= (int)g.size(); ++i)
        for (int j = i + 1; j <= (int)g.size(); ++j) CHECK(p.query(g, i, j) == km.query(g, i, j));
    CHECK(p.closed().size() == 48);
    CHECK(validate_cb2(p).ok());
    CHECK(validate_cb1(p, 6).ok());
    CHECK(validate_weyl(p, 5, false).ok());
  }
  SUBCASE("length 7 has extreme pairs out of reach")
  {
    auto const p = cb2_seeded(Blueprint::Closure::Weyl, 7);
    auto const km = Blueprint::kac_moody();
    int miss = 0;
    for (auto const &g : all_galleries(7))
      for (int i = 1; i <= (int)g.size(); ++i)
        for (int j = i + 1; j <= (int)g.size(); ++j) {
          auto const a = p.query(g, i, j), b = km.query(g, i, j);
          if (a != b) {
            CHECK(a.empty());
            miss++;
          }
        }
    CHECK(miss == 12);
    CHECK(p.query("rsrstrt", 1, 7).empty());
    CHECK(km.query("rsrstrt", 1, 7).size() == 2);
  }
  SUBCASE("local closure agrees on crossing seeds")
  {
    auto const w = cb2_seeded(Blueprint::Closure::Weyl, 6);
    auto const l = cb2_seeded(Blueprint::Closure::Local, 6);
    CHECK(w.closed() == l.closed());
  }
  SUBCASE("idempotent")
  {
    auto p = cb2_seeded(Blueprint::Closure::Weyl, 6);
    auto const once = p.closed();
    Blueprint q(Blueprint::Base::Empty, Blueprint::Closure::Weyl);
    for (auto const &[k, m] : once) q.set_override(std::get<0>(k), std::get<1>(k), std::get<2>(k), m);
    q.close(6);
    CHECK(q.closed() == once);
  }
  SUBCASE("conflict")
  {
    Blueprint p(Blueprint::Base::KacMoody, Blueprint::Closure::Weyl);
    auto const rs = crossed("stst");
    p.set_override("stst", 1, 4, {rs[1], rs[2]});
    p.set_override("rstst", 2, 5, {});
    try {
      p.close(5);
      FAIL("expected an orbit conflict");
    } catch (BlueprintError const &e) {
      std::string const msg = e.what();
      CHECK(msg.find("stst[1,4]") != std::string::npos);
      CHECK(msg.find("rstst[2,5]") != std::string::npos);
    }
  }
}

TEST_CASE("json round trip")
{
  auto p = cb2_seeded(Blueprint::Closure::Weyl, 6);
  auto const q = Blueprint::from_json(nlohmann::json::parse(p.to_json().dump()));
  CHECK(q.closed() == p.closed());
  for (auto const &g : all_galleries(6))
    for (int i = 1; i <= (int)g.size(); ++i)
      for (int j = i + 1; j <= (int)g.size(); ++j) CHECK(q.query(g, i, j) == p.query(g, i, j));
  auto const j = nlohmann::json::parse(R"({"base":"kac-moody","closure":"none",
    "overrides":[{"gallery":["s","t","s","t"],"i":1,"j":4,"M":[]}]})");
  CHECK_FALSE(validate_cb2(Blueprint::from_json(j)).ok());
  CHECK_THROWS(Blueprint::from_json(nlohmann::json::parse(R"({"base":"weird"})")));
}

TEST_CASE("Corollary D_n at blueprint level")
{
  auto const km = corollary_dn_check(Blueprint::kac_moody(), 3, 6);
  CHECK(km.clause1.ok());
  CHECK(km.clause1.checked > 0);
  CHECK_FALSE(km.clause2.ok());

  auto const p = perturbed_dn_provider(3, 6);
  auto const d = corollary_dn_check(p, 3, 6);
  CHECK(d.clause1.ok());
  CHECK(d.clause2.ok());
  // the override sits on a nested pair whose larger root has k > 3
  REQUIRE(p.seeds().size() == 1);
  auto const &[g, i, j] = p.seeds().begin()->first;
  auto const rs = crossed(g);
  CHECK(classify_pair(rs[i - 1], rs[j - 1]).kind == PairKind::Nested);
  CHECK(k_alpha(rs[j - 1]) > 3);
  CHECK(validate_intervals(p, 6).ok());

  auto const z = corollary_dn_check(Blueprint::kac_moody(), 0, 0);
  CHECK(z.clause1.checked == 0);
}
