#include <doctest.h>

#include <random>
#include <set>

#include "c444/amalgam.hpp"

using namespace c444;

namespace {

Blueprint const &km()
{
  static Blueprint const p = Blueprint::kac_moody();
  return p;
}

Elem rootel(Group const &g, std::string_view r) { return *g.root_elem(parse_root(r)); }

std::vector<Elem> root_gens(Group const &g, std::vector<Root> const &roots)
{
  std::vector<Elem> out;
  for (auto const &r : roots) {
    auto const e = g.root_elem(r);
    REQUIRE(e);
    out.push_back(*e);
  }
  return out;
}

TreePtr vr_tree()
{
  auto const R = residue("st", "");
  return std::make_shared<TreeOfGroups>(
    "V_R", std::vector<GroupPtr>{make_u_group(km(), "sr"), make_v_group(km(), R), make_u_group(km(), "tr")},
    std::vector<EdgeSpec>{{0, 1, {}}, {1, 2, {}}});
}

TreeOfGroups::Word random_word(TreeOfGroups const &t, std::mt19937 &rng, int syl)
{
  TreeOfGroups::Word w;
  for (int i = 0; i < syl; ++i) {
    int const   v = std::uniform_int_distribution<int>(0, t.nv() - 1)(rng);
    auto const &el = *t.vertex(v)->elements();
    w.emplace_back(v, el[std::uniform_int_distribution<std::size_t>(0, el.size() - 1)(rng)]);
  }
  return w;
}

} // namespace

TEST_CASE("segment with trivial edge group is infinite dihedral")
{
  auto const a = make_u_group(km(), "s");
  auto const b = make_u_group(km(), "t");
  TreeOfGroups const t("D_inf", {a, b}, {{0, 1, {}}});
  CHECK(t.edge_group(0, 1).size() == 1);
  Elem const x = t.embed(0, rootel(*a, ":s")), y = t.embed(1, rootel(*b, ":t"));
  Elem       p = t.one();
  std::set<Elem> seen{p};
  for (int k = 1; k <= 20; ++k) {
    p = t.mul(p, t.mul(x, y));
    CHECK(t.weight(p) == static_cast<std::size_t>(2 * k));
    CHECK(seen.insert(p).second);
  }
  CHECK(t.mul(x, x) == t.one());
}

TEST_CASE("V_R tree")
{
  auto const t = vr_tree();
  CHECK(t->vertex(0)->elements()->size() == 4);
  CHECK(t->vertex(1)->elements()->size() == 8);
  CHECK(t->vertex(2)->elements()->size() == 4);
  CHECK(t->edge_group(0, 1).size() == 2);
  CHECK(t->edge_group(1, 2).size() == 2);
  CHECK(t->edge_group(1, 0).size() == 2);
}

TEST_CASE("build errors")
{
  auto const a = make_u_group(km(), "st");
  auto const b = make_u_group(km(), "stst");
  // U_st is abelian; u1, u4 of U_stst do not commute
  std::vector<std::pair<Elem, Elem>> bad{{{1u}, {1u}}, {{2u}, {8u}}};
  CHECK_THROWS_AS(TreeOfGroups("bad", {a, b}, {{0, 1, bad}}), TreeError);
  // not injective: both generators to the same element
  std::vector<std::pair<Elem, Elem>> coll{{{1u}, {1u}}, {{2u}, {1u}}};
  CHECK_THROWS_AS(TreeOfGroups("bad", {a, b}, {{0, 1, coll}}), TreeError);
  auto const c = make_u_group(km(), "r");
  CHECK_THROWS_AS(TreeOfGroups("cycle", {a, b, c}, {{0, 1, {}}, {1, 0, {}}}), TreeError);
  CHECK_THROWS_AS(TreeOfGroups("forest", {a, b, c}, {{0, 1, {}}}), TreeError);
}

TEST_CASE("normal forms")
{
  auto const A = make_u_group(km(), "sr");
  auto const B = make_u_group(km(), "st");
  TreeOfGroups const t("A*B", {A, B}, {{0, 1, {}}});
  CHECK(t.edge_group(0, 1).size() == 2);
  CHECK(t.reduce({{0, A->one()}}) == t.one());
  CHECK(t.reduce({{1, B->one()}}) == t.one());
  Elem const a = rootel(*A, "s:r"), b = rootel(*B, "s:t");
  Elem const ab = t.reduce({{0, a}, {1, b}});
  CHECK(t.weight(ab) == 2);
  CHECK_FALSE(t.vertex_membership(ab, 0));
  CHECK_FALSE(t.vertex_membership(ab, 1));
  // the shared generator moves across the edge
  Elem const cs = rootel(*A, ":s");
  CHECK(t.reduce({{0, cs}}) == t.reduce({{1, rootel(*B, ":s")}}));
  CHECK(t.reduce({{0, a}, {0, cs}, {1, b}}) == t.reduce({{0, a}, {1, rootel(*B, ":s")}, {1, b}}));
}

TEST_CASE("normal form properties on V_R")
{
  auto const   t = vr_tree();
  std::mt19937 rng(11);
  for (int k = 0; k < 300; ++k) {
    auto const wx = random_word(*t, rng, 1 + k % 6), wy = random_word(*t, rng, 1 + (k / 6) % 6);
    auto       wxy = wx;
    wxy.insert(wxy.end(), wy.begin(), wy.end());
    Elem const x = t->reduce(wx), y = t->reduce(wy);
    CHECK(t->reduce(wxy) == t->mul(x, y));
    CHECK(t->mul(x, t->inv(x)) == t->one());
    Elem const z = t->reduce(random_word(*t, rng, 3));
    CHECK(t->mul(t->mul(x, y), z) == t->mul(x, t->mul(y, z)));
    // inserting c . phi(c)^-1 across an edge changes nothing
    auto const edges = t->edges();
    auto const [u, v] = edges[k % edges.size()];
    auto const &A = t->edge_group(u, v);
    Elem const  c = A[static_cast<std::size_t>(k) % A.size()];
    auto        wz = wx;
    std::size_t pos = static_cast<std::size_t>(k) % (wz.size() + 1);
    wz.insert(wz.begin() + static_cast<std::ptrdiff_t>(pos),
              {{u, c}, {v, t->vertex(v)->inv(t->edge_map(u, v, c))}});
    CHECK(t->reduce(wz) == x);
    // base change does not change membership of the element
    CHECK(t->reduce(t->syllables(x), 0) == x);
  }
  // every vertex element round-trips
  for (int v = 0; v < t->nv(); ++v)
    for (auto const &g : *t->vertex(v)->elements()) {
      auto const back = t->vertex_membership(t->embed(v, g), v);
      REQUIRE(back);
      CHECK(*back == g);
    }
  CHECK(t->vertex_membership(t->one(), 2) == t->vertex(2)->one());
  // Britton: nonempty reduced words are not trivial
  for (int k = 0; k < 200; ++k) {
    Elem const x = t->reduce(random_word(*t, rng, 6));
    if (t->weight(x) > 0) CHECK(x != t->one());
  }
}

TEST_CASE("intersections")
{
  auto const A = make_u_group(km(), "sr");
  auto const B = make_u_group(km(), "st");
  TreeOfGroups const t("A*B", {A, B}, {{0, 1, {}}});
  std::vector<Elem>  ha, hb;
  for (auto const &g : *A->elements()) ha.push_back(t.embed(0, g));
  for (auto const &g : *B->elements()) hb.push_back(t.embed(1, g));
  auto const in = intersect_subgroups(t, ha, hb);
  CHECK(in.complete);
  CHECK(in.elems.size() == 2);
  CHECK(std::find(in.elems.begin(), in.elems.end(), t.root_elem(simple_root('s'))) != in.elems.end());

  auto const D = make_u_group(km(), "r");
  TreeOfGroups const d("A*D", {make_u_group(km(), "s"), D}, {{0, 1, {}}});
  auto const e = intersect_subgroups(d, {*d.root_elem(simple_root('s'))}, {*d.root_elem(simple_root('r'))});
  CHECK(e.elems.size() == 1);
}

TEST_CASE("key lemma (c) instance at w = 1")
{
  // U_{r_st} *^ V_{st r_rs}
  auto const U = make_u_group(km(), "stst");
  auto const V = make_v_group(km(), residue("rs", "st"));
  TreeOfGroups const t("c", {U, V}, {{0, 1, {}}});
  auto const vst = make_v_group(km(), residue("st", ""));
  auto const h = root_gens(t, vst->roots());
  auto const k = root_gens(t, phi_of("str"));
  auto const in = intersect_subgroups(t, h, k);
  CHECK(in.complete);
  auto const us = generate(t, root_gens(t, phi_of("s")));
  CHECK(in.elems == us.elems);
  auto const in2 = intersect_subgroups(t, root_gens(t, phi_of("stst")), k);
  CHECK(in2.elems == generate(t, root_gens(t, phi_of("st"))).elems);
}

TEST_CASE("key lemma (d) instance at w = 1, with folding")
{
  REQUIRE(length("stsrtrt") == 7);
  REQUIRE(length("ststrstst") == 9);
  auto const G0 = make_u_group(km(), "stsrtrt");
  auto const G1 = make_v_group(km(), residue("st", "ststr"));
  auto const G2 = make_u_group(km(), "tstrsrs");
  auto const t = std::make_shared<TreeOfGroups>("d", std::vector<GroupPtr>{G0, G1, G2}, std::vector<EdgeSpec>{{0, 1, {}}, {1, 2, {}}});
  auto const vsts = make_v_group(km(), residue("rt", "sts"));
  auto const h = root_gens(*t, vsts->roots());
  auto const k = root_gens(*t, phi_of("tstrs"));
  auto const in = intersect_subgroups(*t, h, k);
  CHECK(in.complete);
  auto const expect = generate(*t, root_gens(*t, phi_of("tst")));
  CHECK(in.elems == expect.elems);

  // fold the first edge through the edge group itself and through G0; intersections transport
  for (bool whole : {false, true}) {
    std::vector<Elem> hg;
    if (whole)
      for (auto const &r : G0->roots()) hg.push_back(*G0->root_elem(r));
    else
      for (auto const &[a, b] : t->edge_gens(0, 1)) hg.push_back(a);
    auto const f = fold(t, 0, 1, hg);
    CHECK(f.tree->nv() == 4);
    std::vector<Elem> h2, k2;
    for (auto const &x : h) h2.push_back(f.to_new(*t, x));
    for (auto const &x : k) k2.push_back(f.to_new(*t, x));
    auto const in3 = intersect_subgroups(*f.tree, h2, k2);
    CHECK(in3.elems.size() == in.elems.size());
    for (auto const &x : in3.elems) {
      Elem const back = f.to_old(*t, x);
      CHECK(std::binary_search(in.elems.begin(), in.elems.end(), back, [&](Elem const &a, Elem const &b) { return t->less(a, b); }));
      CHECK(f.to_new(*t, back) == x);
    }
  }
  CHECK_THROWS_AS(fold(t, 0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(fold(t, 0, 2, {}), std::invalid_argument);
}

TEST_CASE("contraction")
{
  auto const t = vr_tree();
  auto const c = contract(t, {{0, 1}, {2}});
  CHECK(c.tree->nv() == 2);
  CHECK(c.part_trees[0]);
  CHECK_FALSE(c.part_trees[1]);
  std::mt19937      rng(5);
  std::vector<Elem> xs;
  for (int k = 0; k < 120; ++k) xs.push_back(t->reduce(random_word(*t, rng, 1 + k % 4)));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Elem const cx = c.to_coarse(*t, xs[i]);
    CHECK(c.to_fine(*t, cx) == xs[i]);
    for (std::size_t j = 0; j < i; ++j) CHECK((cx == c.to_coarse(*t, xs[j])) == (xs[i] == xs[j]));
    // products agree
    Elem const y = xs[(i * 7) % xs.size()];
    CHECK(c.to_coarse(*t, t->mul(xs[i], y)) == c.tree->mul(cx, c.to_coarse(*t, y)));
  }
  auto const whole = contract(t, {{0, 1, 2}});
  CHECK(whole.tree->nv() == 1);
  for (auto const &x : xs) CHECK(whole.to_fine(*t, whole.to_coarse(*t, x)) == x);
  CHECK_THROWS_AS(contract(t, {{0, 2}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(contract(t, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("embedding certificates")
{
  auto const t = vr_tree();
  auto const same = certify_embedding(*t, *t, {0, 1, 2});
  CHECK(same.valid());

  // H_R-style containment: U_sr <= U_sr, U_s <= V, trivial edge would be a corrupted edge group
  auto const small = std::make_shared<TreeOfGroups>(
    "small", std::vector<GroupPtr>{make_u_group(km(), "sr"), make_u_group(km(), "s")}, std::vector<EdgeSpec>{{0, 1, {}}});
  CHECK(certify_embedding(*t, *small, {0, 1}).valid());
  // a corrupted (trivial) edge between vertices sharing u_s leaves u_s ambiguous
  CHECK_THROWS_AS(TreeOfGroups("bad", {make_u_group(km(), "sr"), make_u_group(km(), "s")},
                               {{0, 1, std::vector<std::pair<Elem, Elem>>{}}}),
                  TreeError);
  // preimages differ: U_r has no root shared with V but the edge group of the big tree meets U_sr in u_s
  auto const pre = std::make_shared<TreeOfGroups>(
    "pre", std::vector<GroupPtr>{make_u_group(km(), "s"), make_u_group(km(), "t")}, std::vector<EdgeSpec>{{0, 1, {}}});
  auto const cp = certify_embedding(*t, *pre, {0, 1});
  CHECK_FALSE(cp.preimages.ok());
  // consequence of a valid certificate: nu(H) n G_v = H_v inside the big tree
  std::vector<Elem> hs;
  for (auto const &r : small->roots()) hs.push_back(*t->root_elem(r));
  for (int v = 0; v < 2; ++v) {
    std::vector<Elem> gv;
    for (auto const &g : *t->vertex(v)->elements()) gv.push_back(t->embed(v, g));
    auto const in = intersect_subgroups(*t, hs, gv);
    CHECK(in.elems.size() == small->vertex(v)->elements()->size());
  }
  CHECK(check_root_hom(*small, *t).ok());
}
