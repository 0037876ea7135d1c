#include "c444/tower.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include <fmt/format.h>

namespace c444 {

namespace {

char third_of(unsigned mask)
{
  for (char g : kGens)
    if (!(mask & gen_bit(g))) return g;
  throw std::invalid_argument("third_of: not a rank-2 type");
}

std::string r2(char a, char b) { return {a, b, a, b}; }

std::string wn(Word const &w) { return w.empty() ? "1" : w; }

void add_prefixes(WordSet &out, std::string_view w)
{
  std::vector<Word> st{canon(w)};
  while (!st.empty()) {
    Word x = std::move(st.back());
    st.pop_back();
    if (!out.insert(x).second) continue;
    unsigned const d = right_descents(x);
    for (int g = 0; g < 3; ++g)
      if (d & (1u << g)) st.push_back(canon(x + gen_char(g)));
  }
}

bool sorted_less(Root const &a, Root const &b)
{
  int const ka = k_alpha(a), kb = k_alpha(b);
  return ka != kb ? ka < kb : to_string(a) < to_string(b);
}

} // namespace

WordSet prefix_set(std::string_view w)
{
  WordSet out;
  add_prefixes(out, w);
  return out;
}

WordSet residue_cone(Residue const &R)
{
  auto const l = letters_of(R.mask);
  char const s = l[0], t = l[1], r = third_of(R.mask);
  Word const J = r2(s, t);
  WordSet    out;
  for (Word const &tail : {Word{s, t} + r2(r, s), J + r + t + r, J + r + s + r, Word{t, s} + r2(r, t)})
    add_prefixes(out, R.w + tail);
  return out;
}

WordSet pair_cone(Residue const &R, Residue const &Rp)
{
  WordSet out = residue_cone(R);
  out.merge(residue_cone(Rp));
  return out;
}

WordSet cprime(Residue const &R)
{
  WordSet out;
  for (auto const &v : vertex_specs(Kind::GR, t1_anchor(R)))
    if (!v.is_v) add_prefixes(out, v.word);
  out.merge(residue_cone(R));
  return out;
}

WordSet cprime(Residue const &R, Residue const &Rp)
{
  WordSet out;
  Anchor  a = pair_anchor(R);
  if (*a.Rp != Rp) throw ConstructionError(Rp.str() + " is not the partner of " + R.str());
  for (auto const &v : vertex_specs(Kind::GRR, a))
    if (!v.is_v) add_prefixes(out, v.word);
  return out;
}

namespace {

std::mutex                                    g_tower_mu;
int                                           g_tower_max = 4;
std::vector<std::unique_ptr<LevelData const>> g_levels;

} // namespace

int tower_max()
{
  std::lock_guard lk(g_tower_mu);
  return g_tower_max;
}

void set_tower_max(int i)
{
  if (i < 0 || i > 6) throw ResourceLimit("tower maximum must lie in [0, 6]");
  std::lock_guard lk(g_tower_mu);
  g_tower_max = i;
}

LevelData const &level(int i)
{
  std::lock_guard lk(g_tower_mu);
  if (i < 0 || i > g_tower_max)
    throw ResourceLimit(fmt::format("tower level {} exceeds configured maximum {}", i, g_tower_max));
  while (static_cast<int>(g_levels.size()) <= i) {
    int const j = static_cast<int>(g_levels.size());
    auto      L = std::make_unique<LevelData>();
    L->i = j;
    if (j == 0) {
      for (char r : kGens) {
        unsigned const st = 7u & ~gen_bit(r);
        Word const     J = longest_element(st);
        add_prefixes(L->C, J);
        add_prefixes(L->C, std::string(1, r) + J);
      }
    } else {
      L->C = g_levels.back()->C;
      for (auto const &R : level_residues(j - 1)) L->C.merge(residue_cone(R));
    }
    for (auto const &w : L->C)
      for (unsigned m : {3u, 5u, 6u}) {
        if (right_descents(w) & m) continue;
        auto const l = letters_of(m);
        if (L->C.count(canon(w + l[0])) && L->C.count(canon(w + l[1]))) L->D.insert(canon(w + longest_element(m)));
      }
    RootSet gens;
    for (auto const &w : L->C)
      for (auto const &a : phi_of(w)) gens.insert(a);
    L->generators.assign(gens.begin(), gens.end());
    std::sort(L->generators.begin(), L->generators.end(), sorted_less);
    g_levels.push_back(std::move(L));
  }
  return *g_levels[static_cast<std::size_t>(i)];
}

std::string TowerPiece::str() const
{
  if (Rp) return fmt::format("{{{}, {}}}", R.str(), Rp->str());
  return R.str();
}

std::vector<TowerPiece> pieces(int i)
{
  auto const              cl = classify_level(i);
  std::vector<TowerPiece> out;
  for (auto const &R : cl.t1) out.push_back({R, std::nullopt});
  for (auto const &[R, Rp] : cl.t2) out.push_back({R, Rp});
  return out;
}

WordSet piece_cone(TowerPiece const &P) { return P.Rp ? pair_cone(P.R, *P.Rp) : residue_cone(P.R); }

NonSimpleRootData piece_roots(TowerPiece const &P) { return P.Rp ? nonsimple_data(P.R, *P.Rp) : nonsimple_data(P.R); }

// --- presentations --------------------------------------------------------------------------------

std::vector<std::vector<Root>> canonical_words(Group const &g)
{
  auto const *el = g.elements();
  if (!el) throw std::invalid_argument("canonical_words: " + g.name() + " is not finite");
  std::unordered_map<Elem, std::size_t, ElemHash> idx;
  for (std::size_t k = 0; k < el->size(); ++k) idx[(*el)[k]] = k;
  std::vector<std::vector<Root>> out(el->size());
  std::vector<char>              seen(el->size(), 0);
  std::vector<Elem>              gens;
  for (auto const &a : g.roots()) gens.push_back(*g.root_elem(a));
  std::deque<Elem> q{g.one()};
  seen[idx.at(g.one())] = 1;
  while (!q.empty()) {
    Elem const x = q.front();
    q.pop_front();
    auto const &wx = out[idx.at(x)];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem const  y = g.mul(x, gens[k]);
      std::size_t j = idx.at(y);
      if (seen[j]) continue;
      seen[j] = 1;
      out[j] = wx;
      out[j].push_back(g.roots()[k]);
      q.push_back(y);
    }
  }
  return out;
}

std::vector<Relation> vertex_relations(Group const &g)
{
  auto const  words = canonical_words(g);
  auto const *el = g.elements();
  std::unordered_map<Elem, std::size_t, ElemHash> idx;
  for (std::size_t k = 0; k < el->size(); ++k) idx[(*el)[k]] = k;
  std::vector<Relation> out;
  auto const           &rs = g.roots();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Elem const x = *g.root_elem(rs[i]);
    out.push_back({g.name(), rs[i], rs[i], words[idx.at(g.mul(x, x))]});
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      Elem const y = *g.root_elem(rs[j]);
      Elem const c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
      out.push_back({g.name(), rs[i], rs[j], words[idx.at(c)]});
    }
  }
  return out;
}

std::size_t GiPresentation::relation_count() const
{
  std::size_t n = 0;
  for (auto const &[k, v] : relations) n += v.size();
  return n;
}

GiPresentation build_gi(int i, GroupBank &bank)
{
  auto const    &L = level(i);
  GiPresentation gi;
  gi.i = i;
  gi.generators = L.generators;
  for (auto const &w : L.C)
    if (!w.empty()) gi.groups.push_back(bank.u(w));
  for (auto const &top : L.D) {
    unsigned const d = right_descents(top);
    gi.groups.push_back(bank.v(residue(d, top)));
  }
  auto const cert = bank.certificates();
  if (!cert.ok())
    throw ConstructionError(fmt::format("G_{}: vertex group {} fails CB3 ({})", i, cert.checks.front().violations.front().anchor,
                                        cert.checks.front().violations.front().witness));
  for (auto const &g : gi.groups) gi.relations[g->name()] = vertex_relations(*g);
  return gi;
}

Check check_hp_to_gi(TowerPiece const &P, LevelData const &L, GiPresentation const *gi, GroupBank *bank)
{
  Check c;
  c.id = fmt::format("H_P -> G_{} at {}", L.i, P.str());
  int const i = static_cast<int>(P.R.w.size());
  auto in_c = [&](Word const &w, std::string const &what) {
    c.checked++;
    if (!L.C.count(canon(w))) c.fail(P.str(), fmt::format("{} = {} not in C_{}", what, wn(canon(w)), L.i));
  };
  Kind kind = Kind::HR;
  Anchor a;
  if (!P.Rp) {
    a = t1_anchor(P.R);
    auto const &[r, s, t] = a.lab;
    Word const w = P.R.w;
    in_c(w + s + r2(r, t), "w s r_rt");
    in_c(w + r2(s, t), "w r_st");
    in_c(w + t + r2(r, s), "w t r_rs");
  } else {
    kind = Kind::HRR;
    a = pair_anchor(P.R);
    for (Anchor const &b : {a, swapped(a)}) {
      auto const &[r, s, t] = b.lab;
      Word const  wT = residue(gen_bit(r) | gen_bit(t), b.R.w).w;
      in_c(wT + r + t + r + r2(s, t), "w_T rtr r_st");
      in_c(wT + t + r + t + r2(r, s), "w_T trt r_rs");
      in_c(wT + t + r + r2(s, t), "w_T tr r_st");
      in_c(b.R.w + r2(r, s), "w_R r_rs");
      if (i >= 3) {
        Residue const Z = residue(gen_bit(s) | gen_bit(t), b.R.w);
        c.checked++;
        if (static_cast<int>(Z.w.size()) != i - 3) c.fail(P.str(), fmt::format("l(w_Z) = {}, expected {}", Z.w.size(), i - 3));
      }
    }
  }
  // every vertex group of H_P is a vertex group of G_i
  RootSet gens(L.generators.begin(), L.generators.end());
  for (auto const &v : vertex_specs(kind, a)) {
    c.checked++;
    bool const inside = v.is_v ? L.D.count(v.word) > 0 : L.C.count(v.word) > 0;
    if (!inside) {
      c.fail(P.str(), fmt::format("{} is not a vertex group of G_{}", v.name(), L.i));
      continue;
    }
    if (!bank) continue;
    auto const g = bank->get(v);
    for (auto const &al : g->roots()) {
      c.checked++;
      if (!gens.count(al)) c.fail(P.str(), fmt::format("{} of {} is not a generator of G_{}", to_string(al), v.name(), L.i));
    }
    if (!gi) continue;
    c.checked++;
    auto const it = gi->relations.find(g->name());
    if (it == gi->relations.end() || it->second != vertex_relations(*g))
      c.fail(P.str(), fmt::format("relations of {} differ from those recorded in G_{}", g->name(), L.i));
  }
  return c;
}

BpData assemble_bp(int i, TowerPiece const &P, GroupBank &bank)
{
  if (static_cast<int>(P.R.w.size()) != i) throw ConstructionError(P.str() + " is not in T_" + std::to_string(i));
  BpData     b{P, {}, {}};
  auto const h = P.Rp ? build_named(Kind::HRR, pair_anchor(P.R), bank) : build_named(Kind::HR, t1_anchor(P.R), bank);
  auto const g = P.Rp ? build_named(Kind::GRR, pair_anchor(P.R), bank) : build_named(Kind::GR, t1_anchor(P.R), bank);
  b.edge = h.tree->roots();
  b.periphery = g.tree->roots();
  std::sort(b.edge.begin(), b.edge.end(), sorted_less);
  std::sort(b.periphery.begin(), b.periphery.end(), sorted_less);
  return b;
}

StarPlan star_plan(int i, GroupBank &bank)
{
  StarPlan s;
  s.i = i;
  s.center = level(i).generators;
  for (auto const &P : pieces(i)) s.leaves.push_back(assemble_bp(i, P, bank));
  return s;
}

// --- bounded word problem -------------------------------------------------------------------------

namespace {

struct ProbeGroup
{
  GroupPtr                                          g;
  std::unordered_map<Elem, std::vector<Root>, ElemHash> word;
};

std::string word_str(std::vector<Root> const &w)
{
  if (w.empty()) return "1";
  std::string s;
  for (auto const &a : w) s += (s.empty() ? "" : " ") + to_string(a);
  return s;
}

} // namespace

ProbeResult faithfulness_probe(GiPresentation const &gi, Blueprint const &p, std::string_view w, int depth,
                               std::vector<GroupPtr> const &extra)
{
  constexpr std::size_t kStateCap = 4096;
  ProbeResult           res;
  res.w = canon(w);

  std::vector<ProbeGroup> groups;
  for (auto const &list : {gi.groups, extra})
    for (auto const &g : list) {
      ProbeGroup pg{g, {}};
      auto const words = canonical_words(*g);
      for (std::size_t k = 0; k < words.size(); ++k) pg.word[(*g->elements())[k]] = words[k];
      groups.push_back(std::move(pg));
    }
  std::unordered_map<Root, std::vector<std::size_t>, RootHash> holders;
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (auto const &a : groups[k].g->roots()) holders[a].push_back(k);

  auto const U = make_u_group(p, res.w);
  auto const words = canonical_words(*U);
  res.elements = words.size();
  for (std::size_t e = 0; e < words.size(); ++e) {
    // distinct from the identity image means distinct from every other image: x y^-1 is again in U_w
    if (words[e].empty()) {
      res.distinct++;
      continue;
    }
    using State = std::vector<Root>;
    auto const key = [](State const &s) { return word_str(s); };
    std::unordered_map<std::string, std::string> parent; // state -> previous state
    std::deque<std::pair<State, int>>            q{{words[e], 0}};
    parent[key(words[e])] = "";
    bool collapsed = false, capped = false;
    while (!q.empty() && !collapsed) {
      auto [s, d] = std::move(q.front());
      q.pop_front();
      if (d >= depth) continue;
      for (std::size_t a = 0; a < s.size() && !collapsed; ++a) {
        std::vector<std::size_t> cand = holders.count(s[a]) ? holders[s[a]] : std::vector<std::size_t>{};
        for (std::size_t b = a + 1; b <= s.size() && !cand.empty() && !collapsed; ++b) {
          if (b > a + 1) {
            auto const &h = holders.count(s[b - 1]) ? holders[s[b - 1]] : std::vector<std::size_t>{};
            std::vector<std::size_t> keep;
            std::set_intersection(cand.begin(), cand.end(), h.begin(), h.end(), std::back_inserter(keep));
            cand = std::move(keep);
          }
          for (std::size_t k : cand) {
            Group const &G = *groups[k].g;
            Elem         x = G.one();
            for (std::size_t j = a; j < b; ++j) x = G.mul(x, *G.root_elem(s[j]));
            auto const &nw = groups[k].word.at(x);
            State       t(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(a));
            t.insert(t.end(), nw.begin(), nw.end());
            t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(b), s.end());
            std::string const kt = key(t);
            if (parent.count(kt)) continue;
            if (parent.size() >= kStateCap) {
              capped = true;
              continue;
            }
            parent[kt] = key(s) + " =[" + G.name() + "]";
            if (t.empty()) {
              collapsed = true;
              std::string chain = "1";
              for (std::string cur = kt; !parent[cur].empty();) {
                std::string const pr = parent[cur];
                auto const        cut = pr.rfind(" =[");
                chain = pr.substr(0, cut) + " " + pr.substr(cut + 1) + " " + chain;
                cur = pr.substr(0, cut);
              }
              res.collapses.push_back(fmt::format("{}: {}", U->str(U->elements()->at(e)), chain));
              break;
            }
            q.emplace_back(std::move(t), d + 1);
          }
        }
      }
    }
    if (!collapsed) {
      if (capped) res.inconclusive = true;
      else res.distinct++;
    }
  }
  return res;
}

// --- lemma battery ---------------------------------------------------------------------------------

Report tower_suite(int i_max)
{
  Report rep;
  Check &uniq = rep.add("TOWER/unique P");
  Check &cp = rep.add("TOWER/C'(P) in C_{i+1}");
  Check &hat = rep.add("TOWER/C_i in hat-Phi_P");
  Check &four = rep.add("TOWER/four roots");
  Check &dnew = rep.add("TOWER/new V groups");
  Check &memb = rep.add("TOWER/H_P vertices in G_i");

  for (int i = 0; i <= i_max; ++i) {
    auto const &L = level(i), &L1 = level(i + 1);
    auto const  ps = pieces(i);
    std::vector<WordSet> cones, cps;
    for (auto const &P : ps) {
      cones.push_back(piece_cone(P));
      cps.push_back(P.Rp ? cprime(P.R, *P.Rp) : cprime(P.R));
      auto const m = check_hp_to_gi(P, L, nullptr, nullptr);
      memb.checked += m.checked;
      for (auto const &v : m.violations) memb.fail(v.anchor, v.witness);
    }
    for (auto const &w : L1.C) {
      if (L.C.count(w)) continue;
      uniq.checked++;
      int n = 0;
      for (auto const &c : cones) n += c.count(w) ? 1 : 0;
      if (n != 1) uniq.fail(wn(w), fmt::format("lies in C(P) for {} pieces P of T_{}", n, i));
    }
    for (std::size_t k = 0; k < ps.size(); ++k) {
      for (auto const &w : cps[k]) {
        cp.checked++;
        if (!L1.C.count(w)) cp.fail(ps[k].str(), wn(w) + " not in C_" + std::to_string(i + 1));
      }
      auto const hp = ps[k].Rp ? hat_phi(ps[k].R, *ps[k].Rp) : hat_phi(ps[k].R);
      for (auto const &al : hp) {
        hat.checked++;
        for (auto const &w : L.C)
          if (!al.contains(w)) {
            hat.fail(ps[k].str(), to_string(al) + " misses " + wn(w));
            break;
          }
      }
      auto const dk = piece_roots(ps[k]);
      for (std::size_t j = k + 1; j < ps.size(); ++j) {
        auto const dj = piece_roots(ps[j]);
        four.checked++;
        if (RootSet{dk.delta, dk.gamma, dj.delta, dj.gamma}.size() != 4) four.fail(ps[k].str() + " / " + ps[j].str(), "root repeated");
      }
    }
    // each new V group of G_{i+1} has both its U_{w_T u} inside C'(P) for exactly one P
    for (auto const &top : L1.D) {
      if (L.D.count(top)) continue;
      dnew.checked++;
      unsigned const m = right_descents(top);
      Word const     gate = residue(m, top).w;
      auto const     l = letters_of(m);
      int            n = 0;
      for (auto const &c : cps) n += c.count(canon(gate + l[0])) && c.count(canon(gate + l[1])) ? 1 : 0;
      if (n != 1) dnew.fail("V_" + top, fmt::format("{} pieces P of T_{} contain both lower chambers in C'(P)", n, i));
    }
  }
  return rep;
}

} // namespace c444
