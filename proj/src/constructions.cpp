#include "c444/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <fmt/format.h>

#include "c444/tower.hpp"

namespace c444 {

namespace {

char other(unsigned mask, char a)
{
  for (char g : kGens)
    if ((mask & gen_bit(g)) && g != a) return g;
  throw std::invalid_argument("other: letter not in type");
}

char third_of(unsigned mask)
{
  for (char g : kGens)
    if (!(mask & gen_bit(g))) return g;
  throw std::invalid_argument("third_of: not a rank-2 type");
}

int len_of(Word const &w, std::string const &tail) { return length(w + tail); }

} // namespace

std::vector<Residue> level_residues(int i)
{
  auto const           b = ball(i);
  std::vector<Residue> out;
  for (std::size_t k = b->sphere[static_cast<std::size_t>(i)]; k < b->sphere[static_cast<std::size_t>(i) + 1]; ++k) {
    Word const &w = b->words[k];
    for (unsigned m : {3u, 5u, 6u})
      if (!(right_descents(w) & m)) out.push_back({m, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_t1(Residue const &R)
{
  auto const l = letters_of(R.mask);
  char const r = third_of(R.mask);
  int const  n = static_cast<int>(R.w.size());
  return len_of(R.w, {l[0], r}) == n + 2 && len_of(R.w, {l[1], r}) == n + 2;
}

Residue partner(Residue const &R)
{
  auto const l = letters_of(R.mask);
  char const r = third_of(R.mask);
  int const  n = static_cast<int>(R.w.size());
  if (in_t1(R)) throw ConstructionError(R.str() + " lies in T_{i,1} and has no partner");
  char const u = len_of(R.w, {l[0], r}) == n ? l[0] : l[1];
  char const v = u == l[0] ? l[1] : l[0];
  if (len_of(R.w, {u, r}) != n || len_of(R.w, {v, r}) != n + 2)
    throw ConstructionError(fmt::format("{}: lengths l(w_R {}{}) = {}, l(w_R {}{}) = {} violate the not-both-down lemma",
                                        R.str(), u, r, len_of(R.w, {u, r}), v, r, len_of(R.w, {v, r})));
  return residue(gen_bit(v) | gen_bit(r), R.w + u);
}

ResidueClassification classify_level(int i)
{
  ResidueClassification c;
  c.i = i;
  c.all = level_residues(i);
  for (auto const &R : c.all) {
    if (in_t1(R)) {
      c.t1.push_back(R);
      continue;
    }
    Residue const T = partner(R);
    if (T == R || T.w.size() != static_cast<std::size_t>(i) || in_t1(T) || partner(T) != R)
      throw ConstructionError("partner of " + R.str() + " is not an involution inside R_i");
    if (R < T) c.t2.emplace_back(R, T);
  }
  return c;
}

// --- kinds and vertex lists -------------------------------------------------------------------------

namespace {

struct KindInfo
{
  Kind                     kind;
  char const              *name;
  std::vector<std::string> list;
};

std::vector<KindInfo> const &kind_table()
{
  static std::vector<KindInfo> const t = {
    {Kind::VR, "VR", {"U w sr", "V w [st]", "U w tr"}},
    {Kind::OR, "OR", {"V w s[rt]", "U w [st]", "V w t[rs]"}},
    {Kind::HR, "HR", {"U w s[rt]", "V w st[rs]", "U w [st]", "V w ts[rt]", "U w t[rs]"}},
    {Kind::JRt, "JRt", {"U w s[rt]", "V w st[rs]", "V w tst[rs]", "U w ts[rt]", "V w tsr[st]", "U w t[rs]"}},
    {Kind::GR,
     "GR",
     {"U w s[rt]", "V w str[st]", "U w st[rs]", "V w stsr[st]", "U w sts[rt]", "V w [st]r[st]", "U w tst[rs]",
      "V w tstr[st]", "U w ts[rt]", "V w tsr[st]", "U w t[rs]"}},
    {Kind::ERs,
     "ERs",
     {"U w' rs[rt]", "V w' rsrt[rs]", "U w' rsr[st]", "V w srt[rs]", "U w s[rt]", "V w st[rs]", "U w [st]",
      "V w ts[rt]", "U w t[rs]"}},
    {Kind::URs,
     "URs",
     {"U w' rs[rt]", "V w' rsrt[rs]", "U w' rsr[st]", "V w srt[rs]", "U w s[rt]", "V w str[st]", "U w st[rs]",
      "V w stsr[st]", "U w sts[rt]", "V w [st]r[st]", "U w tst[rs]", "V w tstr[st]", "U w ts[rt]", "V w tsr[st]",
      "U w t[rs]"}},
    {Kind::XR,
     "XR",
     {"U w' rs[rt]", "V w' rsrt[rs]", "U w' rsr[st]", "V w srt[rs]", "U w s[rt]", "V w st[rs]", "U w [st]",
      "V w t[rs]", "U w' s[rt]"}},
    {Kind::HRR,
     "HRR",
     {"U wT rtr[st]", "V wT [rt]s[rt]", "U wT trt[rs]", "V wT trts[rt]", "U wT tr[st]", "V w rs[rt]", "U w [rs]",
      "V w sr[st]", "U w' [rt]", "V w' rt[rs]", "U wT' sr[st]", "V wT' srst[rs]", "U wT' srs[rt]",
      "V wT' [rs]t[rs]", "U wT' rsr[st]"}},
    {Kind::JRR,
     "JRR",
     {"U wT rtr[st]", "V wT [rt]s[rt]", "U wT trt[rs]", "V wT trts[rt]", "U wT tr[st]", "V w rst[rs]",
      "U w rs[rt]", "V w rsr[st]", "V w sr[st]", "U w' [rt]", "V w' rt[rs]", "U wT' sr[st]", "V wT' srst[rs]",
      "U wT' srs[rt]", "V wT' [rs]t[rs]", "U wT' rsr[st]"}},
    {Kind::GRR,
     "GRR",
     {"U wT rtr[st]", "V wT [rt]s[rt]", "U wT trt[rs]", "V wT trts[rt]", "U wT tr[st]", "V w rst[rs]",
      "U w rs[rt]", "V w rsrt[rs]", "U w rsr[st]", "V w [rs]t[rs]", "U w srs[rt]", "V w srst[rs]", "U w sr[st]",
      "V w' trts[rt]", "U w' trt[rs]", "V w' [rt]s[rt]", "U w' rtr[st]", "V w' rtrs[rt]", "U w' rt[rs]",
      "V w' rts[rt]", "U wT' sr[st]", "V wT' srst[rs]", "U wT' srs[rt]", "V wT' [rs]t[rs]", "U wT' rsr[st]"}},
    {Kind::C, "C", {"U wT [rt]", "V wT tr[st]", "U w [rs]", "V w sr[st]", "U w' [rt]", "V wT' sr[st]", "U wT' [rs]"}},
    {Kind::CRR,
     "CRR",
     {"U wT rtr[st]", "V wT [rt]s[rt]", "U w rt[rs]", "V w rts[rt]", "U w r[st]", "V w rs[rt]", "U w [rs]",
      "V w sr[st]", "U w' [rt]", "V w' r[st]", "U wT' [rs]"}},
  };
  return t;
}

KindInfo const &info(Kind k)
{
  for (auto const &x : kind_table())
    if (x.kind == k) return x;
  throw std::invalid_argument("unknown kind");
}

} // namespace

std::string kind_name(Kind k) { return info(k).name; }

std::optional<Kind> parse_kind(std::string_view s)
{
  for (auto const &x : kind_table())
    if (s == x.name) return x.kind;
  return std::nullopt;
}

bool is_pair_kind(Kind k) { return k == Kind::HRR || k == Kind::JRR || k == Kind::GRR || k == Kind::C || k == Kind::CRR; }

char Labeling::operator()(char abstract) const
{
  switch (abstract) {
  case 'r': return r;
  case 's': return s;
  case 't': return t;
  }
  throw std::invalid_argument(std::string("not an abstract letter: ") + abstract);
}

std::string Anchor::str() const
{
  if (Rp) return fmt::format("({}, {})", R.str(), Rp->str());
  return fmt::format("{} s={} t={}", R.str(), lab.s, lab.t);
}

Anchor t1_anchor(Residue const &R, char s)
{
  if (R.rank() != 2) throw ConstructionError("anchor needs a rank-2 residue");
  if (s == 0) s = letters_of(R.mask)[0];
  if (!(R.mask & gen_bit(s))) throw ConstructionError(fmt::format("{} is not in the type of {}", s, R.str()));
  return {R, {third_of(R.mask), s, other(R.mask, s)}, std::nullopt};
}

Anchor pair_anchor(Residue const &R)
{
  Residue const T = partner(R);
  char const    v = letters_of(R.mask & T.mask)[0];
  char const    u = other(R.mask, v);
  return {R, {v, u, third_of(R.mask)}, T};
}

Anchor swapped(Anchor const &a)
{
  if (!a.Rp) throw ConstructionError("swapped: not a pair anchor");
  return {*a.Rp, {a.lab.r, a.lab.t, a.lab.s}, a.R};
}

std::vector<std::string> const &vertex_notation(Kind k) { return info(k).list; }

namespace {

Word base_word(std::string_view base, Anchor const &a)
{
  auto const  &L = a.lab;
  auto const   rs = gen_bit(L.r) | gen_bit(L.s), rt = gen_bit(L.r) | gen_bit(L.t);
  Word const   w = a.R.w;
  if (base == "w") return w;
  if (!a.Rp) {
    if (base == "w'") return residue(rs, w).w;
  } else {
    Word const wp = a.Rp->w;
    if (base == "w'") return wp;
    if (base == "wT") return residue(rt, w).w;
    if (base == "wT'") return residue(rs, wp).w;
  }
  throw std::invalid_argument("unknown base " + std::string(base));
}

// "s[rt]t" -> letters, with the last bracket recorded
struct Expanded
{
  std::string letters;
  std::size_t last_bracket = std::string::npos; // start of the final [..] expansion
  unsigned    last_mask = 0;
  bool        ends_in_bracket = false;
};

Expanded expand(std::string_view tail, Labeling const &L)
{
  Expanded e;
  for (std::size_t k = 0; k < tail.size(); ++k) {
    if (tail[k] == '[') {
      char const a = L(tail[k + 1]), b = L(tail[k + 2]);
      e.last_bracket = e.letters.size();
      e.last_mask = gen_bit(a) | gen_bit(b);
      e.letters += std::string{a, b, a, b};
      k += 3;
      e.ends_in_bracket = k + 1 == tail.size();
    } else {
      e.letters += L(tail[k]);
      e.ends_in_bracket = false;
    }
  }
  return e;
}

void side_conditions(Kind k, Anchor const &a)
{
  auto const  &L = a.lab;
  Word const   w = a.R.w;
  int const    n = static_cast<int>(w.size());
  if (is_pair_kind(k)) {
    if (!a.Rp) throw ConstructionError(kind_name(k) + " needs a pair anchor {R, R'}");
    if (in_t1(a.R)) throw ConstructionError(a.R.str() + " lies in T_{i,1}, so {R, R'} is not in T_{i,2}");
    if (partner(a.R) != *a.Rp) throw ConstructionError(a.Rp->str() + " is not the partner T_R of " + a.R.str());
    return;
  }
  if (a.Rp) throw ConstructionError(kind_name(k) + " needs a single residue");
  if (!in_t1(a.R))
    throw ConstructionError(fmt::format("{} not in T_{{i,1}}: l(w_R sr) = {}, l(w_R tr) = {}, needs l(w_R)+2 = {}",
                                        a.R.str(), len_of(w, {L.s, L.r}), len_of(w, {L.t, L.r}), n + 2));
  if (k == Kind::ERs || k == Kind::URs || k == Kind::XR) {
    int const l = len_of(w, {L.r, L.s});
    if (l != n - 2) throw ConstructionError(fmt::format("{}: l(w_R rs) = {}, needs l(w_R) - 2 = {}", a.str(), l, n - 2));
  }
  if (k == Kind::XR) {
    int const l = len_of(w, {L.r, L.t});
    if (l != n) throw ConstructionError(fmt::format("{}: l(w_R rt) = {}, needs l(w_R) = {}", a.str(), l, n));
  }
}

} // namespace

std::vector<VertexSpec> vertex_specs(Kind k, Anchor const &a)
{
  side_conditions(k, a);
  std::vector<VertexSpec> out;
  for (auto const &nt : vertex_notation(k)) {
    auto const sp1 = nt.find(' '), sp2 = nt.find(' ', sp1 + 1);
    bool const is_v = nt[0] == 'V';
    Word const base = base_word(std::string_view(nt).substr(sp1 + 1, sp2 - sp1 - 1), a);
    auto const ex = expand(std::string_view(nt).substr(sp2 + 1), a.lab);
    Word const full = canon(base + ex.letters);
    if (full.size() != base.size() + ex.letters.size())
      throw ConstructionError(fmt::format("{} at {}: {}.{} is not reduced", nt, a.str(), base.empty() ? "1" : base, ex.letters));
    VertexSpec v;
    v.is_v = is_v;
    v.word = full;
    v.notation = nt;
    if (is_v) {
      if (!ex.ends_in_bracket) throw std::logic_error("V vertex without a final r_J: " + nt);
      v.gate = canon(base + ex.letters.substr(0, ex.last_bracket));
      v.mask = ex.last_mask;
      if (residue(v.mask, v.gate).w != v.gate)
        throw ConstructionError(fmt::format("{} at {}: {} is not the gate of its {}-residue", nt, a.str(), v.gate, letters_of(v.mask)));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// --- group bank ----------------------------------------------------------------------------------

void GroupBank::certify(Word const &w)
{
  if (certified_.count(w)) return;
  PcGroup    g = build_ugroup(p_, w);
  auto const c = certify_cb3(g, p_);
  cb3_.checked++;
  if (!c.consistent()) {
    std::string first;
    for (auto const &ch : c.report.checks)
      if (!ch.ok()) {
        first = ch.id + ": " + ch.violations.front().witness;
        break;
      }
    cb3_.fail("U_" + w, first);
  }
  certified_[w] = c.consistent();
}

GroupPtr GroupBank::u(std::string_view w)
{
  Word const                  cw = canon(w);
  std::lock_guard<std::mutex> lk(mu_);
  std::string const           key = "U_" + cw;
  if (auto it = groups_.find(key); it != groups_.end()) return it->second;
  certify(cw);
  return groups_[key] = make_u_group(p_, cw);
}

GroupPtr GroupBank::v(Residue const &R)
{
  Word const                  top = canon(R.w + longest_element(R.mask));
  std::lock_guard<std::mutex> lk(mu_);
  std::string const           key = "V_" + top;
  if (auto it = groups_.find(key); it != groups_.end()) return it->second;
  certify(top);
  return groups_[key] = make_v_group(p_, R);
}

GroupPtr GroupBank::get(VertexSpec const &s) { return s.is_v ? v(residue(s.mask, s.gate)) : u(s.word); }

Report GroupBank::certificates() const
{
  std::lock_guard<std::mutex> lk(mu_);
  Report                      r;
  r.add("CB3") = cb3_;
  return r;
}

NamedConstruction build_named(Kind k, Anchor const &a, GroupBank &bank)
{
  NamedConstruction c{k, a, vertex_specs(k, a), nullptr};
  std::vector<GroupPtr> vs;
  for (auto const &s : c.specs) vs.push_back(bank.get(s));
  std::vector<EdgeSpec> es;
  for (int i = 0; i + 1 < static_cast<int>(vs.size()); ++i) es.push_back({i, i + 1, {}});
  c.tree = std::make_shared<TreeOfGroups>(kind_name(k) + "[" + a.str() + "]", std::move(vs), es);
  return c;
}

std::vector<Root> generator_support(NamedConstruction const &c) { return c.tree->roots(); }

std::optional<std::vector<int>> find_vertex_map(TreeOfGroups const &big, TreeOfGroups const &small)
{
  int const                     n = small.nv();
  std::vector<std::vector<int>> cand(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < big.nv(); ++b) {
      bool ok = true;
      for (auto const &r : small.vertex(v)->roots())
        if (!big.vertex(b)->has_root(r)) {
          ok = false;
          break;
        }
      if (ok) cand[v].push_back(b);
    }
  std::vector<int>          map(static_cast<std::size_t>(n), -1);
  std::vector<char>         used(static_cast<std::size_t>(big.nv()), 0);
  auto const                edges = small.edges();
  std::function<bool(int)> go = [&](int v) {
    if (v == n) return true;
    for (int b : cand[v]) {
      if (used[b]) continue;
      bool ok = true;
      for (auto [x, y] : edges) {
        int const o = x == v ? y : y == v ? x : -1;
        if (o >= 0 && o < v && !big.adjacent(b, map[o])) ok = false;
      }
      if (!ok) continue;
      map[v] = b;
      used[b] = 1;
      if (go(v + 1)) return true;
      used[b] = 0;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return map;
}

namespace {

void leaves(GroupPtr const &g, std::vector<GroupPtr> &out)
{
  if (auto const *t = dynamic_cast<TreeOfGroups const *>(g.get())) {
    for (int v = 0; v < t->nv(); ++v) leaves(t->vertex(v), out);
  } else out.push_back(g);
}

void absorb(Check &c, Check const &sub, std::string const &prefix)
{
  c.checked += sub.checked;
  for (auto const &v : sub.violations) c.fail(prefix + v.anchor, v.witness);
}

} // namespace

Check certify_iso(std::vector<GroupPtr> const &factors, std::vector<GroupPtr> const &amalgamated, Group const &target,
                  std::string const &claim)
{
  Check c;
  c.id = "ISO " + claim;
  if (amalgamated.size() + 1 != factors.size()) throw std::invalid_argument("certify_iso: need one amalgamated group per seam");
  for (std::size_t j = 0; j < amalgamated.size(); ++j) {
    absorb(c, check_root_hom(*amalgamated[j], *factors[j]), "");
    absorb(c, check_root_hom(*amalgamated[j], *factors[j + 1]), "");
  }
  // every root must live in a run of consecutive factors, carried across each seam
  std::vector<Root> all;
  for (auto const &f : factors)
    for (auto const &r : f->roots())
      if (std::find(all.begin(), all.end(), r) == all.end()) all.push_back(r);
  for (auto const &r : all) {
    c.checked++;
    std::vector<std::size_t> in;
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (factors[j]->has_root(r)) in.push_back(j);
    for (std::size_t j = in.front(); j < in.back(); ++j)
      if (!factors[j + 1]->has_root(r) || !amalgamated[j]->has_root(r))
        c.fail(to_string(r), fmt::format("generator of {} and {} not identified through {}", factors[in.front()]->name(),
                                         factors[in.back()]->name(), amalgamated[j]->name()));
  }
  c.checked++;
  std::vector<Root> tr = target.roots(), fr = all;
  auto const        by = [](Root const &a, Root const &b) { return to_string(a) < to_string(b); };
  std::sort(tr.begin(), tr.end(), by);
  std::sort(fr.begin(), fr.end(), by);
  if (tr != fr) c.fail(target.name(), fmt::format("generator sets differ: {} roots against {}", fr.size(), tr.size()));
  for (auto const &f : factors) absorb(c, check_root_hom(*f, target), "forward: ");
  std::vector<GroupPtr> ls;
  if (auto const *t = dynamic_cast<TreeOfGroups const *>(&target))
    for (int v = 0; v < t->nv(); ++v) leaves(t->vertex(v), ls);
  for (auto const &l : ls) {
    c.checked++;
    bool done = false;
    for (auto const &f : factors) {
      bool all_in = true;
      for (auto const &r : l->roots()) all_in = all_in && f->has_root(r);
      if (!all_in) continue;
      auto const h = check_root_hom(*l, *f);
      if (h.ok()) {
        done = true;
        break;
      }
    }
    if (!done) c.fail("backward: " + l->name(), "no factor receives this vertex group by a root homomorphism");
  }
  return c;
}

// --- construction statements -------------------------------------------------------------------------

namespace {

void put(Report &rep, std::string id, Check c)
{
  c.id = id;
  rep.add(std::move(id)) = std::move(c);
}

struct Ctx
{
  GroupBank   &bank;
  Report      &rep;
  int          samples;
  std::mt19937 rng{4444};
};

TreeOfGroups::Word random_word(TreeOfGroups const &t, std::mt19937 &rng, int syl)
{
  TreeOfGroups::Word w;
  for (int i = 0; i < syl; ++i) {
    int const v = std::uniform_int_distribution<int>(0, t.nv() - 1)(rng);
    auto const *el = t.vertex(v)->elements();
    if (!el) continue;
    w.emplace_back(v, (*el)[std::uniform_int_distribution<std::size_t>(0, el->size() - 1)(rng)]);
  }
  return w;
}

// the contraction the proof uses is a normal-form bijection on sampled words of at most 6 syllables
void contraction_sample(Ctx &x, TreePtr const &fine, Contraction const &c, std::string const &claim)
{
  Check &ch = x.rep.add("CONTRACT " + claim);
  for (int k = 0; k < x.samples; ++k) {
    Elem const a = fine->reduce(random_word(*fine, x.rng, 1 + k % 6));
    Elem const b = fine->reduce(random_word(*fine, x.rng, 1 + (k + 3) % 6));
    Elem const ca = c.to_coarse(*fine, a), cb = c.to_coarse(*fine, b);
    ch.checked++;
    if (c.to_fine(*fine, ca) != a) ch.fail(fine->str(a), "round trip through the contracted tree changed the element");
    if (c.to_coarse(*fine, fine->mul(a, b)) != c.tree->mul(ca, cb)) ch.fail(fine->str(a) + " * " + fine->str(b), "product not preserved");
    if ((a == b) != (ca == cb)) ch.fail(fine->str(a) + " , " + fine->str(b), "equality not preserved");
  }
}

void embed_claim(Ctx &x, std::string const &claim, TreePtr const &big, std::vector<std::vector<int>> const &parts,
                 TreeOfGroups const &small, std::vector<int> vmap = {})
{
  if (vmap.empty())
    for (int v = 0; v < small.nv(); ++v) vmap.push_back(v);
  auto const c = contract(big, parts);
  contraction_sample(x, big, c, claim);
  auto const cert = certify_embedding(*c.tree, small, vmap);
  for (auto const *ch : {&cert.vertices, &cert.preimages, &cert.edges}) {
    Check &o = x.rep.add(claim + ": " + ch->id.substr(ch->id.rfind(':') + 2));
    o.checked = ch->checked;
    o.violations = ch->violations;
  }
}

std::vector<std::vector<int>> singles_except(int n, std::vector<std::vector<int>> const &groups)
{
  std::vector<std::vector<int>> out;
  int                           v = 0;
  while (v < n) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](auto const &g) { return g.front() == v; });
    if (it != groups.end()) {
      out.push_back(*it);
      v = it->back() + 1;
    } else out.push_back({v++});
  }
  return out;
}

void subtree_claim(Ctx &x, std::string const &claim, TreeOfGroups const &big, TreeOfGroups const &small)
{
  auto const vm = find_vertex_map(big, small);
  if (!vm) {
    x.rep.add(claim + ": vertex containment").fail(small.name(), "no vertex map into " + big.name() + " by root containment");
    return;
  }
  auto const cert = certify_embedding(big, small, *vm);
  for (auto const *ch : {&cert.vertices, &cert.preimages, &cert.edges}) {
    Check &o = x.rep.add(claim + ": " + ch->id.substr(ch->id.rfind(':') + 2));
    o.checked = ch->checked;
    o.violations = ch->violations;
  }
}

void level_claim(Ctx &x, std::string const &claim, Residue const &T, int want, bool t1)
{
  Check &c = x.rep.add(claim);
  c.checked++;
  if (static_cast<int>(T.w.size()) != want || in_t1(T) != t1)
    c.fail(T.str(), fmt::format("l(w_T) = {}, in T_1 = {}; expected level {} and {}", T.w.size(), in_t1(T), want, t1));
}

std::vector<std::string> names(std::vector<VertexSpec> const &v, std::size_t from = 0, std::size_t n = SIZE_MAX)
{
  std::vector<std::string> out;
  for (std::size_t i = from; i < v.size() && i < from + n; ++i) out.push_back(v[i].name());
  return out;
}

void same_list(Ctx &x, std::string const &claim, std::vector<std::string> const &a, std::vector<std::string> const &b)
{
  Check &c = x.rep.add(claim);
  c.checked++;
  if (a != b) c.fail(fmt::format("{} vertices against {}", a.size(), b.size()), fmt::format("first: {} / {}", a.empty() ? "-" : a[0], b.empty() ? "-" : b[0]));
}

// find a window of `big` equal to `small` in either direction
bool window_match(std::vector<std::string> const &big, std::vector<std::string> const &small, std::size_t from)
{
  if (from + small.size() > big.size()) return false;
  std::vector<std::string> w(big.begin() + static_cast<std::ptrdiff_t>(from), big.begin() + static_cast<std::ptrdiff_t>(from + small.size()));
  if (w == small) return true;
  std::reverse(w.begin(), w.end());
  return w == small;
}

void t1_family(Ctx &x, Kind k, Anchor const &a)
{
  auto &bank = x.bank;
  auto const &L = a.lab;
  int const   i = static_cast<int>(a.R.w.size());
  std::string const at = "[" + a.str() + "]";
  auto const  rs = gen_bit(L.r) | gen_bit(L.s), rt = gen_bit(L.r) | gen_bit(L.t);

  if (k == Kind::VR || k == Kind::OR) {
    auto const V = build_named(Kind::VR, a, bank), O = build_named(Kind::OR, a, bank);
    Check     &c = x.rep.add("V_R -> O_R root map " + at);
    absorb(c, check_root_hom(*V.tree, *O.tree), "");
    Check &s = x.rep.add("V_R generators " + at);
    s.checked++;
    RootSet want;
    for (auto const &r : phi_of(a.R.w + L.s + L.r)) want.insert(r);
    for (auto const &r : phi_of(a.R.w + L.t + L.r)) want.insert(r);
    auto const sup = generator_support(V);
    if (RootSet(sup.begin(), sup.end()) != want)
      s.fail(a.str(), fmt::format("support has {} roots, expected {}", sup.size(), want.size()));
    return;
  }
  if (k == Kind::HR || k == Kind::JRt || k == Kind::GR) {
    auto const H = build_named(Kind::HR, a, bank), J = build_named(Kind::JRt, a, bank), G = build_named(Kind::GR, a, bank);
    embed_claim(x, "H_R -> J_R,t " + at, J.tree, {{0}, {1}, {2}, {3}, {4, 5}}, *H.tree);
    embed_claim(x, "J_R,t -> G_R " + at, G.tree, {{0, 1}, {2, 3}, {4, 5, 6}, {7, 8}, {9}, {10}}, *J.tree);
    Residue const T = residue(rt, a.R.w + L.t + L.s);
    level_claim(x, "T = R_rt(w_R ts) in T_{i+2,1} " + at, T, i + 2, true);
    auto const VT = build_named(Kind::VR, t1_anchor(T), bank), OT = build_named(Kind::OR, t1_anchor(T), bank);
    subtree_claim(x, "V_T -> H_R " + at, *H.tree, *VT.tree);
    put(x.rep, "V_T -> O_T root map " + at, check_root_hom(*VT.tree, *OT.tree));
    put(x.rep, "J_R,t = H_R *_V_T O_T " + at, certify_iso({H.tree, OT.tree}, {VT.tree}, *J.tree, "J_R,t = H_R *_V_T O_T " + at));
    return;
  }
  if (k == Kind::ERs || k == Kind::URs) {
    auto const H = build_named(Kind::HR, a, bank), G = build_named(Kind::GR, a, bank);
    auto const E = build_named(Kind::ERs, a, bank), U = build_named(Kind::URs, a, bank);
    embed_claim(x, "H_R -> E_R,s " + at, E.tree, {{0, 1, 2, 3}, {4}, {5}, {6}, {7}, {8}}, *H.tree, {1, 2, 3, 4, 5});
    embed_claim(x, "E_R,s -> U_R,s " + at, U.tree, {{0}, {1}, {2}, {3}, {4, 5}, {6, 7}, {8, 9, 10}, {11, 12}, {13, 14}}, *E.tree);
    put(x.rep, "E_R,s *_H_R G_R = U_R,s " + at, certify_iso({E.tree, G.tree}, {H.tree}, *U.tree, "E_R,s *_H_R G_R = U_R,s " + at));
    int const n = static_cast<int>(a.R.w.size());
    if (len_of(a.R.w, {L.r, L.t}) == n - 2) {
      // {T, T'} in T_{i-2,2} and E_R,s is a window of G_{T,T'}
      Residue const T = residue(rs, a.R.w), Tp = residue(rt, a.R.w);
      Check        &c = x.rep.add("E_R,s -> G_{T,T'} " + at);
      c.checked++;
      if (in_t1(T) || partner(T) != Tp) c.fail(a.str(), "{T, T'} is not in T_{i-2,2}");
      else {
        bool hit = false;
        for (Residue const &first : {T, Tp}) {
          auto const g = names(vertex_specs(Kind::GRR, pair_anchor(first)));
          hit = hit || window_match(g, names(E.specs), 6);
          hit = hit || window_match(g, names(E.specs), g.size() - 15);
        }
        if (!hit) c.fail(a.str(), "vertex groups of E_R,s are not vertex groups 7-15 of G_{T,T'}");
      }
    }
    return;
  }
  if (k == Kind::XR) {
    auto const X = build_named(Kind::XR, a, bank);
    Residue const T = residue(rs, a.R.w + L.t);
    level_claim(x, "T = R_rs(w_R t) in T_{i+1,1} " + at, T, i + 1, true);
    auto const VT = build_named(Kind::VR, t1_anchor(T), bank);
    subtree_claim(x, "V_T -> X_R " + at, *X.tree, *VT.tree);
    Residue const Z = residue(rs, a.R.w);
    Check        &c = x.rep.add("X_R -> G_Z " + at);
    c.checked++;
    auto const xs = names(X.specs);
    bool       hit = false;
    if (in_t1(Z)) {
      for (char s : letters_of(Z.mask)) {
        auto const g = names(vertex_specs(Kind::GR, t1_anchor(Z, s)));
        hit = hit || window_match(g, xs, g.size() - 9) || window_match(g, xs, 0);
      }
    } else {
      for (Residue const &first : {Z, partner(Z)}) {
        auto const g = names(vertex_specs(Kind::GRR, pair_anchor(first)));
        hit = hit || window_match(g, xs, 12) || window_match(g, xs, g.size() - 21);
      }
    }
    if (!hit) c.fail(a.str(), "vertex groups of X_R do not form a window of G_Z");
  }
}

void pair_family(Ctx &x, Kind k, Anchor const &a)
{
  auto       &bank = x.bank;
  auto const &L = a.lab;
  int const   i = static_cast<int>(a.R.w.size());
  std::string const at = "[" + a.str() + "]";
  auto const  rs = gen_bit(L.r) | gen_bit(L.s), rt = gen_bit(L.r) | gen_bit(L.t);

  if (k == Kind::HRR || k == Kind::JRR || k == Kind::GRR) {
    auto const H = build_named(Kind::HRR, a, bank), J = build_named(Kind::JRR, a, bank), G = build_named(Kind::GRR, a, bank);
    embed_claim(x, "H_RR' -> J_(R,R') " + at, J.tree, singles_except(16, {{4, 5}}), *H.tree);
    embed_claim(x, "J_(R,R') -> G_RR' " + at, G.tree, singles_except(25, {{6, 7}, {8, 9, 10}, {11, 12, 13}, {14, 15, 16}, {17, 18}, {19, 20}}), *J.tree);
    Residue const Z = residue(rt, a.R.w + L.r + L.s);
    level_claim(x, "Z = R_rt(w_R rs) in T_{i+2,1} " + at, Z, i + 2, true);
    auto const VZ = build_named(Kind::VR, t1_anchor(Z), bank), OZ = build_named(Kind::OR, t1_anchor(Z), bank);
    subtree_claim(x, "V_Z -> H_RR' " + at, *H.tree, *VZ.tree);
    put(x.rep, "J_(R,R') = H_RR' *_V_Z O_Z " + at, certify_iso({H.tree, OZ.tree}, {VZ.tree}, *J.tree, "J_(R,R') = H_RR' *_V_Z O_Z " + at));
    return;
  }
  // C and C_(R,R')
  Anchor const b = swapped(a);
  auto const   C = build_named(Kind::C, a, bank), Cb = build_named(Kind::C, b, bank);
  auto const   CRR = build_named(Kind::CRR, a, bank), CR = build_named(Kind::CRR, b, bank);
  auto         rev = names(Cb.specs);
  std::reverse(rev.begin(), rev.end());
  same_list(x, "C symmetric under s <-> t " + at, names(C.specs), rev);
  std::vector<std::vector<int>> const parts{{0, 1, 2}, {3, 4}, {5, 6}, {7}, {8}, {9}, {10}};
  embed_claim(x, "C -> C_(R,R') " + at, CRR.tree, parts, *C.tree);
  embed_claim(x, "C -> C_(R',R) " + at, CR.tree, parts, *Cb.tree);
  auto const H = build_named(Kind::HRR, a, bank);
  // C_(R',R) read left to right is CR reversed; the root-level certificate does not depend on the order
  put(x.rep, "H_RR' = C_(R,R') *_C C_(R',R) " + at, certify_iso({CRR.tree, CR.tree}, {C.tree}, *H.tree, "H_RR' = C_(R,R') *_C C_(R',R) " + at));
  if (i == 0) return;
  Residue const Tp = residue(rs, a.Rp->w);
  level_claim(x, "T' = R_rs(w_R') in T_{i-1,1} " + at, Tp, i - 1, true);
  if (!in_t1(Tp)) return;
  Anchor const at_tp = t1_anchor(Tp, L.s);
  Check       &cl = x.rep.add("l(w_T' ts) = l(w_T') - 2 " + at);
  cl.checked++;
  if (len_of(Tp.w, {L.t, L.s}) != static_cast<int>(Tp.w.size()) - 2) {
    cl.fail(Tp.str(), "length condition fails");
    return;
  }
  auto const E = build_named(Kind::ERs, at_tp, bank), U = build_named(Kind::URs, at_tp, bank);
  auto       cr = names(CR.specs);
  std::reverse(cr.begin(), cr.end());
  same_list(x, "U_T',s starts with C_(R',R) " + at, names(U.specs, 0, 11), cr);
  auto const e7 = names(E.specs, 0, 7);
  auto       c7 = names(C.specs);
  if (e7 != c7) std::reverse(c7.begin(), c7.end());
  same_list(x, "E_T',s starts with C " + at, e7, c7);
  embed_claim(x, "E_T',s -> U_T',s " + at, U.tree, {{0}, {1}, {2}, {3}, {4, 5}, {6, 7}, {8, 9, 10}, {11, 12}, {13, 14}}, *E.tree);
}

} // namespace

Report verify_construction(Kind k, Anchor const &a, GroupBank &bank, int samples)
{
  Report rep;
  Ctx    x{bank, rep, samples};
  if (is_pair_kind(k)) pair_family(x, k, a);
  else t1_family(x, k, a);
  rep.merge(bank.certificates());
  return rep;
}

Report verify_level(int i, GroupBank &bank, int samples)
{
  Report     rep;
  Ctx        x{bank, rep, samples};
  auto const cl = classify_level(i);
  for (auto const &R : cl.t1)
    for (char s : letters_of(R.mask)) {
      Anchor const a = t1_anchor(R, s);
      for (Kind k : {Kind::VR, Kind::HR}) t1_family(x, k, a);
      int const n = static_cast<int>(R.w.size());
      if (len_of(R.w, {a.lab.r, a.lab.s}) == n - 2) {
        t1_family(x, Kind::ERs, a);
        if (len_of(R.w, {a.lab.r, a.lab.t}) == n) t1_family(x, Kind::XR, a);
      }
    }
  for (auto const &[R, Rp] : cl.t2)
    for (Residue const &first : {R, Rp}) {
      Anchor const a = pair_anchor(first);
      pair_family(x, Kind::HRR, a);
      pair_family(x, Kind::C, a);
    }
  rep.merge(bank.certificates());
  return rep;
}

// --- non-simple roots ------------------------------------------------------------------------------

NonSimpleRootData nonsimple_data(Residue const &R)
{
  auto const ns = nonsimple_roots(R);
  return {ns[0], ns[1], R, R};
}

NonSimpleRootData nonsimple_data(Residue const &R, Residue const &Rp)
{
  auto const a = nonsimple_roots(R), b = nonsimple_roots(Rp);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (a[x] == b[y]) return {a[1 - x], b[1 - y], R, Rp};
  throw ConstructionError(R.str() + " and " + Rp.str() + " share no non-simple root");
}

std::vector<Root> hat_phi(Residue const &R)
{
  auto const l = letters_of(R.mask);
  char const s = l[0], t = l[1], r = third_of(R.mask);
  auto const rs = gen_bit(r) | gen_bit(s), rt = gen_bit(r) | gen_bit(t);
  Word const top = R.w + longest_element(R.mask);
  std::vector<Root> out;
  for (Residue const &Q : {residue(rs, R.w + s + t), residue(rt, top), residue(rs, top), residue(rt, R.w + t + s)})
    for (auto const &a : nonsimple_roots(Q)) out.push_back(a);
  return out;
}

std::vector<Root> hat_phi(Residue const &R, Residue const &Rp)
{
  auto out = hat_phi(R);
  for (auto const &a : hat_phi(Rp)) out.push_back(a);
  return out;
}

Report lemma_suite_nonsimple(int i_max)
{
  Report rep;
  Check &k = rep.add("nonsimple/k=i+2");
  Check &four = rep.add("nonsimple/four-roots");
  Check &neg = rep.add("nonsimple/-eps_P in eps_Q");
  Check &alt = rep.add("nonsimple/i,i+1 alternative");
  Check &wneg = rep.add("nonsimple/w in -delta u -gamma");
  Check &aux = rep.add("nonsimple/auxiliary");
  Check &hat = rep.add("nonsimple/C_i in hat-Phi");

  std::vector<std::vector<TowerPiece>> ps;
  for (int i = 0; i <= i_max + 1; ++i) ps.push_back(pieces(i));
  for (int i = 0; i <= i_max; ++i) {
    auto const &P = ps[static_cast<std::size_t>(i)];
    auto const &Ci = level(i).C;
    for (std::size_t a = 0; a < P.size(); ++a) {
      auto const da = piece_roots(P[a]);
      k.checked++;
      if (k_alpha(da.delta) != i + 2 || k_alpha(da.gamma) != i + 2)
        k.fail(P[a].str(), fmt::format("k = {}, {}", k_alpha(da.delta), k_alpha(da.gamma)));
      for (std::size_t b = a + 1; b < P.size(); ++b) {
        auto const db = piece_roots(P[b]);
        RootSet    s{da.delta, da.gamma, db.delta, db.gamma};
        four.checked++;
        if (s.size() != 4) four.fail(P[a].str() + " / " + P[b].str(), fmt::format("{} distinct roots", s.size()));
        if (i == 0) continue;
        for (auto const &[ea, eb] : {std::pair{da, db}, std::pair{db, da}})
          for (Root const &x : {ea.delta, ea.gamma})
            for (Root const &y : {eb.delta, eb.gamma}) {
              neg.checked++;
              if (!root_subset(-x, y)) neg.fail(P[a].str() + " / " + P[b].str(), "-" + to_string(x) + " not in " + to_string(y));
            }
      }
      // roots of the next level
      for (auto const &Q : ps[static_cast<std::size_t>(i) + 1]) {
        auto const dq = piece_roots(Q);
        for (auto const &[eq, Rq] : {std::pair{dq.delta, dq.R_delta}, std::pair{dq.gamma, dq.R_gamma}})
          for (auto const &[ep, Rp] : {std::pair{da.delta, da.R_delta}, std::pair{da.gamma, da.R_gamma}}) {
            alt.checked++;
            if (root_subset(-ep, eq)) continue;
            bool const panel = Rq.mask != Rp.mask && Rp.contains(Rq.w) && Rp.w.size() + 1 == Rq.w.size();
            if (!panel) alt.fail(Q.str() + " / " + P[a].str(), to_string(eq) + " , " + to_string(ep));
          }
      }
      for (auto const &w : piece_cone(P[a])) {
        if (Ci.count(w)) continue;
        wneg.checked++;
        if (da.delta.contains(w) && da.gamma.contains(w)) wneg.fail(P[a].str(), w);
      }
      std::vector<Root> const hp = P[a].Rp ? hat_phi(P[a].R, *P[a].Rp) : hat_phi(P[a].R);
      for (auto const &al : hp)
        for (auto const &w : Ci) {
          hat.checked++;
          if (!al.contains(w)) {
            hat.fail(P[a].str(), to_string(al) + " misses " + (w.empty() ? "1" : w));
            break;
          }
        }
    }
    // auxiliary lemma over all of R_i
    for (auto const &R : level_residues(i)) {
      char const r = third_of(R.mask);
      int const  n = static_cast<int>(R.w.size());
      for (char s : letters_of(R.mask)) {
        char const t = other(R.mask, s);
        if (len_of(R.w, {r}) != n - 1 || len_of(R.w, {r, t}) != n) continue;
        auto const cone = residue_cone(residue(gen_bit(r) | gen_bit(t), R.w));
        Root const b = -act(R.w + t + r, simple_root(t));
        for (auto const &al : hat_phi(R)) {
          aux.checked++;
          for (auto const &w : cone)
            if (!al.contains(w)) {
              aux.fail(R.str(), to_string(al) + " misses " + w);
              break;
            }
          if (!root_subset(b, al)) aux.fail(R.str(), "-w_R tr alpha_t not in " + to_string(al));
        }
      }
    }
  }
  return rep;
}

} // namespace c444
