#include "c444/roots.hpp"

#include <algorithm>
#include <functional>
#include <array>
#include <set>

#include <fmt/format.h>

namespace c444 {

Root simple_root(char g) { return {unit(gen_index(g))}; }

Root act(std::string_view w, Root const &a) { return {c444::act(w, a.v)}; }

CanonicalPair canonical_pair(Root const &a)
{
  Vec3 b = a.positive() ? a.v : Vec3(-a.v);
  Word v;
  for (;;) {
    for (int g = 0; g < 3; ++g)
      if (b == unit(g)) return {v, kGens[g]};
    int s = 0;
    while (s < 3 && form2(b, unit(s)).sign() <= 0) ++s;
    if (s == 3) throw std::logic_error("canonical_pair: not a root");
    reflect(s, b);
    v.push_back(kGens[s]);
  }
}

int k_alpha(Root const &a)
{
  if (!a.positive()) throw std::invalid_argument("k_alpha needs a positive root");
  return static_cast<int>(canonical_pair(a).v.size()) + 1;
}

Residue distinguished_panel(Root const &a)
{
  if (!a.positive()) throw std::invalid_argument("distinguished_panel needs a positive root");
  auto const cp = canonical_pair(a);
  return residue(gen_bit(cp.g), cp.v);
}

Word reflection(Root const &a)
{
  auto const cp = canonical_pair(a);
  return canon(cp.v + cp.g + std::string(cp.v.rbegin(), cp.v.rend()));
}

std::string to_string(Root const &a)
{
  auto const cp = canonical_pair(a);
  if (a.positive()) return cp.v + ":" + cp.g;
  return canon(cp.v + cp.g) + ":" + cp.g;
}

Root parse_root(std::string_view text)
{
  bool neg = false;
  if (!text.empty() && text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  auto const colon = text.find(':');
  if (colon == std::string_view::npos || colon + 2 != text.size())
    throw std::invalid_argument("root must look like \"word:gen\"");
  auto const w = text.substr(0, colon);
  if (!is_word(w) || !is_word(text.substr(colon + 1))) throw std::invalid_argument("bad root: " + std::string(text));
  Root r = act(w, simple_root(text.back()));
  return neg ? -r : r;
}

std::vector<Root> residue_roots(Residue const &R)
{
  std::string const l = letters_of(R.mask);
  if (l.size() != 2) throw std::invalid_argument("residue_roots needs a rank-2 residue");
  char const a = l[0], b = l[1];
  return {act(R.w, simple_root(a)), act(R.w, simple_root(b)), act(R.w + a, simple_root(b)), act(R.w + b, simple_root(a))};
}

std::vector<Root> nonsimple_roots(Residue const &R)
{
  auto all = residue_roots(R);
  return {all[2], all[3]};
}

bool stabilizes(Root const &a, Residue const &R) { return residue(R.mask, reflection(a) + R.w) == R; }

std::vector<Root> crossed(std::string_view type)
{
  std::vector<Root> out;
  for (std::size_t i = 0; i < type.size(); ++i) out.push_back(act(type.substr(0, i), simple_root(type[i])));
  return out;
}

std::vector<Root> phi_of(std::string_view w) { return crossed(canon(w)); }

bool is_reduced(std::string_view type) { return static_cast<int>(type.size()) == length(type); }

std::vector<Word> enumerate_min(std::string_view w)
{
  Word const c = canon(w);
  std::set<Word>        seen{c};
  std::vector<Word>     todo{c};
  while (!todo.empty()) {
    Word u = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i + 4 <= u.size(); ++i) {
      char const x = u[i], y = u[i + 1];
      if (x != y && u[i + 2] == x && u[i + 3] == y) {
        Word v = u;
        v[i] = v[i + 2] = y;
        v[i + 1] = v[i + 3] = x;
        if (seen.insert(v).second) todo.push_back(v);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Word> enumerate_min_s(std::string_view w, char s)
{
  auto all = enumerate_min(w);
  if (length(std::string{s} + std::string(w)) > length(w)) return all;
  std::erase_if(all, [s](Word const &u) { return u.front() != s; });
  return all;
}

Word shift_gallery(char s, std::string_view type)
{
  if (!is_reduced(type)) throw std::invalid_argument("shift_gallery: type is not reduced");
  if (!type.empty() && type.front() == s) return Word(type.substr(1));
  if (length(std::string{s} + std::string(type)) == static_cast<int>(type.size()) + 1) return s + Word(type);
  throw std::invalid_argument("shift_gallery: gallery not in Min_s(w)");
}

std::vector<Root> roots_upto(int k)
{
  if (k <= 0) return {};
  auto const b = ball(k - 1);
  RootSet seen;
  std::vector<Root> out;
  for (std::size_t i = 0; i < b->count_upto(k - 1); ++i)
    for (int g = 0; g < 3; ++g) {
      Vec3 const v = b->mats[i].col(g);
      if (vec_sign(v) < 0) continue;
      Root const r{v};
      if (seen.insert(r).second) out.push_back(r);
    }
  std::vector<std::pair<CanonicalPair, Root>> keyed;
  for (auto const &r : out) keyed.push_back({canonical_pair(r), r});
  std::sort(keyed.begin(), keyed.end(), [](auto const &x, auto const &y) {
    if (x.first.v.size() != y.first.v.size()) return x.first.v.size() < y.first.v.size();
    if (x.first.v != y.first.v) return x.first.v < y.first.v;
    return x.first.g < y.first.g;
  });
  out.clear();
  for (auto &kv : keyed) out.push_back(kv.second);
  return out;
}

namespace {
// both chambers of the wall panel of a lie in b
bool panel_inside(Root const &a, Root const &b)
{
  auto const cp = canonical_pair(a);
  return b.contains(cp.v) && b.contains(cp.v + cp.g);
}
} // namespace

PairClass classify_pair(Root const &a, Root const &b)
{
  if (a == b || a == -b) throw std::invalid_argument("classify_pair: roots are equal or opposite");
  Ring2Value const f = form2(a.v, b.v);
  PairClass        c;
  if (f.abs() < Ring2Value(2)) {
    c.kind = PairKind::Crossing;
    c.order = f.is_zero() ? 2 : 4;
    if (!f.is_zero() && f * f != Ring2Value(2)) throw std::logic_error("classify_pair: unexpected angle");
    return c;
  }
  bool const sigma = panel_inside(a, b);
  bool const tau = panel_inside(b, a);
  if (sigma && !tau) {
    c.kind = PairKind::Nested;
    c.a_in_b = true;
  } else if (!sigma && tau) {
    c.kind = PairKind::Nested;
    c.a_in_b = false;
  } else if (sigma && tau) {
    c.kind = PairKind::CoNested;
  } else {
    c.kind = PairKind::Disjoint;
  }
  return c;
}

std::string kind_name(PairClass const &c)
{
  switch (c.kind) {
  case PairKind::Equal: return "equal";
  case PairKind::Opposite: return "opposite";
  case PairKind::Crossing: return fmt::format("crossing(order {})", c.order);
  case PairKind::Nested: return c.a_in_b ? "nested(a in b)" : "nested(b in a)";
  case PairKind::CoNested: return "co-nested";
  case PairKind::Disjoint: return "disjoint";
  }
  return "?";
}

bool root_subset(Root const &a, Root const &b)
{
  if (a == b) return true;
  if (a == -b) return false;
  auto const c = classify_pair(a, b);
  return c.kind == PairKind::Nested && c.a_in_b;
}

std::optional<bool> nested_by_form(Root const &a, Root const &b)
{
  if (!a.positive() || !b.positive()) throw std::invalid_argument("nested_by_form needs positive roots");
  Ring2Value const f = form2(a.v, b.v);
  if (f.abs() < Ring2Value(2)) return std::nullopt;
  return f >= Ring2Value(2);
}

namespace {
int panel_len(Word const &x, char g) { return std::min(length(x), length(x + g)); }
} // namespace

int WallData::panel_length(std::size_t i) const { return panel_len(panels[i], g); }

WallData wall_data(Root const &a, int radius)
{
  if (!a.positive()) throw std::invalid_argument("wall_data needs a positive root");
  auto const cp = canonical_pair(a);
  WallData wd;
  wd.g = cp.g;
  std::vector<Word>    side[2];
  std::vector<Residue> side_res[2];
  int                  d = 0;
  for (int hi = 0; hi < 3; ++hi) {
    char const h0 = kGens[hi];
    if (h0 == cp.g) continue;
    Word x = cp.v;
    char h = h0;
    for (int step = 0; step < 100000; ++step) {
      side_res[d].push_back(residue(gen_bit(cp.g) | gen_bit(h), x));
      Word nx = canon(x + h + cp.g + h);
      if (panel_len(nx, cp.g) > radius) break;
      side[d].push_back(nx);
      x = std::move(nx);
      h = third(cp.g, h);
    }
    ++d;
  }
  // side[1] runs to the left, side[0] to the right
  wd.panels.assign(side[1].rbegin(), side[1].rend());
  wd.base = wd.panels.size();
  wd.panels.push_back(cp.v);
  wd.panels.insert(wd.panels.end(), side[0].begin(), side[0].end());
  wd.rank2.assign(side_res[1].rbegin(), side_res[1].rend());
  wd.rank2.insert(wd.rank2.end(), side_res[0].begin(), side_res[0].end());
  if (panel_len(cp.v, cp.g) > radius) {
    wd.panels.clear();
    wd.rank2.clear();
    wd.base = 0;
  }
  return wd;
}

Residue first_residue_towards(WallData const &wd, std::size_t q)
{
  if (q == wd.base) throw std::invalid_argument("first_residue_towards: target is P_alpha itself");
  return q > wd.base ? wd.rank2[wd.base + 1] : wd.rank2[wd.base];
}

std::optional<Residue> crossing_residue(Root const &a, Root const &b)
{
  Root const ap = a.positive() ? a : -a;
  Root const bp = b.positive() ? b : -b;
  for (int radius = std::max(k_alpha(ap), k_alpha(bp)) + 4; radius <= 80; radius += 8) {
    auto const wd = wall_data(ap, radius);
    for (auto const &R : wd.rank2)
      if (stabilizes(bp, R)) return R;
  }
  return std::nullopt;
}

namespace {
Ring2Value det2(Vec3 const &x, Vec3 const &y, int i, int j) { return x(i) * y(j) - x(j) * y(i); }
} // namespace

std::vector<Root> interval(Root const &a, Root const &b)
{
  auto const c = classify_pair(a, b);
  if (c.kind == PairKind::Crossing) {
    auto const L = crossing_residue(a, b);
    if (!L) throw std::runtime_error("interval: crossing residue not found");
    int i = 0, j = 1;
    for (auto [p, q] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      if (!det2(a.v, b.v, p, q).is_zero()) {
        i = p;
        j = q;
        break;
      }
    Ring2Value const D = det2(a.v, b.v, i, j);
    int const        sd = D.sign();
    struct Coef
    {
      Root       r;
      Ring2Value lam, mu; // scaled by D
    };
    std::vector<Coef> keep;
    for (auto const &p : residue_roots(*L))
      for (Root const &r : {p, -p}) {
        Ring2Value const lam = det2(r.v, b.v, i, j);
        Ring2Value const mu = det2(a.v, r.v, i, j);
        if (lam.sign() * sd >= 0 && mu.sign() * sd >= 0) keep.push_back({r, lam, mu});
      }
    // order from a towards b
    std::sort(keep.begin(), keep.end(),
              [](Coef const &x, Coef const &y) { return (x.mu * y.lam - y.mu * x.lam).sign() < 0; });
    std::vector<Root> out;
    for (auto const &k : keep) out.push_back(k.r);
    return out;
  }
  if (c.kind != PairKind::Nested) return {};
  Root const small = c.a_in_b ? a : b;
  Root const big = c.a_in_b ? b : a;
  auto const cp = canonical_pair(small);
  Word const x = small.positive() ? Word() : canon(cp.v + cp.g); // a chamber of small
  Word const xi = inverse(x);
  Root const s1 = act(xi, small), b1 = act(xi, big);
  auto const cb = canonical_pair(b1);
  std::vector<Root> out;
  for (auto const &gm : crossed(cb.v + cb.g))
    if (root_subset(s1, gm) && root_subset(gm, b1)) out.push_back(act(x, gm));
  if (!c.a_in_b) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Root> open_interval(Root const &a, Root const &b)
{
  auto all = interval(a, b);
  std::erase_if(all, [&](Root const &r) { return r == a || r == b; });
  return all;
}

// ---------------------------------------------------------------- lemma suite

namespace {
std::string labeling(char r, char s, char t) { return fmt::format("(r,s,t)=({},{},{})", r, s, t); }

void lemma_2_22(Report &rep, int kmax)
{
  auto &chk = rep.add("wall/unique-nearest-panel");
  for (auto const &a : roots_upto(kmax)) {
    int const k = k_alpha(a);
    if (k == 1) continue;
    auto const wd = wall_data(a, k + 6);
    auto const cp = canonical_pair(a);
    ++chk.checked;
    for (std::size_t i = 0; i < wd.panels.size(); ++i) {
      int const pl = wd.panel_length(i);
      if (i == wd.base && pl != k - 1) chk.fail(to_string(a), fmt::format("P_alpha has projection length {}", pl));
      if (i != wd.base && pl <= k - 1) chk.fail(to_string(a), fmt::format("panel {} also at length {}", wd.panels[i], pl));
      // lengths strictly grow away from P_alpha
      if (i > wd.base && wd.panel_length(i - 1) >= pl) chk.fail(to_string(a), "wall lengths not increasing (right)");
      if (i < wd.base && wd.panel_length(i + 1) >= pl) chk.fail(to_string(a), "wall lengths not increasing (left)");
    }
    // every residue where alpha is not simple contains P_alpha, with gate one step below it
    for (auto const &R : wd.rank2) {
      Residue const P = distinguished_panel(a);
      bool simple_here = false;
      for (std::size_t i = 0; i < wd.panels.size(); ++i) {
        Residue const Pi = wd.panel(i);
        if (R.contains(Pi.w) && R.contains(canon(Pi.w + wd.g)) && projection("", Pi) == R.w) simple_here = true;
      }
      if (simple_here) continue;
      if (!R.contains(cp.v)) chk.fail(to_string(a), fmt::format("non-simple residue {} misses P_alpha", R.str()));
      else if (length(R.w) != k - 2) chk.fail(to_string(a), fmt::format("residue {} gate length {}", R.str(), length(R.w)));
    }
  }
  (void)rep;
}

// Valid residues R for the setup: type {g,h} with h a right descent of v.
std::vector<char> valid_h(CanonicalPair const &cp)
{
  std::vector<char> out;
  for (char h : {'r', 's', 't'})
    if (h != cp.g && length(cp.v + h) < static_cast<int>(cp.v.size())) out.push_back(h);
  return out;
}

bool projgal_path(Root const &a, Word const &z, Word const &x)
{
  if (!prefix_le(z, x)) return false;
  std::set<Word>    seen{z};
  std::vector<Word> todo{z};
  int const         lx = length(x);
  while (!todo.empty()) {
    Word u = todo.back();
    todo.pop_back();
    if (u == x) return true;
    if (static_cast<int>(u.size()) >= lx) continue;
    for (char s : {'r', 's', 't'}) {
      Word us = canon(u + s);
      if (us.size() != u.size() + 1 || !prefix_le(us, x) || seen.count(us)) continue;
      bool edge = false;
      for (char b : {'r', 's', 't'})
        if (b != s && stabilizes(a, residue(gen_bit(s) | gen_bit(b), u))) edge = true;
      if (!edge) continue;
      seen.insert(us);
      todo.push_back(std::move(us));
    }
  }
  return false;
}

void lemma_2_23(Report &rep, int kmax, int qradius)
{
  auto &chk = rep.add("wall/projection-gallery");
  std::size_t ties = 0;
  for (auto const &a : roots_upto(kmax)) {
    int const k = k_alpha(a);
    if (k == 1) continue;
    auto const cp = canonical_pair(a);
    auto const hs = valid_h(cp);
    if (hs.empty()) chk.fail(to_string(a), "no residue where alpha is non-simple");
    if (hs.size() > 1) ++ties;
    auto const wd = wall_data(a, qradius);
    for (char h : hs) {
      Residue const R = residue(gen_bit(cp.g) | gen_bit(h), cp.v);
      char const    r = third(cp.g, h);
      bool const    down_r = length(cp.v + r) == k - 2;
      for (std::size_t q = 0; q < wd.panels.size(); ++q) {
        if (q == wd.base) continue;
        Residue const R1 = first_residue_towards(wd, q);
        Residue const Raq = (!(R == R1) && down_r) ? R1 : R;
        Word const    z = Raq.w;
        Word const    x = projection("", wd.panel(q));
        ++chk.checked;
        if (!projgal_path(a, z, x))
          chk.fail(fmt::format("{} R={} Q={}", to_string(a), R.str(), wd.panel(q).str()),
                   fmt::format("no gallery through {} along the wall to {}", z, x));
      }
    }
  }
  if (ties) chk.notes.push_back(fmt::format("{} roots with both residues at P_alpha non-simple (both checked)", ties));
}

void lemma_2_25(Report &rep, int kmax)
{
  auto &chk = rep.add("wall/prenilpotent-dichotomy");
  auto const all = roots_upto(kmax);
  for (auto const &a : all) {
    int const k = k_alpha(a);
    if (k == 1) continue;
    auto const cp = canonical_pair(a);
    for (char h : valid_h(cp)) {
      char const r = third(cp.g, h);
      if (length(cp.v + r) != k) continue;
      Residue const R = residue(gen_bit(cp.g) | gen_bit(h), cp.v);
      Root const    opt_a = act(cp.v, simple_root(r));
      Root const    opt_b = act(R.w + cp.g + h, simple_root(r));
      bool const    cond_b = length(R.w + cp.g + r) == k - 2;
      for (auto const &b : all) {
        if (k_alpha(b) == 1 || k_alpha(b) > k || b == a) continue;
        if (classify_pair(a, b).kind != PairKind::Crossing) continue;
        if (stabilizes(b, R)) continue;
        ++chk.checked;
        bool const ok = (b == opt_a) || (b == opt_b && cond_b);
        if (!ok) chk.fail(fmt::format("{} R={}", to_string(a), R.str()), fmt::format("beta = {}", to_string(b)));
      }
    }
  }
}
} // namespace

Report lemma_suite_core(int max_len)
{
  Report rep;
  auto const b = ball(max_len);
  std::size_t const n = b->count_upto(max_len);

  {
    auto &chk = rep.add("coxeter/not-both-down");
    for (std::size_t i = 0; i < n; ++i)
      for (char s : {'r', 's', 't'})
        for (char t : {'r', 's', 't'}) {
          if (s == t || (right_descents(b->words[i]) & (gen_bit(s) | gen_bit(t)))) continue;
          ++chk.checked;
          if (!check_not_both_down(b->words[i], s, t)) chk.fail(b->words[i], fmt::format("s={} t={}", s, t));
        }
  }
  {
    auto &chk = rep.add("roots/alpha_t-in-union");
    for (char s : {'r', 's', 't'})
      for (char t : {'r', 's', 't'}) {
        if (s == t) continue;
        Root const at = simple_root(t), as = simple_root(s), tas = act(std::string{t}, as);
        for (std::size_t i = 0; i < n; ++i) {
          Vec3 const x = b->inv[i] * at.v;
          if (vec_sign(x) < 0) continue;
          ++chk.checked;
          bool const in_neg_as = vec_sign(b->inv[i] * as.v) < 0;
          bool const in_tas = vec_sign(b->inv[i] * tas.v) > 0;
          if (!in_neg_as && !in_tas) chk.fail(fmt::format("s={} t={}", s, t), b->words[i]);
        }
      }
  }
  std::string const perm = "rst";
  std::vector<std::array<char, 3>> labelings;
  {
    std::string p = perm;
    do labelings.push_back({p[0], p[1], p[2]});
    while (std::next_permutation(p.begin(), p.end()));
  }
  {
    auto &chk = rep.add("roots/triple-intersection");
    for (auto [r, s, t] : labelings) {
      Root const A = act(std::string{t, s, t, r}, simple_root(s));
      Root const B = act(std::string{s, t, s, r}, simple_root(t));
      Word const rst = longest_element(s, t);
      Root const C = act(rst, simple_root(r));
      Word const excl = canon(rst + r);
      for (std::size_t i = 0; i < n; ++i) {
        if (b->words[i] == excl) continue;
        if (vec_sign(b->inv[i] * A.v) < 0 || vec_sign(b->inv[i] * B.v) < 0) continue;
        ++chk.checked;
        if (vec_sign(b->inv[i] * C.v) < 0) chk.fail(labeling(r, s, t), b->words[i]);
      }
    }
  }
  {
    auto &chk = rep.add("roots/rstr-gallery-nesting");
    for (auto [r, s, t] : labelings) {
      auto const beta = crossed(std::string{r, s, t, r});
      for (int j : {2, 3}) {
        ++chk.checked;
        if (!(root_subset(beta[0], beta[j]) && beta[0] != beta[j]))
          chk.fail(labeling(r, s, t), fmt::format("beta1 not strictly inside beta{}", j + 1));
        bool strict = false;
        for (std::size_t i = 0; i < n; ++i) {
          bool const in1 = vec_sign(b->inv[i] * beta[0].v) > 0;
          bool const inj = vec_sign(b->inv[i] * beta[j].v) > 0;
          if (in1 && !inj) chk.fail(labeling(r, s, t), fmt::format("ball witness {} in beta1 but not beta{}", b->words[i], j + 1));
          if (inj && !in1) strict = true;
        }
        if (!strict && max_len > 0) chk.fail(labeling(r, s, t), fmt::format("no ball witness for beta{} minus beta1", j + 1));
        // translated galleries starting at x
        for (std::size_t i = 0; i < b->count_upto(std::min(max_len, 3)); ++i) {
          Word const &x = b->words[i];
          ++chk.checked;
          if (!root_subset(act(x, beta[0]), act(x, beta[j])))
            chk.fail(labeling(r, s, t), fmt::format("translate by {} breaks beta1 in beta{}", x, j + 1));
        }
      }
    }
  }
  if (max_len >= 2) {
    lemma_2_22(rep, max_len);
    lemma_2_23(rep, std::max(2, max_len - 3), max_len);
    lemma_2_25(rep, max_len);
  }
  return rep;
}

} // namespace c444
