#include "c444/pcgroup.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

#include <fmt/format.h>

namespace c444 {

namespace {

std::atomic<int> g_ugroup_max{12};
constexpr std::size_t kCollectSteps = std::size_t{1} << 22;

std::vector<int> letters_of_elem(PcElem x)
{
  std::vector<int> out;
  for (; x; x &= x - 1) out.push_back(std::countr_zero(x));
  return out;
}

} // namespace

int  ugroup_max() { return g_ugroup_max; }
void set_ugroup_max(int n)
{
  if (n < 0 || n > 20) throw std::invalid_argument("ugroup maximum must lie in [0, 20]");
  g_ugroup_max = n;
}

std::optional<int> PcGroup::index_of(Root const &a) const
{
  auto const it = std::find(gens.begin(), gens.end(), a);
  if (it == gens.end()) return std::nullopt;
  return static_cast<int>(it - gens.begin());
}

// stack top is the next generator to multiply on the right of c
PcElem PcGroup::collect(PcElem c, std::vector<int> &stack) const
{
  std::size_t steps = 0;
  while (!stack.empty()) {
    if (++steps > kCollectSteps) throw CollectionError("collection does not terminate in " + word);
    int const g = stack.back();
    stack.pop_back();
    PcElem const above = c & ~((PcElem{2} << g) - 1);
    if (!above) {
      c ^= gen(g);
      continue;
    }
    int const h = 31 - std::countl_zero(c);
    c &= ~gen(h);
    stack.push_back(h);
    auto const t = letters_of_elem(tail(g, h));
    for (auto it = t.rbegin(); it != t.rend(); ++it) stack.push_back(*it);
    stack.push_back(g);
  }
  return c;
}

PcElem PcGroup::multiply(PcElem x, PcElem y) const
{
  auto l = letters_of_elem(y);
  std::reverse(l.begin(), l.end());
  return collect(x, l);
}

PcElem PcGroup::inverse(PcElem x) const
{
  auto l = letters_of_elem(x);
  return collect(0, l);
}

PcElem PcGroup::commutator(PcElem x, PcElem y) const
{
  return multiply(multiply(multiply(inverse(x), inverse(y)), x), y);
}

PcElem PcGroup::word_value(std::vector<int> const &letters) const
{
  std::vector<int> l(letters.rbegin(), letters.rend());
  return collect(0, l);
}

std::string PcGroup::str(PcElem x) const
{
  if (!x) return "1";
  std::string out;
  for (int i : letters_of_elem(x)) out += fmt::format("{}u{}", out.empty() ? "" : " ", i + 1);
  return out;
}

PcGroup build_ugroup(Blueprint const &p, std::string_view w)
{
  PcGroup g;
  g.word = canon(w);
  if (static_cast<int>(g.word.size()) > ugroup_max())
    throw ResourceLimit(fmt::format("U_w with l(w) = {} exceeds the maximum {}", g.word.size(), ugroup_max()));
  g.gens = crossed(g.word);
  int const n = g.n();
  g.tails.assign(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PcElem t = 0;
      int    last = 0;
      for (int q : p.query_positions(g.word, i + 1, j + 1)) {
        if (q <= last) throw BlueprintError(fmt::format("M^{}_({},{}) is not in gallery order", g.word, i + 1, j + 1));
        last = q;
        t |= PcGroup::gen(q - 1);
      }
      g.tails[static_cast<std::size_t>(j * n + i)] = t;
    }
  return g;
}

Cb3Certificate certify_cb3(PcGroup &g, Blueprint const &p, int brute_max)
{
  Cb3Certificate cert;
  int const      n = g.n();
  auto const     gen = PcGroup::gen;

  Check &sup = cert.report.add("CB3/tail-support");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      sup.checked++;
      PcElem const between = (PcGroup::gen(j) - 1) & ~((PcGroup::gen(i) << 1) - 1);
      if (g.tail(i, j) & ~between)
        sup.fail(fmt::format("{} (u{},u{})", g.word, i + 1, j + 1), "tail " + g.str(g.tail(i, j)) + " leaves the interval");
    }

  Check &ov = cert.report.add("CB3/overlaps");
  auto   assoc = [&](PcElem a, PcElem b, PcElem c, std::string const &anchor) {
    ov.checked++;
    try {
      PcElem const l = g.multiply(g.multiply(a, b), c), r = g.multiply(a, g.multiply(b, c));
      if (l != r) ov.fail(anchor, fmt::format("(xy)z = {} but x(yz) = {}", g.str(l), g.str(r)));
    } catch (CollectionError const &e) {
      ov.fail(anchor, e.what());
    }
  };
  if (sup.ok()) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < j; ++i) assoc(gen(k), gen(j), gen(i), fmt::format("{} (u{} u{}) u{}", g.word, k + 1, j + 1, i + 1));
        assoc(gen(k), gen(k), gen(j), fmt::format("{} (u{} u{}) u{}", g.word, k + 1, k + 1, j + 1));
        assoc(gen(k), gen(j), gen(j), fmt::format("{} (u{} u{}) u{}", g.word, k + 1, j + 1, j + 1));
      }
  } else {
    ov.notes.push_back("skipped: tails leave their intervals");
  }

  Check &gal = cert.report.add("CB3/all-galleries");
  if (ov.ok() && sup.ok()) {
    for (auto const &G : enumerate_min(g.word)) {
      auto const       rs = crossed(G);
      std::vector<int> idx;
      for (auto const &r : rs) idx.push_back(*g.index_of(r));
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          gal.checked++;
          std::string const anchor = fmt::format("G={} (i,j)=({},{})", G, i, j);
          std::vector<int>  prod;
          bool              foreign = false;
          for (auto const &r : p.query(G, i, j)) {
            auto const q = g.index_of(r);
            if (!q) foreign = true;
            else prod.push_back(*q);
          }
          if (foreign) {
            gal.fail(anchor, "M contains a root outside Phi(w)");
            continue;
          }
          PcElem const lhs = g.commutator(gen(idx[i - 1]), gen(idx[j - 1]));
          PcElem const rhs = g.word_value(prod);
          if (lhs != rhs) gal.fail(anchor, fmt::format("[u_a,u_b] = {} but the product of M is {}", g.str(lhs), g.str(rhs)));
        }
    }
  } else {
    gal.notes.push_back("skipped: presentation inconsistent");
  }

  // the right-regular action on normal forms satisfies every defining relation and reaches all 2^n words
  if (n <= brute_max && sup.ok() && ov.ok()) {
    Check             &bf = cert.report.add("CB3/regular-action");
    std::size_t const  N = g.order_bound();
    std::vector<PcElem> right(N * static_cast<std::size_t>(n));
    for (PcElem x = 0; x < N; ++x)
      for (int k = 0; k < n; ++k) right[x * static_cast<std::size_t>(n) + k] = g.multiply(x, gen(k));
    auto act = [&](PcElem x, int k) { return right[x * static_cast<std::size_t>(n) + k]; };
    for (int k = 0; k < n; ++k) {
      bf.checked++;
      for (PcElem x = 0; x < N; ++x)
        if (act(act(x, k), k) != x) {
          bf.fail(fmt::format("{} u{}", g.word, k + 1), fmt::format("not an involution at {}", g.str(x)));
          break;
        }
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        bf.checked++;
        auto const t = letters_of_elem(g.tail(i, j));
        for (PcElem x = 0; x < N; ++x) {
          PcElem l = act(act(act(act(x, i), j), i), j), r = x;
          for (int q : t) r = act(r, q);
          if (l != r) {
            bf.fail(fmt::format("{} [u{},u{}]", g.word, i + 1, j + 1), fmt::format("relation fails at {}", g.str(x)));
            break;
          }
        }
      }
    bf.checked++;
    for (PcElem x = 0; x < N; ++x) {
      PcElem y = 0;
      for (int q : letters_of_elem(x)) y = act(y, q);
      if (y != x) {
        bf.fail(g.word, fmt::format("normal word {} does not reach itself", g.str(x)));
        break;
      }
    }
  }
  g.cert = cert.consistent() ? Certificate::Consistent : Certificate::Inconsistent;
  return cert;
}

bool Subgroup::contains(PcElem x) const { return std::binary_search(members.begin(), members.end(), x); }

Subgroup closure(PcGroup const &g, std::vector<PcElem> const &gens)
{
  Subgroup          s;
  s.word = g.word;
  std::vector<char> seen(g.order_bound(), 0);
  std::vector<PcElem> todo{0};
  seen[0] = 1;
  while (!todo.empty()) {
    PcElem const x = todo.back();
    todo.pop_back();
    s.members.push_back(x);
    for (PcElem y : gens) {
      PcElem const z = g.multiply(x, y);
      if (!seen[z]) {
        seen[z] = 1;
        todo.push_back(z);
      }
    }
  }
  std::sort(s.members.begin(), s.members.end());
  return s;
}

Subgroup root_subgroup(PcGroup const &g, std::vector<Root> const &roots)
{
  std::vector<PcElem> gens;
  for (auto const &r : roots) {
    auto const q = g.index_of(r);
    if (!q) throw std::invalid_argument(fmt::format("root {} is not in Phi({})", to_string(r), g.word));
    gens.push_back(PcGroup::gen(*q));
  }
  Subgroup s = closure(g, gens);
  s.generator_roots = roots;
  return s;
}

Subgroup u_subgroup(PcGroup const &g, std::string_view v) { return root_subgroup(g, phi_of(v)); }

Subgroup intersect(Subgroup const &a, Subgroup const &b)
{
  Subgroup s;
  s.word = a.word;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(s.members));
  return s;
}

EmbedCertificate embed(PcGroup const &small, PcGroup const &big)
{
  EmbedCertificate e;
  e.check.id = fmt::format("embed {} -> {}", small.word.empty() ? "1" : small.word, big.word);
  for (auto const &r : small.gens) {
    auto const q = big.index_of(r);
    if (!q) {
      e.check.fail(e.check.id, fmt::format("root {} missing from Phi({})", to_string(r), big.word));
      return e;
    }
    e.map.push_back(*q);
  }
  int const n = small.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      e.check.checked++;
      std::vector<int> prod;
      for (int q : letters_of_elem(small.tail(i, j))) prod.push_back(e.map[static_cast<std::size_t>(q)]);
      PcElem const lhs = big.commutator(PcGroup::gen(e.map[i]), PcGroup::gen(e.map[j]));
      PcElem const rhs = big.word_value(prod);
      if (lhs != rhs)
        e.check.fail(fmt::format("[u{},u{}]", i + 1, j + 1), fmt::format("image {} but tail image {}", big.str(lhs), big.str(rhs)));
    }
  std::vector<PcElem> gens;
  for (int q : e.map) gens.push_back(PcGroup::gen(q));
  e.image_order = closure(big, gens).size();
  e.check.checked++;
  if (e.image_order != small.order_bound())
    e.check.fail(e.check.id, fmt::format("image order {} != 2^{}", e.image_order, n));
  return e;
}

VSubgroup v_subgroup(PcGroup const &g, Residue const &R)
{
  auto const l = letters_of(R.mask);
  if (l.size() != 2) throw std::invalid_argument("v_subgroup needs a rank-2 residue");
  char const s = l[0], t = l[1];
  if (g.word != canon(R.w + longest_element(R.mask)))
    throw std::invalid_argument(fmt::format("group {} is not U_(w_R r_J) for {}", g.word, R.str()));
  VSubgroup out;
  auto      roots = phi_of(R.w + s);
  roots.push_back(act(R.w, simple_root(t)));
  out.v = root_subgroup(g, roots);
  out.check.id = "V/index-2";
  out.check.checked++;
  if (out.v.size() * 2 != g.order_bound())
    out.check.fail(R.str(), fmt::format("|V| = {} but |U| = {}", out.v.size(), g.order_bound()));
  for (auto const &r : nonsimple_roots(R)) {
    out.check.checked++;
    if (out.v.contains(PcGroup::gen(*g.index_of(r))))
      out.check.fail(R.str(), fmt::format("V contains u for {}", to_string(r)));
  }
  return out;
}

Check key_lemma(Blueprint const &p, std::string_view w0, char s, char t, char part)
{
  Word const w = canon(w0);
  int const  lw = static_cast<int>(w.size());
  if (s == t || length(w + s) != lw + 1 || length(w + t) != lw + 1)
    throw std::invalid_argument(fmt::format("key lemma needs l(ws) = l(w)+1 = l(wt) at w={} s={} t={}", w, s, t));
  Check c;
  c.id = fmt::format("key-lemma/{}", part);
  std::string const anchor = fmt::format("w={} (s,t)=({},{})", w.empty() ? "1" : w, s, t);
  auto same = [&](Subgroup const &a, Subgroup const &b, std::string const &what) {
    c.checked++;
    if (!(a == b)) c.fail(anchor, fmt::format("{}: {} elements vs {}", what, a.size(), b.size()));
  };
  Word const rJ{s, t, s, t};
  if (part == 'a') {
    auto       g = build_ugroup(p, w + rJ);
    auto const V = v_subgroup(g, residue(std::string{s, t}, w));
    if (!V.check.ok()) c.fail(anchor, V.check.violations.front().witness);
    same(intersect(V.v, u_subgroup(g, w + s + t)), u_subgroup(g, w + s), "V n U_wst = U_ws");
    same(intersect(u_subgroup(g, w + s), u_subgroup(g, w + t)), u_subgroup(g, w), "U_ws n U_wt = U_w");
  } else if (part == 'b') {
    char const r = third(s, t);
    Word const tst{t, s, t};
    Word const amb = w + tst + Word{r, s, r, s};
    if (length(amb) != lw + 7) {
      c.checked++;
      c.fail(anchor, fmt::format("ambient {} is not reduced", amb));
      return c;
    }
    auto g = build_ugroup(p, amb);
    same(intersect(u_subgroup(g, w + rJ), u_subgroup(g, w + tst + r + s)), u_subgroup(g, w + tst),
         "U_(w r_st) n U_(w tstrs) = U_(w tst)");
  } else {
    throw std::invalid_argument("key lemma part must be a or b");
  }
  return c;
}

Check key_lemma_sweep(Blueprint const &p, int max_len, char part)
{
  Check c;
  c.id = fmt::format("key-lemma/{}", part);
  auto const b = ball(max_len);
  for (std::size_t k = 0; k < b->count_upto(max_len); ++k)
    for (char s : kGens)
      for (char t : kGens) {
        Word const &w = b->words[k];
        int const   lw = static_cast<int>(w.size());
        if (s == t || length(w + s) != lw + 1 || length(w + t) != lw + 1) continue;
        auto const one = key_lemma(p, w, s, t, part);
        c.checked += one.checked;
        for (auto const &v : one.violations) c.fail(v.anchor, v.witness);
      }
  return c;
}

} // namespace c444
