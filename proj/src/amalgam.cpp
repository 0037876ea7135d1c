#include "c444/amalgam.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include <fmt/format.h>

namespace c444 {

namespace {

std::string wname(std::string_view w) { return w.empty() ? "1" : std::string(w); }

// Cayley-graph test: x -> phi(x) with phi(x a) = phi(x) b for every generator pair (a, b)
struct CayleyMap
{
  std::unordered_map<Elem, Elem, ElemHash> phi;
  std::string                              error;
};

CayleyMap cayley_map(Group const &src, Group const &dst, std::vector<std::pair<Elem, Elem>> const &gens,
                     std::size_t cap = std::size_t{1} << 16)
{
  CayleyMap m;
  m.phi.emplace(src.one(), dst.one());
  std::deque<Elem> todo{src.one()};
  while (!todo.empty()) {
    Elem const x = todo.front();
    todo.pop_front();
    Elem const fx = m.phi.at(x);
    for (auto const &[a, b] : gens) {
      Elem       y = src.mul(x, a);
      Elem       fy = dst.mul(fx, b);
      auto const it = m.phi.find(y);
      if (it == m.phi.end()) {
        if (m.phi.size() >= cap) {
          m.error = "source group exceeds the enumeration cap";
          return m;
        }
        m.phi.emplace(y, fy);
        todo.push_back(std::move(y));
      } else if (it->second != fy) {
        m.error = fmt::format("not a homomorphism: {} * {} maps to {} but also {}", src.str(x), src.str(a),
                              dst.str(it->second), dst.str(fy));
        return m;
      }
    }
  }
  return m;
}

} // namespace

std::string Group::str(Elem const &a) const
{
  std::string out;
  for (auto x : a) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "[" + out + "]";
}

bool Group::has_root(Root const &a) const { return std::find(roots_.begin(), roots_.end(), a) != roots_.end(); }

// ---------------------------------------------------------------- finite groups

PcVertexGroup::PcVertexGroup(std::string name, std::shared_ptr<PcGroup const> amb, Subgroup sub)
    : Group(std::move(name)), amb_(std::move(amb)), sub_(std::move(sub))
{
  roots_ = sub_.generator_roots;
  for (auto x : sub_.members) elems_.push_back({x});
  std::sort(elems_.begin(), elems_.end(), [this](Elem const &a, Elem const &b) { return less(a, b); });
}

bool PcVertexGroup::less(Elem const &a, Elem const &b) const
{
  int const pa = std::popcount(a[0]), pb = std::popcount(b[0]);
  return pa != pb ? pa < pb : a[0] < b[0];
}

std::string PcVertexGroup::str(Elem const &a) const { return amb_->str(a[0]); }

std::optional<Elem> PcVertexGroup::root_elem(Root const &a) const
{
  if (!has_root(a)) return std::nullopt;
  return Elem{PcGroup::gen(*amb_->index_of(a))};
}

GroupPtr make_u_group(Blueprint const &p, std::string_view w)
{
  auto g = std::make_shared<PcGroup>(build_ugroup(p, w));
  auto s = u_subgroup(*g, w);
  return std::make_shared<PcVertexGroup>("U_" + wname(canon(w)), std::move(g), std::move(s));
}

GroupPtr make_v_group(Blueprint const &p, Residue const &R)
{
  Word const top = canon(R.w + longest_element(R.mask));
  auto       g = std::make_shared<PcGroup>(build_ugroup(p, top));
  auto       v = v_subgroup(*g, R);
  return std::make_shared<PcVertexGroup>("V_" + top, std::move(g), std::move(v.v));
}

SubsetGroup::SubsetGroup(std::string name, GroupPtr parent, std::vector<Elem> const &gens)
    : Group(std::move(name)), parent_(std::move(parent))
{
  auto cl = generate(*parent_, gens);
  if (!cl.complete) throw TreeError("subgroup " + name_ + " is not finite within the cap");
  elems_ = std::move(cl.elems);
  set_.insert(elems_.begin(), elems_.end());
  for (auto const &r : parent_->roots()) {
    auto const e = parent_->root_elem(r);
    if (e && set_.count(*e)) roots_.push_back(r);
  }
}

std::optional<Elem> SubsetGroup::root_elem(Root const &a) const
{
  if (!has_root(a)) return std::nullopt;
  return parent_->root_elem(a);
}

Closure generate(Group const &g, std::vector<Elem> const &gens, std::size_t max_weight, std::size_t cap)
{
  Closure                             c;
  std::vector<Elem>                   all = gens;
  for (auto const &x : gens) {
    Elem xi = g.inv(x);
    if (xi != x) all.push_back(std::move(xi));
  }
  std::unordered_set<Elem, ElemHash> seen{g.one()};
  std::deque<Elem>                   todo{g.one()};
  while (!todo.empty()) {
    Elem const x = todo.front();
    todo.pop_front();
    c.elems.push_back(x);
    for (auto const &a : all) {
      Elem y = g.mul(x, a);
      if (seen.count(y)) continue;
      if (g.weight(y) > max_weight) {
        c.complete = false;
        continue;
      }
      if (seen.size() >= cap) {
        c.complete = false;
        todo.clear();
        break;
      }
      seen.insert(y);
      todo.push_back(std::move(y));
    }
  }
  std::sort(c.elems.begin(), c.elems.end(), [&g](Elem const &a, Elem const &b) { return g.less(a, b); });
  return c;
}

// ---------------------------------------------------------------- trees of groups

TreeOfGroups::TreeOfGroups(std::string name, std::vector<GroupPtr> vertices, std::vector<EdgeSpec> const &edges)
    : Group(std::move(name)), vertices_(std::move(vertices))
{
  int const n = nv();
  if (n == 0) throw TreeError(name_ + ": no vertices");
  if (static_cast<int>(edges.size()) != n - 1) throw TreeError(fmt::format("{}: {} vertices but {} edges", name_, n, edges.size()));
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto const &e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
      throw TreeError(fmt::format("{}: bad edge ({},{})", name_, e.u, e.v));
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  next_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 0; s < n; ++s) {
    // BFS from s; next_[x][s] is the parent of x
    std::vector<int> par(static_cast<std::size_t>(n), -2);
    par[s] = s;
    std::deque<int> q{s};
    while (!q.empty()) {
      int const x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (par[y] == -2) {
          par[y] = x;
          q.push_back(y);
        }
    }
    for (int x = 0; x < n; ++x) {
      if (par[x] == -2) throw TreeError(name_ + ": graph is not connected, so not a tree");
      next_[x][s] = x == s ? s : par[x];
    }
  }

  for (auto const &e : edges) {
    GroupPtr const &gu = vertex(e.u);
    GroupPtr const &gv = vertex(e.v);
    std::vector<std::pair<Elem, Elem>> gens;
    if (e.gens) gens = *e.gens;
    else
      for (auto const &r : gu->roots())
        if (gv->has_root(r)) gens.emplace_back(*gu->root_elem(r), *gv->root_elem(r));
    std::string const where = fmt::format("{}: edge {} - {}", name_, gu->name(), gv->name());
    auto              m = cayley_map(*gu, *gv, gens);
    if (!m.error.empty()) throw TreeError(where + ": " + m.error);
    Dir fw, bw;
    fw.to = e.v;
    bw.to = e.u;
    fw.gens = gens;
    for (auto const &[a, b] : gens) bw.gens.emplace_back(b, a);
    for (auto const &[x, y] : m.phi) {
      fw.A.push_back(x);
      fw.phi.emplace(x, y);
      if (!bw.phi.emplace(y, x).second) throw TreeError(where + ": boundary map is not injective at " + gv->str(y));
      bw.A.push_back(y);
    }
    std::sort(fw.A.begin(), fw.A.end(), [&](Elem const &a, Elem const &b) { return gu->less(a, b); });
    std::sort(bw.A.begin(), bw.A.end(), [&](Elem const &a, Elem const &b) { return gv->less(a, b); });
    fw.Aset.insert(fw.A.begin(), fw.A.end());
    bw.Aset.insert(bw.A.begin(), bw.A.end());
    if (!dir_.emplace(std::pair{e.u, e.v}, std::move(fw)).second) throw TreeError(where + ": duplicate edge");
    dir_.emplace(std::pair{e.v, e.u}, std::move(bw));
  }

  for (auto const &g : vertices_)
    for (auto const &r : g->roots())
      if (!has_root(r)) roots_.push_back(r);
  // a root shared by several vertices must give one element of the tree product
  for (auto const &r : roots_) {
    std::optional<Elem> first;
    int                 fv = -1;
    for (int v = 0; v < n; ++v) {
      if (!vertex(v)->has_root(r)) continue;
      Elem const e = embed(v, *vertex(v)->root_elem(r));
      if (!first) {
        first = e;
        fv = v;
      } else if (*first != e) {
        throw TreeError(fmt::format("{}: u for {} differs between {} and {}", name_, to_string(r), vertex(fv)->name(),
                                    vertex(v)->name()));
      }
    }
  }
}

std::vector<std::pair<int, int>> TreeOfGroups::edges() const
{
  std::vector<std::pair<int, int>> out;
  for (auto const &[k, d] : dir_)
    if (k.first < k.second) out.push_back(k);
  return out;
}

std::vector<std::pair<Elem, Elem>> TreeOfGroups::edge_gens(int u, int v) const { return dir_.at({u, v}).gens; }
std::vector<Elem> const &TreeOfGroups::edge_group(int u, int v) const { return dir_.at({u, v}).A; }
Elem TreeOfGroups::edge_map(int u, int v, Elem const &c) const { return dir_.at({u, v}).phi.at(c); }
bool TreeOfGroups::in_edge_group(int u, int v, Elem const &c) const { return dir_.at({u, v}).Aset.count(c) > 0; }

std::pair<Elem, Elem> TreeOfGroups::decompose(Dir const &d, int from, Elem const &z) const
{
  {
    std::lock_guard lk(*d.mu);
    auto const      it = d.cosets.find(z);
    if (it != d.cosets.end()) return it->second;
  }
  Group const      &g = *vertex(from);
  std::vector<Elem> coset;
  coset.reserve(d.A.size());
  for (auto const &a : d.A) coset.push_back(g.mul(z, a));
  Elem const rep = *std::min_element(coset.begin(), coset.end(), [&g](Elem const &a, Elem const &b) { return g.less(a, b); });
  Elem const ri = g.inv(rep);
  std::vector<Elem> cs;
  for (auto const &m : coset) cs.push_back(g.mul(ri, m));
  std::lock_guard lk(*d.mu);
  for (std::size_t i = 0; i < coset.size(); ++i) d.cosets.emplace(coset[i], std::pair{rep, cs[i]});
  return d.cosets.at(z);
}

void TreeOfGroups::push(Word &st, int v, Elem y) const
{
  auto &[u, z] = st.back();
  if (u == v) {
    z = vertex(u)->mul(z, y);
    return;
  }
  Dir const &d = dir_.at({u, v});
  auto [r, c] = decompose(d, u, z);
  Elem y2 = vertex(v)->mul(d.phi.at(c), y);
  if (r == vertex(u)->one() && st.size() >= 2 && st[st.size() - 2].first == v) {
    st.pop_back();
    st.back().second = vertex(v)->mul(st.back().second, y2);
  } else {
    st.back().second = std::move(r);
    st.emplace_back(v, std::move(y2));
  }
}

Elem TreeOfGroups::reduce(Word const &w, int base) const
{
  Word st{{base, vertex(base)->one()}};
  auto walk = [&](int target) {
    while (st.back().first != target) {
      int const nx = next_[st.back().first][target];
      push(st, nx, vertex(nx)->one());
    }
  };
  for (auto const &[v, g] : w) {
    walk(v);
    push(st, v, g);
  }
  walk(base);
  return encode(st);
}

Elem TreeOfGroups::encode(Word const &w) const
{
  Elem out;
  for (auto const &[v, g] : w) {
    out.push_back(static_cast<std::uint32_t>(v));
    out.push_back(static_cast<std::uint32_t>(g.size()));
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

TreeOfGroups::Word TreeOfGroups::syllables(Elem const &a) const
{
  Word        w;
  std::size_t i = 0;
  while (i < a.size()) {
    int const         v = static_cast<int>(a[i]);
    std::size_t const len = a[i + 1];
    w.emplace_back(v, Elem(a.begin() + static_cast<std::ptrdiff_t>(i + 2), a.begin() + static_cast<std::ptrdiff_t>(i + 2 + len)));
    i += 2 + len;
  }
  return w;
}

Elem TreeOfGroups::one() const { return encode({{0, vertex(0)->one()}}); }

Elem TreeOfGroups::mul(Elem const &a, Elem const &b) const
{
  Word w = syllables(a);
  for (auto &s : syllables(b)) w.push_back(std::move(s));
  return reduce(w);
}

Elem TreeOfGroups::inv(Elem const &a) const
{
  Word w = syllables(a);
  std::reverse(w.begin(), w.end());
  for (auto &[v, g] : w) g = vertex(v)->inv(g);
  return reduce(w);
}

std::size_t TreeOfGroups::weight(Elem const &a) const
{
  std::size_t n = 0;
  for (auto const &[v, g] : syllables(a))
    if (g != vertex(v)->one()) n++;
  return n;
}

std::string TreeOfGroups::str(Elem const &a) const
{
  std::string out;
  for (auto const &[v, g] : syllables(a))
    if (g != vertex(v)->one()) out += (out.empty() ? "" : " . ") + vertex(v)->name() + "(" + vertex(v)->str(g) + ")";
  return out.empty() ? "1" : out;
}

std::optional<Elem> TreeOfGroups::root_elem(Root const &a) const
{
  for (int v = 0; v < nv(); ++v)
    if (vertex(v)->has_root(a)) return embed(v, *vertex(v)->root_elem(a));
  return std::nullopt;
}

std::optional<Elem> TreeOfGroups::vertex_membership(Elem const &a, int v) const
{
  auto const w = syllables(reduce(syllables(a), v));
  if (w.size() != 1) return std::nullopt;
  return w[0].second;
}

Intersection intersect_subgroups(Group const &g, std::vector<Elem> const &h, std::vector<Elem> const &k,
                                 std::size_t bound, std::size_t cap)
{
  auto const                         H = generate(g, h, bound, cap);
  auto const                         K = generate(g, k, bound, cap);
  std::unordered_set<Elem, ElemHash> ks(K.elems.begin(), K.elems.end());
  Intersection                       out;
  out.complete = H.complete && K.complete;
  for (auto const &x : H.elems)
    if (ks.count(x)) out.elems.push_back(x);
  return out;
}

// ---------------------------------------------------------------- contraction and folding

Contraction contract(TreePtr const &t, std::vector<std::vector<int>> const &parts, std::string name)
{
  int const   n = t->nv();
  Contraction c;
  c.parts = parts;
  c.part_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t i = 0; i < parts[p].size(); ++i) {
      int const v = parts[p][i];
      if (v < 0 || v >= n || c.part_of[v] != -1) throw std::invalid_argument("contract: parts do not partition the vertices");
      c.part_of[v] = static_cast<int>(p);
      local[v] = static_cast<int>(i);
    }
  if (std::find(c.part_of.begin(), c.part_of.end(), -1) != c.part_of.end())
    throw std::invalid_argument("contract: parts do not cover the vertices");

  std::vector<GroupPtr> coarse;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].empty()) throw std::invalid_argument("contract: empty part");
    if (parts[p].size() == 1) {
      c.part_trees.push_back(nullptr);
      coarse.push_back(t->vertex(parts[p][0]));
      continue;
    }
    std::vector<GroupPtr> vs;
    std::string           nm;
    for (int v : parts[p]) {
      vs.push_back(t->vertex(v));
      nm += (nm.empty() ? "" : " * ") + t->vertex(v)->name();
    }
    std::vector<EdgeSpec> es;
    for (auto [a, b] : t->edges())
      if (c.part_of[a] == static_cast<int>(p) && c.part_of[b] == static_cast<int>(p))
        es.push_back({local[a], local[b], t->edge_gens(a, b)});
    if (static_cast<int>(es.size()) != static_cast<int>(parts[p].size()) - 1)
      throw std::invalid_argument("contract: part " + std::to_string(p) + " is not connected");
    auto pt = std::make_shared<TreeOfGroups>("(" + nm + ")", std::move(vs), es);
    c.part_trees.push_back(pt);
    coarse.push_back(pt);
  }
  auto emb = [&](int v, Elem const &x) {
    auto const &pt = c.part_trees[c.part_of[v]];
    return pt ? pt->embed(local[v], x) : x;
  };
  std::vector<EdgeSpec> es;
  for (auto [a, b] : t->edges()) {
    if (c.part_of[a] == c.part_of[b]) continue;
    std::vector<std::pair<Elem, Elem>> gens;
    for (auto const &[x, y] : t->edge_gens(a, b)) gens.emplace_back(emb(a, x), emb(b, y));
    es.push_back({c.part_of[a], c.part_of[b], gens});
  }
  c.tree = std::make_shared<TreeOfGroups>(name.empty() ? t->name() + "/contracted" : name, std::move(coarse), es);
  return c;
}

Elem Contraction::to_coarse(TreeOfGroups const &fine, Elem const &x) const
{
  TreeOfGroups::Word w;
  for (auto const &[v, g] : fine.syllables(x)) {
    int const   p = part_of[v];
    auto const &pt = part_trees[p];
    if (!pt) {
      w.emplace_back(p, g);
      continue;
    }
    int const i = static_cast<int>(std::find(parts[p].begin(), parts[p].end(), v) - parts[p].begin());
    w.emplace_back(p, pt->embed(i, g));
  }
  return tree->reduce(w);
}

Elem Contraction::to_fine(TreeOfGroups const &fine, Elem const &x) const
{
  TreeOfGroups::Word w;
  for (auto const &[p, y] : tree->syllables(x)) {
    auto const &pt = part_trees[p];
    if (!pt) {
      w.emplace_back(parts[p][0], y);
      continue;
    }
    for (auto const &[i, g] : pt->syllables(y)) w.emplace_back(parts[p][i], g);
  }
  return fine.reduce(w);
}

Folding fold(TreePtr const &t, int u, int v, std::vector<Elem> const &h_gens)
{
  if (!t->adjacent(u, v)) throw std::invalid_argument("fold: not an edge");
  auto H = std::make_shared<SubsetGroup>("H", t->vertex(u), h_gens);
  std::unordered_set<Elem, ElemHash> hs(H->elements()->begin(), H->elements()->end());
  for (auto const &c : t->edge_group(u, v))
    if (!hs.count(c)) throw std::invalid_argument("fold: H does not contain the edge group at " + t->vertex(u)->str(c));
  std::vector<GroupPtr> vs;
  for (int i = 0; i < t->nv(); ++i) vs.push_back(t->vertex(i));
  int const x = t->nv();
  vs.push_back(H);
  std::vector<EdgeSpec> es;
  for (auto [a, b] : t->edges())
    if (!((a == u && b == v) || (a == v && b == u))) es.push_back({a, b, t->edge_gens(a, b)});
  std::vector<std::pair<Elem, Elem>> f;
  for (auto const &h : h_gens) f.emplace_back(h, h);
  es.push_back({u, x, f});
  es.push_back({x, v, t->edge_gens(u, v)});
  Folding out;
  out.tree = std::make_shared<TreeOfGroups>(t->name() + "/folded", std::move(vs), es);
  out.u = u;
  out.x = x;
  return out;
}

Elem Folding::to_new(TreeOfGroups const &old, Elem const &a) const { return tree->reduce(old.syllables(a)); }

Elem Folding::to_old(TreeOfGroups const &old, Elem const &a) const
{
  auto w = tree->syllables(a);
  for (auto &[v, g] : w)
    if (v == x) v = u;
  return old.reduce(w);
}

// ---------------------------------------------------------------- certificates

namespace {

std::vector<std::pair<Elem, Elem>> root_pairs(Group const &src, Group const &dst, std::string &missing)
{
  std::vector<std::pair<Elem, Elem>> gens;
  for (auto const &r : src.roots()) {
    auto const b = dst.root_elem(r);
    if (!b) {
      missing = to_string(r);
      return {};
    }
    gens.emplace_back(*src.root_elem(r), *b);
  }
  return gens;
}

} // namespace

Check check_root_hom(Group const &src, Group const &dst)
{
  Check c;
  c.id = fmt::format("root-hom {} -> {}", src.name(), dst.name());
  if (auto const *t = dynamic_cast<TreeOfGroups const *>(&src)) {
    for (int v = 0; v < t->nv(); ++v) {
      auto const sub = check_root_hom(*t->vertex(v), dst);
      c.checked += sub.checked;
      for (auto const &x : sub.violations) c.fail(x.anchor, x.witness);
    }
    return c;
  }
  c.checked++;
  std::string missing;
  auto const  gens = root_pairs(src, dst, missing);
  if (!missing.empty()) {
    c.fail(src.name(), "root " + missing + " has no generator in " + dst.name());
    return c;
  }
  auto const m = cayley_map(src, dst, gens);
  if (!m.error.empty()) c.fail(src.name(), m.error);
  return c;
}

EmbeddingCertificate certify_embedding(TreeOfGroups const &big, TreeOfGroups const &small, std::vector<int> const &vmap)
{
  EmbeddingCertificate cert;
  cert.vertices.id = fmt::format("{} -> {}: vertex containment", small.name(), big.name());
  cert.preimages.id = fmt::format("{} -> {}: preimage equality", small.name(), big.name());
  cert.edges.id = fmt::format("{} -> {}: edge groups", small.name(), big.name());
  if (static_cast<int>(vmap.size()) != small.nv()) throw std::invalid_argument("certify_embedding: vertex map size");

  std::vector<std::unordered_map<Elem, Elem, ElemHash>> iota(static_cast<std::size_t>(small.nv()));
  std::vector<std::unordered_set<Elem, ElemHash>>       img(static_cast<std::size_t>(small.nv()));
  for (int v = 0; v < small.nv(); ++v) {
    Group const &H = *small.vertex(v);
    Group const &G = *big.vertex(vmap[v]);
    std::string const anchor = fmt::format("{} <= {}", H.name(), G.name());
    cert.vertices.checked++;
    if (!H.elements()) {
      cert.vertices.fail(anchor, "small vertex group is not finite");
      continue;
    }
    std::string missing;
    auto const  gens = root_pairs(H, G, missing);
    if (!missing.empty()) {
      cert.vertices.fail(anchor, "root " + missing + " missing from the big vertex group");
      continue;
    }
    auto m = cayley_map(H, G, gens);
    if (!m.error.empty()) {
      cert.vertices.fail(anchor, m.error);
      continue;
    }
    for (auto const &[x, y] : m.phi) img[v].insert(y);
    if (img[v].size() != m.phi.size()) cert.vertices.fail(anchor, "not injective");
    iota[v] = std::move(m.phi);
  }
  if (!cert.vertices.ok()) return cert;

  for (auto [a, b] : small.edges()) {
    int const         A = vmap[a], B = vmap[b];
    std::string const anchor = fmt::format("{} - {}", small.vertex(a)->name(), small.vertex(b)->name());
    cert.preimages.checked++;
    cert.edges.checked++;
    if (!big.adjacent(A, B)) {
      cert.preimages.fail(anchor, "image vertices are not adjacent in " + big.name());
      continue;
    }
    std::unordered_set<Elem, ElemHash> pre_a, pre_b;
    for (auto const &c : big.edge_group(A, B)) {
      if (img[a].count(c)) pre_a.insert(c);
      if (img[b].count(big.edge_map(A, B, c))) pre_b.insert(c);
    }
    if (pre_a != pre_b)
      cert.preimages.fail(anchor, fmt::format("preimages have {} and {} elements", pre_a.size(), pre_b.size()));
    std::unordered_set<Elem, ElemHash> he;
    for (auto const &c : small.edge_group(a, b)) he.insert(iota[a].at(c));
    if (he != pre_a) cert.edges.fail(anchor, fmt::format("edge group has {} elements, preimage {}", he.size(), pre_a.size()));
  }
  return cert;
}

} // namespace c444
