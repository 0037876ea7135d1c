#include "c444/blueprint.hpp"

#include <deque>
#include <fstream>

#include <fmt/format.h>

#include "c444/parallel.hpp"

namespace c444 {

namespace {

std::string key_str(BlueprintKey const &k)
{
  return fmt::format("{}[{},{}]", std::get<0>(k), std::get<1>(k), std::get<2>(k));
}

std::string roots_str(std::vector<Root> const &m)
{
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + to_string(m[i]);
  return out + "}";
}

void check_query(std::string_view type, int i, int j)
{
  if (!is_word(type) || !is_reduced(type)) throw std::invalid_argument("gallery type is not a reduced word");
  if (i < 1 || j <= i || j > static_cast<int>(type.size()))
    throw std::invalid_argument(fmt::format("index pair ({},{}) out of range for gallery of length {}", i, j, type.size()));
}

std::vector<Root> transport(char s, std::vector<Root> const &m)
{
  std::vector<Root> out;
  for (auto const &r : m) out.push_back(act(std::string(1, s), r));
  return out;
}

// per-gallery checks merged in gallery order
template <class Fn> void over_galleries(Check &c, std::vector<Word> const &gs, Fn &&fn)
{
  std::vector<Check> part(gs.size());
  parallel_for(gs.size(), [&](std::size_t k) { fn(gs[k], part[k]); });
  for (auto &p : part) {
    c.checked += p.checked;
    for (auto &v : p.violations) c.fail(std::move(v.anchor), std::move(v.witness));
    c.dropped += p.dropped;
  }
}

} // namespace

void Blueprint::set_override(Word type, int i, int j, std::vector<Root> m)
{
  check_query(type, i, j);
  BlueprintKey k{std::move(type), i, j};
  seeds_[k] = m;
  closed_[k] = std::move(m);
  closure_radius_ = 0;
}

// Saturates the seeds under single-letter transport (all pairs, or crossing pairs for the local variant)
// and under prefix restriction and extension, inside galleries of length <= radius.
void Blueprint::close(int radius)
{
  closed_ = seeds_;
  closure_radius_ = radius;
  if (closure_ == Closure::None) return;
  std::map<BlueprintKey, BlueprintKey> origin;
  std::deque<BlueprintKey>             todo;
  for (auto const &[k, m] : seeds_) {
    origin.emplace(k, k);
    todo.push_back(k);
  }
  auto visit = [&](BlueprintKey const &from, BlueprintKey nk, std::vector<Root> m) {
    auto const it = closed_.find(nk);
    if (it == closed_.end()) {
      closed_.emplace(nk, std::move(m));
      origin.emplace(nk, origin.at(from));
      todo.push_back(std::move(nk));
    } else if (it->second != m) {
      throw BlueprintError(fmt::format("orbit conflict at {}: seed {} gives {}, seed {} gives {}", key_str(nk),
                                       key_str(origin.at(from)), roots_str(m), key_str(origin.at(nk)),
                                       roots_str(it->second)));
    }
  };
  while (!todo.empty()) {
    BlueprintKey const k = todo.front();
    todo.pop_front();
    auto const &[g, i, j] = k;
    std::vector<Root> const m = closed_.at(k);
    bool move = true;
    if (closure_ == Closure::Local) {
      auto const rs = crossed(g);
      move = classify_pair(rs[i - 1], rs[j - 1]).kind == PairKind::Crossing;
    }
    if (move)
      for (char s : kGens) {
        if (!g.empty() && g.front() == s) {
          if (i >= 2) visit(k, {g.substr(1), i - 1, j - 1}, transport(s, m));
        } else if (static_cast<int>(g.size()) < radius && is_reduced(s + g)) {
          visit(k, {s + g, i + 1, j + 1}, transport(s, m));
        }
      }
    if (static_cast<int>(g.size()) > j) visit(k, {g.substr(0, g.size() - 1), i, j}, m);
    if (static_cast<int>(g.size()) < radius)
      for (char x : kGens)
        if (is_reduced(g + x)) visit(k, {g + x, i, j}, m);
  }
}

std::vector<Root> Blueprint::base_query(Root const &a, Root const &b) const
{
  if (base_ == Base::Empty) return {};
  {
    std::lock_guard lk(*mu_);
    auto const it = km_cache_->find({a, b});
    if (it != km_cache_->end()) return it->second;
  }
  std::vector<Root> out;
  auto const c = classify_pair(a, b);
  if (c.kind == PairKind::Crossing && c.order == 4) {
    out = open_interval(a, b);
    if (out.size() != 2) out.clear();
  }
  std::lock_guard lk(*mu_);
  km_cache_->emplace(std::pair{a, b}, out);
  return out;
}

std::vector<Root> Blueprint::query(std::string_view type, int i, int j) const
{
  check_query(type, i, j);
  auto const it = closed_.find(BlueprintKey{Word(type), i, j});
  if (it != closed_.end()) return it->second;
  auto const rs = crossed(type);
  auto m = base_query(rs[i - 1], rs[j - 1]);
  // order by position in the gallery
  std::vector<std::pair<std::size_t, Root>> pos;
  for (auto const &r : m) {
    auto const p = std::find(rs.begin(), rs.end(), r);
    if (p == rs.end()) throw std::logic_error("interval root outside Phi(G)");
    pos.emplace_back(p - rs.begin(), r);
  }
  std::sort(pos.begin(), pos.end(), [](auto const &x, auto const &y) { return x.first < y.first; });
  m.clear();
  for (auto const &[_, r] : pos) m.push_back(r);
  return m;
}

std::vector<int> Blueprint::query_positions(std::string_view type, int i, int j) const
{
  auto const m = query(type, i, j);
  auto const rs = crossed(type);
  std::vector<int> out;
  for (auto const &r : m) {
    auto const p = std::find(rs.begin(), rs.end(), r);
    if (p == rs.end()) throw BlueprintError(fmt::format("M^{}_({},{}) contains {} outside Phi(G)", type, i, j, to_string(r)));
    out.push_back(static_cast<int>(p - rs.begin()) + 1);
  }
  return out;
}

nlohmann::json Blueprint::to_json() const
{
  nlohmann::json j;
  j["base"] = base_ == Base::KacMoody ? "kac-moody" : "empty";
  j["closure"] = closure_ == Closure::Weyl ? "weyl" : closure_ == Closure::Local ? "local" : "none";
  if (closure_radius_ > 0) j["radius"] = closure_radius_;
  j["overrides"] = nlohmann::json::array();
  for (auto const &[k, m] : seeds_) {
    nlohmann::json o;
    o["gallery"] = nlohmann::json::array();
    for (char c : std::get<0>(k)) o["gallery"].push_back(std::string(1, c));
    o["i"] = std::get<1>(k);
    o["j"] = std::get<2>(k);
    o["M"] = nlohmann::json::array();
    for (auto const &r : m) o["M"].push_back(to_string(r));
    j["overrides"].push_back(std::move(o));
  }
  return j;
}

Blueprint Blueprint::from_json(nlohmann::json const &j)
{
  auto const base = j.value("base", std::string("kac-moody"));
  auto const clo = j.value("closure", std::string("none"));
  Blueprint  p;
  if (base == "kac-moody") p.base_ = Base::KacMoody;
  else if (base == "empty") p.base_ = Base::Empty;
  else throw std::invalid_argument("unknown blueprint base: " + base);
  if (clo == "weyl") p.closure_ = Closure::Weyl;
  else if (clo == "local") p.closure_ = Closure::Local;
  else if (clo == "none") p.closure_ = Closure::None;
  else throw std::invalid_argument("unknown closure: " + clo);
  for (auto const &o : j.value("overrides", nlohmann::json::array())) {
    Word g;
    for (auto const &c : o.at("gallery")) g += c.get<std::string>();
    std::vector<Root> m;
    for (auto const &r : o.at("M")) m.push_back(parse_root(r.get<std::string>()));
    p.set_override(g, o.at("i").get<int>(), o.at("j").get<int>(), std::move(m));
  }
  if (p.closure_ != Closure::None) p.close(j.value("radius", 6));
  return p;
}

Blueprint Blueprint::load(std::string const &path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return from_json(nlohmann::json::parse(in));
}

std::vector<Word> all_galleries(int radius)
{
  std::vector<Word> out;
  if (radius < 0) return out;
  struct Item
  {
    Word w;
    Mat3 m;
  };
  std::vector<Item> layer{{Word(), Mat3::Identity()}};
  out.push_back(Word());
  for (int len = 1; len <= radius; ++len) {
    std::vector<Item> next;
    for (auto const &it : layer)
      for (int g = 0; g < 3; ++g)
        if (vec_sign(it.m.col(g)) > 0) next.push_back({it.w + gen_char(g), it.m * simple_reflection(g)});
    for (auto const &it : next) out.push_back(it.w);
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](Word const &x, Word const &y) { return shortlex_less(x, y); });
  return out;
}

Check validate_cb1(Blueprint const &p, int radius)
{
  Check c;
  c.id = "CB1";
  over_galleries(c, all_galleries(radius), [&](Word const &g, Check &pc) {
    int const n = static_cast<int>(g.size());
    if (n < 3) return;
    Word const h = g.substr(0, n - 1);
    for (int i = 1; i < n - 1; ++i)
      for (int j = i + 1; j < n; ++j) {
        pc.checked++;
        auto const a = p.query(g, i, j), b = p.query(h, i, j);
        if (a != b)
          pc.fail(fmt::format("G={} H={} (i,j)=({},{})", g, h, i, j),
                  fmt::format("expected {} from H, got {}", roots_str(b), roots_str(a)));
      }
  });
  return c;
}

Check validate_cb2(Blueprint const &p)
{
  Check c;
  c.id = "CB2";
  for (auto [a, b] : {std::pair{'r', 's'}, {'r', 't'}, {'s', 't'}})
    for (Word const &g : {Word{a, b, a, b}, Word{b, a, b, a}}) {
      auto const rs = crossed(g);
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
          c.checked++;
          std::vector<Root> expected;
          if (i == 1 && j == 4) expected = {rs[1], rs[2]};
          auto const got = p.query(g, i, j);
          if (got != expected)
            c.fail(fmt::format("G={} (i,j)=({},{})", g, i, j),
                   fmt::format("expected {}, got {}", roots_str(expected), roots_str(got)));
        }
    }
  return c;
}

Check validate_weyl(Blueprint const &p, int radius, bool local)
{
  Check c;
  c.id = local ? "LOCAL_WEYL" : "WEYL";
  over_galleries(c, all_galleries(radius), [&](Word const &g, Check &pc) {
    int const n = static_cast<int>(g.size());
    auto const rs = crossed(g);
    for (char s : kGens) {
      bool const del = !g.empty() && g.front() == s;
      if (!del && !is_reduced(s + g)) continue; // G not in Min_s(w)
      Word const sg = shift_gallery(s, g);
      int const  lo = del ? 2 : 1, shift = del ? -1 : 1;
      for (int i = lo; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          if (local && classify_pair(rs[i - 1], rs[j - 1]).kind != PairKind::Crossing) continue;
          pc.checked++;
          auto const expected = transport(s, p.query(g, i, j));
          auto const got = p.query(sg, i + shift, j + shift);
          if (got != expected)
            pc.fail(fmt::format("s={} G={} a={} b={}", s, g, to_string(rs[i - 1]), to_string(rs[j - 1])),
                    fmt::format("M^sG = {}, s M^G = {}", roots_str(got), roots_str(expected)));
        }
    }
  });
  return c;
}

Check validate_intervals(Blueprint const &p, int radius)
{
  Check c;
  c.id = "INTERVAL";
  over_galleries(c, all_galleries(radius), [&](Word const &g, Check &pc) {
    int const n = static_cast<int>(g.size());
    auto const rs = crossed(g);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        pc.checked++;
        auto const m = p.query(g, i, j);
        if (m.empty()) continue;
        auto const oi = open_interval(rs[i - 1], rs[j - 1]);
        int        last = 0;
        for (auto const &r : m) {
          auto const at = std::find(rs.begin(), rs.end(), r);
          int const  pos = static_cast<int>(at - rs.begin()) + 1;
          if (std::find(oi.begin(), oi.end(), r) == oi.end())
            pc.fail(fmt::format("G={} (i,j)=({},{})", g, i, j), fmt::format("{} not in the open interval", to_string(r)));
          else if (at == rs.end() || pos <= last)
            pc.fail(fmt::format("G={} (i,j)=({},{})", g, i, j), fmt::format("{} out of gallery order", to_string(r)));
          else last = pos;
        }
      }
  });
  return c;
}

namespace {

// least length of a chamber in (-a) and (-b), or -1 if none within the radius
int witness_length(Root const &a, Root const &b, int radius)
{
  auto const bl = ball(radius);
  for (std::size_t k = 0; k < bl->count_upto(radius); ++k) {
    Vec3 const x = bl->inv[k] * a.v, y = bl->inv[k] * b.v;
    if (vec_sign(x) < 0 && vec_sign(y) < 0) return static_cast<int>(bl->words[k].size());
  }
  return -1;
}

} // namespace

DnReport corollary_dn_check(Blueprint const &p, int n, int radius)
{
  DnReport r;
  r.clause1.id = fmt::format("D_{}/shallow-nested-commute", n);
  r.clause2.id = fmt::format("D_{}/some-nested-noncommuting", n);
  for (auto const &g : all_galleries(radius)) {
    int const  len = static_cast<int>(g.size());
    auto const rs = crossed(g);
    for (int i = 1; i <= len; ++i)
      for (int j = i + 1; j <= len; ++j) {
        auto const c = classify_pair(rs[i - 1], rs[j - 1]);
        if (c.kind != PairKind::Nested) continue;
        auto const m = p.query(g, i, j);
        int const  wl = witness_length(rs[i - 1], rs[j - 1], n);
        if (wl >= 0) {
          r.clause1.checked++;
          if (!m.empty())
            r.clause1.fail(fmt::format("G={} (i,j)=({},{})", g, i, j),
                           fmt::format("witness of length {}, M = {}", wl, roots_str(m)));
        }
        r.clause2.checked++;
        if (!m.empty() && r.clause2.notes.empty())
          r.clause2.notes.push_back(fmt::format("G={} (i,j)=({},{}) M = {}", g, i, j, roots_str(m)));
      }
  }
  if (r.clause2.notes.empty()) r.clause2.fail(fmt::format("radius {}", radius), "every nested pair has M empty");
  return r;
}

Blueprint perturbed_dn_provider(int n, int radius)
{
  for (auto const &g : all_galleries(radius)) {
    int const  len = static_cast<int>(g.size());
    auto const rs = crossed(g);
    for (int i = 1; i <= len; ++i)
      for (int j = i + 1; j <= len; ++j) {
        if (classify_pair(rs[i - 1], rs[j - 1]).kind != PairKind::Nested) continue;
        if (witness_length(rs[i - 1], rs[j - 1], n) >= 0) continue;
        auto const oi = open_interval(rs[i - 1], rs[j - 1]);
        if (oi.empty()) continue;
        Blueprint p = Blueprint::kac_moody();
        p.set_override(g, i, j, {oi.front()});
        return p;
      }
  }
  throw BlueprintError(fmt::format("no nested pair deeper than {} within radius {}", n, radius));
}

} // namespace c444
