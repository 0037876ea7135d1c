// c444: command-line front end for the (4,4,4) blueprint toolkit.
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "c444/parallel.hpp"
#include "c444/serialize.hpp"

using namespace c444;
using nlohmann::json;

namespace {

struct Config
{
  std::string format = "text";
  std::string blueprint;
  unsigned    threads = 0;
  int         ball_max = 14, ugroup_max = 12, tower_max = 4;
};

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

Blueprint load_blueprint(Config const &c) { return c.blueprint.empty() ? Blueprint::kac_moody() : Blueprint::load(c.blueprint); }

Residue residue_arg(std::string const &s)
{
  auto const colon = s.find(':');
  if (colon != std::string::npos && s.substr(colon + 1) == "1") return parse_residue(s.substr(0, colon + 1));
  return parse_residue(s);
}

Word word_arg(std::string const &s)
{
  if (s == "1") return "";
  if (!is_word(s)) throw UsageError("not a word over r, s, t: " + s);
  return s;
}

Kind kind_arg(std::string const &s)
{
  if (auto k = parse_kind(s)) return *k;
  std::string all;
  for (Kind k : kAllKinds) all += (all.empty() ? "" : ", ") + kind_name(k);
  throw UsageError(fmt::format("unknown kind {} (one of {})", s, all));
}

Anchor anchor_arg(Kind k, std::string const &res, std::string const &s)
{
  Residue const R = residue_arg(res);
  if (is_pair_kind(k)) return pair_anchor(R);
  return t1_anchor(R, s.empty() ? char(0) : s[0]);
}

int emit_report(Config const &c, Report const &r)
{
  if (c.format == "json") std::cout << to_json(r).dump(2) << "\n";
  else std::cout << r.text();
  return r.ok() ? 0 : 2;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Commutator blueprints of type (4,4,4): Coxeter kernel, root groups, trees of groups and the tower G_i"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--blueprint", cfg.blueprint, "blueprint JSON file (default: built-in Kac-Moody)");
  app.add_option("--threads", cfg.threads, "worker threads for sweeps (0: all cores)");
  app.add_option("--ball-max", cfg.ball_max, "largest Coxeter ball radius");
  app.add_option("--ugroup-max", cfg.ugroup_max, "largest l(w) for U_w");
  app.add_option("--tower-max", cfg.tower_max, "largest tower level");

  auto *ball_cmd = app.add_subcommand("ball", "elements of W up to a radius");
  int   radius = 0;
  bool  counts = false;
  ball_cmd->add_option("--radius", radius)->required();
  ball_cmd->add_flag("--counts", counts, "sphere sizes only");

  auto *roots_cmd = app.add_subcommand("roots", "positive roots with k_alpha <= k");
  int   kmax = 3;
  roots_cmd->add_option("--k", kmax);

  auto                    *pair_cmd = app.add_subcommand("classify-pair", "relative position of two roots");
  std::vector<std::string> pair_roots;
  pair_cmd->add_option("roots", pair_roots, "two roots as word:generator")->expected(2)->required();

  auto       *group_cmd = app.add_subcommand("group", "U_w with its relations and CB3 certificate");
  std::string gword;
  group_cmd->add_option("--word", gword)->required();

  auto *val_cmd = app.add_subcommand("validate-blueprint", "CB1, CB2, Weyl invariance and interval checks");
  std::string vfile;
  int         vradius = 6;
  val_cmd->add_option("--file", vfile);
  val_cmd->add_option("--radius", vradius);

  std::string kind, res, sletter, emit = "text";
  int         level_i = -1, samples = 40;
  auto        add_anchor = [&](CLI::App *c, bool need_kind) {
    auto *k = c->add_option("--kind", kind);
    if (need_kind) k->required();
    c->add_option("--residue", res, "type:word, e.g. st:1");
    c->add_option("--s", sletter, "letter playing s in a T_{i,1} labeling");
  };
  auto *con_cmd = app.add_subcommand("construct", "build a named sequence of groups");
  add_anchor(con_cmd, true);
  con_cmd->add_option("--emit", emit)->check(CLI::IsMember({"text", "json", "dot"}));
  auto *cert_cmd = app.add_subcommand("certify", "verify the injectivity, isomorphism and intersection statements");
  add_anchor(cert_cmd, false);
  cert_cmd->add_option("--level", level_i, "all anchors in T_i");
  cert_cmd->add_option("--samples", samples, "normal-form samples per contraction");
  auto *dia_cmd = app.add_subcommand("diagram", "DOT chain of a named sequence of groups");
  add_anchor(dia_cmd, true);

  auto *tower_cmd = app.add_subcommand("tower", "C_i, D_i, T_i and generator counts");
  int   tlevel = 0;
  tower_cmd->add_option("--level", tlevel)->required();

  auto       *probe_cmd = app.add_subcommand("probe", "bounded faithfulness probe of U_w inside G_i");
  int         plevel = 0, depth = 10;
  std::string pword;
  probe_cmd->add_option("--level", plevel);
  probe_cmd->add_option("--word", pword)->required();
  probe_cmd->add_option("--depth", depth);

  auto       *lem_cmd = app.add_subcommand("lemmas", "lemma batteries");
  std::string suite = "core";
  int         maxlen = 6;
  lem_cmd->add_option("--suite", suite)->check(CLI::IsMember({"core", "key", "tower", "nonsimple"}));
  lem_cmd->add_option("--max-length", maxlen);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    set_ball_max(cfg.ball_max);
    set_ugroup_max(cfg.ugroup_max);
    set_tower_max(cfg.tower_max);
    set_threads(cfg.threads);
    bool const js = cfg.format == "json";

    if (ball_cmd->parsed()) {
      auto const b = ball(radius);
      if (counts) {
        auto const s = b->sphere_sizes(radius);
        if (js) std::cout << json(s).dump() << "\n";
        else
          for (std::size_t k = 0; k < s.size(); ++k) std::cout << k << " " << s[k] << "\n";
        return 0;
      }
      std::vector<std::string> ws;
      for (std::size_t k = 0; k < b->count_upto(radius); ++k) ws.push_back(b->words[k].empty() ? "1" : b->words[k]);
      if (js) std::cout << json(ws).dump() << "\n";
      else
        for (auto const &w : ws) std::cout << w << "\n";
      return 0;
    }
    if (roots_cmd->parsed()) {
      json out = json::array();
      for (auto const &a : roots_upto(kmax)) {
        if (js) out.push_back({{"root", to_string(a)}, {"k", k_alpha(a)}, {"panel", distinguished_panel(a).str()}});
        else std::cout << fmt::format("{:<12} k={} P={}\n", to_string(a), k_alpha(a), distinguished_panel(a).str());
      }
      if (js) std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (pair_cmd->parsed()) {
      Root const a = parse_root(pair_roots[0]), b = parse_root(pair_roots[1]);
      auto const c = classify_pair(a, b);
      if (js) std::cout << json{{"kind", kind_name(c)}, {"order", c.order}, {"a_in_b", c.a_in_b}}.dump() << "\n";
      else std::cout << kind_name(c) << "\n";
      return 0;
    }
    if (group_cmd->parsed()) {
      Blueprint const p = load_blueprint(cfg);
      Word const      w = word_arg(gword);
      PcGroup         g = build_ugroup(p, w);
      auto const      cert = certify_cb3(g, p);
      auto const      u = make_u_group(p, w);
      auto const      rel = vertex_relations(*u);
      if (js) {
        json rs = json::array();
        for (auto const &r : rel) {
          json rhs = json::array();
          for (auto const &x : r.rhs) rhs.push_back(to_string(x));
          rs.push_back({{"a", to_string(r.a)}, {"b", to_string(r.b)}, {"rhs", rhs}});
        }
        std::cout << json{{"group", u->name()}, {"order", u->elements()->size()}, {"relations", rs}, {"cb3", to_json(cert.report)}}.dump(2)
                  << "\n";
      } else {
        std::cout << fmt::format("{}: order {}\n", u->name(), u->elements()->size());
        for (auto const &r : rel) {
          std::string rhs;
          for (auto const &x : r.rhs) rhs += " " + to_string(x);
          if (r.a == r.b) std::cout << fmt::format("  x[{}]^2 ={}\n", to_string(r.a), rhs.empty() ? " 1" : rhs);
          else std::cout << fmt::format("  [x[{}], x[{}]] ={}\n", to_string(r.a), to_string(r.b), rhs.empty() ? " 1" : rhs);
        }
        std::cout << cert.report.text();
      }
      return cert.consistent() ? 0 : 2;
    }
    if (val_cmd->parsed()) {
      Blueprint const p = vfile.empty() ? load_blueprint(cfg) : Blueprint::load(vfile);
      Report          r;
      r.add("CB1") = validate_cb1(p, vradius);
      r.add("CB2") = validate_cb2(p);
      r.add("WEYL") = validate_weyl(p, vradius, false);
      r.add("INTERVAL") = validate_intervals(p, vradius);
      return emit_report(cfg, r);
    }
    if (con_cmd->parsed() || dia_cmd->parsed()) {
      if (res.empty()) throw UsageError("--residue is required");
      Blueprint const p = load_blueprint(cfg);
      GroupBank       bank(p);
      Kind const      k = kind_arg(kind);
      auto const      c = build_named(k, anchor_arg(k, res, sletter), bank);
      auto const      shape = tree_shape(*c.tree);
      std::string const how = dia_cmd->parsed() ? "dot" : emit;
      if (how == "dot") std::cout << to_dot(shape);
      else if (how == "json") std::cout << to_json(shape).dump(2) << "\n";
      else
        for (std::size_t v = 0; v < c.specs.size(); ++v)
          std::cout << fmt::format("{:>2}  {:<12} {:<16} order {}\n", v, c.specs[v].notation, c.specs[v].name(), shape.vertices[v].order);
      return 0;
    }
    if (cert_cmd->parsed()) {
      Blueprint const p = load_blueprint(cfg);
      GroupBank       bank(p);
      if (level_i >= 0) return emit_report(cfg, verify_level(level_i, bank, samples));
      if (kind.empty() || res.empty()) throw UsageError("certify needs --level, or --kind and --residue");
      Kind const k = kind_arg(kind);
      return emit_report(cfg, verify_construction(k, anchor_arg(k, res, sletter), bank, samples));
    }
    if (tower_cmd->parsed()) {
      auto const &L = level(tlevel);
      auto const  cl = classify_level(tlevel);
      if (js) {
        json out = to_json(L);
        json t1 = json::array(), t2 = json::array();
        for (auto const &R : cl.t1) t1.push_back(R.str());
        for (auto const &[R, T] : cl.t2) t2.push_back({R.str(), T.str()});
        out["T1"] = t1;
        out["T2"] = t2;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << fmt::format("level {}: |C| = {}, |D| = {}, generators = {}, |T_1| = {}, |T_2| = {}\n", L.i, L.C.size(),
                                 L.D.size(), L.generators.size(), cl.t1.size(), cl.t2.size());
        for (auto const &R : cl.t1) std::cout << "  T1 " << R.str() << "\n";
        for (auto const &[R, T] : cl.t2) std::cout << "  T2 {" << R.str() << ", " << T.str() << "}\n";
      }
      return 0;
    }
    if (probe_cmd->parsed()) {
      Blueprint const p = load_blueprint(cfg);
      GroupBank       bank(p);
      Word const      w = word_arg(pword);
      if (!level(plevel).C.count(w)) throw UsageError(fmt::format("{} is not in C_{}", pword, plevel));
      auto const gi = build_gi(plevel, bank);
      auto const r = faithfulness_probe(gi, p, w, depth);
      if (js)
        std::cout << json{{"w", pword}, {"elements", r.elements}, {"distinct", r.distinct}, {"inconclusive", r.inconclusive}, {"collapses", r.collapses}}
                       .dump(2)
                  << "\n";
      else {
        std::cout << fmt::format("U_{} in G_{}: {} elements, {} distinct within depth {}{}\n", pword, plevel, r.elements, r.distinct,
                                 depth, r.inconclusive ? " (inconclusive)" : "");
        for (auto const &c : r.collapses) std::cout << "  collapse: " << c << "\n";
      }
      return r.collapses.empty() ? 0 : 2;
    }
    if (lem_cmd->parsed()) {
      Report r;
      if (suite == "core") r = lemma_suite_core(maxlen);
      else if (suite == "key") {
        Blueprint const p = load_blueprint(cfg);
        r.add("KEY(a)") = key_lemma_sweep(p, maxlen, 'a');
        r.add("KEY(b)") = key_lemma_sweep(p, maxlen, 'b');
      } else if (suite == "tower") r = tower_suite(maxlen);
      else r = lemma_suite_nonsimple(maxlen);
      return emit_report(cfg, r);
    }
  } catch (UsageError const &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (ResourceLimit const &e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (ConstructionError const &e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return 1;
  } catch (std::invalid_argument const &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
