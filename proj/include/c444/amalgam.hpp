#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "c444/pcgroup.hpp"

// Trees of groups over finite 2-groups generated by root elements u_a. A tree of groups is itself a
// Group, so contracted subtrees nest. Elements of every group are flat vectors of 32-bit words.
namespace c444 {

using Elem = std::vector<std::uint32_t>;

struct ElemHash
{
  std::size_t operator()(Elem const &e) const noexcept
  {
    std::size_t h = e.size();
    for (auto x : e) h = h * 0x9E3779B97F4A7C15ull ^ (x + 0x7F4A7C15u + (h << 6) + (h >> 2));
    return h;
  }
};

struct TreeError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

class Group
{
public:
  explicit Group(std::string name) : name_(std::move(name)) {}
  virtual ~Group() = default;

  std::string const &name() const { return name_; }

  virtual Elem one() const = 0;
  virtual Elem mul(Elem const &a, Elem const &b) const = 0;
  virtual Elem inv(Elem const &a) const = 0;
  virtual bool less(Elem const &a, Elem const &b) const { return a < b; }
  // enumerated elements of a finite group, sorted by less(); null for tree products
  virtual std::vector<Elem> const *elements() const { return nullptr; }
  virtual std::size_t weight(Elem const &) const { return 0; } // nontrivial syllables
  virtual std::string str(Elem const &a) const;

  std::vector<Root> const &roots() const { return roots_; }
  virtual std::optional<Elem> root_elem(Root const &a) const = 0;
  bool has_root(Root const &a) const;

protected:
  std::string       name_;
  std::vector<Root> roots_; // generating roots, in order of appearance
};

using GroupPtr = std::shared_ptr<Group const>;

// A subgroup of U_w given by generating roots; elements are one-word PcElem encodings.
class PcVertexGroup : public Group
{
public:
  PcVertexGroup(std::string name, std::shared_ptr<PcGroup const> amb, Subgroup sub);

  Elem one() const override { return {0}; }
  Elem mul(Elem const &a, Elem const &b) const override { return {amb_->multiply(a[0], b[0])}; }
  Elem inv(Elem const &a) const override { return {amb_->inverse(a[0])}; }
  bool less(Elem const &a, Elem const &b) const override;
  std::vector<Elem> const *elements() const override { return &elems_; }
  std::string str(Elem const &a) const override;
  std::optional<Elem> root_elem(Root const &a) const override;

  PcGroup const &ambient() const { return *amb_; }
  Subgroup const &subgroup() const { return sub_; }

private:
  std::shared_ptr<PcGroup const> amb_;
  Subgroup                       sub_;
  std::vector<Elem>              elems_;
};

GroupPtr make_u_group(Blueprint const &p, std::string_view w);
GroupPtr make_v_group(Blueprint const &p, Residue const &R); // V_{w_R r_J}, J the type of R

// finite subgroup of another group, enumerated
class SubsetGroup : public Group
{
public:
  SubsetGroup(std::string name, GroupPtr parent, std::vector<Elem> const &gens);

  Elem one() const override { return parent_->one(); }
  Elem mul(Elem const &a, Elem const &b) const override { return parent_->mul(a, b); }
  Elem inv(Elem const &a) const override { return parent_->inv(a); }
  bool less(Elem const &a, Elem const &b) const override { return parent_->less(a, b); }
  std::vector<Elem> const *elements() const override { return &elems_; }
  std::size_t weight(Elem const &a) const override { return parent_->weight(a); }
  std::string str(Elem const &a) const override { return parent_->str(a); }
  std::optional<Elem> root_elem(Root const &a) const override;
  GroupPtr const &parent() const { return parent_; }

private:
  GroupPtr          parent_;
  std::vector<Elem> elems_;
  std::unordered_set<Elem, ElemHash> set_;
};

// finite closure of gens, optionally skipping elements heavier than max_weight; nullopt if cap is hit
struct Closure
{
  std::vector<Elem> elems; // sorted by less()
  bool              complete = true;
};
Closure generate(Group const &g, std::vector<Elem> const &gens, std::size_t max_weight = SIZE_MAX,
                 std::size_t cap = std::size_t{1} << 16);

struct EdgeSpec
{
  int u = 0, v = 0;
  // generator pairs (in G_u, in G_v); absent: the shared roots of the two vertex groups
  std::optional<std::vector<std::pair<Elem, Elem>>> gens;
};

class TreeOfGroups : public Group
{
public:
  TreeOfGroups(std::string name, std::vector<GroupPtr> vertices, std::vector<EdgeSpec> const &edges);

  Elem one() const override;
  Elem mul(Elem const &a, Elem const &b) const override;
  Elem inv(Elem const &a) const override;
  std::size_t weight(Elem const &a) const override;
  std::string str(Elem const &a) const override;
  std::optional<Elem> root_elem(Root const &a) const override;

  using Word = std::vector<std::pair<int, Elem>>;

  int             nv() const { return static_cast<int>(vertices_.size()); }
  GroupPtr const &vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  std::vector<std::pair<int, int>> edges() const;
  bool            adjacent(int u, int v) const { return dir_.count({u, v}) > 0; }
  // generator pairs of the edge u - v, oriented from u
  std::vector<std::pair<Elem, Elem>> edge_gens(int u, int v) const;
  // image of the edge group in G_u, and the boundary identification into G_v
  std::vector<Elem> const &edge_group(int u, int v) const;
  Elem                     edge_map(int u, int v, Elem const &c) const;
  bool                     in_edge_group(int u, int v, Elem const &c) const;

  Elem reduce(Word const &w, int base = 0) const;
  Word syllables(Elem const &a) const;
  Elem embed(int v, Elem const &g) const { return reduce({{v, g}}); }
  std::optional<Elem> vertex_membership(Elem const &a, int v) const;

private:
  struct Dir
  {
    int                                          to = 0;
    std::vector<std::pair<Elem, Elem>>           gens;
    std::vector<Elem>                            A; // in G_from
    std::unordered_set<Elem, ElemHash>           Aset;
    std::unordered_map<Elem, Elem, ElemHash>     phi; // G_from -> G_to on A
    mutable std::unordered_map<Elem, std::pair<Elem, Elem>, ElemHash> cosets; // z -> (rep, c)
    mutable std::shared_ptr<std::mutex>          mu = std::make_shared<std::mutex>();
  };
  std::pair<Elem, Elem> decompose(Dir const &d, int from, Elem const &z) const;
  void                  push(Word &st, int v, Elem y) const;
  Elem                  encode(Word const &w) const;

  std::vector<GroupPtr>           vertices_;
  std::map<std::pair<int, int>, Dir> dir_;
  std::vector<std::vector<int>>   next_; // next_[u][v]: neighbour of u towards v
};

using TreePtr = std::shared_ptr<TreeOfGroups const>;

// bounded-weight closure intersection of <H> and <K> inside g
struct Intersection
{
  std::vector<Elem> elems;
  bool              complete = true; // both closures finished within the bound
};
Intersection intersect_subgroups(Group const &g, std::vector<Elem> const &h, std::vector<Elem> const &k,
                                 std::size_t bound = 6, std::size_t cap = std::size_t{1} << 18);

// contract a partition into connected parts; single-vertex parts keep their group
struct Contraction
{
  TreePtr                       tree;
  std::vector<std::vector<int>> parts;
  std::vector<int>              part_of;
  std::vector<TreePtr>          part_trees; // null for single-vertex parts
  Elem                          to_coarse(TreeOfGroups const &fine, Elem const &x) const;
  Elem                          to_fine(TreeOfGroups const &fine, Elem const &x) const;
};
Contraction contract(TreePtr const &t, std::vector<std::vector<int>> const &parts, std::string name = "");

// subdivide edge u - v through a new vertex carrying H, where G_e <= H <= G_u
struct Folding
{
  TreePtr tree; // new vertex has index t->nv()
  int     u = 0, x = 0;
  Elem    to_new(TreeOfGroups const &old, Elem const &a) const;
  Elem    to_old(TreeOfGroups const &old, Elem const &a) const;
};
Folding fold(TreePtr const &t, int u, int v, std::vector<Elem> const &h_gens);

// Hypotheses of the subtree-injectivity proposition for small mapped into big (vertex map given).
struct EmbeddingCertificate
{
  Check vertices;  // H_v -> G_v well defined and injective on root generators
  Check preimages; // alpha_e^-1(H_o) = omega_e^-1(H_t)
  Check edges;     // small edge group equals that preimage
  bool  valid() const { return vertices.ok() && preimages.ok() && edges.ok(); }
};
EmbeddingCertificate certify_embedding(TreeOfGroups const &big, TreeOfGroups const &small,
                                       std::vector<int> const &vmap);

// map u_a -> u_a from src to dst: checked on every finite leaf group of src (Cayley graph test)
Check check_root_hom(Group const &src, Group const &dst);

} // namespace c444
