#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "c444/ring2.hpp"

// The (4,4,4) triangle group W = <r,s,t | x^2, (xy)^4>.
// Elements are ShortLex-least reduced words over "rst"; the empty word is 1.
namespace c444 {

using Word = std::string;
using Vec3 = Eigen::Matrix<Ring2Value, 3, 1>;
using Mat3 = Eigen::Matrix<Ring2Value, 3, 3>;

struct ResourceLimit : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inline constexpr char kGens[3] = {'r', 's', 't'};

int  gen_index(char g); // 'r' -> 0, 's' -> 1, 't' -> 2
char gen_char(int i);
char third(char a, char b);
inline unsigned gen_bit(char g) { return 1u << gen_index(g); }
bool is_word(std::string_view w);

// sigma_g acting on coordinates: v_g <- -v_g + sqrt2 * sum_{h != g} v_h
void reflect(int g, Vec3 &v);
Mat3 simple_reflection(int g);
Mat3 matrix_of(std::string_view w);
Vec3 act(std::string_view w, Vec3 v);     // w(v)
Vec3 act_inv(std::string_view w, Vec3 v); // w^-1(v)

// sign of a root-like vector (all coordinates weakly one-signed); 0 for the zero vector
int  vec_sign(Vec3 const &v);
Vec3 unit(int g);

// 2B(x, y) with B(e_a, e_a) = 1 and B(e_a, e_b) = -sqrt2/2
Ring2Value form2(Vec3 const &x, Vec3 const &y);

Word     canon(std::string_view w);
Word     multiply(std::string_view x, std::string_view y);
Word     inverse(std::string_view x);
int      length(std::string_view x);
unsigned left_descents(std::string_view x);  // bitmask over gen_index
unsigned right_descents(std::string_view x); // bitmask over gen_index
bool     shortlex_less(std::string_view x, std::string_view y);
bool     prefix_le(std::string_view x, std::string_view y); // x < y in the prefix order: l(x) + l(x^-1 y) = l(y)

// longest element of the parabolic subgroup on a 2-subset (mask over gen_index)
Word longest_element(unsigned mask);
Word longest_element(char a, char b);

// J-residue of a chamber, keyed by its gate w = proj_R 1
struct Residue
{
  unsigned mask = 0;
  Word     w;

  int  rank() const { return __builtin_popcount(mask); }
  std::vector<Word> members() const; // rank <= 2 only
  bool contains(std::string_view x) const;
  std::string str() const; // e.g. "st:rs"
  friend bool operator==(Residue const &, Residue const &) = default;
  friend bool operator<(Residue const &x, Residue const &y)
  {
    if (x.mask != y.mask) return x.mask < y.mask;
    return shortlex_less(x.w, y.w);
  }
};

unsigned mask_of(std::string_view letters);
std::string letters_of(unsigned mask);
Residue residue(unsigned mask, std::string_view rep);
Residue residue(std::string_view letters, std::string_view rep);
Residue parse_residue(std::string_view text); // "st:rep"
Word    projection(std::string_view x, Residue const &R);

bool check_not_both_down(std::string_view w, char s, char t);

struct Ball
{
  int                                 radius = 0;
  std::vector<Word>                   words;   // ShortLex sorted
  std::vector<Mat3>                   mats;    // matrix of w
  std::vector<Mat3>                   inv;     // matrix of w^-1
  std::vector<std::size_t>            sphere;  // sphere[k] = first index of length k; sphere[radius+1] = size
  std::unordered_map<Word, std::size_t> index;

  std::size_t count_upto(int r) const { return sphere[static_cast<std::size_t>(std::min(r, radius)) + 1]; }
  std::vector<std::size_t> sphere_sizes(int r) const;
};

int  ball_max();
void set_ball_max(int r);
// Shared, memoized ball; the returned ball may have a larger radius than asked for.
std::shared_ptr<Ball const> ball(int radius);

} // namespace c444
