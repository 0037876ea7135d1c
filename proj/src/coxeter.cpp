#include "c444/coxeter.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace c444 {

int gen_index(char g)
{
  switch (g) {
  case 'r': return 0;
  case 's': return 1;
  case 't': return 2;
  default: throw std::invalid_argument(std::string("not a generator: '") + g + "'");
  }
}

char gen_char(int i)
{
  if (i < 0 || i > 2) throw std::invalid_argument("generator index out of range");
  return kGens[i];
}

char third(char a, char b)
{
  if (a == b) throw std::invalid_argument("third(): letters must differ");
  return gen_char(3 - gen_index(a) - gen_index(b));
}

bool is_word(std::string_view w)
{
  return std::all_of(w.begin(), w.end(), [](char c) { return c == 'r' || c == 's' || c == 't'; });
}

void reflect(int g, Vec3 &v)
{
  Ring2Value sum;
  for (int h = 0; h < 3; ++h)
    if (h != g) sum += v(h);
  v(g) = -v(g) + Ring2Value::sqrt2() * sum;
}

Mat3 simple_reflection(int g)
{
  Mat3 m = Mat3::Identity();
  for (int h = 0; h < 3; ++h) m(g, h) = (h == g) ? Ring2Value(-1) : Ring2Value::sqrt2();
  return m;
}

Mat3 matrix_of(std::string_view w)
{
  Mat3 m = Mat3::Identity();
  for (char c : w) m = m * simple_reflection(gen_index(c));
  return m;
}

Vec3 act(std::string_view w, Vec3 v)
{
  for (auto it = w.rbegin(); it != w.rend(); ++it) reflect(gen_index(*it), v);
  return v;
}

Vec3 act_inv(std::string_view w, Vec3 v)
{
  for (char c : w) reflect(gen_index(c), v);
  return v;
}

int vec_sign(Vec3 const &v)
{
  for (int i = 0; i < 3; ++i) {
    int const s = v(i).sign();
    if (s != 0) return s;
  }
  return 0;
}

Vec3 unit(int g)
{
  Vec3 v = Vec3::Zero();
  v(g) = Ring2Value(1);
  return v;
}

Ring2Value form2(Vec3 const &x, Vec3 const &y)
{
  Ring2Value dot, sx, sy;
  for (int i = 0; i < 3; ++i) {
    dot += x(i) * y(i);
    sx += x(i);
    sy += y(i);
  }
  return Ring2Value(2) * dot - Ring2Value::sqrt2() * (sx * sy - dot);
}

namespace {
// Y <- S_g * Y
void row_op(Mat3 &y, int g)
{
  for (int c = 0; c < 3; ++c) {
    Ring2Value sum;
    for (int h = 0; h < 3; ++h)
      if (h != g) sum += y(h, c);
    y(g, c) = -y(g, c) + Ring2Value::sqrt2() * sum;
  }
}

// Y <- Y * S_g
void col_op(Mat3 &y, int g)
{
  for (int b = 0; b < 3; ++b) {
    if (b == g) continue;
    for (int r = 0; r < 3; ++r) y(r, b) += Ring2Value::sqrt2() * y(r, g);
  }
  for (int r = 0; r < 3; ++r) y(r, g) = -y(r, g);
}

int col_sign(Mat3 const &m, int c)
{
  for (int r = 0; r < 3; ++r) {
    int const s = m(r, c).sign();
    if (s != 0) return s;
  }
  return 0;
}
} // namespace

Word canon(std::string_view w)
{
  // Y holds x^-1; its column a is x^-1(e_a), negative iff a is a left descent of x.
  Mat3 y = Mat3::Identity();
  for (char c : w) row_op(y, gen_index(c));
  Word out;
  for (;;) {
    int a = 0;
    while (a < 3 && col_sign(y, a) >= 0) ++a;
    if (a == 3) break;
    out.push_back(kGens[a]);
    col_op(y, a);
  }
  return out;
}

Word multiply(std::string_view x, std::string_view y)
{
  std::string w(x);
  w.append(y);
  return canon(w);
}

Word inverse(std::string_view x) { return canon(std::string(x.rbegin(), x.rend())); }

int length(std::string_view x) { return static_cast<int>(canon(x).size()); }

unsigned left_descents(std::string_view x)
{
  unsigned m = 0;
  for (int g = 0; g < 3; ++g)
    if (vec_sign(act_inv(x, unit(g))) < 0) m |= 1u << g;
  return m;
}

unsigned right_descents(std::string_view x)
{
  unsigned m = 0;
  for (int g = 0; g < 3; ++g)
    if (vec_sign(act(x, unit(g))) < 0) m |= 1u << g;
  return m;
}

bool shortlex_less(std::string_view x, std::string_view y)
{
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

bool prefix_le(std::string_view x, std::string_view y)
{
  return length(x) + length(multiply(inverse(x), y)) == length(y);
}

unsigned mask_of(std::string_view letters)
{
  unsigned m = 0;
  for (char c : letters) m |= gen_bit(c);
  return m;
}

std::string letters_of(unsigned mask)
{
  std::string s;
  for (int g = 0; g < 3; ++g)
    if (mask & (1u << g)) s.push_back(kGens[g]);
  return s;
}

Word longest_element(unsigned mask)
{
  if (__builtin_popcount(mask) != 2 || mask > 7) throw std::invalid_argument("longest_element needs a 2-subset of S");
  std::string const l = letters_of(mask);
  return canon(std::string{l[0], l[1], l[0], l[1]});
}

Word longest_element(char a, char b) { return longest_element(gen_bit(a) | gen_bit(b)); }

Residue residue(unsigned mask, std::string_view rep)
{
  if (mask == 0 || mask > 7) throw std::invalid_argument("residue type must be a nonempty subset of S");
  Word x = canon(rep);
  for (;;) {
    unsigned const d = right_descents(x) & mask;
    if (!d) break;
    x = canon(x + kGens[__builtin_ctz(d)]);
  }
  return {mask, x};
}

Residue residue(std::string_view letters, std::string_view rep) { return residue(mask_of(letters), rep); }

Residue parse_residue(std::string_view text)
{
  auto const colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("residue must look like \"st:word\"");
  auto const typ = text.substr(0, colon);
  auto const rep = text.substr(colon + 1);
  if (typ.empty() || !is_word(typ) || !is_word(rep)) throw std::invalid_argument("bad residue: " + std::string(text));
  return residue(typ, rep);
}

std::vector<Word> Residue::members() const
{
  std::string const l = letters_of(mask);
  if (l.size() == 1) return {w, canon(w + l)};
  if (l.size() != 2) throw std::invalid_argument("members() only for rank 1 and 2 residues");
  char const a = l[0], b = l[1];
  std::vector<std::string> const tails = {"", {a}, {b}, {a, b}, {b, a}, {a, b, a}, {b, a, b}, {a, b, a, b}};
  std::vector<Word> out;
  for (auto const &t : tails) out.push_back(canon(w + t));
  return out;
}

bool Residue::contains(std::string_view x) const { return residue(mask, x) == *this; }

std::string Residue::str() const { return letters_of(mask) + ":" + w; }

Word projection(std::string_view x, Residue const &R)
{
  if (R.rank() == 3) return canon(x);
  Word const xi = inverse(x);
  Word best;
  int  best_len = -1;
  for (auto const &z : R.members()) {
    int const l = length(xi + z);
    if (best_len < 0 || l < best_len) {
      best_len = l;
      best = z;
    }
  }
  return best;
}

bool check_not_both_down(std::string_view w, char s, char t)
{
  if (s == t) throw std::invalid_argument("not-both-down: s and t must differ");
  std::string const ws(w);
  int const l = length(ws);
  if (length(ws + s) != l + 1 || length(ws + t) != l + 1)
    throw std::invalid_argument("not-both-down: needs l(ws) = l(w)+1 = l(wt)");
  char const r = third(s, t);
  int const lsr = length(ws + s + r);
  int const ltr = length(ws + t + r);
  bool ok = (lsr == l + 2 || ltr == l + 2);
  if (lsr == l) ok = ok && length(ws + s + r + t) == l + 1;
  return ok;
}

std::vector<std::size_t> Ball::sphere_sizes(int r) const
{
  std::vector<std::size_t> out;
  for (int k = 0; k <= std::min(r, radius); ++k) out.push_back(sphere[k + 1] - sphere[k]);
  return out;
}

namespace {
struct MatHash
{
  std::size_t operator()(Mat3 const &m) const noexcept
  {
    std::size_t h = 0;
    for (int i = 0; i < 9; ++i) h = h * 1000003u ^ Ring2Hash{}(m(i));
    return h;
  }
};

struct MatEq
{
  bool operator()(Mat3 const &x, Mat3 const &y) const { return x == y; }
};

std::mutex                  g_ball_mutex;
std::shared_ptr<Ball const> g_ball;
int                         g_ball_max = 14;
constexpr int               kBallHardMax = 22;

std::shared_ptr<Ball const> build_ball(int radius)
{
  auto b = std::make_shared<Ball>();
  b->radius = radius;
  b->words.push_back("");
  b->mats.push_back(Mat3::Identity());
  b->inv.push_back(Mat3::Identity());
  b->sphere = {0, 1};
  std::unordered_map<Mat3, std::size_t, MatHash, MatEq> prev, cur;
  prev.emplace(Mat3::Identity(), 0);
  for (int k = 1; k <= radius; ++k) {
    std::vector<Word> words;
    std::vector<Mat3> mats, inv;
    cur.clear();
    for (std::size_t y = b->sphere[k - 1]; y < b->sphere[k]; ++y) {
      for (int g = 0; g < 3; ++g) {
        if (col_sign(b->mats[y], g) < 0) continue; // right descent
        Mat3 x = b->mats[y];
        col_op(x, g);
        Word cand = b->words[y] + kGens[g];
        auto [it, fresh] = cur.emplace(x, words.size());
        if (fresh) {
          Mat3 xi = b->inv[y];
          row_op(xi, g);
          words.push_back(std::move(cand));
          mats.push_back(x);
          inv.push_back(xi);
        } else if (cand < words[it->second]) {
          words[it->second] = std::move(cand);
        }
      }
    }
    std::vector<std::size_t> order(words.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return words[i] < words[j]; });
    for (auto i : order) {
      b->words.push_back(std::move(words[i]));
      b->mats.push_back(mats[i]);
      b->inv.push_back(inv[i]);
    }
    b->sphere.push_back(b->words.size());
  }
  for (std::size_t i = 0; i < b->words.size(); ++i) b->index.emplace(b->words[i], i);
  return b;
}
} // namespace

int ball_max()
{
  std::lock_guard lock(g_ball_mutex);
  return g_ball_max;
}

void set_ball_max(int r)
{
  if (r < 0 || r > kBallHardMax) throw ResourceLimit("ball maximum must lie in [0, " + std::to_string(kBallHardMax) + "]");
  std::lock_guard lock(g_ball_mutex);
  g_ball_max = r;
}

std::shared_ptr<Ball const> ball(int radius)
{
  std::lock_guard lock(g_ball_mutex);
  if (radius < 0) throw std::invalid_argument("negative radius");
  if (radius > g_ball_max)
    throw ResourceLimit("ball radius " + std::to_string(radius) + " exceeds configured maximum " + std::to_string(g_ball_max));
  if (!g_ball || g_ball->radius < radius) g_ball = build_ball(radius);
  return g_ball;
}

} // namespace c444
