#include "c444/ring2.hpp"

#include <cmath>
#include <sstream>

namespace c444 {

namespace {
[[noreturn]] void overflow() { throw std::overflow_error("Ring2Value coefficient overflow"); }

std::int64_t add(std::int64_t x, std::int64_t y)
{
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) overflow();
  return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y)
{
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) overflow();
  return r;
}
} // namespace

int Ring2Value::sign() const
{
  if (a >= 0 && b >= 0) return (a == 0 && b == 0) ? 0 : 1;
  if (a <= 0 && b <= 0) return -1;
  // opposite signs: compare a^2 with 2 b^2, never equal since sqrt(2) is irrational
  __int128 const aa = static_cast<__int128>(a) * a;
  __int128 const bb = static_cast<__int128>(b) * b * 2;
  if (a > 0) return aa > bb ? 1 : -1;
  return bb > aa ? 1 : -1;
}

Ring2Value Ring2Value::operator-() const
{
  if (a == INT64_MIN || b == INT64_MIN) overflow();
  return {-a, -b};
}

Ring2Value &Ring2Value::operator+=(Ring2Value const &o)
{
  a = add(a, o.a);
  b = add(b, o.b);
  return *this;
}

Ring2Value &Ring2Value::operator-=(Ring2Value const &o) { return *this += -o; }

Ring2Value &Ring2Value::operator*=(Ring2Value const &o)
{
  std::int64_t const na = add(mul(a, o.a), mul(2, mul(b, o.b)));
  std::int64_t const nb = add(mul(a, o.b), mul(b, o.a));
  a = na;
  b = nb;
  return *this;
}

double Ring2Value::to_double() const { return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(2.0); }

std::string Ring2Value::str() const
{
  std::ostringstream os;
  if (b == 0) {
    os << a;
  } else if (a == 0) {
    os << b << "r2";
  } else {
    os << a << (b > 0 ? "+" : "") << b << "r2";
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, Ring2Value const &x) { return os << x.str(); }

} // namespace c444
