#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace c444 {

// Exact a + b*sqrt(2). Coefficients are int64; every operation traps overflow.
struct Ring2Value
{
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr Ring2Value() = default;
  constexpr Ring2Value(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

  static constexpr Ring2Value sqrt2() { return {0, 1}; }

  int  sign() const;
  bool is_zero() const { return a == 0 && b == 0; }

  Ring2Value operator-() const;
  Ring2Value &operator+=(Ring2Value const &o);
  Ring2Value &operator-=(Ring2Value const &o);
  Ring2Value &operator*=(Ring2Value const &o);

  friend Ring2Value operator+(Ring2Value x, Ring2Value const &y) { return x += y; }
  friend Ring2Value operator-(Ring2Value x, Ring2Value const &y) { return x -= y; }
  friend Ring2Value operator*(Ring2Value x, Ring2Value const &y) { return x *= y; }

  friend bool operator==(Ring2Value const &x, Ring2Value const &y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(Ring2Value const &x, Ring2Value const &y) { return !(x == y); }
  friend bool operator<(Ring2Value const &x, Ring2Value const &y) { return (y - x).sign() > 0; }
  friend bool operator>(Ring2Value const &x, Ring2Value const &y) { return y < x; }
  friend bool operator<=(Ring2Value const &x, Ring2Value const &y) { return !(y < x); }
  friend bool operator>=(Ring2Value const &x, Ring2Value const &y) { return !(x < y); }

  Ring2Value abs() const { return sign() < 0 ? -*this : *this; }
  double     to_double() const;
  std::string str() const;
};

std::ostream &operator<<(std::ostream &os, Ring2Value const &x);

struct Ring2Hash
{
  std::size_t operator()(Ring2Value const &x) const noexcept
  {
    return std::hash<std::int64_t>{}(x.a) * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(x.b);
  }
};

} // namespace c444

namespace Eigen {
template <> struct NumTraits<c444::Ring2Value> : GenericNumTraits<c444::Ring2Value>
{
  using Real = c444::Ring2Value;
  using NonInteger = c444::Ring2Value;
  using Nested = c444::Ring2Value;
  using Literal = c444::Ring2Value;
  enum
  {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 3,
    MulCost = 8
  };
  static inline int digits10() { return 0; }
};
} // namespace Eigen
