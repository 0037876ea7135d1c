#include <doctest.h>

#include "c444/ring2.hpp"

using c444::Ring2Value;

TEST_CASE("ring2 arithmetic")
{
  Ring2Value const r2 = Ring2Value::sqrt2();
  CHECK(r2 * r2 == Ring2Value(2));
  CHECK((Ring2Value(1, 1) * Ring2Value(-1, 1)) == Ring2Value(1));
  CHECK((Ring2Value(3, -2) + Ring2Value(-3, 2)).is_zero());
}

TEST_CASE("ring2 sign is exact")
{
  CHECK(Ring2Value(0).sign() == 0);
  CHECK(Ring2Value(3, -2).sign() == 1);  // 9 > 8
  CHECK(Ring2Value(-3, 2).sign() == -1);
  CHECK(Ring2Value(2, -2).sign() == -1); // 4 < 8
  CHECK(Ring2Value(-1, 1).sign() == 1);
  // a Pell pair: 577^2 - 2*408^2 = 1
  CHECK(Ring2Value(577, -408).sign() == 1);
  CHECK(Ring2Value(-577, 408).sign() == -1);
  CHECK(Ring2Value(1, 0) > Ring2Value(0, 0));
  CHECK(Ring2Value(0, 1) < Ring2Value(3, -1));
}

TEST_CASE("ring2 sign agrees with floating point away from zero")
{
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b) {
      double const d = Ring2Value(a, b).to_double();
      if (d > 1e-9) CHECK(Ring2Value(a, b).sign() == 1);
      if (d < -1e-9) CHECK(Ring2Value(a, b).sign() == -1);
    }
}

TEST_CASE("ring2 overflow traps")
{
  Ring2Value big(INT64_MAX / 2, 0);
  CHECK_THROWS_AS(big * Ring2Value(3), std::overflow_error);
  CHECK_THROWS_AS(big + big + big, std::overflow_error);
}
