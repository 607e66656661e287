#include <catch_amalgamated.hpp>

#include <lietoda/exact.hpp>

#include <random>

using namespace lietoda;

TEST_CASE("rational solve and inverse round-trip") {
  RationalMatrix a = {{Rational(2), Rational(-1), Rational(0)},
                      {Rational(-1), Rational(2), Rational(-1)},
                      {Rational(0), Rational(-1), Rational(2)}};
  const RationalMatrix inv = inverse(a);
  const RationalMatrix id = multiply(a, inv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id[i][j] == Rational(i == j ? 1 : 0));
  CHECK(inv[0][0] == Rational(3, 4));
  CHECK(inv[0][2] == Rational(1, 4));
  CHECK(is_positive_definite(a));
  a[1][1] = Rational(0);
  CHECK_FALSE(is_positive_definite(a));
}

TEST_CASE("rationals print in lowest terms") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
}

TEST_CASE("surds are exact in the multiquadratic field") {
  const Surd r2 = Surd::sqrt(2), r3 = Surd::sqrt(3), r6 = Surd::sqrt(6);
  CHECK(r2 * r2 == Surd(2));
  CHECK(r2 * r3 == r6);
  CHECK(Surd::sqrt(8) == Surd(2) * r2);
  CHECK(Surd::sqrt(Rational(1, 2)) == Surd(Rational(1, 2)) * r2);
  CHECK((r2 + r3 - r2 - r3).is_zero());
  CHECK((r2 + r3) * (r2 - r3) == Surd(-1));
  CHECK(Surd::sqrt(Rational(9, 4)).is_rational());
  CHECK_FALSE(r2.is_rational());
  CHECK(Surd::sqrt(0).is_zero());
  CHECK_THROWS_AS(Surd::sqrt(-1), InputError);
}

TEST_CASE("surd arithmetic agrees with floating point") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(1, 30), num(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Surd a, b;
    for (int k = 0; k < 3; ++k) {
      a += Surd(num(rng)) * Surd::sqrt(pick(rng));
      b += Surd(num(rng)) * Surd::sqrt(Rational(pick(rng), pick(rng)));
    }
    const double ad = a.to_double(), bd = b.to_double();
    CHECK_THAT((a * b).to_double(), Catch::Matchers::WithinAbs(ad * bd, 1e-10));
    CHECK_THAT((a + b).to_double(), Catch::Matchers::WithinAbs(ad + bd, 1e-12));
    CHECK((a * b) == (b * a));
    CHECK((a - a).is_zero());
  }
}
