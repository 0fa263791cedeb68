#include <doctest.h>

#include <random>
#include <vector>

#include "nichols/cyclotomic.hpp"

using nichols::Cyclotomic;
using nichols::cyclotomic_polynomial;
using nichols::derivation_factorial;
using nichols::geometric_sum;
using nichols::Integer;
using nichols::ord;
using nichols::Rational;
using nichols::RootOfUnity;

namespace {

// Independent order computation: multiply until the exponent wraps to 0.
unsigned ord_by_iteration(const RootOfUnity& s) {
  RootOfUnity acc = s;
  unsigned k = 1;
  while (!acc.is_one()) {
    acc *= s;
    ++k;
  }
  return k;
}

Cyclotomic random_value(std::mt19937& rng, unsigned m) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<long long> expo(0, m - 1);
  Cyclotomic v = Cyclotomic::zero(m);
  for (int t = 0; t < 3; ++t)
    v += Cyclotomic(Rational(coeff(rng))) * Cyclotomic::root(m, expo(rng));
  return v;
}

}  // namespace

TEST_SUITE("scalars") {

TEST_CASE("order of a root of unity") {
  CHECK(ord(RootOfUnity(12, 0)) == 1);
  CHECK(ord(RootOfUnity(12, 6)) == 2);
  CHECK(ord(RootOfUnity(12, 8)) == 3);
  // gcd formula agrees with brute-force repeated multiplication
  for (unsigned m = 1; m <= 24; ++m)
    for (unsigned e = 0; e < m; ++e) {
      RootOfUnity s(m, e);
      CHECK(ord(s) == ord_by_iteration(s));
      CHECK(m % ord(s) == 0);
    }
}

TEST_CASE("root-of-unity exponent arithmetic") {
  RootOfUnity a(7, 5), b(7, 4);
  CHECK((a * b).exponent() == 2);
  CHECK((a * a.inverse()).is_one());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(a.pow(3).exponent() == 1);
  CHECK_THROWS_AS(RootOfUnity(3, 1) * RootOfUnity(4, 1), nichols::ModulusMismatch);
  // the trivial group combines with everything
  CHECK((RootOfUnity() * a) == a);
}

TEST_CASE("cyclotomic polynomials") {
  using V = std::vector<Integer>;
  CHECK(cyclotomic_polynomial(1) == V{-1, 1});
  CHECK(cyclotomic_polynomial(2) == V{1, 1});
  CHECK(cyclotomic_polynomial(3) == V{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == V{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == V{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == V{1, 0, -1, 0, 1});
}

TEST_CASE("embedding is multiplicative and relations reduce") {
  // (zeta_2)^2 = 1
  CHECK(Cyclotomic::root(2, 1) * Cyclotomic::root(2, 1) == Cyclotomic(1));
  // 1 + 1 = 2
  CHECK(Cyclotomic(1) + Cyclotomic(1) == Cyclotomic(2));
  // 1 + zeta_3 + zeta_3^2 = 0
  Cyclotomic s = Cyclotomic::one(3) + Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2);
  CHECK(s.is_zero());
  std::mt19937 rng(0xC0FFEE);
  std::uniform_int_distribution<long long> expo(0, 11);
  for (int t = 0; t < 200; ++t) {
    long long a = expo(rng), b = expo(rng);
    CHECK(Cyclotomic::root(12, a) * Cyclotomic::root(12, b) ==
          Cyclotomic(RootOfUnity(12, a + b)));
  }
}

TEST_CASE("field arithmetic: associative, commutative, inverses") {
  std::mt19937 rng(20260815);
  for (unsigned m : {5u, 8u, 12u}) {
    for (int t = 0; t < 350; ++t) {
      Cyclotomic a = random_value(rng, m), b = random_value(rng, m), c = random_value(rng, m);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) {
        CHECK(a.inverse().inverse() == a);
        CHECK(a * a.inverse() == Cyclotomic::one(m));
        CHECK((b / a) * a == b);
      }
    }
  }
  CHECK_THROWS_AS(Cyclotomic::zero(6).inverse(), nichols::DivisionByZero);
  CHECK_THROWS_AS(Cyclotomic::root(3, 1) + Cyclotomic::root(4, 1), nichols::ModulusMismatch);
  // rationals embed into every field
  CHECK(Cyclotomic(Rational(3, 2)) * Cyclotomic::root(5, 1) ==
        Cyclotomic(Rational(3, 2)) * Cyclotomic::root(5, 1));
  CHECK(Cyclotomic(2) + Cyclotomic::root(4, 2) == Cyclotomic(1));  // zeta_4^2 = -1
}

TEST_CASE("geometric sums vanish exactly on multiples of the order") {
  for (unsigned m = 2; m <= 12; ++m)
    for (unsigned e = 0; e < m; ++e) {
      RootOfUnity r(m, e);
      for (unsigned k = 1; k <= m + 2; ++k) {
        bool vanishes = geometric_sum(r, k).is_zero();
        bool expected = ord(r) > 1 && k % ord(r) == 0;
        CHECK(vanishes == expected);
      }
    }
}

TEST_CASE("derivation factorial is nonzero exactly below the order") {
  // (1+p^{-1})(1+p^{-1}+p^{-2})...(1+...+p^{-(l-1)}) != 0  iff  l < ord(p),
  // for p != 1: the j-th factor dies exactly when ord(p) divides j.
  for (unsigned m = 2; m <= 12; ++m)
    for (unsigned e = 1; e < m; ++e) {
      RootOfUnity p(m, e);
      if (ord(p) < 2) continue;
      for (unsigned l = 1; l <= m + 2; ++l) {
        bool nonzero = !derivation_factorial(p, l).is_zero();
        CHECK(nonzero == (l < ord(p)));
      }
    }
}

}  // TEST_SUITE
