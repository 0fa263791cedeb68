#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nichols/errors.hpp"

namespace nichols {

// Exact scalar types. All linear algebra runs over Q(zeta_M) with rational
// coefficients; dimension counting uses arbitrary-precision integers.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// A power of the fixed primitive M-th root of unity, stored as its exponent.
// The default value is 1 (the trivial group, M = 1), which combines with any
// modulus; two nontrivial moduli never mix.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(unsigned modulus, long long exponent);

  unsigned modulus() const { return mod_; }
  unsigned exponent() const { return exp_; }
  bool is_one() const { return exp_ == 0; }

  RootOfUnity inverse() const;
  RootOfUnity pow(long long k) const;

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
  RootOfUnity& operator*=(const RootOfUnity& b) { return *this = *this * b; }

  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b);
  friend bool operator!=(const RootOfUnity& a, const RootOfUnity& b) { return !(a == b); }

 private:
  unsigned mod_ = 1;
  unsigned exp_ = 0;  // always in [0, mod_)
};

// Least k >= 1 with s^k = 1, i.e. M / gcd(M, e).
unsigned ord(const RootOfUnity& s);

// The M-th cyclotomic polynomial, monic, ascending coefficients, degree
// phi(M). Computed once per modulus and cached (thread-safe).
const std::vector<Integer>& cyclotomic_polynomial(unsigned m);

// Euler phi, i.e. deg Phi_M.
unsigned cyclotomic_degree(unsigned m);

// An element of Q(zeta_M) as a residue mod Phi_M: rational coefficients of
// 1, zeta, ..., zeta^{phi(M)-1}. Values with modulus 1 are plain rationals
// and embed into any field; two distinct nontrivial moduli raise
// ModulusMismatch. Immutable value semantics throughout.
class Cyclotomic {
 public:
  Cyclotomic() : coeff_(1) {}             // zero (as a rational)
  Cyclotomic(int v) : coeff_(1, v) {}     // NOLINT: implicit on purpose (Eigen needs Scalar(int))
  Cyclotomic(const Rational& v) : coeff_(1, v) {}
  explicit Cyclotomic(const RootOfUnity& r);

  static Cyclotomic zero(unsigned m);
  static Cyclotomic one(unsigned m);
  static Cyclotomic root(unsigned m, long long e);

  unsigned modulus() const { return mod_; }
  const std::vector<Rational>& coefficients() const { return coeff_; }

  bool is_zero() const;
  // True when the value lies in Q (all coefficients beyond the constant vanish).
  bool is_rational() const;
  // The constant coefficient; meaningful as "the value" only when is_rational().
  const Rational& rational_part() const { return coeff_[0]; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& b);
  Cyclotomic& operator-=(const Cyclotomic& b);
  Cyclotomic& operator*=(const Cyclotomic& b);
  Cyclotomic& operator/=(const Cyclotomic& b);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  Cyclotomic inverse() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& v);

 private:
  // Lifts a modulus-1 (rational) value into Q(zeta_m); no-op when moduli match.
  void promote(unsigned m);

  unsigned mod_ = 1;
  std::vector<Rational> coeff_;  // size phi(mod_), reduced mod Phi_M
};

// Sum zeta^0 + r + r^2 + ... + r^{k-1}; zero exactly when ord(r) > 1 divides k.
Cyclotomic geometric_sum(const RootOfUnity& r, unsigned k);

// (1 + p^{-1})(1 + p^{-1} + p^{-2}) ... (1 + ... + p^{-(l-1)}): the scalar a
// run of l equal letters contributes under iterated derivation. Nonzero
// exactly when l < ord(p) (given p != 1).
Cyclotomic derivation_factorial(const RootOfUnity& p, unsigned l);

}  // namespace nichols
