#include "nichols/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>

namespace nichols {
namespace {

// --- dense polynomial helpers over exact scalars (ascending coefficients) ---

template <class T>
void trim(std::vector<T>& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact quotient of integer polynomials, divisor monic. Used only to build
// cyclotomic polynomials from x^m - 1, where divisibility is guaranteed.
std::vector<Integer> divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  std::vector<Integer> q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    Integer c = num[i + den.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k < den.size(); ++k) num[i + k] -= c * den[k];
  }
  return q;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Integer>> cache;
  if (m == 0) throw Error("cyclotomic modulus must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed with the proper
  // divisors in increasing order (their Phi are already cached or recurse
  // cheaply; recursion depth is d(m), tiny for the moduli in scope).
  std::vector<Integer> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto itd = cache.find(d);
    if (itd == cache.end()) {
      // Build Phi_d inline with the same product formula.
      std::vector<Integer> nd(d + 1, 0);
      nd[0] = -1;
      nd[d] = 1;
      for (unsigned e = 1; e < d; ++e)
        if (d % e == 0) nd = divide_exact(std::move(nd), cache.at(e));
      itd = cache.emplace(d, std::move(nd)).first;
    }
    num = divide_exact(std::move(num), itd->second);
  }
  return cache.emplace(m, std::move(num)).first->second;
}

unsigned cyclotomic_degree(unsigned m) {
  return static_cast<unsigned>(cyclotomic_polynomial(m).size() - 1);
}

// ---------------------------------------------------------------- RootOfUnity

RootOfUnity::RootOfUnity(unsigned modulus, long long exponent) : mod_(modulus) {
  if (modulus == 0) throw Error("root-of-unity modulus must be positive");
  long long e = exponent % static_cast<long long>(modulus);
  if (e < 0) e += modulus;
  exp_ = static_cast<unsigned>(e);
}

RootOfUnity RootOfUnity::inverse() const {
  return RootOfUnity(mod_, exp_ == 0 ? 0 : static_cast<long long>(mod_) - exp_);
}

RootOfUnity RootOfUnity::pow(long long k) const {
  // Reduce the multiplier first so exp_ * k cannot overflow.
  long long km = k % static_cast<long long>(mod_);
  return RootOfUnity(mod_, static_cast<long long>(exp_) * km);
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
  if (a.mod_ == 1) return b;
  if (b.mod_ == 1) return a;
  if (a.mod_ != b.mod_) throw ModulusMismatch(a.mod_, b.mod_);
  return RootOfUnity(a.mod_, static_cast<long long>(a.exp_) + b.exp_);
}

bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
  if (a.mod_ == b.mod_) return a.exp_ == b.exp_;
  // zeta_M^0 is 1 in every field; anything else across moduli is an error.
  if (a.exp_ == 0 && b.exp_ == 0) return true;
  if (a.mod_ == 1 || b.mod_ == 1) return false;
  throw ModulusMismatch(a.mod_, b.mod_);
}

unsigned ord(const RootOfUnity& s) {
  return s.modulus() / std::gcd(s.modulus(), s.exponent());
}

// ----------------------------------------------------------------- Cyclotomic

Cyclotomic::Cyclotomic(const RootOfUnity& r) : mod_(r.modulus()) {
  coeff_.assign(cyclotomic_degree(mod_), Rational(0));
  if (r.exponent() < coeff_.size()) {
    coeff_[r.exponent()] = 1;
  } else {
    // zeta^e with e >= phi(M): reduce x^e mod Phi_M by long division.
    std::vector<Rational> p(r.exponent() + 1, Rational(0));
    p[r.exponent()] = 1;
    const auto& phi = cyclotomic_polynomial(mod_);
    for (std::size_t i = p.size(); i-- > phi.size() - 1;) {
      Rational c = p[i];
      if (c == 0) continue;
      p[i] = 0;
      for (std::size_t k = 0; k + 1 < phi.size(); ++k)
        p[i - (phi.size() - 1) + k] -= c * Rational(phi[k]);
    }
    for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] = p[k];
  }
}

Cyclotomic Cyclotomic::zero(unsigned m) {
  Cyclotomic v;
  v.promote(m);
  return v;
}

Cyclotomic Cyclotomic::one(unsigned m) {
  Cyclotomic v(1);
  v.promote(m);
  return v;
}

Cyclotomic Cyclotomic::root(unsigned m, long long e) { return Cyclotomic(RootOfUnity(m, e)); }

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeff_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t k = 1; k < coeff_.size(); ++k)
    if (coeff_[k] != 0) return false;
  return true;
}

void Cyclotomic::promote(unsigned m) {
  if (mod_ == m) return;
  if (mod_ != 1) throw ModulusMismatch(mod_, m);
  coeff_.resize(cyclotomic_degree(m), Rational(0));
  mod_ = m;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeff_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& b) {
  if (mod_ != b.mod_) {
    if (mod_ == 1) {
      promote(b.mod_);
    } else if (b.mod_ == 1) {
      coeff_[0] += b.coeff_[0];
      return *this;
    } else {
      throw ModulusMismatch(mod_, b.mod_);
    }
  }
  for (std::size_t k = 0; k < b.coeff_.size(); ++k) coeff_[k] += b.coeff_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& b) { return *this += -b; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& b) {
  if (mod_ != b.mod_) {
    if (mod_ == 1) {
      promote(b.mod_);
      return *this *= b;
    }
    if (b.mod_ == 1) {
      for (auto& c : coeff_) c *= b.coeff_[0];
      return *this;
    }
    throw ModulusMismatch(mod_, b.mod_);
  }
  const std::size_t n = coeff_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeff_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeff_[j] == 0) continue;
      prod[i + j] += coeff_[i] * b.coeff_[j];
    }
  }
  // Reduce mod the (monic) cyclotomic polynomial.
  const auto& phi = cyclotomic_polynomial(mod_);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = prod.size(); i-- > d;) {
    Rational c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t k = 0; k < d; ++k) prod[i - d + k] -= c * Rational(phi[k]);
  }
  for (std::size_t k = 0; k < n; ++k) coeff_[k] = prod[k];
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (mod_ == 1 || is_rational()) {
    Cyclotomic r = Cyclotomic::zero(mod_);
    r.coeff_[0] = Rational(1) / coeff_[0];
    return r;
  }
  // Extended Euclid in Q[x] against Phi_M (irreducible over Q, so the gcd is
  // a nonzero constant): s*a + t*Phi = g  =>  a^{-1} = s/g mod Phi.
  std::vector<Rational> r0(cyclotomic_polynomial(mod_).size());
  for (std::size_t k = 0; k < r0.size(); ++k) r0[k] = Rational(cyclotomic_polynomial(mod_)[k]);
  std::vector<Rational> r1 = coeff_;
  trim(r1);
  std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};
  while (!(r1.size() == 1 && r1[0] == 0)) {
    // quotient/remainder of r0 by r1 (r1 trimmed, leading coefficient nonzero)
    std::vector<Rational> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, Rational(0));
    std::vector<Rational> rem = r0;
    if (rem.size() >= r1.size()) {
      for (std::size_t shift = rem.size() - r1.size() + 1; shift-- > 0;) {
        Rational c = rem[shift + r1.size() - 1] / r1.back();
        if (c == 0) continue;
        q[shift] = c;
        for (std::size_t k = 0; k < r1.size(); ++k) rem[shift + k] -= c * r1[k];
      }
    }
    trim(rem);
    // s_next = s0 - q*s1
    std::vector<Rational> snext(std::max(s0.size(), q.size() + s1.size() - 1), Rational(0));
    for (std::size_t k = 0; k < s0.size(); ++k) snext[k] = s0[k];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < s1.size(); ++j) snext[i + j] -= q[i] * s1[j];
    }
    trim(snext);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snext);
  }
  // r0 is the constant gcd, s0 the cofactor of the input.
  Cyclotomic inv = Cyclotomic::zero(mod_);
  Rational g = r0[0];
  for (std::size_t k = 0; k < s0.size() && k < inv.coeff_.size(); ++k) inv.coeff_[k] = s0[k] / g;
  return inv;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& b) { return *this *= b.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.mod_ == b.mod_) return a.coeff_ == b.coeff_;
  if (a.mod_ == 1 || b.mod_ == 1) {
    const Cyclotomic& rat = a.mod_ == 1 ? a : b;
    const Cyclotomic& cyc = a.mod_ == 1 ? b : a;
    if (!cyc.is_rational()) return false;
    return cyc.coeff_[0] == rat.coeff_[0];
  }
  throw ModulusMismatch(a.mod_, b.mod_);
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& v) {
  bool first = true;
  for (std::size_t k = 0; k < v.coeff_.size(); ++k) {
    if (v.coeff_[k] == 0) continue;
    if (!first) os << " + ";
    os << v.coeff_[k];
    if (k > 0) os << "*z^" << k;
    first = false;
  }
  if (first) os << "0";
  return os;
}

Cyclotomic geometric_sum(const RootOfUnity& r, unsigned k) {
  Cyclotomic sum = Cyclotomic::zero(r.modulus());
  for (unsigned t = 0; t < k; ++t) sum += Cyclotomic(r.pow(t));
  return sum;
}

Cyclotomic derivation_factorial(const RootOfUnity& p, unsigned l) {
  Cyclotomic prod = Cyclotomic::one(p.modulus());
  RootOfUnity pinv = p.inverse();
  for (unsigned j = 2; j <= l; ++j) prod *= geometric_sum(pinv, j);
  return prod;
}

}  // namespace nichols
