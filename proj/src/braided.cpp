#include "nichols/braided.hpp"

#include <sstream>

namespace nichols {

MultiDegree degree_of(const Word& w, int rank) {
  MultiDegree d(rank, 0);
  for (int letter : w) ++d.at(letter);
  return d;
}

SupportSet support_of(const MultiDegree& d) {
  SupportSet s = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0) s |= SupportSet{1} << i;
  return s;
}

int total_degree(const MultiDegree& d) {
  int t = 0;
  for (int v : d) t += v;
  return t;
}

Word parse_word(const std::string& text, int rank) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw ParseError("word letter '" + tok + "' is not a number");
      v = v * 10 + (c - '0');
      if (v > rank) break;
    }
    if (v < 1 || v > rank)
      throw ParseError("word letter '" + tok + "' outside 1.." + std::to_string(rank));
    w.push_back(v - 1);
  }
  if (w.empty()) throw ParseError("empty word literal");
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

std::string format_degree(const MultiDegree& d) {
  std::string out = "(";
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(d[k]);
  }
  return out + ")";
}

RootOfUnity chi(const GeneralizedDynkinDiagram& d, const MultiDegree& a, const MultiDegree& b) {
  if (static_cast<int>(a.size()) != d.rank() || static_cast<int>(b.size()) != d.rank())
    throw Error("multidegree rank mismatch");
  long long e = 0;
  const long long m = d.modulus();
  for (int i = 0; i < d.rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d.rank(); ++j) {
      if (b[j] == 0) continue;
      e += static_cast<long long>(d.exponents()(i, j)) * ((a[i] % m) * (b[j] % m) % m);
      e %= m;
    }
  }
  return RootOfUnity(d.modulus(), e);
}

BraidedElement BraidedElement::from_word(Word w, Cyclotomic coeff) {
  BraidedElement e;
  e.add_term(w, coeff);
  return e;
}

void BraidedElement::add_term(const Word& w, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool BraidedElement::is_homogeneous(int rank) const {
  return terms_.empty() || degree(rank).has_value();
}

std::optional<MultiDegree> BraidedElement::degree(int rank) const {
  if (terms_.empty()) return std::nullopt;
  MultiDegree d = degree_of(terms_.begin()->first, rank);
  for (const auto& [w, c] : terms_)
    if (degree_of(w, rank) != d) return std::nullopt;
  return d;
}

BraidedElement& BraidedElement::operator+=(const BraidedElement& b) {
  for (const auto& [w, c] : b.terms_) add_term(w, c);
  return *this;
}

BraidedElement& BraidedElement::operator-=(const BraidedElement& b) {
  for (const auto& [w, c] : b.terms_) add_term(w, -c);
  return *this;
}

BraidedElement operator*(const Cyclotomic& c, const BraidedElement& a) {
  BraidedElement out;
  for (const auto& [w, coeff] : a.terms_) out.add_term(w, c * coeff);
  return out;
}

BraidedElement multiply(const BraidedElement& u, const BraidedElement& v) {
  BraidedElement out;
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms()) {
      Word w = wu;
      w.insert(w.end(), wv.begin(), wv.end());
      out.add_term(w, cu * cv);
    }
  return out;
}

BraidedElement bracket(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                       const BraidedElement& v) {
  if (u.is_zero() || v.is_zero()) return {};
  auto du = u.degree(d.rank());
  auto dv = v.degree(d.rank());
  if (!du || !dv) throw NonHomogeneousOperand();
  BraidedElement out = multiply(v, u);
  out -= Cyclotomic(chi(d, *dv, *du)) * multiply(u, v);
  return out;
}

BraidedElement jacobi_residual(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                               const BraidedElement& v, const BraidedElement& w) {
  if (u.is_zero() || v.is_zero() || w.is_zero()) return {};
  auto dv = v.degree(d.rank());
  auto dw = w.degree(d.rank());
  if (!u.degree(d.rank()) || !dv || !dw) throw NonHomogeneousOperand();
  Cyclotomic p_vw_inv(chi(d, *dv, *dw).inverse());
  Cyclotomic p_wv(chi(d, *dw, *dv));
  BraidedElement res = bracket(d, bracket(d, u, v), w);
  res -= bracket(d, u, bracket(d, v, w));
  res -= p_vw_inv * bracket(d, bracket(d, u, w), v);
  res -= (p_wv - p_vw_inv) * multiply(v, bracket(d, u, w));
  return res;
}

BraidedElement leibniz_residual(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                                const BraidedElement& v, const BraidedElement& w) {
  if (u.is_zero() || v.is_zero() || w.is_zero()) return {};
  auto du = u.degree(d.rank());
  auto dw = w.degree(d.rank());
  if (!du || !v.degree(d.rank()) || !dw) throw NonHomogeneousOperand();
  Cyclotomic p_wu(chi(d, *dw, *du));
  BraidedElement res = bracket(d, u, multiply(v, w));
  res -= p_wu * multiply(bracket(d, u, v), w);
  res -= multiply(v, bracket(d, u, w));
  return res;
}

}  // namespace nichols
