#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nichols/cyclotomic.hpp"
#include "nichols/diagram.hpp"

namespace nichols {

// A word in the generators x_1...x_n, stored 0-based; the empty word is the
// algebra unit. std::vector's operator< gives the lexicographic term order
// used everywhere downstream.
using Word = std::vector<int>;

// Letter-count vector in N^n.
using MultiDegree = std::vector<int>;

MultiDegree degree_of(const Word& w, int rank);
SupportSet support_of(const MultiDegree& d);
int total_degree(const MultiDegree& d);
std::string format_degree(const MultiDegree& d);

// CLI word literal: space-separated 1-based indices, e.g. "1 2 1" = x_1x_2x_1.
Word parse_word(const std::string& text, int rank);
std::string format_word(const Word& w);

// chi(d1, d2) = prod_{i,j} p_ij^{d1_i d2_j}; pure modular exponent arithmetic.
RootOfUnity chi(const GeneralizedDynkinDiagram& d, const MultiDegree& a, const MultiDegree& b);

// Finitely supported linear combination of words over Q(zeta_M). Zero
// coefficients are never stored; the term map is ordered lexicographically.
class BraidedElement {
 public:
  BraidedElement() = default;

  static BraidedElement from_word(Word w, Cyclotomic coeff = Cyclotomic(1));
  static BraidedElement generator(int i) { return from_word(Word{i}); }
  static BraidedElement unit() { return from_word(Word{}); }

  const std::map<Word, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates a term, erasing it again if the coefficient cancels to zero.
  void add_term(const Word& w, const Cyclotomic& c);

  bool is_homogeneous(int rank) const;
  // The common multidegree of a nonzero homogeneous element; nullopt for the
  // zero element (no canonical degree) or a mixed-degree element.
  std::optional<MultiDegree> degree(int rank) const;

  BraidedElement& operator+=(const BraidedElement& b);
  BraidedElement& operator-=(const BraidedElement& b);
  friend BraidedElement operator+(BraidedElement a, const BraidedElement& b) { return a += b; }
  friend BraidedElement operator-(BraidedElement a, const BraidedElement& b) { return a -= b; }
  friend BraidedElement operator*(const Cyclotomic& c, const BraidedElement& a);

  friend bool operator==(const BraidedElement& a, const BraidedElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Word, Cyclotomic> terms_;
};

// Concatenation product of the free algebra (the braiding enters only through
// chi in brackets and derivations, never here).
BraidedElement multiply(const BraidedElement& u, const BraidedElement& v);

// Braided bracket [u, v] = v u - chi(deg v, deg u) u v on homogeneous
// elements; anything mixed-degree is rejected.
BraidedElement bracket(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                       const BraidedElement& v);

// Defect of the first braided Jacobi identity:
//   [[u,v],w] - [u,[v,w]] - p_vw^{-1} [[u,w],v] - (p_wv - p_vw^{-1}) v [u,w].
// Identically zero in the free braided algebra, for every braiding.
BraidedElement jacobi_residual(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                               const BraidedElement& v, const BraidedElement& w);

// Defect of the braided Leibniz rule:
//   [u, v w] - p_wu [u,v] w - v [u,w].   Also identically zero.
BraidedElement leibniz_residual(const GeneralizedDynkinDiagram& d, const BraidedElement& u,
                                const BraidedElement& v, const BraidedElement& w);

}  // namespace nichols
