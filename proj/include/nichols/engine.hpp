#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "nichols/braided.hpp"
#include "nichols/linalg.hpp"

namespace nichols {

// Skew derivation dual to x_i: on a word, sum over the positions carrying
// letter i of chi(e_i, deg prefix)^{-1} times the word with that letter
// removed; extended linearly.
BraidedElement skew_derive(const GeneralizedDynkinDiagram& diagram, int i,
                           const BraidedElement& u);

// l-fold iterate of skew_derive(k, .). Words carrying exactly l occurrences of
// x_k take the closed product form: the derivation factorial of p_kk times one
// inverse chi factor per occurrence, applied to the word with all x_k removed.
BraidedElement power_derive(const GeneralizedDynkinDiagram& diagram, int k, unsigned l,
                            const BraidedElement& u);

// One graded component of B(V): `words` lists every word of the multidegree in
// lexicographic order and `coords` row r expands word r in the pivot words
// (row indices `pivots`). The kernel of the map is exactly the defining
// relations in this degree. Components of rank 0 skip the word enumeration and
// leave `words` empty.
struct DegreeBasis {
  MultiDegree degree;
  std::vector<Word> words;
  std::vector<Eigen::Index> pivots;
  DenseMatrix<Cyclotomic> coords;
  Eigen::Index rank = 0;

  std::optional<Eigen::Index> word_index(const Word& w) const;
};

// Graded coordinate spans of the braided Lie algebra inside B(V), one span per
// multidegree, in the coordinates of that degree's DegreeBasis.
struct LieSubspace {
  unsigned cutoff = 0;
  std::map<MultiDegree, RowSpan<Cyclotomic>> spans;
  Integer dimension{0};

  Eigen::Index dim_at(const MultiDegree& d) const;
};

// The six pairwise scalars of the triple-product criterion together with the
// counts |R| (products already in L) and |T| (nonzero among a, b, c).
struct TripleProductScalars {
  Cyclotomic a, b, c, d, e, f;
  int members = 0;
  int nonzero = 0;
};

class NicholsEngine {
 public:
  NicholsEngine(GeneralizedDynkinDiagram diagram, unsigned cutoff);

  // Engine for a Cartan preset with the cutoff preset to the top degree of
  // B(V), so every graded component is reachable.
  static NicholsEngine for_preset(const CartanPreset& preset);

  const GeneralizedDynkinDiagram& diagram() const { return diagram_; }
  unsigned cutoff() const { return cutoff_; }

  std::shared_ptr<const DegreeBasis> degree_basis(const MultiDegree& d) const;

  // True iff u vanishes in B(V); accepts sums of homogeneous components.
  bool zero_test(const BraidedElement& u) const;

  std::shared_ptr<const LieSubspace> lie_closure() const;
  std::shared_ptr<const LieSubspace> lie_closure(unsigned cutoff) const;

  // True iff the homogeneous u lies in L(V); the zero element is a member.
  bool lie_membership(const BraidedElement& u) const;

  TripleProductScalars triple_product_scalars(const BraidedElement& u, const BraidedElement& v,
                                              const BraidedElement& w) const;

  // Whether all six permuted products uvw, uwv, vwu, vuw, wuv, wvu lie in
  // L(V). Operands must themselves be members.
  bool triple_product_membership(const BraidedElement& u, const BraidedElement& v,
                                 const BraidedElement& w) const;

 private:
  DenseRowVector<Cyclotomic> coordinates_of(const BraidedElement& u,
                                            const DegreeBasis& basis) const;
  std::shared_ptr<const LieSubspace> compute_closure(unsigned cutoff) const;

  // shared, mutex-guarded memo so the engine itself stays movable
  struct Memo {
    std::mutex mutex;
    std::map<MultiDegree, std::shared_ptr<const DegreeBasis>> bases;
    std::shared_ptr<const LieSubspace> closure;
  };

  GeneralizedDynkinDiagram diagram_;
  unsigned cutoff_;
  bool cutoff_is_top_ = false;  // cutoff equals the top degree of B(V)
  std::unique_ptr<Memo> memo_;
};

}  // namespace nichols
