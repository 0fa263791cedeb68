#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "nichols/cyclotomic.hpp"

// Minimal NumTraits so Eigen dense containers can carry exact cyclotomic
// scalars. Only ring/field operations are ever used (no norms, no sqrt).
namespace Eigen {
template <>
struct NumTraits<nichols::Cyclotomic> : GenericNumTraits<nichols::Cyclotomic> {
  using Real = nichols::Cyclotomic;
  using NonInteger = nichols::Cyclotomic;
  using Nested = nichols::Cyclotomic;
  using Literal = nichols::Cyclotomic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64,
  };
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace nichols {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using DenseRowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// Incremental reduced-row-echelon tracker over an exact field.
//
// Rows are fed one at a time in a fixed order; the span decides for each row
// whether it is dependent (returning its exact coordinates over the rows it
// previously accepted) or independent (accepting it as pivot row #rank-1).
// Pivoting is first-nonzero-column in feed order, divisions are exact field
// divisions, so the whole object — ranks, pivots, coordinates — is a
// deterministic function of the fed sequence.
template <class Scalar>
class RowSpan {
 public:
  explicit RowSpan(Eigen::Index cols) : cols_(cols) {}

  struct FeedResult {
    bool added = false;                 // became pivot row #(rank-1)
    DenseVector<Scalar> coords;         // when !added: row = sum coords[j] * pivot_j
  };

  FeedResult feed(DenseRowVector<Scalar> row) {
    DenseVector<Scalar> expr = DenseVector<Scalar>::Constant(rank(), Scalar(0));
    reduce(row, &expr);
    Eigen::Index lead = first_nonzero(row);
    if (lead < 0) return {false, std::move(expr)};
    // Normalize to a unit leading entry; the new row is
    //   (fed_row - sum expr_j * pivot_j) / beta,
    // so its expression over the fed pivots is (e_self - expr) / beta.
    Scalar beta = row[lead];
    for (Eigen::Index c = lead; c < cols_; ++c) row[c] = row[c] / beta;
    std::vector<Scalar> combo(rank() + 1, Scalar(0));
    for (Eigen::Index j = 0; j < expr.size(); ++j) combo[j] = -expr[j] / beta;
    combo[rank()] = Scalar(1) / beta;
    // Back-substitute to keep the stored basis fully reduced.
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar c = rows_[k][lead];
      if (c == Scalar(0)) continue;
      rows_[k] -= c * row;
      combo_[k].resize(rank() + 1, Scalar(0));
      for (std::size_t j = 0; j < combo.size(); ++j) combo_[k][j] -= c * combo[j];
    }
    // Insert keeping rows ordered by leading column.
    std::size_t pos = 0;
    while (pos < lead_.size() && lead_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(row));
    lead_.insert(lead_.begin() + pos, lead);
    combo_.insert(combo_.begin() + pos, std::move(combo));
    return {true, {}};
  }

  // Span-membership query; never modifies the object.
  std::optional<DenseVector<Scalar>> coordinates(DenseRowVector<Scalar> row) const {
    DenseVector<Scalar> expr = DenseVector<Scalar>::Constant(rank(), Scalar(0));
    reduce(row, &expr);
    if (first_nonzero(row) >= 0) return std::nullopt;
    return expr;
  }

  bool contains(const DenseRowVector<Scalar>& row) const { return coordinates(row).has_value(); }

  Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index cols() const { return cols_; }

 private:
  void reduce(DenseRowVector<Scalar>& row, DenseVector<Scalar>* expr) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar c = row[lead_[k]];
      if (c == Scalar(0)) continue;
      row -= c * rows_[k];
      row[lead_[k]] = Scalar(0);  // cancel exactly, no residue
      for (std::size_t j = 0; j < combo_[k].size(); ++j) (*expr)[j] += c * combo_[k][j];
    }
  }

  Eigen::Index first_nonzero(const DenseRowVector<Scalar>& row) const {
    for (Eigen::Index c = 0; c < row.size(); ++c)
      if (!(row[c] == Scalar(0))) return c;
    return -1;
  }

  Eigen::Index cols_;
  std::vector<DenseRowVector<Scalar>> rows_;  // reduced echelon rows, unit leading entries
  std::vector<Eigen::Index> lead_;            // leading column per stored row (ascending)
  std::vector<std::vector<Scalar>> combo_;    // stored row as combination of fed pivot rows
};

// Fraction-free rank (Bareiss two-term updates, first-nonzero-column pivot).
// Used as an independent cross-check against RowSpan-based ranks.
template <class Scalar>
Eigen::Index bareiss_rank(DenseMatrix<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Scalar prev = Scalar(1);
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < cols && r < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!(m(i, col) == Scalar(0))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j)
        m(i, j) = (m(r, col) * m(i, j) - m(i, col) * m(r, j)) / prev;
      m(i, col) = Scalar(0);
    }
    prev = m(r, col);
    ++r;
  }
  return r;
}

}  // namespace nichols
