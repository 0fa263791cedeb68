#include "nichols/engine.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "nichols/roots.hpp"

namespace nichols {

namespace {

bool is_zero_row(const DenseRowVector<Cyclotomic>& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j)
    if (!row[j].is_zero()) return false;
  return true;
}

MultiDegree degree_sum(const MultiDegree& a, const MultiDegree& b) {
  MultiDegree out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

}  // namespace

BraidedElement skew_derive(const GeneralizedDynkinDiagram& diagram, int i,
                           const BraidedElement& u) {
  if (i < 0 || i >= diagram.rank()) throw Error("derivation index out of range");
  BraidedElement out;
  for (const auto& [w, c] : u.terms()) {
    RootOfUnity prefix(diagram.modulus(), 0);
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t] == i) {
        Word rest = w;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
        out.add_term(rest, c * Cyclotomic(prefix.inverse()));
      }
      prefix = prefix * diagram.p(i, w[t]);
    }
  }
  return out;
}

BraidedElement power_derive(const GeneralizedDynkinDiagram& diagram, int k, unsigned l,
                            const BraidedElement& u) {
  if (l < 1) throw Error("power_derive order must be at least 1");
  if (k < 0 || k >= diagram.rank()) throw Error("derivation index out of range");
  BraidedElement out;
  for (const auto& [w, c] : u.terms()) {
    const auto count =
        static_cast<unsigned>(std::count(w.begin(), w.end(), k));
    if (count < l) continue;
    if (count > l) {
      BraidedElement piece = BraidedElement::from_word(w, c);
      for (unsigned step = 0; step < l; ++step) piece = skew_derive(diagram, k, piece);
      out += piece;
      continue;
    }
    // exactly l occurrences: closed product form
    Cyclotomic scalar = derivation_factorial(diagram.p(k, k), l);
    RootOfUnity prefix(diagram.modulus(), 0);  // chi(e_k, deg of non-k letters seen)
    Word rest;
    for (int a : w) {
      if (a == k) {
        scalar = scalar * Cyclotomic(prefix.inverse());
      } else {
        prefix = prefix * diagram.p(k, a);
        rest.push_back(a);
      }
    }
    out.add_term(rest, c * scalar);
  }
  return out;
}

std::optional<Eigen::Index> DegreeBasis::word_index(const Word& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) return std::nullopt;
  return static_cast<Eigen::Index>(it - words.begin());
}

Eigen::Index LieSubspace::dim_at(const MultiDegree& d) const {
  auto it = spans.find(d);
  return it == spans.end() ? 0 : it->second.rank();
}

NicholsEngine::NicholsEngine(GeneralizedDynkinDiagram diagram, unsigned cutoff)
    : diagram_(std::move(diagram)), cutoff_(cutoff), memo_(std::make_unique<Memo>()) {
  diagram_.validate();
  if (cutoff_ < 1) throw Error("degree cutoff must be at least 1");
}

NicholsEngine NicholsEngine::for_preset(const CartanPreset& preset) {
  NicholsEngine engine(cartan_diagram(preset), full_cutoff(preset));
  engine.cutoff_is_top_ = true;  // every degree beyond the cutoff vanishes in B(V)
  return engine;
}

std::shared_ptr<const DegreeBasis> NicholsEngine::degree_basis(const MultiDegree& d) const {
  if (static_cast<int>(d.size()) != diagram_.rank()) throw Error("multidegree rank mismatch");
  // cheap per-letter guard before any enumeration or memo traffic
  for (int c : d) {
    if (c < 0) throw Error("negative multidegree");
    if (static_cast<unsigned>(c) > cutoff_)
      throw DegreeCutoffExceeded("letter multiplicity " + std::to_string(c) +
                                 " in degree " + format_degree(d) + " exceeds cutoff " +
                                 std::to_string(cutoff_));
  }
  if (static_cast<unsigned>(total_degree(d)) > cutoff_)
    throw DegreeCutoffExceeded("degree " + format_degree(d) + " exceeds cutoff " +
                               std::to_string(cutoff_));
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->bases.find(d);
    if (it != memo_->bases.end()) return it->second;
  }

  auto basis = std::make_shared<DegreeBasis>();
  basis->degree = d;
  const int n = diagram_.rank();
  if (total_degree(d) == 0) {
    basis->words = {Word{}};
    basis->pivots = {0};
    basis->coords = DenseMatrix<Cyclotomic>::Constant(1, 1, Cyclotomic(1));
    basis->rank = 1;
  } else {
    struct Child {
      int letter;
      std::shared_ptr<const DegreeBasis> basis;
      Eigen::Index offset;
    };
    std::vector<Child> children;
    Eigen::Index width = 0;
    for (int i = 0; i < n; ++i) {
      if (d[i] == 0) continue;
      MultiDegree down = d;
      --down[i];
      auto child = degree_basis(down);
      if (child->rank == 0) continue;
      children.push_back({i, std::move(child), width});
      width += children.back().basis->rank;
    }
    if (!children.empty()) {
      Word letters;
      for (int i = 0; i < n; ++i) letters.insert(letters.end(), d[i], i);
      std::vector<Word> words;
      do words.push_back(letters);
      while (std::next_permutation(letters.begin(), letters.end()));

      RowSpan<Cyclotomic> span(width);
      std::vector<RowSpan<Cyclotomic>::FeedResult> feeds;
      feeds.reserve(words.size());
      for (const auto& w : words) {
        DenseRowVector<Cyclotomic> row = DenseRowVector<Cyclotomic>::Constant(
            width, Cyclotomic(0));
        for (const auto& child : children) {
          RootOfUnity prefix(diagram_.modulus(), 0);
          for (std::size_t t = 0; t < w.size(); ++t) {
            if (w[t] == child.letter) {
              Word rest = w;
              rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
              auto idx = child.basis->word_index(rest);
              row.segment(child.offset, child.basis->rank) +=
                  Cyclotomic(prefix.inverse()) * child.basis->coords.row(*idx);
            }
            prefix = prefix * diagram_.p(child.letter, w[t]);
          }
        }
        feeds.push_back(span.feed(std::move(row)));
      }
      basis->rank = span.rank();
      if (basis->rank > 0) {
        basis->words = std::move(words);
        basis->coords = DenseMatrix<Cyclotomic>::Constant(
            static_cast<Eigen::Index>(basis->words.size()), basis->rank, Cyclotomic(0));
        for (std::size_t r = 0; r < basis->words.size(); ++r) {
          const auto& fed = feeds[r];
          if (fed.added) {
            basis->coords(static_cast<Eigen::Index>(r),
                          static_cast<Eigen::Index>(basis->pivots.size())) = Cyclotomic(1);
            basis->pivots.push_back(static_cast<Eigen::Index>(r));
          } else {
            basis->coords.row(static_cast<Eigen::Index>(r)).head(fed.coords.size()) =
                fed.coords.transpose();
          }
        }
      }
    }
  }

  std::lock_guard lock(memo_->mutex);
  return memo_->bases.try_emplace(d, std::move(basis)).first->second;
}

DenseRowVector<Cyclotomic> NicholsEngine::coordinates_of(const BraidedElement& u,
                                                         const DegreeBasis& basis) const {
  DenseRowVector<Cyclotomic> row =
      DenseRowVector<Cyclotomic>::Constant(basis.rank, Cyclotomic(0));
  for (const auto& [w, c] : u.terms()) {
    auto idx = basis.word_index(w);
    if (!idx) throw Error("word " + format_word(w) + " does not have degree " +
                          format_degree(basis.degree));
    row += c * basis.coords.row(*idx);
  }
  return row;
}

bool NicholsEngine::zero_test(const BraidedElement& u) const {
  if (u.is_zero()) return true;
  std::map<MultiDegree, BraidedElement> parts;
  for (const auto& [w, c] : u.terms())
    parts[degree_of(w, diagram_.rank())].add_term(w, c);
  for (const auto& [d, part] : parts) {
    if (total_degree(d) == 0) return false;  // nonzero scalar component
    if (cutoff_is_top_ && static_cast<unsigned>(total_degree(d)) > cutoff_)
      continue;  // past the top degree of B(V), so the component vanishes
    auto basis = degree_basis(d);
    if (basis->rank == 0) continue;
    if (!is_zero_row(coordinates_of(part, *basis))) return false;
  }
  return true;
}

std::shared_ptr<const LieSubspace> NicholsEngine::compute_closure(unsigned cutoff) const {
  if (cutoff < 1) throw Error("closure cutoff must be at least 1");
  if (cutoff > cutoff_)
    throw DegreeCutoffExceeded("closure cutoff " + std::to_string(cutoff) +
                               " exceeds engine cutoff " + std::to_string(cutoff_));
  auto sub = std::make_shared<LieSubspace>();
  sub->cutoff = cutoff;

  struct Item {
    MultiDegree degree;
    BraidedElement reduced;  // canonical combination of pivot words
  };
  std::vector<Item> items;
  std::deque<std::size_t> work;

  auto try_add = [&](const BraidedElement& e, const MultiDegree& d) {
    auto basis = degree_basis(d);
    if (basis->rank == 0) return;
    auto row = coordinates_of(e, *basis);
    if (is_zero_row(row)) return;
    auto span = sub->spans.try_emplace(d, RowSpan<Cyclotomic>(basis->rank)).first;
    if (!span->second.feed(row).added) return;
    BraidedElement reduced;
    for (Eigen::Index j = 0; j < basis->rank; ++j)
      if (!row[j].is_zero())
        reduced += BraidedElement::from_word(
            basis->words[static_cast<std::size_t>(basis->pivots[j])], row[j]);
    items.push_back({d, std::move(reduced)});
    work.push_back(items.size() - 1);
  };

  for (int i = 0; i < diagram_.rank(); ++i) {
    MultiDegree d(diagram_.rank(), 0);
    d[i] = 1;
    try_add(BraidedElement::generator(i), d);
  }

  while (!work.empty()) {
    const std::size_t a = work.front();
    work.pop_front();
    for (std::size_t b = 0; b < items.size(); ++b) {
      const MultiDegree d = degree_sum(items[a].degree, items[b].degree);
      if (static_cast<unsigned>(total_degree(d)) > cutoff) continue;
      auto basis = degree_basis(d);
      if (basis->rank == 0) continue;
      if (auto it = sub->spans.find(d);
          it != sub->spans.end() && it->second.rank() == basis->rank)
        continue;  // component already full
      try_add(bracket(diagram_, items[a].reduced, items[b].reduced), d);
      try_add(bracket(diagram_, items[b].reduced, items[a].reduced), d);
    }
  }

  for (const auto& [d, span] : sub->spans) sub->dimension += span.rank();
  return sub;
}

std::shared_ptr<const LieSubspace> NicholsEngine::lie_closure() const {
  {
    std::lock_guard lock(memo_->mutex);
    if (memo_->closure) return memo_->closure;
  }
  auto sub = compute_closure(cutoff_);
  std::lock_guard lock(memo_->mutex);
  if (!memo_->closure) memo_->closure = std::move(sub);
  return memo_->closure;
}

std::shared_ptr<const LieSubspace> NicholsEngine::lie_closure(unsigned cutoff) const {
  if (cutoff == cutoff_) return lie_closure();
  return compute_closure(cutoff);
}

bool NicholsEngine::lie_membership(const BraidedElement& u) const {
  if (u.is_zero()) return true;
  if (!u.is_homogeneous(diagram_.rank()))
    throw NonHomogeneousOperand("lie_membership requires a homogeneous element");
  const MultiDegree d = *u.degree(diagram_.rank());
  if (static_cast<unsigned>(total_degree(d)) > cutoff_) {
    if (cutoff_is_top_) return true;  // u vanishes past the top degree of B(V)
    throw DegreeCutoffExceeded("degree " + format_degree(d) + " exceeds cutoff " +
                               std::to_string(cutoff_));
  }
  auto basis = degree_basis(d);
  if (basis->rank == 0) return true;  // u vanishes in B(V)
  auto row = coordinates_of(u, *basis);
  if (is_zero_row(row)) return true;
  auto closure = lie_closure();
  auto it = closure->spans.find(d);
  return it != closure->spans.end() && it->second.contains(row);
}

TripleProductScalars NicholsEngine::triple_product_scalars(const BraidedElement& u,
                                                           const BraidedElement& v,
                                                           const BraidedElement& w) const {
  const int n = diagram_.rank();
  auto du = u.degree(n), dv = v.degree(n), dw = w.degree(n);
  if (!du || !dv || !dw)
    throw NonHomogeneousOperand("triple product requires nonzero homogeneous operands");
  const Cyclotomic one(1);
  auto pair_product = [&](const MultiDegree& x, const MultiDegree& y) {
    return Cyclotomic(chi(diagram_, x, y) * chi(diagram_, y, x));
  };
  const Cyclotomic qvw = pair_product(*dv, *dw);
  const Cyclotomic quw = pair_product(*du, *dw);
  const Cyclotomic quv = pair_product(*du, *dv);
  TripleProductScalars s;
  s.a = one - qvw;
  s.b = one - quw;
  s.c = one - quv;
  s.d = one - quv * quw;
  s.e = one - quv * qvw;
  s.f = one - qvw * quw;
  s.nonzero = int(!s.a.is_zero()) + int(!s.b.is_zero()) + int(!s.c.is_zero());
  s.members = int(lie_membership(multiply(u, v))) + int(lie_membership(multiply(u, w))) +
              int(lie_membership(multiply(v, w)));
  return s;
}

bool NicholsEngine::triple_product_membership(const BraidedElement& u, const BraidedElement& v,
                                              const BraidedElement& w) const {
  if (u.is_zero() || v.is_zero() || w.is_zero()) return true;  // all products vanish
  for (const auto* op : {&u, &v, &w})
    if (!lie_membership(*op))
      throw Error("triple_product_membership: operand not in L(V)");
  const std::array<std::array<const BraidedElement*, 3>, 6> orders{{
      {&u, &v, &w}, {&u, &w, &v}, {&v, &w, &u}, {&v, &u, &w}, {&w, &u, &v}, {&w, &v, &u}}};
  for (const auto& [x, y, z] : orders)
    if (!lie_membership(multiply(multiply(*x, *y), *z))) return false;
  return true;
}

}  // namespace nichols
