#pragma once

#include <vector>

#include "nichols/braided.hpp"
#include "nichols/diagram.hpp"

namespace nichols {

// Positive root system of a Cartan preset together with the multiplicative
// order N_beta of chi(beta, beta) for each root ("height" of the associated
// PBW generator). Roots are sorted by (total degree, lex) for determinism.
struct RootSystemData {
  CartanPreset preset;
  std::vector<MultiDegree> roots;
  std::vector<unsigned> heights;
};

Eigen::MatrixXi cartan_matrix(const CartanPreset& preset);

// N_beta = ord(chi(beta, beta)); throws HeightOne when the order collapses to 1.
unsigned root_height(const GeneralizedDynkinDiagram& diagram, const MultiDegree& beta);
unsigned root_height(const CartanPreset& preset, const MultiDegree& beta);

RootSystemData positive_roots(const CartanPreset& preset);

// dim B(V) = product of N_beta over all positive roots.
Integer dim_nichols(const CartanPreset& preset);

// Total degree of the top PBW monomial: sum over roots of ht(beta)(N_beta - 1).
// This is the default engine cutoff for a preset.
unsigned full_cutoff(const RootSystemData& data);
unsigned full_cutoff(const CartanPreset& preset);

// Inclusion-exclusion bookkeeping per support subset S:
//   g = count of PBW monomials whose support is contained in S,
//   f = count of those with support exactly S.
struct SubsetCount {
  SupportSet set = 0;
  Integer g{1};
  Integer f{0};
};

// Counts for every nonempty subset, in ascending mask order.
std::vector<SubsetCount> subset_counts(const RootSystemData& data);

// dim L(V) = number of PBW monomials with connected support.
Integer moebius_oracle(const CartanPreset& preset);

}  // namespace nichols
