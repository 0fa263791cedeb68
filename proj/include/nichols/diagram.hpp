#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nichols/cyclotomic.hpp"
#include "nichols/errors.hpp"

namespace nichols {

// Vertex subsets of {1,...,n} as bitmasks; bit i-1 stands for vertex i.
using SupportSet = std::uint32_t;

// A finite Cartan family instantiated with q = zeta_M^e. The command-line
// preset syntax "A3@N=2" always uses M = N, e = 1; the general form exists so
// the same family can live inside a larger cyclotomic field.
struct CartanPreset {
  char family = 'A';  // one of A B C D E F G
  int rank = 0;
  unsigned modulus = 0;     // M
  long long q_exponent = 1; // q = zeta_M^q_exponent

  unsigned q_order() const;  // N = ord(q)
  std::string name() const;  // canonical "A3@N=2" spelling
};

// Braiding matrix (p_ij) with all entries powers of one primitive M-th root
// of unity, stored as the n x n integer matrix of exponents. Immutable after
// construction.
class GeneralizedDynkinDiagram {
 public:
  GeneralizedDynkinDiagram(unsigned modulus, Eigen::MatrixXi exponents,
                           std::optional<CartanPreset> preset = std::nullopt);

  int rank() const { return static_cast<int>(exp_.rows()); }
  unsigned modulus() const { return mod_; }
  const Eigen::MatrixXi& exponents() const { return exp_; }

  // Braiding entries; indices are 0-based here and throughout the library.
  RootOfUnity p(int i, int j) const { return RootOfUnity(mod_, exp_(i, j)); }
  // The drawn edge label p_ij * p_ji.
  RootOfUnity edge_product(int i, int j) const { return p(i, j) * p(j, i); }
  bool edge(int i, int j) const { return !edge_product(i, j).is_one(); }

  // Rejects any vertex with p_ii = 1 (the standing assumption); reports the
  // offending vertex 1-based.
  void validate() const;

  const std::optional<CartanPreset>& preset() const { return preset_; }

 private:
  unsigned mod_;
  Eigen::MatrixXi exp_;  // entries reduced into [0, M)
  std::optional<CartanPreset> preset_;
};

// Connectivity of the induced subgraph on s under i ~ j iff p_ij p_ji != 1.
// The empty set has no connectivity notion and is rejected.
bool is_connected(const GeneralizedDynkinDiagram& d, SupportSet s);

// All nonempty subsets split by connectivity, each in ascending bitmask order.
std::vector<SupportSet> connected_subsets(const GeneralizedDynkinDiagram& d);
std::vector<SupportSet> disconnected_subsets(const GeneralizedDynkinDiagram& d);

// Builds the braiding of a Cartan preset: p_ii = q^{d_i} with the drawn edge
// products (the full product is put on p_ij for i < j, p_ji stays 1; nothing
// in scope depends on more than the products and the diagonal).
GeneralizedDynkinDiagram cartan_diagram(const CartanPreset& preset);

// Parses "A3" or "A3@N=2"; N may be supplied later (e.g. by a --N sweep).
struct ParsedPreset {
  char family;
  int rank;
  std::optional<unsigned> n;  // ord(q) when the string carries "@N=..."
};
ParsedPreset parse_preset(const std::string& text);

// Rank/family combinations accepted by cartan_diagram.
bool preset_rank_valid(char family, int rank);

// Diagram file format: JSON {"rank": n, "modulus": M, "exponents": [[...]]},
// entry (i,j) being e_ij with p_ij = zeta_M^{e_ij}. Serialization is
// deterministic (fixed key order) so files round-trip bit-exactly.
std::string diagram_to_json_text(const GeneralizedDynkinDiagram& d);
GeneralizedDynkinDiagram diagram_from_json_text(const std::string& text);
GeneralizedDynkinDiagram load_diagram_file(const std::string& path);
void save_diagram_file(const GeneralizedDynkinDiagram& d, const std::string& path);

}  // namespace nichols
