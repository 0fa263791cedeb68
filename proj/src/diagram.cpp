#include "nichols/diagram.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

namespace nichols {

unsigned CartanPreset::q_order() const {
  return ord(RootOfUnity(modulus, q_exponent));
}

std::string CartanPreset::name() const {
  return family + std::to_string(rank) + "@N=" + std::to_string(q_order());
}

GeneralizedDynkinDiagram::GeneralizedDynkinDiagram(unsigned modulus, Eigen::MatrixXi exponents,
                                                   std::optional<CartanPreset> preset)
    : mod_(modulus), exp_(std::move(exponents)), preset_(std::move(preset)) {
  if (mod_ == 0) throw Error("diagram modulus must be positive");
  if (exp_.rows() != exp_.cols() || exp_.rows() < 1)
    throw Error("exponent matrix must be square and nonempty");
  if (exp_.rows() > 31) throw Error("rank too large for subset enumeration");
  const int m = static_cast<int>(mod_);
  for (int i = 0; i < exp_.rows(); ++i)
    for (int j = 0; j < exp_.cols(); ++j) exp_(i, j) = ((exp_(i, j) % m) + m) % m;
}

void GeneralizedDynkinDiagram::validate() const {
  for (int i = 0; i < rank(); ++i)
    if (p(i, i).is_one()) throw VertexLabelOne(i + 1);
}

bool is_connected(const GeneralizedDynkinDiagram& d, SupportSet s) {
  if (s == 0) throw EmptySupport();
  if (s >> d.rank()) throw Error("support set exceeds diagram rank");
  const int start = std::countr_zero(s);
  SupportSet seen = SupportSet{1} << start;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < d.rank(); ++w) {
      SupportSet bit = SupportSet{1} << w;
      if ((s & bit) && !(seen & bit) && d.edge(v, w)) {
        seen |= bit;
        stack.push_back(w);
      }
    }
  }
  return seen == s;
}

std::vector<SupportSet> connected_subsets(const GeneralizedDynkinDiagram& d) {
  std::vector<SupportSet> out;
  for (SupportSet s = 1; s < (SupportSet{1} << d.rank()); ++s)
    if (is_connected(d, s)) out.push_back(s);
  return out;
}

std::vector<SupportSet> disconnected_subsets(const GeneralizedDynkinDiagram& d) {
  std::vector<SupportSet> out;
  for (SupportSet s = 1; s < (SupportSet{1} << d.rank()); ++s)
    if (!is_connected(d, s)) out.push_back(s);
  return out;
}

bool preset_rank_valid(char family, int rank) {
  switch (family) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

GeneralizedDynkinDiagram cartan_diagram(const CartanPreset& preset) {
  if (!preset_rank_valid(preset.family, preset.rank))
    throw ParseError(std::string("invalid rank ") + std::to_string(preset.rank) + " for family " +
                     preset.family);
  if (preset.modulus == 0) throw Error("preset modulus must be positive");
  const int n = preset.rank;

  // Vertex labels p_ii = q^{d_i}.
  std::vector<long long> diag(n, 1);
  // Edges as (i, j, c) with the drawn product q^{-c}, 0-based i < j.
  std::vector<std::array<int, 3>> edges;
  auto chain = [&](int upto, int c) {
    for (int k = 0; k + 1 < upto; ++k) edges.push_back({k, k + 1, c});
  };
  switch (preset.family) {
    case 'A':
      chain(n, 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) diag[i] = 2;
      chain(n, 2);
      break;
    case 'C':
      diag[n - 1] = 2;
      chain(n - 1, 1);
      edges.push_back({n - 2, n - 1, 2});
      break;
    case 'D':
      // chain 1..n-2 with both tips n-1, n attached to n-2
      chain(n - 2, 1);
      edges.push_back({n - 3, n - 2, 1});
      edges.push_back({n - 3, n - 1, 1});
      break;
    case 'E':
      // chain 1..n-1 with vertex n attached to vertex n-3
      chain(n - 1, 1);
      edges.push_back({n - 4, n - 1, 1});
      break;
    case 'F':
      diag = {2, 2, 1, 1};
      edges = {{0, 1, 2}, {1, 2, 2}, {2, 3, 1}};
      break;
    case 'G':
      diag = {1, 3};
      edges = {{0, 1, 3}};
      break;
  }

  Eigen::MatrixXi e = Eigen::MatrixXi::Zero(n, n);
  const long long m = preset.modulus;
  auto reduce = [&](long long v) { return static_cast<int>(((v % m) + m) % m); };
  for (int i = 0; i < n; ++i) e(i, i) = reduce(preset.q_exponent * diag[i]);
  for (const auto& [i, j, c] : edges) e(i, j) = reduce(-preset.q_exponent * c);

  GeneralizedDynkinDiagram d(preset.modulus, std::move(e), preset);
  d.validate();
  return d;
}

ParsedPreset parse_preset(const std::string& text) {
  std::size_t at = text.find('@');
  std::string head = text.substr(0, at == std::string::npos ? text.size() : at);
  if (head.size() < 2 || head[0] < 'A' || head[0] > 'G')
    throw ParseError("malformed preset '" + text + "' (want e.g. \"A3\" or \"A3@N=2\")");
  int rank = 0;
  for (std::size_t k = 1; k < head.size(); ++k) {
    if (head[k] < '0' || head[k] > '9')
      throw ParseError("malformed preset rank in '" + text + "'");
    rank = rank * 10 + (head[k] - '0');
    if (rank > 1000) throw ParseError("preset rank out of range in '" + text + "'");
  }
  if (!preset_rank_valid(head[0], rank))
    throw ParseError("invalid rank " + std::to_string(rank) + " for family " + head[0] +
                     " in '" + text + "'");
  ParsedPreset out{head[0], rank, std::nullopt};
  if (at != std::string::npos) {
    std::string tail = text.substr(at + 1);
    if (tail.size() < 3 || tail[0] != 'N' || tail[1] != '=')
      throw ParseError("malformed preset suffix in '" + text + "' (want \"@N=k\")");
    unsigned n = 0;
    for (std::size_t k = 2; k < tail.size(); ++k) {
      if (tail[k] < '0' || tail[k] > '9')
        throw ParseError("malformed N in preset '" + text + "'");
      n = n * 10 + static_cast<unsigned>(tail[k] - '0');
      if (n > 1000000) throw ParseError("N out of range in preset '" + text + "'");
    }
    if (n == 0) throw ParseError("N must be positive in preset '" + text + "'");
    out.n = n;
  }
  return out;
}

std::string diagram_to_json_text(const GeneralizedDynkinDiagram& d) {
  nlohmann::ordered_json j;
  j["rank"] = d.rank();
  j["modulus"] = d.modulus();
  auto& rows = j["exponents"] = nlohmann::ordered_json::array();
  for (int i = 0; i < d.rank(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < d.rank(); ++k) row.push_back(d.exponents()(i, k));
    rows.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

GeneralizedDynkinDiagram diagram_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rank") || !j.contains("modulus") || !j.contains("exponents"))
    throw ParseError("diagram file must carry fields rank, modulus, exponents");
  if (!j["rank"].is_number_integer() || !j["modulus"].is_number_integer())
    throw ParseError("diagram rank/modulus must be integers");
  const int n = j["rank"].get<int>();
  const long long m = j["modulus"].get<long long>();
  if (n < 1 || n > 31) throw ParseError("diagram rank out of range");
  if (m < 1) throw ParseError("diagram modulus must be positive");
  const auto& rows = j["exponents"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError("exponents must be an n x n integer matrix");
  Eigen::MatrixXi e(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw ParseError("exponents must be an n x n integer matrix");
    for (int k = 0; k < n; ++k) {
      if (!rows[i][k].is_number_integer())
        throw ParseError("exponent entries must be integers");
      e(i, k) = rows[i][k].get<int>();
    }
  }
  return GeneralizedDynkinDiagram(static_cast<unsigned>(m), std::move(e));
}

GeneralizedDynkinDiagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open diagram file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return diagram_from_json_text(buf.str());
}

void save_diagram_file(const GeneralizedDynkinDiagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write diagram file '" + path + "'");
  out << diagram_to_json_text(d);
}

}  // namespace nichols
