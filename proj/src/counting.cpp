#include "nichols/counting.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "nichols/engine.hpp"

namespace nichols {

namespace {

Integer ipow(const Integer& base, long exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

// C(m,2) under the convention C(m,k) = 0 while k > m.
long choose2(long m) { return m >= 2 ? m * (m - 1) / 2 : 0; }

// N^k / 2^t, exact on the even-N branches where it is used (k >= t there).
Integer halved_power(unsigned n, long k, long t) {
  return Integer(ipow(Integer(n), k) / ipow(Integer(2), t));
}

// One level of the nested alternating sum below: the bound variables n_k run
// over decreasing chains n_0 = n > n_1 > ... > n_j with
// n_k in [2(j-k)+1, n_{k-1} - 2]; each level contributes the factor
// base^{C(n_{k-1}-n_k,2)} - base^{C(n_{k-1}-n_k-1,2)} and the innermost level
// closes with base^{C(n_j+1,2)} - 1.
Integer chain_level(int j, int k, int prev, const Integer& base) {
  Integer sum{0};
  for (int nk = 2 * (j - k) + 1; nk <= prev - 2; ++nk) {
    Integer factor =
        ipow(base, choose2(prev - nk)) - ipow(base, choose2(prev - nk - 1));
    Integer tail = k == j ? Integer(ipow(base, choose2(nk + 1)) - 1)
                          : chain_level(j, k + 1, nk, base);
    sum += factor * tail;
  }
  return sum;
}

// dim L of an A-type chain with n vertices whose root-vector heights all
// equal `base`: sum_{j=0}^{floor((n-1)/2)} (-1)^j (nested sum of depth j).
// The j = 0 term is base^{C(n+1,2)} - 1, i.e. dim B - 1.
Integer chain_closed_form(int n, const Integer& base) {
  Integer total = ipow(base, choose2(n + 1)) - 1;
  for (int j = 1; j <= (n - 1) / 2; ++j) {
    Integer term = chain_level(j, 1, n, base);
    if (j % 2) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

// B[a,b] lookup over 0-based vertex intervals: the product of heights of all
// roots supported inside [a,b], minus one; zero when a > b. Whether a root
// fits in an interval depends only on the extremes of its support, so the
// table is filled directly from the root list.
class IntervalTable {
 public:
  explicit IntervalTable(const RootSystemData& data)
      : n_(data.preset.rank),
        products_(static_cast<std::size_t>(n_),
                  std::vector<Integer>(static_cast<std::size_t>(n_), Integer(1))) {
    for (std::size_t r = 0; r < data.roots.size(); ++r) {
      const auto& root = data.roots[r];
      int lo = n_;
      int hi = -1;
      for (int i = 0; i < n_; ++i) {
        if (root[i] == 0) continue;
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
      for (int a = 0; a <= lo; ++a)
        for (int b = hi; b < n_; ++b)
          products_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *=
              data.heights[r];
    }
  }

  Integer b(int a, int b) const {
    if (a > b) return Integer(0);
    return Integer(products_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] - 1);
  }

 private:
  int n_;
  std::vector<std::vector<Integer>> products_;
};

bool is_label_path(const GeneralizedDynkinDiagram& diagram) {
  for (int i = 0; i < diagram.rank(); ++i)
    for (int j = i + 1; j < diagram.rank(); ++j)
      if (diagram.edge(i, j) != (j == i + 1)) return false;
  return true;
}

void require_label_path(const CartanPreset& preset) {
  if (!is_label_path(cartan_diagram(preset)))
    throw NotAPath("preset " + preset.name() +
                   " is not a consecutive chain 1-2-...-n");
}

// The formal layer needs only well-defined root data: vertex labels != 1 and
// every root height >= 2 (positive_roots throws HeightOne otherwise).
void require_defined(const CartanPreset& preset) {
  cartan_diagram(preset).validate();
  (void)positive_roots(preset);
}

}  // namespace

bool preset_defined_at(const CartanPreset& preset) {
  try {
    require_defined(preset);
  } catch (const Error&) {
    return false;
  }
  return true;
}

bool preset_valid_at(const CartanPreset& preset) {
  try {
    require_valid_at(preset);
  } catch (const Error&) {
    return false;
  }
  return true;
}

void require_valid_at(const CartanPreset& preset) {
  const auto diagram = cartan_diagram(preset);
  diagram.validate();
  const auto a = cartan_matrix(preset);
  for (int i = 0; i < preset.rank; ++i)
    for (int j = 0; j < preset.rank; ++j) {
      if (i == j || static_cast<unsigned>(-a(i, j)) < ord(diagram.p(i, i)))
        continue;
      throw PresetNotFaithful(
          preset.name() + ": |a_" + std::to_string(i + 1) + "," +
          std::to_string(j + 1) + "| = " + std::to_string(-a(i, j)) +
          " >= ord(p_" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
          ") = " + std::to_string(ord(diagram.p(i, i))) +
          ", the braiding does not determine the Cartan matrix");
    }
}

Integer path_recursion(const CartanPreset& preset) {
  require_defined(preset);
  require_label_path(preset);
  const IntervalTable table(positive_roots(preset));
  const int n = preset.rank;
  std::vector<std::vector<Integer>> L(
      static_cast<std::size_t>(n),
      std::vector<Integer>(static_cast<std::size_t>(n), Integer(0)));
  for (int len = 0; len < n; ++len)
    for (int a = 0; a + len < n; ++a) {
      const int b = a + len;
      Integer value = table.b(a, b);
      for (int k = a; k <= b - 2; ++k) value -= L[a][k] * table.b(k + 2, b);
      for (int k = a; k <= b - 3; ++k) value += L[a][k] * table.b(k + 3, b);
      L[a][b] = std::move(value);
    }
  return L[0][static_cast<std::size_t>(n - 1)];
}

Integer path_recursion_mirrored(const CartanPreset& preset) {
  require_defined(preset);
  require_label_path(preset);
  const IntervalTable table(positive_roots(preset));
  const int n = preset.rank;
  std::vector<std::vector<Integer>> L(
      static_cast<std::size_t>(n),
      std::vector<Integer>(static_cast<std::size_t>(n), Integer(0)));
  for (int len = 0; len < n; ++len)
    for (int a = 0; a + len < n; ++a) {
      const int b = a + len;
      Integer value = table.b(a, b);
      for (int k = a; k <= b - 2; ++k) value -= table.b(a, k) * L[k + 2][b];
      for (int k = a; k <= b - 3; ++k) value += table.b(a, k) * L[k + 3][b];
      L[a][b] = std::move(value);
    }
  return L[0][static_cast<std::size_t>(n - 1)];
}

Integer dtype_recursion(const CartanPreset& preset) {
  if (preset.family != 'D')
    throw NotDType("preset " + preset.name() + " is not D-type");
  require_defined(preset);
  const int n = preset.rank;
  if (n == 3)  // the rank-3 diagram is the A_3 chain with vertex 1 central
    return path_recursion(CartanPreset{'A', 3, preset.modulus, preset.q_exponent});
  const IntervalTable table(positive_roots(preset));
  // Chain prefixes L[1,i] (1-based) live inside the path 1-...-(n-2), so the
  // interval recursion applies to them unchanged.
  std::vector<Integer> prefix(static_cast<std::size_t>(n), Integer(0));
  for (int i = 1; i <= n - 3; ++i) {
    Integer value = table.b(0, i - 1);
    for (int k = 1; k <= i - 2; ++k) value -= prefix[k] * table.b(k + 1, i - 1);
    for (int k = 1; k <= i - 3; ++k) value += prefix[k] * table.b(k + 2, i - 1);
    prefix[static_cast<std::size_t>(i)] = std::move(value);
  }
  Integer total = table.b(0, n - 1);
  total -= prefix[static_cast<std::size_t>(n - 3)] * table.b(n - 2, n - 1);
  for (int i = 1; i <= n - 4; ++i)
    total -= prefix[static_cast<std::size_t>(i)] *
             (table.b(i + 1, n - 1) - table.b(i + 2, n - 1));
  total -= table.b(n - 2, n - 2) * table.b(n - 1, n - 1);
  return total;
}

Integer closed_form(const CartanPreset& preset) {
  require_defined(preset);
  const unsigned N = preset.q_order();
  const int n = preset.rank;
  const Integer Nz(N);
  switch (preset.family) {
    case 'A':
      return chain_closed_form(n, Nz);
    case 'B': {
      if (N % 2) {
        Integer total = ipow(Nz, long(n) * n) - 1;
        for (int i = 1; i <= n - 2; ++i)
          total -= chain_closed_form(i, Nz) *
                   (ipow(Nz, long(n - i - 1) * (n - i - 1)) -
                    ipow(Nz, long(n - i - 2) * (n - i - 2)));
        return total;
      }
      Integer total = halved_power(N, long(n) * n, long(n) * (n - 1)) - 1;
      const Integer half(N / 2);
      for (int i = 1; i <= n - 2; ++i)
        total -= chain_closed_form(i, half) *
                 (halved_power(N, long(n - i - 1) * (n - i - 1),
                               long(n - i - 1) * (n - i - 2)) -
                  halved_power(N, long(n - i - 2) * (n - i - 2),
                               std::max(long(n - i - 2) * (n - i - 3), 0L)));
      return total;
    }
    case 'C': {
      if (N % 2) {
        Integer total = ipow(Nz, long(n) * n) - 1;
        for (int i = 1; i <= n - 2; ++i)
          total -= chain_closed_form(i, Nz) *
                   (ipow(Nz, long(n - i - 1) * (n - i - 1)) -
                    ipow(Nz, long(n - i - 2) * (n - i - 2)));
        return total;
      }
      Integer total = halved_power(N, long(n) * n, n) - 1;
      for (int i = 1; i <= n - 2; ++i)
        total -= chain_closed_form(i, Nz) *
                 (halved_power(N, long(n - i - 1) * (n - i - 1), n - i - 1) -
                  halved_power(N, long(n - i - 2) * (n - i - 2), n - i - 2));
      return total;
    }
    case 'D': {
      Integer total = ipow(Nz, long(n) * n - n) - 1 - (Nz - 1) * (Nz - 1);
      for (int i = 1; i <= n - 3; ++i)
        total -= chain_closed_form(i, Nz) *
                 (ipow(Nz, long(n - i - 1) * (n - i - 2)) -
                  ipow(Nz, std::max(long(n - i - 2) * (n - i - 3), 0L)));
      return total;
    }
    case 'F': {
      if (N % 2)
        return Integer(ipow(Nz, 24) - 1 - (Nz - 1) * (ipow(Nz, 3) - 1) -
                       (ipow(Nz, 3) - Nz) * (Nz - 1));
      const Integer half(N / 2);
      return Integer(halved_power(N, 24, 12) - 1 -
                     (half - 1) * (ipow(Nz, 3) - 1) -
                     (ipow(half, 3) - half) * (Nz - 1));
    }
    case 'G': {
      if (N % 3 == 0) return Integer(ipow(Nz, 6) / 27 - 1);
      return Integer(ipow(Nz, 6) - 1);
    }
    case 'E': {
      const Integer m1 = Nz - 1;
      const auto P = [&Nz](long k) { return ipow(Nz, k); };
      if (n == 6)
        return Integer(P(36) - 1 - m1 * (P(10) - 1) - (P(3) - 1) * (P(4) - 1) -
                       m1 * (P(3) - 1) - (P(10) - 1) * m1 + m1 * (P(4) - 1) +
                       m1 * P(3) * m1 + (P(4) - 1) * m1 - m1 * Nz * m1);
      if (n == 7)
        return Integer(
            P(63) - 1 - m1 * (P(20) - 1) - (P(3) - 1) * (P(10) - 1) -
            (P(6) - 1) * (P(4) - 1) - m1 * (P(3) - 1) - (P(15) - 1) * m1 +
            m1 * (P(10) - 1) + m1 * Nz * (P(4) - 1) + m1 * P(6) * m1 +
            (P(3) - 1) * (P(4) - 1) + (P(3) - 1) * P(3) * m1 +
            (P(7) - 1) * m1 - m1 * (P(4) - 1) - m1 * P(3) * m1 -
            m1 * P(2) * m1 - (P(3) - 1) * Nz * m1 + m1 * Nz * m1);
      return Integer(
          P(120) - 1 - m1 * (P(36) - 1) - (P(3) - 1) * (P(20) - 1) -
          (P(6) - 1) * (P(10) - 1) - (P(10) - 1) * (P(4) - 1) -
          m1 * (P(3) - 1) - (P(21) - 1) * m1 + m1 * (P(20) - 1) +
          m1 * Nz * (P(10) - 1) + m1 * P(3) * (P(4) - 1) + m1 * P(10) * m1 +
          (P(3) - 1) * (P(10) - 1) + (P(3) - 1) * Nz * (P(4) - 1) +
          (P(3) - 1) * P(6) * m1 + (P(6) - 1) * (P(4) - 1) +
          (P(6) - 1) * P(3) * m1 + (P(11) - 1) * m1 - m1 * (P(10) - 1) -
          m1 * Nz * (P(4) - 1) - m1 * P(6) * m1 - m1 * Nz * (P(4) - 1) -
          m1 * P(4) * m1 - m1 * P(4) * m1 - (P(3) - 1) * (P(4) - 1) -
          (P(3) - 1) * P(3) * m1 - (P(3) - 1) * P(2) * m1 -
          (P(6) - 1) * Nz * m1 + m1 * (P(4) - 1) + m1 * P(3) * m1 +
          m1 * P(2) * m1 + m1 * P(2) * m1 + (P(3) - 1) * Nz * m1 -
          m1 * Nz * m1);
    }
    default:
      throw UnsupportedPreset("no closed-form dimension expression for family " +
                              std::string(1, preset.family));
  }
}

DimensionReport verify_dimensions(const CartanPreset& preset,
                                  const VerifyOptions& options) {
  require_valid_at(preset);
  DimensionReport report;
  report.preset = preset;
  report.dim_B = dim_nichols(preset);
  report.methods["oracle"] = moebius_oracle(preset);
  if (is_label_path(cartan_diagram(preset))) {
    report.methods["recursion"] = path_recursion(preset);
  } else if (preset.family == 'D') {
    report.methods["recursion"] = dtype_recursion(preset);
  }
  report.methods["closed_form"] = closed_form(preset);
  const bool engine_fits = full_cutoff(preset) <= options.engine_cutoff_budget &&
                           preset.rank <= options.engine_rank_budget;
  if (options.engine && (options.force_engine || engine_fits)) {
    const auto engine = NicholsEngine::for_preset(preset);
    report.methods["engine"] = engine.lie_closure()->dimension;
  }
  const Integer oracle = report.methods.at("oracle");
  for (const auto& [method, value] : report.methods) {
    if (method == "oracle" || value == oracle) continue;
    report.agree = false;
    report.errata.push_back({method, oracle, value});
  }
  return report;
}

std::string report_to_json_text(const DimensionReport& report) {
  nlohmann::ordered_json j;
  j["preset"] = std::string(1, report.preset.family) + std::to_string(report.preset.rank);
  j["N"] = report.preset.q_order();
  j["dim_B"] = report.dim_B.str();
  auto methods = nlohmann::ordered_json::object();
  for (const char* name : {"oracle", "recursion", "closed_form", "engine"}) {
    const auto it = report.methods.find(name);
    if (it != report.methods.end()) methods[name] = it->second.str();
  }
  j["methods"] = std::move(methods);
  j["agree"] = report.agree;
  auto errata = nlohmann::ordered_json::array();
  for (const auto& e : report.errata)
    errata.push_back(nlohmann::ordered_json{{"method", e.method},
                                            {"expected", e.expected.str()},
                                            {"got", e.got.str()}});
  j["errata"] = std::move(errata);
  return j.dump(2);
}

}  // namespace nichols
