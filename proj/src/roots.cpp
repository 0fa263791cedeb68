#include "nichols/roots.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace nichols {

Eigen::MatrixXi cartan_matrix(const CartanPreset& preset) {
  const int n = preset.rank;
  Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(n, n);
  auto bond = [&](int i, int j) { a(i, j) = a(j, i) = -1; };
  switch (preset.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
      a(n - 1, n - 2) = -2;  // last simple root short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
      a(n - 2, n - 1) = -2;  // last simple root long
      break;
    case 'D':
      for (int i = 0; i + 1 < n - 2; ++i) bond(i, i + 1);
      bond(n - 3, n - 2);
      bond(n - 3, n - 1);
      break;
    case 'E':
      for (int i = 0; i + 1 < n - 1; ++i) bond(i, i + 1);
      bond(n - 4, n - 1);
      break;
    case 'F':
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      a(2, 1) = -2;
      break;
    case 'G':
      bond(0, 1);
      a(0, 1) = -3;
      break;
    default:
      throw UnsupportedPreset(std::string("unknown family ") + preset.family);
  }
  return a;
}

unsigned root_height(const GeneralizedDynkinDiagram& diagram, const MultiDegree& beta) {
  unsigned n = ord(chi(diagram, beta, beta));
  if (n == 1) throw HeightOne("chi(beta, beta) = 1 for root " + format_degree(beta));
  return n;
}

unsigned root_height(const CartanPreset& preset, const MultiDegree& beta) {
  return root_height(cartan_diagram(preset), beta);
}

RootSystemData positive_roots(const CartanPreset& preset) {
  if (!preset_rank_valid(preset.family, preset.rank))
    throw UnsupportedPreset(preset.name());
  const int n = preset.rank;
  const Eigen::MatrixXi a = cartan_matrix(preset);

  std::set<MultiDegree> found;
  std::vector<MultiDegree> queue;
  for (int i = 0; i < n; ++i) {
    MultiDegree simple(n, 0);
    simple[i] = 1;
    found.insert(simple);
    queue.push_back(simple);
  }
  // close the simple roots under the reflections s_i, keeping positive vectors
  while (!queue.empty()) {
    MultiDegree beta = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      long long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += a(i, j) * beta[j];
      MultiDegree image = beta;
      image[i] -= static_cast<int>(pairing);
      if (std::any_of(image.begin(), image.end(), [](int c) { return c < 0; })) continue;
      if (total_degree(image) == 0) continue;
      if (found.insert(image).second) queue.push_back(image);
    }
  }

  RootSystemData data;
  data.preset = preset;
  data.roots.assign(found.begin(), found.end());
  std::sort(data.roots.begin(), data.roots.end(), [](const MultiDegree& x, const MultiDegree& y) {
    int hx = total_degree(x), hy = total_degree(y);
    return hx != hy ? hx < hy : x < y;
  });
  auto diagram = cartan_diagram(preset);
  diagram.validate();
  data.heights.reserve(data.roots.size());
  for (const auto& beta : data.roots) data.heights.push_back(root_height(diagram, beta));
  return data;
}

Integer dim_nichols(const CartanPreset& preset) {
  Integer dim = 1;
  for (unsigned h : positive_roots(preset).heights) dim *= h;
  return dim;
}

unsigned full_cutoff(const RootSystemData& data) {
  unsigned total = 0;
  for (std::size_t r = 0; r < data.roots.size(); ++r)
    total += static_cast<unsigned>(total_degree(data.roots[r])) * (data.heights[r] - 1);
  return total;
}

unsigned full_cutoff(const CartanPreset& preset) {
  return full_cutoff(positive_roots(preset));
}

std::vector<SubsetCount> subset_counts(const RootSystemData& data) {
  const int n = data.preset.rank;
  if (n > 20) throw Error("subset enumeration limited to rank 20");
  const SupportSet all = (SupportSet{1} << n) - 1;

  std::vector<Integer> g(all + 1, Integer{1});
  for (SupportSet s = 0; s <= all; ++s)
    for (std::size_t r = 0; r < data.roots.size(); ++r)
      if ((support_of(data.roots[r]) & ~s) == 0) g[s] *= data.heights[r];

  std::vector<SubsetCount> counts;
  counts.reserve(all);
  for (SupportSet s = 1; s <= all; ++s) {
    SubsetCount entry;
    entry.set = s;
    entry.g = g[s];
    // Moebius inversion over the subset lattice: f(S) = sum over T of (-1)^|S\T| g(T)
    Integer f = 0;
    SupportSet t = s;
    while (true) {
      int sign = (std::popcount(s & ~t) % 2 == 0) ? 1 : -1;
      f += sign * g[t];
      if (t == 0) break;
      t = (t - 1) & s;
    }
    entry.f = f;
    counts.push_back(std::move(entry));
  }
  return counts;
}

Integer moebius_oracle(const CartanPreset& preset) {
  const auto data = positive_roots(preset);
  const auto diagram = cartan_diagram(preset);
  Integer dim = 0;
  for (const auto& entry : subset_counts(data))
    if (is_connected(diagram, entry.set)) dim += entry.f;
  return dim;
}

}  // namespace nichols
