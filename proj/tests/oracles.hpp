#pragma once

// Brute-force reference implementations. None of these call the library's
// counting code; they work on plain adjacency matrices.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "netmoments/graph.hpp"

namespace oracle {

struct Adj {
  int n = 0;
  std::vector<std::vector<char>> a;

  explicit Adj(int nodes) : n(nodes), a(nodes, std::vector<char>(nodes, 0)) {}
  Adj(int nodes, const std::vector<std::pair<int, int>>& edges) : Adj(nodes) {
    for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
  }
  static Adj from(const netmoments::Graph& g) {
    Adj out(static_cast<int>(g.node_count()));
    for (auto [u, v] : g.edges()) out.a[u][v] = out.a[v][u] = 1;
    return out;
  }
  int edges() const {
    int m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m += a[i][j];
    return m;
  }
  Adj induced(const std::vector<int>& nodes) const {
    Adj out(static_cast<int>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j) out.a[i][j] = a[nodes[i]][nodes[j]];
    return out;
  }
};

inline std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

inline double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// Injective maps of pattern nodes into g preserving pattern edges.
inline std::uint64_t injections(const Adj& pattern, const Adj& g) {
  std::vector<int> image(pattern.n, -1);
  std::vector<char> used(g.n, 0);
  std::uint64_t total = 0;
  std::function<void(int)> place = [&](int k) {
    if (k == pattern.n) {
      ++total;
      return;
    }
    for (int x = 0; x < g.n; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (int p = 0; p < k && ok; ++p)
        if (pattern.a[k][p] && !g.a[x][image[p]]) ok = false;
      if (!ok) continue;
      used[x] = 1;
      image[k] = x;
      place(k + 1);
      used[x] = 0;
    }
  };
  place(0);
  return total;
}

inline std::uint64_t automorphisms(const Adj& pattern) {
  std::vector<int> perm(pattern.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < pattern.n && ok; ++i)
      for (int j = 0; j < pattern.n && ok; ++j) ok = pattern.a[i][j] == pattern.a[perm[i]][perm[j]];
    count += ok ? 1 : 0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

inline bool isomorphic(const Adj& x, const Adj& y) {
  if (x.n != y.n || x.edges() != y.edges()) return false;
  std::vector<int> perm(x.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < x.n && ok; ++i)
      for (int j = 0; j < x.n && ok; ++j) ok = x.a[i][j] == y.a[perm[i]][perm[j]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::uint64_t noninduced(const Adj& pattern, const Adj& g) {
  return injections(pattern, g) / automorphisms(pattern);
}

/// Calls f on every k-subset of [0, n), in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  if (k > n) return;
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 0);
  for (;;) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

inline std::uint64_t induced(const Adj& pattern, const Adj& g) {
  std::uint64_t total = 0;
  for_each_subset(g.n, pattern.n, [&](const std::vector<int>& s) { total += isomorphic(g.induced(s), pattern) ? 1 : 0; });
  return total;
}

inline double moment(const Adj& pattern, const Adj& g, bool induced_mode = false) {
  const double x = static_cast<double>(induced_mode ? induced(pattern, g) : noninduced(pattern, g));
  return x / choose(g.n, pattern.n);
}

inline netmoments::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<netmoments::Node, netmoments::Node>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(static_cast<netmoments::Node>(i), static_cast<netmoments::Node>(j));
  return netmoments::Graph::from_edges(n, edges);
}

}  // namespace oracle
