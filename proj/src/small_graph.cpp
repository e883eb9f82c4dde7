#include "netmoments/small_graph.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "netmoments/error.hpp"

namespace netmoments {
namespace {

constexpr int pair_index(int i, int j) {
  // Lexicographic index of (i, j), i < j, among pairs of eight nodes.
  return i * SmallGraph::kMaxNodes - i * (i + 1) / 2 + (j - i - 1);
}

struct CanonicalCache {
  std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, CanonicalForm> entries;
};

CanonicalCache& cache() {
  static CanonicalCache instance;
  return instance;
}

CanonicalForm compute_canonical(const SmallGraph& g) {
  const int n = g.node_count();
  const auto edges = g.edges();
  const std::uint32_t own = g.code();
  std::array<int, SmallGraph::kMaxNodes> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);
  std::uint32_t best = own;
  std::uint64_t automorphisms = 0;
  do {
    std::uint32_t code = 0;
    for (auto [u, v] : edges) {
      int a = perm[u], b = perm[v];
      if (a > b) std::swap(a, b);
      code |= std::uint32_t{1} << pair_index(a, b);
    }
    if (code == own) ++automorphisms;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  CanonicalForm out;
  out.graph = SmallGraph::from_code(n, best);
  out.key = (static_cast<std::uint64_t>(n) << 32) | best;
  out.automorphisms = automorphisms;
  return out;
}

}  // namespace

SmallGraph::SmallGraph(int n) : n_(n) {
  require(n >= 0 && n <= kMaxNodes, "small graphs hold at most eight nodes");
}

SmallGraph::SmallGraph(int n, const std::vector<std::pair<int, int>>& edges) : SmallGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void SmallGraph::add_edge(int u, int v) {
  require(u >= 0 && v >= 0 && u < n_ && v < n_, "motif edge endpoint out of range");
  require(u != v, "motif edges cannot be self-loops");
  rows_[u] |= static_cast<std::uint8_t>(1U << v);
  rows_[v] |= static_cast<std::uint8_t>(1U << u);
}

int SmallGraph::edge_count() const noexcept {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += std::popcount(rows_[v]);
  return total / 2;
}

int SmallGraph::degree(int v) const { return std::popcount(rows_[v]); }

std::vector<std::pair<int, int>> SmallGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::uint32_t SmallGraph::code() const {
  std::uint32_t code = 0;
  for (auto [u, v] : edges()) code |= std::uint32_t{1} << pair_index(u, v);
  return code;
}

SmallGraph SmallGraph::from_code(int n, std::uint32_t code) {
  SmallGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if ((code >> pair_index(u, v)) & 1U) g.add_edge(u, v);
  return g;
}

std::vector<std::uint8_t> SmallGraph::components() const {
  std::vector<std::uint8_t> out;
  std::uint8_t remaining = static_cast<std::uint8_t>((1U << n_) - 1U);
  while (remaining) {
    std::uint8_t comp = static_cast<std::uint8_t>(remaining & (~remaining + 1U));
    std::uint8_t frontier = comp;
    while (frontier) {
      std::uint8_t next = 0;
      for (int v = 0; v < n_; ++v)
        if ((frontier >> v) & 1U) next |= rows_[v];
      next &= static_cast<std::uint8_t>(~comp);
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    remaining &= static_cast<std::uint8_t>(~comp);
  }
  return out;
}

bool SmallGraph::is_connected() const { return n_ <= 1 || components().size() == 1; }

SmallGraph SmallGraph::induced(std::uint8_t mask) const {
  std::array<int, kMaxNodes> position{};
  int k = 0;
  for (int v = 0; v < n_; ++v)
    if ((mask >> v) & 1U) position[v] = k++;
  SmallGraph out(k);
  for (auto [u, v] : edges())
    if (((mask >> u) & 1U) && ((mask >> v) & 1U)) out.add_edge(position[u], position[v]);
  return out;
}

const CanonicalForm& canonical_form(const SmallGraph& g) {
  const std::uint64_t raw = (static_cast<std::uint64_t>(g.node_count()) << 32) | g.code();
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.entries.find(raw);
    if (it != c.entries.end()) return it->second;
  }
  CanonicalForm form = compute_canonical(g);
  std::unique_lock lock(c.mutex);
  // References into unordered_map stay valid across rehashing.
  return c.entries.try_emplace(raw, std::move(form)).first->second;
}

std::string edge_list_string(const SmallGraph& g) {
  std::ostringstream out;
  bool first = true;
  for (auto [u, v] : g.edges()) {
    if (!first) out << ',';
    out << u << '-' << v;
    first = false;
  }
  return out.str();
}

std::string canonical_string(const SmallGraph& g) {
  const auto& form = canonical_form(g);
  return std::to_string(g.node_count()) + ":" + edge_list_string(form.graph);
}

}  // namespace netmoments
