#include "netmoments/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "netmoments/error.hpp"

namespace netmoments {

NodeSet::NodeSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    require(nodes_[i - 1] < nodes_[i], "node set must be strictly increasing");
  }
}

NodeSet NodeSet::all(std::size_t n) {
  std::vector<Node> nodes(n);
  std::iota(nodes.begin(), nodes.end(), Node{0});
  return NodeSet(std::move(nodes));
}

NodeSet NodeSet::from_unsorted(std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end());
  return NodeSet(std::move(nodes));
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<Node, Node>> edges) {
  std::vector<std::pair<Node, Node>> sorted;
  sorted.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    require(u < n && v < n, "edge endpoint out of range");
    require(u != v, "self-loop on node " + std::to_string(u));
    sorted.emplace_back(u, v);
    sorted.emplace_back(v, u);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : sorted) ++g.offsets_[u + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.resize(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) g.neighbors_[i] = sorted[i].second;
  g.m_ = sorted.size() / 2;
  g.labels_.resize(n);
  std::iota(g.labels_.begin(), g.labels_.end(), std::int64_t{0});
  g.build_rows();
  return g;
}

Graph Graph::from_bitset_rows(std::size_t n, std::vector<std::uint64_t> rows) {
  Graph g;
  g.n_ = n;
  g.words_ = (n + 63) / 64;
  require(rows.size() == n * g.words_, "bitset row storage has the wrong size");
  g.rows_ = std::move(rows);
  g.offsets_.assign(n + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t* r = g.rows_.data() + v * g.words_;
    for (std::size_t w = 0; w < g.words_; ++w) total += static_cast<std::uint64_t>(std::popcount(r[w]));
    g.offsets_[v + 1] = total;
  }
  g.neighbors_.resize(total);
  std::size_t pos = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t* r = g.rows_.data() + v * g.words_;
    for (std::size_t w = 0; w < g.words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        g.neighbors_[pos++] = static_cast<Node>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
  require(total % 2 == 0, "bitset rows are not symmetric");
  g.m_ = total / 2;
  g.labels_.resize(n);
  std::iota(g.labels_.begin(), g.labels_.end(), std::int64_t{0});
  if (n > kBitsetLimit) {
    g.rows_.clear();
    g.rows_.shrink_to_fit();
    g.words_ = 0;
  }
  return g;
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_edges(n, edges);
}

Graph Graph::empty(std::size_t n) { return from_edges(n, {}); }

void Graph::build_rows() {
  rows_.clear();
  words_ = 0;
  if (n_ == 0 || n_ > kBitsetLimit) return;
  words_ = (n_ + 63) / 64;
  rows_.assign(n_ * words_, 0);
  for (std::size_t v = 0; v < n_; ++v) {
    std::uint64_t* r = rows_.data() + v * words_;
    for (Node u : neighbors(static_cast<Node>(v))) r[u / 64] |= std::uint64_t{1} << (u % 64);
  }
}

bool Graph::adjacent(Node u, Node v) const {
  if (!rows_.empty()) return (row(u)[v / 64] >> (v % 64)) & 1U;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::set_labels(std::vector<std::int64_t> labels) {
  require(labels.size() == n_, "label count must equal node count");
  labels_ = std::move(labels);
}

std::vector<std::pair<Node, Node>> Graph::edges() const {
  std::vector<std::pair<Node, Node>> out;
  out.reserve(m_);
  for (Node u = 0; u < n_; ++u)
    for (Node v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::check_invariants() const {
  std::uint64_t degree_sum = 0;
  for (Node u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    degree_sum += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == u) fail(ErrorCode::invalid_argument, "graph has a self-loop");
      if (i > 0 && nb[i - 1] >= nb[i]) fail(ErrorCode::invalid_argument, "neighbor list not strictly sorted");
      auto back = neighbors(nb[i]);
      if (!std::binary_search(back.begin(), back.end(), u)) fail(ErrorCode::invalid_argument, "adjacency not symmetric");
    }
    if (!rows_.empty()) {
      std::size_t bits = 0;
      for (std::size_t w = 0; w < words_; ++w) bits += static_cast<std::size_t>(std::popcount(row(u)[w]));
      if (bits != nb.size()) fail(ErrorCode::invalid_argument, "bitset row disagrees with neighbor list");
      for (Node v : nb)
        if (!adjacent(u, v)) fail(ErrorCode::invalid_argument, "bitset row disagrees with neighbor list");
    }
  }
  if (degree_sum != 2 * m_) fail(ErrorCode::invalid_argument, "edge count inconsistent with degrees");
}

bool Graph::operator==(const Graph& other) const {
  return n_ == other.n_ && offsets_ == other.offsets_ && neighbors_ == other.neighbors_;
}

Graph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  const std::size_t k = nodes.size();
  for (Node v : nodes) require(v < g.node_count(), "node index " + std::to_string(v) + " out of range");

  Graph out;
  if (g.has_bitsets() && k <= Graph::kBitsetLimit) {
    // Word-parallel extraction: mask the host rows with the subset and
    // translate the surviving bits.
    const std::size_t host_words = g.words_per_row();
    const std::size_t words = (k + 63) / 64;
    std::vector<std::uint64_t> mask(host_words, 0);
    std::vector<Node> position(k > 0 ? g.node_count() : 0);
    for (std::size_t i = 0; i < k; ++i) {
      mask[nodes[i] / 64] |= std::uint64_t{1} << (nodes[i] % 64);
      position[nodes[i]] = static_cast<Node>(i);
    }
    std::vector<std::uint64_t> rows(k * words, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t* r = g.row(nodes[i]);
      std::uint64_t* dst = rows.data() + i * words;
      for (std::size_t w = 0; w < host_words; ++w) {
        std::uint64_t bits = r[w] & mask[w];
        while (bits) {
          const Node j = position[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
          dst[j / 64] |= std::uint64_t{1} << (j % 64);
          bits &= bits - 1;
        }
      }
    }
    out = Graph::from_bitset_rows(k, std::move(rows));
  } else {
    std::vector<std::int64_t> position(g.node_count(), -1);
    for (std::size_t i = 0; i < k; ++i) position[nodes[i]] = static_cast<std::int64_t>(i);
    std::vector<std::pair<Node, Node>> edges;
    for (std::size_t i = 0; i < k; ++i)
      for (Node v : g.neighbors(nodes[i]))
        if (position[v] > static_cast<std::int64_t>(i)) edges.emplace_back(static_cast<Node>(i), static_cast<Node>(position[v]));
    out = Graph::from_edges(k, edges);
  }
  std::vector<std::int64_t> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = g.label(nodes[i]);
  out.set_labels(std::move(labels));
  return out;
}

Graph delete_node(const Graph& g, Node v) {
  require(v < g.node_count(), "node index out of range");
  std::vector<Node> keep;
  keep.reserve(g.node_count() - 1);
  for (Node u = 0; u < g.node_count(); ++u)
    if (u != v) keep.push_back(u);
  return induced_subgraph(g, NodeSet(std::move(keep)));
}

std::vector<NodeSet> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeSet> out;
  std::vector<Node> queue;
  for (Node s = 0; s < n; ++s) {
    if (seen[s]) continue;
    queue.assign(1, s);
    seen[s] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Node v : g.neighbors(queue[head])) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    out.push_back(NodeSet::from_unsorted(queue));
  }
  return out;
}

Graph largest_connected_component(const Graph& g) {
  if (g.node_count() == 0) return Graph::empty(0);
  auto components = connected_components(g);
  auto min_label = [&](const NodeSet& c) {
    std::int64_t best = g.label(c[0]);
    for (Node v : c) best = std::min(best, g.label(v));
    return best;
  };
  const NodeSet* best = &components.front();
  std::int64_t best_label = min_label(*best);
  for (const auto& c : components) {
    const std::int64_t l = min_label(c);
    if (c.size() > best->size() || (c.size() == best->size() && l < best_label)) {
      best = &c;
      best_label = l;
    }
  }
  return induced_subgraph(g, *best);
}

bool is_connected(const Graph& g) { return g.node_count() <= 1 || connected_components(g).size() == 1; }

double edge_density(const Graph& g) {
  const std::size_t n = g.node_count();
  require(n >= 2, "edge density needs at least two nodes");
  return 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace netmoments
