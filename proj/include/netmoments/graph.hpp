#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netmoments {

using Node = std::uint32_t;

/// Ordered set of distinct node indices of a host graph.
class NodeSet {
 public:
  NodeSet() = default;
  /// Validates that `nodes` is strictly increasing.
  explicit NodeSet(std::vector<Node> nodes);

  static NodeSet all(std::size_t n);
  /// Sorts and validates an arbitrary list of distinct indices.
  static NodeSet from_unsorted(std::vector<Node> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  Node operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  auto begin() const noexcept { return nodes_.begin(); }
  auto end() const noexcept { return nodes_.end(); }

 private:
  std::vector<Node> nodes_;
};

/// Simple undirected graph, immutable after construction.
///
/// Neighbor lists are always available (CSR layout). For graphs with at most
/// `kBitsetLimit` nodes each node also carries an adjacency bitset row, which
/// the motif counters use for constant-time adjacency tests and word-parallel
/// intersections. Both layouts answer the same queries.
class Graph {
 public:
  static constexpr std::size_t kBitsetLimit = std::size_t{1} << 16;

  Graph() = default;

  /// Builds a graph on `n` nodes. Duplicate edges collapse; a self-loop or an
  /// out-of-range endpoint throws.
  static Graph from_edges(std::size_t n, std::span<const std::pair<Node, Node>> edges);

  /// Builds a graph from adjacency bitset rows (`words_per_row` 64-bit words
  /// per node). The rows must be symmetric with a zero diagonal.
  static Graph from_bitset_rows(std::size_t n, std::vector<std::uint64_t> rows);

  static Graph complete(std::size_t n);
  static Graph empty(std::size_t n);

  std::size_t node_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return m_; }
  std::uint32_t degree(Node v) const { return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]); }
  std::span<const Node> neighbors(Node v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  bool adjacent(Node u, Node v) const;

  bool has_bitsets() const noexcept { return !rows_.empty() || n_ == 0; }
  std::size_t words_per_row() const noexcept { return words_; }
  /// Bitset row of `v`; only valid when has_bitsets().
  const std::uint64_t* row(Node v) const { return rows_.data() + std::size_t{v} * words_; }

  /// Original identifiers of the nodes (identity unless the graph was loaded
  /// from a file or derived from one).
  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  std::int64_t label(Node v) const { return labels_[v]; }
  void set_labels(std::vector<std::int64_t> labels);

  /// All edges as (u, v) pairs with u < v, sorted.
  std::vector<std::pair<Node, Node>> edges() const;

  /// Throws if any structural invariant is violated.
  void check_invariants() const;

  bool operator==(const Graph& other) const;

 private:
  void build_rows();

  std::size_t n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Node> neighbors_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::int64_t> labels_;
};

struct EdgeListOptions {
  int index_base = 0;
  bool allow_comments = true;
  /// When false a self-loop is a parse error; when true it is skipped.
  bool drop_self_loops = false;
};

/// Parses whitespace separated node-id pairs, one edge per line. Node ids are
/// compacted to [0, n) in increasing order of original id; the original ids
/// are kept as node labels.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {});

/// Canonical serialization: sorted "u v" pairs, 0-indexed, '\n'-terminated.
/// Isolated nodes are not representable in this format.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list_string(const Graph& g);

/// Induced subgraph on `nodes`; node i of the result is nodes[i].
Graph induced_subgraph(const Graph& g, const NodeSet& nodes);

/// `g` with node `v` removed (remaining nodes keep their relative order).
Graph delete_node(const Graph& g, Node v);

/// Connected components as node sets, ordered by smallest member.
std::vector<NodeSet> connected_components(const Graph& g);

/// Largest connected component; ties go to the component whose smallest
/// original label is smallest.
Graph largest_connected_component(const Graph& g);

bool is_connected(const Graph& g);

/// Edge density 2m / (n (n - 1)), i.e. the network moment of the edge motif.
double edge_density(const Graph& g);

}  // namespace netmoments
