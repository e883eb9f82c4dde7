#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace netmoments {

/// Graph on at most eight nodes, used for motif templates and for the
/// graphs formed by merging two motifs. Adjacency is one byte per node.
class SmallGraph {
 public:
  static constexpr int kMaxNodes = 8;

  SmallGraph() = default;
  explicit SmallGraph(int n);
  SmallGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int node_count() const noexcept { return n_; }
  int edge_count() const noexcept;
  bool adjacent(int u, int v) const { return (rows_[u] >> v) & 1U; }
  void add_edge(int u, int v);
  int degree(int v) const;
  std::uint8_t row(int v) const { return rows_[v]; }
  std::vector<std::pair<int, int>> edges() const;

  /// Bit (i, j), i < j, in lexicographic pair order.
  std::uint32_t code() const;
  static SmallGraph from_code(int n, std::uint32_t code);

  bool is_connected() const;
  /// Node sets of connected components, each as a bitmask.
  std::vector<std::uint8_t> components() const;
  SmallGraph induced(std::uint8_t mask) const;

  bool operator==(const SmallGraph& other) const noexcept {
    return n_ == other.n_ && rows_ == other.rows_;
  }

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxNodes> rows_{};
};

/// Canonical form under node relabeling: the relabeling minimizing the pair
/// bit code. Results are memoized process-wide.
struct CanonicalForm {
  SmallGraph graph;
  std::uint64_t key = 0;        ///< node count in the high bits, minimal code below
  std::uint64_t automorphisms = 0;
};

const CanonicalForm& canonical_form(const SmallGraph& g);

/// Human-readable canonical key, e.g. "3:0-1,0-2,1-2".
std::string canonical_string(const SmallGraph& g);

/// Edge list rendering of a small graph in its current labeling.
std::string edge_list_string(const SmallGraph& g);

inline std::uint64_t automorphism_count(const SmallGraph& g) { return canonical_form(g).automorphisms; }

inline bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
  return canonical_form(a).key == canonical_form(b).key;
}

}  // namespace netmoments
