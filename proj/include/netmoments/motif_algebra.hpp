#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "netmoments/count.hpp"
#include "netmoments/counting.hpp"
#include "netmoments/graph.hpp"
#include "netmoments/motif.hpp"

namespace netmoments {

/// One graph S formed by overlaying a copy of R and a copy of R' on `q`
/// shared nodes, with the number `c` of ordered pairs (R1, R2) of subgraphs
/// of S that cover its nodes and edges with R1 ~ R and R2 ~ R'.
struct MergeEntry {
  SmallGraph merged;  ///< canonical labeling
  int q = 0;
  int s = 0;          ///< node count r + r' - q
  int edges = 0;
  std::uint64_t c = 0;
  std::uint64_t automorphisms = 0;
  std::string key;    ///< canonical string
};

/// All merges of a motif pair, ordered by q and then canonical key.
struct MergeTable {
  Motif first;
  Motif second;
  std::vector<MergeEntry> entries;

  /// Evaluates the product identity on the complete graph K_{r+r'}.
  bool self_check() const;
};

/// Throws when r + r' exceeds eight nodes. Tables are memoized process-wide.
std::shared_ptr<const MergeTable> build_merge_table(const Motif& r, const Motif& rp);

/// Number of ordered covering pairs of S by copies of R and R'.
std::uint64_t covering_pairs(const SmallGraph& s, const SmallGraph& r, const SmallGraph& rp);

struct LinearityReport {
  bool holds = false;
  Count product = 0;       ///< X_R(G) X_R'(G)
  Count merged_sum = 0;    ///< sum of c_S X_S(G)
  std::string detail;      ///< per-entry counts, filled on mismatch
};

/// Checks X_R(G) X_R'(G) = sum_S c_S X_S(G) in exact integers. The left side
/// uses the closed-form counters, the right side the injection counter.
LinearityReport verify_linearity(const Graph& g, const Motif& r, const Motif& rp);

/// Mean of U_R over all b-node induced subgraphs, which equals U_R(G).
double exact_subsample_expectation(const Graph& g, const Motif& r, std::size_t b,
                                   CountMode mode = CountMode::noninduced);

/// Covariance of U_R and U_R' over uniformly drawn b-node induced subgraphs,
/// evaluated from the merge table. Binomials C(b, s) with s > b vanish, so
/// the expression is valid for every b >= max(r, r').
double exact_subsample_covariance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b);

/// Linear Hoeffding term g1(v) = ((n - 1) / b) [U_R(G) - U_R(G - v)].
double hoeffding_g1(const Graph& g, const Motif& r, Node v, std::size_t b);

/// g1 for every node, sharing the host moment.
std::vector<double> hoeffding_g1_all(const Graph& g, const Motif& r, std::size_t b);

/// Covariance of (g1_R(V), g1_R'(V)) for a uniform node V, from direct
/// evaluation of g1 at every node.
double g1_node_covariance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b);

/// The same covariance from the merge table:
/// K_R K_R' sum_S c_S (n q - r r') / n^2 X_S(G), K_R = r! (n-r-1)! / (b (n-2)!).
double g1_node_covariance_closed_form(const Graph& g, const Motif& r, const Motif& rp, std::size_t b);

/// Covariance of the sums of g1 over a without-replacement sample of b
/// nodes: b (n - b) / (n - 1) times the node covariance.
double g1_sum_variance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b);

}  // namespace netmoments
