#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "netmoments/count.hpp"
#include "netmoments/graph.hpp"
#include "netmoments/motif.hpp"

namespace netmoments {

enum class CountMode { noninduced, induced };

std::string_view to_string(CountMode mode);
CountMode parse_count_mode(std::string_view text);

/// Number of injective homomorphisms from `pattern` into `g`. Connected
/// patterns are enumerated with adjacency-consistent extension; disconnected
/// patterns are reduced to connected ones by gluing their components.
Count injective_homomorphisms(const Graph& g, const SmallGraph& pattern);

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to
/// `pattern`, i.e. inj(pattern, g) / |Aut(pattern)|. Disconnected patterns
/// are allowed.
Count count_subgraphs(const Graph& g, const SmallGraph& pattern);

/// Non-induced count through the generic enumerator.
Count count_noninduced(const Graph& g, const Motif& motif);

/// Closed forms for edge, twostar, threestar, triangle, path4, cycle4, paw
/// and diamond; other motifs fall back to the generic enumerator.
Count fast_count(const Graph& g, const Motif& motif);
bool has_closed_form(const Motif& motif);

/// Number of node subsets whose induced subgraph is isomorphic to `motif`.
Count count_induced(const Graph& g, const Motif& motif);

/// Number of spanning subgraphs of `host` isomorphic to `pattern` (both on
/// the same node count); zero when node counts differ.
Count spanning_copies(const SmallGraph& pattern, const SmallGraph& host);

/// Counts several motifs on one graph, sharing intermediate quantities
/// (degrees, per-edge common neighbors, triangles).
class MotifCounter {
 public:
  explicit MotifCounter(const Graph& g);

  Count noninduced(const Motif& motif);
  Count induced(const Motif& motif);
  Count count(const Motif& motif, CountMode mode) {
    return mode == CountMode::noninduced ? noninduced(motif) : induced(motif);
  }
  /// X / C(n, r); requires n >= r.
  double moment(const Motif& motif, CountMode mode);

 private:
  const std::vector<std::uint32_t>& edge_common();
  Count triangles();
  std::optional<Count> closed_form(const Motif& motif);

  const Graph& g_;
  std::vector<std::uint32_t> common_;  // aligned with CSR entries (u, v), u < v only
  bool have_common_ = false;
  std::optional<Count> triangles_;
  std::vector<std::pair<std::uint64_t, Count>> memo_;
};

Count count_motif(const Graph& g, const Motif& motif, CountMode mode);

/// Network moment U_R(G) = X_R(G) / C(n, r) (or the induced analogue).
double network_moment(const Graph& g, const Motif& motif, CountMode mode);

std::vector<double> network_moments(const Graph& g, std::span<const Motif> motifs, CountMode mode);

}  // namespace netmoments
