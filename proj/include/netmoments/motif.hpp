#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netmoments/small_graph.hpp"

namespace netmoments {

/// Connected template graph with at most five nodes.
class Motif {
 public:
  static constexpr int kMaxNodes = 5;

  /// Throws unless `templ` is connected, simple and within the size bound.
  Motif(std::string name, SmallGraph templ);

  const std::string& name() const noexcept { return name_; }
  const SmallGraph& graph() const noexcept { return graph_; }
  int nodes() const noexcept { return graph_.node_count(); }
  int edges() const noexcept { return graph_.edge_count(); }
  std::uint64_t automorphisms() const noexcept { return automorphisms_; }
  std::uint64_t canonical_key() const noexcept { return key_; }
  std::string canonical_string() const { return netmoments::canonical_string(graph_); }

 private:
  std::string name_;
  SmallGraph graph_;
  std::uint64_t automorphisms_ = 0;
  std::uint64_t key_ = 0;
};

/// Every connected graph on two to four nodes, under stable names:
/// edge, twostar, triangle, threestar, path4, cycle4, paw, diamond, k4.
std::span<const Motif> motif_catalog();

const Motif& catalog_motif(std::string_view name);

/// Accepts a catalog name or an inline edge list such as "0-1,1-2,2-0".
/// An inline template isomorphic to a catalog entry takes the catalog name.
Motif parse_motif(std::string_view spec);

/// Comma separated list of catalog names; inline templates are separated by ';'.
std::vector<Motif> parse_motif_list(std::string_view spec);

/// Catalog entry isomorphic to `g`, or nullptr.
const Motif* find_catalog_motif(const SmallGraph& g);

}  // namespace netmoments
