#include "netmoments/motif.hpp"

#include <algorithm>
#include <charconv>

#include "netmoments/error.hpp"

namespace netmoments {

Motif::Motif(std::string name, SmallGraph templ) : name_(std::move(name)), graph_(templ) {
  require(graph_.node_count() >= 2 && graph_.node_count() <= kMaxNodes,
          "motif '" + name_ + "' must have between 2 and 5 nodes");
  require(graph_.is_connected(), "motif '" + name_ + "' must be connected");
  const auto& form = canonical_form(graph_);
  automorphisms_ = form.automorphisms;
  key_ = form.key;
}

std::span<const Motif> motif_catalog() {
  static const std::vector<Motif> catalog = [] {
    std::vector<Motif> out;
    out.emplace_back("edge", SmallGraph(2, {{0, 1}}));
    out.emplace_back("twostar", SmallGraph(3, {{0, 1}, {0, 2}}));
    out.emplace_back("triangle", SmallGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
    out.emplace_back("threestar", SmallGraph(4, {{0, 1}, {0, 2}, {0, 3}}));
    out.emplace_back("path4", SmallGraph(4, {{0, 1}, {1, 2}, {2, 3}}));
    out.emplace_back("cycle4", SmallGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    out.emplace_back("paw", SmallGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}));
    out.emplace_back("diamond", SmallGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}));
    out.emplace_back("k4", SmallGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    return out;
  }();
  return catalog;
}

const Motif& catalog_motif(std::string_view name) {
  for (const auto& m : motif_catalog())
    if (m.name() == name) return m;
  fail(ErrorCode::invalid_argument, "unknown motif '" + std::string(name) + "'");
}

const Motif* find_catalog_motif(const SmallGraph& g) {
  const auto key = canonical_form(g).key;
  for (const auto& m : motif_catalog())
    if (m.canonical_key() == key) return &m;
  return nullptr;
}

Motif parse_motif(std::string_view spec) {
  for (const auto& m : motif_catalog())
    if (m.name() == spec) return m;

  std::vector<std::pair<int, int>> edges;
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) fail(ErrorCode::parse, "unknown motif '" + std::string(spec) + "'");
    int u = -1, v = -1;
    auto a = std::from_chars(item.data(), item.data() + dash, u);
    auto b = std::from_chars(item.data() + dash + 1, item.data() + item.size(), v);
    if (a.ec != std::errc() || b.ec != std::errc() || a.ptr != item.data() + dash ||
        b.ptr != item.data() + item.size() || u < 0 || v < 0) {
      fail(ErrorCode::parse, "malformed motif edge '" + std::string(item) + "'");
    }
    edges.emplace_back(u, v);
  }
  // Node ids need not be contiguous; they are compacted in increasing order.
  std::vector<int> ids;
  for (auto [u, v] : edges) ids.insert(ids.end(), {u, v});
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  require(static_cast<int>(ids.size()) <= Motif::kMaxNodes, "motif spec '" + std::string(spec) + "' exceeds five nodes");
  auto index = [&](int id) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  for (auto& [u, v] : edges) {
    require(u != v, "motif spec '" + std::string(spec) + "' has a self-loop");
    u = index(u);
    v = index(v);
  }
  SmallGraph g(static_cast<int>(ids.size()), edges);
  if (const Motif* known = find_catalog_motif(g)) return Motif(known->name(), g);
  return Motif(std::string(spec), g);
}

std::vector<Motif> parse_motif_list(std::string_view spec) {
  std::vector<Motif> out;
  const char separator = spec.find('-') != std::string_view::npos ? ';' : ',';
  while (!spec.empty()) {
    const auto pos = spec.find(separator);
    std::string_view item = spec.substr(0, pos);
    spec = pos == std::string_view::npos ? std::string_view{} : spec.substr(pos + 1);
    if (!item.empty()) out.push_back(parse_motif(item));
  }
  require(!out.empty(), "motif list is empty");
  return out;
}

}  // namespace netmoments
