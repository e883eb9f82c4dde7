#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "netmoments/error.hpp"
#include "netmoments/graph.hpp"

namespace netmoments {
namespace {

std::string_view next_token(std::string_view& line) {
  const auto start = line.find_first_not_of(" \t\r,");
  if (start == std::string_view::npos) {
    line = {};
    return {};
  }
  line.remove_prefix(start);
  const auto stop = line.find_first_of(" \t\r,");
  std::string_view token = line.substr(0, stop);
  line.remove_prefix(stop == std::string_view::npos ? line.size() : stop);
  return token;
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected an integer node id, got '" +
                               std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  require(options.index_base == 0 || options.index_base == 1, "index base must be 0 or 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    const auto first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (rest[first] == '#') {
      if (options.allow_comments) continue;
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": comment lines are disabled");
    }
    const auto a = next_token(rest);
    const auto b = next_token(rest);
    if (b.empty()) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected two node ids");
    const std::int64_t u = parse_id(a, line_no);
    const std::int64_t v = parse_id(b, line_no);
    if (u < options.index_base || v < options.index_base) {
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": node id below index base " +
                                 std::to_string(options.index_base));
    }
    if (u == v) {
      if (options.drop_self_loops) continue;
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": self-loop on node " + std::to_string(u));
    }
    raw.emplace_back(u, v);
  }

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&](std::int64_t id) {
    return static_cast<Node>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));

  Graph g = Graph::from_edges(ids.size(), edges);
  g.set_labels(std::move(ids));
  return g;
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list_string(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace netmoments
