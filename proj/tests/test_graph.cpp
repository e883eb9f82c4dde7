#include <doctest.h>

#include <random>
#include <sstream>

#include "netmoments/error.hpp"
#include "netmoments/graph.hpp"
#include "oracles.hpp"

using namespace netmoments;

namespace {

Graph parse(const std::string& text, EdgeListOptions options = {}) {
  std::istringstream in(text);
  return load_edge_list(in, options);
}

Graph path4() { return parse("0 1\n1 2\n2 3\n"); }

std::vector<std::pair<Node, Node>> pairs(std::initializer_list<std::pair<Node, Node>> list) { return list; }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("edge list deduplicates repeated edges") {
    const Graph g = parse("0 1\n1 2\n0 1");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
  }

  TEST_CASE("one-based ids are relabeled") {
    EdgeListOptions options;
    options.index_base = 1;
    const Graph g = parse("1 2\n2 3\n", options);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(g.label(0) == 1);
  }

  TEST_CASE("sparse ids are compacted and labels kept") {
    const Graph g = parse("# header\n10 200\n200 7\n");
    CHECK(g.node_count() == 3);
    CHECK(g.label(0) == 7);
    CHECK(g.label(1) == 10);
    CHECK(g.label(2) == 200);
    CHECK(g.adjacent(0, 2));
    CHECK(g.adjacent(1, 2));
    CHECK_FALSE(g.adjacent(0, 1));
  }

  TEST_CASE("malformed token reports its line") {
    try {
      parse("a b\n");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    try {
      parse("0 1\n1 x\n");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("self-loops are rejected unless dropped") {
    CHECK_THROWS_AS(parse("0 1\n2 2\n"), Error);
    EdgeListOptions options;
    options.drop_self_loops = true;
    const Graph g = parse("0 1\n2 2\n", options);
    CHECK(g.edge_count() == 1);
  }

  TEST_CASE("comments are errors when disabled") {
    EdgeListOptions options;
    options.allow_comments = false;
    CHECK_THROWS_AS(parse("# c\n0 1\n", options), Error);
  }

  TEST_CASE("canonical serialization round trips") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      const Graph g = oracle::random_graph(30, 0.2, rng);
      const std::string text = to_edge_list_string(g);
      const Graph h = parse(text);
      CHECK(to_edge_list_string(h) == text);
    }
    CHECK(to_edge_list_string(path4()) == "0 1\n1 2\n2 3\n");
  }

  TEST_CASE("invariants hold after construction") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const Graph g = oracle::random_graph(1 + t * 3, 0.3, rng);
      g.check_invariants();
      std::uint64_t degree_sum = 0;
      for (Node v = 0; v < g.node_count(); ++v) {
        degree_sum += g.degree(v);
        CHECK_FALSE(g.adjacent(v, v));
        for (Node u = 0; u < g.node_count(); ++u) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      }
      CHECK(degree_sum == 2 * g.edge_count());
    }
  }

  TEST_CASE("construction rejects invalid edges") {
    CHECK_THROWS_AS(Graph::from_edges(3, pairs({{0, 0}})), Error);
    CHECK_THROWS_AS(Graph::from_edges(3, pairs({{0, 3}})), Error);
  }

  TEST_CASE("largest connected component") {
    CHECK(largest_connected_component(path4()) == path4());
    const Graph tk = Graph::from_edges(5, pairs({{0, 1}, {2, 3}, {3, 4}, {2, 4}}));
    const Graph lcc = largest_connected_component(tk);
    CHECK(lcc.node_count() == 3);
    CHECK(lcc.edge_count() == 3);
    const Graph two = parse("2 3\n0 1\n");
    const Graph tie = largest_connected_component(two);
    CHECK(tie.node_count() == 2);
    CHECK(tie.label(0) == 0);
    CHECK(largest_connected_component(Graph::empty(0)).node_count() == 0);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) CHECK(is_connected(largest_connected_component(oracle::random_graph(25, 0.06, rng))));
  }

  TEST_CASE("induced subgraph") {
    CHECK(induced_subgraph(Graph::complete(4), NodeSet({0, 1, 2})) == Graph::complete(3));
    const Graph sub = induced_subgraph(path4(), NodeSet({0, 1, 3}));
    CHECK(sub.node_count() == 3);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.adjacent(0, 1));
    CHECK_THROWS_AS(induced_subgraph(path4(), NodeSet({0, 4})), Error);
    CHECK_THROWS_AS(NodeSet({2, 1}), Error);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
      const Graph g = oracle::random_graph(40, 0.3, rng);
      CHECK(induced_subgraph(g, NodeSet::all(40)) == g);
      // nested induction equals one induction on the composed image
      const NodeSet outer({1, 3, 4, 8, 9, 15, 22, 30, 31, 39});
      const NodeSet inner({0, 2, 5, 9});
      std::vector<Node> composed;
      for (Node i : inner) composed.push_back(outer[i]);
      CHECK(induced_subgraph(induced_subgraph(g, outer), inner) == induced_subgraph(g, NodeSet(composed)));
      const auto a = oracle::Adj::from(g);
      const Graph sub2 = induced_subgraph(g, outer);
      for (Node i = 0; i < outer.size(); ++i)
        for (Node j = 0; j < outer.size(); ++j) CHECK(sub2.adjacent(i, j) == static_cast<bool>(a.a[outer[i]][outer[j]]));
    }
  }

  TEST_CASE("list mode and bitset mode agree") {
    // Above the bitset limit the graph keeps only neighbor lists.
    const std::size_t n = Graph::kBitsetLimit + 10;
    std::vector<std::pair<Node, Node>> edges;
    for (Node i = 0; i + 1 < n; i += 7) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, static_cast<Node>(n - 1));
    const Graph g = Graph::from_edges(n, edges);
    CHECK_FALSE(g.has_bitsets());
    CHECK(g.adjacent(0, static_cast<Node>(n - 1)));
    CHECK(g.adjacent(7, 8));
    CHECK_FALSE(g.adjacent(1, 2));
    const Graph sub = induced_subgraph(g, NodeSet({0, 1, 7, 8, static_cast<Node>(n - 1)}));
    CHECK(sub.has_bitsets());
    CHECK(sub.edge_count() == 3);
  }

  TEST_CASE("edge density") {
    for (std::size_t n = 2; n <= 8; ++n) CHECK(edge_density(Graph::complete(n)) == doctest::Approx(1.0));
    CHECK(edge_density(Graph::empty(4)) == 0.0);
    CHECK(edge_density(path4()) == doctest::Approx(0.5));
    CHECK_THROWS_AS(edge_density(Graph::empty(1)), Error);
  }

  TEST_CASE("delete node keeps order") {
    const Graph g = delete_node(path4(), 1);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 1);
    CHECK(g.adjacent(1, 2));
  }
}
