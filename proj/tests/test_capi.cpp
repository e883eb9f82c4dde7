#include <doctest.h>

#include <json.hpp>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "netmoments/netmoments.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  nm_string_free(s);
  return out;
}

nm_graph* load(const char* text) {
  nm_graph* g = nullptr;
  REQUIRE(nm_graph_load_string(text, 0, 0, &g) == NM_OK);
  return g;
}

nm_motif_list* motifs(const char* spec) {
  nm_motif_list* list = nullptr;
  REQUIRE(nm_motifs_parse(spec, &list) == NM_OK);
  return list;
}

// Erdos-Renyi style graph from a fixed linear congruential stream.
nm_graph* pseudo_random_graph(size_t n, unsigned threshold, uint64_t state) {
  std::vector<uint32_t> pairs;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      if ((state >> 33) % 100 < threshold) {
        pairs.push_back(i);
        pairs.push_back(j);
      }
    }
  nm_graph* g = nullptr;
  REQUIRE(nm_graph_from_edges(n, pairs.data(), pairs.size() / 2, &g) == NM_OK);
  return g;
}

}  // namespace

TEST_SUITE("c-api") {
  TEST_CASE("version and status names") {
    CHECK(std::strlen(nm_version()) > 0);
    CHECK(std::string(nm_status_name(NM_ERR_EMPTY_SLICE)) == "empty_slice");
    CHECK(std::string(nm_motif_catalog()) == "edge,twostar,triangle,threestar,path4,cycle4,paw,diamond,k4");
  }

  TEST_CASE("counts on the path P4") {
    nm_graph* g = load("0 1\n1 2\n2 3\n");
    nm_motif_list* list = motifs("edge,twostar,triangle,path4");
    CHECK(nm_graph_node_count(g) == 4);
    CHECK(nm_graph_edge_count(g) == 3);
    const char* expected[] = {"3", "2", "0", "1"};
    for (size_t i = 0; i < 4; ++i) {
      char* value = nullptr;
      REQUIRE(nm_count(g, list, i, NM_NONINDUCED, &value) == NM_OK);
      CHECK(take(value) == expected[i]);
    }
    double m[4];
    REQUIRE(nm_moments(g, list, NM_NONINDUCED, m) == NM_OK);
    CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m[3] == doctest::Approx(1.0).epsilon(1e-15));
    char* induced = nullptr;
    REQUIRE(nm_count(g, list, 1, NM_INDUCED, &induced) == NM_OK);
    CHECK(take(induced) == "2");
    nm_motifs_free(list);
    nm_graph_free(g);
  }

  TEST_CASE("error codes and messages") {
    nm_graph* g = nullptr;
    CHECK(nm_graph_load_string("0 x\n", 0, 0, &g) == NM_ERR_PARSE);
    CHECK(std::string(nm_last_error()).find("line 1") != std::string::npos);
    CHECK(nm_graph_load_string("0 0\n", 0, 0, &g) == NM_ERR_PARSE);
    CHECK(nm_graph_load_file("/nonexistent/edges.txt", 0, 0, &g) == NM_ERR_IO);
    CHECK(nm_graph_load_string("0 1\n", 2, 0, &g) == NM_ERR_INVALID_ARGUMENT);
    CHECK(nm_graph_load_string(nullptr, 0, 0, &g) == NM_ERR_INVALID_ARGUMENT);
    nm_motif_list* list = nullptr;
    CHECK(nm_motifs_parse("pentagram", &list) != NM_OK);
    CHECK(list == nullptr);
    double x = 0;
    CHECK(nm_rate_eval("0.25*n^", 10, &x) == NM_ERR_PARSE);

    // Self-loops can be skipped instead.
    REQUIRE(nm_graph_load_string("0 0\n0 1\n", 0, 1, &g) == NM_OK);
    CHECK(nm_graph_edge_count(g) == 1);
    nm_graph_free(g);
  }

  TEST_CASE("canonical edge list round trip") {
    nm_graph* g = load("# comment\n10 20\n20 30\n10 30\n30 40\n");
    char* text = nullptr;
    REQUIRE(nm_graph_to_edge_list(g, &text) == NM_OK);
    const std::string first = take(text);
    CHECK(first == "0 1\n0 2\n1 2\n2 3\n");
    nm_graph* h = load(first.c_str());
    REQUIRE(nm_graph_to_edge_list(h, &text) == NM_OK);
    CHECK(take(text) == first);
    nm_graph_free(h);
    nm_graph_free(g);
  }

  TEST_CASE("largest component") {
    nm_graph* g = load("0 1\n1 2\n5 6\n");
    nm_graph* lcc = nullptr;
    REQUIRE(nm_graph_largest_component(g, &lcc) == NM_OK);
    CHECK(nm_graph_node_count(lcc) == 3);
    CHECK(nm_graph_edge_count(lcc) == 2);
    nm_graph_free(lcc);
    nm_graph_free(g);
  }

  TEST_CASE("triangle merge table") {
    nm_motif_list* list = motifs("triangle");
    nm_merge_table* t = nullptr;
    REQUIRE(nm_merge_table_build(list, 0, 0, &t) == NM_OK);
    REQUIRE(nm_merge_table_size(t) == 4);
    const int qs[] = {0, 1, 2, 3};
    const uint64_t cs[] = {2, 2, 2, 1};
    for (size_t k = 0; k < 4; ++k) {
      int q = -1;
      uint64_t c = 0;
      const char* key = nullptr;
      REQUIRE(nm_merge_table_entry(t, k, &q, nullptr, nullptr, &c, nullptr, &key) == NM_OK);
      CHECK(q == qs[k]);
      CHECK(c == cs[k]);
      CHECK(key != nullptr);
    }
    CHECK(nm_merge_table_entry(t, 4, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr) ==
          NM_ERR_INVALID_ARGUMENT);
    CHECK(nm_merge_table_self_check(t) == 1);
    nm_merge_table_free(t);
    nm_motifs_free(list);
  }

  TEST_CASE("linearity through the interface") {
    nm_motif_list* list = motifs("twostar,triangle");
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      nm_graph* g = pseudo_random_graph(11, 40, seed);
      int holds = 0;
      REQUIRE(nm_verify_linearity(g, list, 0, 1, &holds, nullptr) == NM_OK);
      CHECK(holds == 1);
      nm_graph_free(g);
    }
    nm_motifs_free(list);
  }

  TEST_CASE("subsampling is independent of the worker count") {
    nm_graph* g = pseudo_random_graph(80, 20, 7);
    nm_motif_list* list = motifs("edge,twostar,triangle");
    nm_subsample_options one{20, 100, NM_NONINDUCED, 42, 1};
    nm_subsample_options three = one;
    three.threads = 3;
    nm_sample *a = nullptr, *b = nullptr;
    REQUIRE(nm_subsample_run(g, list, &one, &a) == NM_OK);
    REQUIRE(nm_subsample_run(g, list, &three, &b) == NM_OK);
    REQUIRE(nm_sample_rows(a) == 100);
    REQUIRE(nm_sample_cols(a) == 3);
    CHECK(std::memcmp(nm_sample_data(a), nm_sample_data(b), 300 * sizeof(double)) == 0);

    double density = 0;
    REQUIRE(nm_graph_edge_density(g, &density) == NM_OK);
    CHECK(nm_sample_rho_hat(a) == density);
    CHECK(nm_sample_host_moments(a)[0] == density);

    double d = 1;
    REQUIRE(nm_ks_distance(a, b, &d) == NM_OK);
    CHECK(d == 0.0);

    char* csv = nullptr;
    REQUIRE(nm_sample_csv(a, &csv) == NM_OK);
    const std::string text = take(csv);
    CHECK(text.rfind("edge,twostar,triangle\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 101);

    char* diag = nullptr;
    REQUIRE(nm_sample_diagnostics_json(a, &diag) == NM_OK);
    const auto j = nlohmann::json::parse(take(diag));
    CHECK(j["rho_hat"].get<double>() == density);
    CHECK(j["b_rho_2e"]["edge"].get<double>() == doctest::Approx(20 * density * density));

    nm_sample* z = nullptr;
    REQUIRE(nm_sample_rescale(a, &z) == NM_OK);
    // sqrt(b) (rho^-1 y_edge - 1)
    CHECK(nm_sample_data(z)[0] == doctest::Approx(std::sqrt(20.0) * (nm_sample_data(a)[0] / density - 1.0)));
    nm_sample* zz = nullptr;
    CHECK(nm_sample_rescale(z, &zz) == NM_ERR_INVALID_ARGUMENT);

    const double query[] = {1.0, 1.0, 1.0};
    double f = 0;
    REQUIRE(nm_sample_ecdf(a, query, &f) == NM_OK);
    CHECK(f == 1.0);

    char* slice = nullptr;
    CHECK(nm_conditional_slice_json(a, 0, 5.0, 0.01, &slice) == NM_ERR_EMPTY_SLICE);
    CHECK(std::string(nm_last_error()).find("bandwidth") != std::string::npos);
    REQUIRE(nm_conditional_slice_json(a, 0, nm_sample_data(a)[0], 1e-9, &slice) == NM_OK);
    CHECK(nlohmann::json::parse(take(slice))["count"].get<int>() >= 1);

    nm_sample_free(z);
    nm_sample_free(a);
    nm_sample_free(b);
    nm_motifs_free(list);
    nm_graph_free(g);
  }

  TEST_CASE("rescaling an edgeless host is degenerate") {
    uint32_t none[1] = {0};
    nm_graph* g = nullptr;
    REQUIRE(nm_graph_from_edges(10, none, 0, &g) == NM_OK);
    nm_motif_list* list = motifs("edge");
    nm_subsample_options o{5, 10, NM_NONINDUCED, 1, 1};
    nm_sample *s = nullptr, *z = nullptr;
    REQUIRE(nm_subsample_run(g, list, &o, &s) == NM_OK);
    CHECK(nm_sample_rescale(s, &z) == NM_ERR_DEGENERATE);
    o.b = 11;
    nm_sample* t = nullptr;
    CHECK(nm_subsample_run(g, list, &o, &t) == NM_ERR_INVALID_ARGUMENT);
    nm_sample_free(s);
    nm_motifs_free(list);
    nm_graph_free(g);
  }

  TEST_CASE("graphons") {
    double x = 0;
    REQUIRE(nm_rate_eval("0.25*n^-0.1", 1000, &x) == NM_OK);
    CHECK(x == doctest::Approx(0.25 * std::pow(1000.0, -0.1)).epsilon(1e-14));

    nm_graphon* w = nullptr;
    REQUIRE(nm_graphon_builtin("constant", 0.3, &w) == NM_OK);
    CHECK(std::string(nm_graphon_name(w)) == "constant");
    CHECK(nm_graphon_rho(w) == 0.3);
    nm_motif_list* list = motifs("edge,triangle");
    double p = 0, p_se = 0, mean = 0, mean_se = 0;
    REQUIRE(nm_graphon_moment(w, list, 1, 1000, 1, 1, &p, &p_se, &mean, &mean_se) == NM_OK);
    CHECK(p == doctest::Approx(1.0));
    CHECK(mean == doctest::Approx(1.0));  // 3! / |Aut| = 1
    double cov = 1, cov_se = 0;
    REQUIRE(nm_graphon_limiting_covariance(w, list, 0, 0, 1000, 1, 1, &cov, &cov_se) == NM_OK);
    CHECK(std::abs(cov) < 1e-9);

    nm_graph *a = nullptr, *b = nullptr;
    REQUIRE(nm_graphon_sample(w, 300, 9, 1, &a) == NM_OK);
    REQUIRE(nm_graphon_sample(w, 300, 9, 4, &b) == NM_OK);
    char *ta = nullptr, *tb = nullptr;
    REQUIRE(nm_graph_to_edge_list(a, &ta) == NM_OK);
    REQUIRE(nm_graph_to_edge_list(b, &tb) == NM_OK);
    CHECK(take(ta) == take(tb));

    nm_reference_options ro{20, 50, NM_NONINDUCED, 3, 300, 100, 4, 1};
    nm_sample* ref = nullptr;
    REQUIRE(nm_reference_sample(w, list, &ro, &ref) == NM_OK);
    CHECK(nm_sample_rows(ref) == 50);
    CHECK(std::isnan(nm_sample_rho_hat(ref)));

    nm_graphon* bad = nullptr;
    CHECK(nm_graphon_builtin("graphon9", 0.3, &bad) != NM_OK);
    CHECK(nm_graphon_builtin("graphon1", -1.0, &bad) == NM_ERR_INVALID_ARGUMENT);

    nm_sample_free(ref);
    nm_graph_free(a);
    nm_graph_free(b);
    nm_motifs_free(list);
    nm_graphon_free(w);
  }

  TEST_CASE("case 2 is symmetric in its inputs") {
    nm_graph* a = pseudo_random_graph(60, 30, 3);
    nm_graph* b = pseudo_random_graph(50, 20, 4);
    nm_motif_list* list = motifs("edge,triangle");
    nm_case2_options o{15, 200, NM_NONINDUCED, 11, 0, 1};
    char *r1 = nullptr, *r2 = nullptr;
    REQUIRE(nm_compare_case2(a, b, list, &o, &r1, nullptr, nullptr) == NM_OK);
    REQUIRE(nm_compare_case2(b, a, list, &o, &r2, nullptr, nullptr) == NM_OK);
    const auto j1 = nlohmann::json::parse(take(r1));
    const auto j2 = nlohmann::json::parse(take(r2));
    CHECK(j1["schema_version"] == 1);
    CHECK(j1["joint_ks"] == j2["joint_ks"]);
    CHECK(j1["marginal_ks"] == j2["marginal_ks"]);
    nm_motifs_free(list);
    nm_graph_free(a);
    nm_graph_free(b);
  }

  TEST_CASE("case 1 report and cloud") {
    nm_graph* large = pseudo_random_graph(80, 25, 5);
    nm_graph* small = pseudo_random_graph(20, 25, 6);
    nm_motif_list* list = motifs("twostar,triangle");
    nm_case1_options o{300, NM_NONINDUCED, 2, 0.0, 1};
    char* report = nullptr;
    nm_sample* cloud = nullptr;
    REQUIRE(nm_compare_case1(large, small, list, &o, &report, &cloud) == NM_OK);
    const auto j = nlohmann::json::parse(take(report));
    CHECK(j["mode"] == "case1");
    CHECK(j["b"] == 20);
    CHECK(j["marginals"].size() == 2);
    CHECK(nm_sample_rows(cloud) == 300);
    nm_sample_free(cloud);
    CHECK(nm_compare_case1(small, large, list, &o, &report, nullptr) == NM_ERR_INVALID_ARGUMENT);
    nm_motifs_free(list);
    nm_graph_free(large);
    nm_graph_free(small);
  }

  TEST_CASE("experiment output is reproducible") {
    const size_t ns[] = {60, 120};
    nm_experiment_options o{};
    o.graphon = "graphon2";
    o.ns = ns;
    o.n_count = 2;
    o.b_rule = "2sqrt";
    o.rho = "0.5";
    o.motif_sets = "edge;edge+triangle";
    o.mode = NM_NONINDUCED;
    o.n_sub = 40;
    o.reps = 2;
    o.reference_size = 50;
    o.seed = 17;
    o.include_runtime = 0;
    o.threads = 2;
    char *c1 = nullptr, *c2 = nullptr;
    REQUIRE(nm_experiment_ks_error(&o, &c1) == NM_OK);
    o.threads = 1;
    REQUIRE(nm_experiment_ks_error(&o, &c2) == NM_OK);
    const std::string a = take(c1);
    CHECK(a == take(c2));
    CHECK(a.rfind("graphon,n,b,rho,motif_set,mean_ks,se_ks\n", 0) == 0);
    CHECK(a.find("graphon2,60,16,0.5,edge+triangle,") != std::string::npos);
  }
}
