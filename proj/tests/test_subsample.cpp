#include <doctest.h>

#include <cmath>
#include <random>

#include "netmoments/error.hpp"
#include "netmoments/motif_algebra.hpp"
#include "netmoments/random.hpp"
#include "netmoments/subsample.hpp"
#include "oracles.hpp"

using namespace netmoments;

namespace {

Graph path(int n) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Node>(i), static_cast<Node>(i + 1));
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

SubsampleConfig make_config(std::size_t b, std::size_t n_sub, std::vector<Motif> motifs, std::uint64_t seed,
                            CountMode mode = CountMode::noninduced) {
  SubsampleConfig c;
  c.b = b;
  c.n_sub = n_sub;
  c.motifs = std::move(motifs);
  c.seed = seed;
  c.mode = mode;
  return c;
}

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

double mean(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// sup over every candidate point (all pooled coordinates combined) by direct counting
double brute_ks(const Matrix& a, const Matrix& b) {
  auto cdf = [](const Matrix& s, std::span<const double> q) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < s.rows; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < s.cols; ++j) ok = ok && s.at(i, j) <= q[j];
      hits += ok;
    }
    return static_cast<double>(hits) / static_cast<double>(s.rows);
  };
  double best = 0;
  for (const Matrix* src : {&a, &b})
    for (std::size_t i = 0; i < src->rows; ++i) best = std::max(best, std::abs(cdf(a, src->row(i)) - cdf(b, src->row(i))));
  return best;
}

}  // namespace

TEST_SUITE("subsample") {
  TEST_CASE("configuration errors") {
    const Graph g = path(5);
    CHECK_THROWS_AS(run_subsampling(g, make_config(6, 10, {catalog_motif("edge")}, 1)), Error);
    CHECK_THROWS_AS(run_subsampling(g, make_config(2, 10, {catalog_motif("triangle")}, 1)), Error);
    CHECK_THROWS_AS(run_subsampling(g, make_config(3, 0, {catalog_motif("edge")}, 1)), Error);
    CHECK_THROWS_AS(run_subsampling(g, make_config(3, 10, {}, 1)), Error);
  }

  TEST_CASE("b = n reproduces the host moments") {
    std::mt19937_64 rng(1);
    const Graph g = oracle::random_graph(12, 0.4, rng);
    const std::vector<Motif> motifs(motif_catalog().begin(), motif_catalog().end());
    const auto s = run_subsampling(g, make_config(12, 5, motifs, 3));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < motifs.size(); ++j) CHECK(s.y.at(i, j) == s.host_moments[j]);
    const Matrix z = rescale(s);
    for (double x : z.data) CHECK(x == 0.0);
  }

  TEST_CASE("path example means") {
    const auto s = run_subsampling(path(4), make_config(3, 40000, {catalog_motif("edge"), catalog_motif("twostar")}, 9));
    for (std::size_t j = 0; j < 2; ++j) {
      const auto col = s.y.column(j);
      const double m = mean(col);
      double var = 0;
      for (double x : col) var += (x - m) * (x - m);
      const double se = std::sqrt(var / (col.size() - 1.0) / col.size());
      CHECK(std::abs(m - 0.5) < 3.0 * se);
    }
    CHECK(s.rho_hat == doctest::Approx(0.5));
  }

  TEST_CASE("output is deterministic and thread independent") {
    std::mt19937_64 rng(2);
    const Graph g = oracle::random_graph(200, 0.1, rng);
    const auto cfg = make_config(40, 300, {catalog_motif("twostar"), catalog_motif("triangle")}, 77, CountMode::induced);
    const auto a = run_subsampling(g, cfg, 1);
    const auto b = run_subsampling(g, cfg, 1);
    const auto c = run_subsampling(g, cfg, 4);
    CHECK(a.y == b.y);
    CHECK(a.y == c.y);
    for (double x : a.y.data) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }

  TEST_CASE("subsets are uniform") {
    std::vector<int> hits(10, 0);
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      const NodeSet s = draw_subset(10, 3, derive_seed(5, static_cast<std::uint64_t>(i)));
      REQUIRE(s.size() == 3);
      for (Node v : s) ++hits[v];
    }
    const double expected = draws * 0.3;
    const double sd = std::sqrt(draws * 0.3 * 0.7);
    for (int h : hits) CHECK(std::abs(h - expected) < 4.5 * sd);
  }

  TEST_CASE("exhaustive subset means equal host moments") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
      const Graph g = oracle::random_graph(9, 0.5, rng);
      for (const auto& m : motif_catalog()) {
        for (auto mode : {CountMode::noninduced, CountMode::induced}) {
          const double host = network_moment(g, m, mode);
          for (int b = m.nodes(); b <= 9; ++b) {
            double sum = 0;
            std::size_t count = 0;
            oracle::for_each_subset(9, b, [&](const std::vector<int>& s) {
              sum += network_moment(induced_subgraph(g, NodeSet(std::vector<Node>(s.begin(), s.end()))), m, mode);
              ++count;
            });
            CHECK(std::abs(sum / static_cast<double>(count) - host) < 1e-12);
          }
        }
      }
    }
  }

  TEST_CASE("Monte Carlo moments agree with the exact covariance") {
    std::mt19937_64 rng(4);
    const Graph g = oracle::random_graph(9, 0.5, rng);
    const Motif& two = catalog_motif("twostar");
    const Motif& tri = catalog_motif("triangle");
    const std::size_t b = 5, n_sub = 100000;
    const auto s = run_subsampling(g, make_config(b, n_sub, {two, tri}, 21));
    const double v0 = exact_subsample_covariance(g, two, two, b);
    const double v1 = exact_subsample_covariance(g, tri, tri, b);
    const double c01 = exact_subsample_covariance(g, two, tri, b);
    const auto x = s.y.column(0), y = s.y.column(1);
    const double mx = mean(x), my = mean(y);
    CHECK(std::abs(mx - s.host_moments[0]) / std::sqrt(v0 / n_sub) < 4.0);
    CHECK(std::abs(my - s.host_moments[1]) / std::sqrt(v1 / n_sub) < 4.0);
    // sample covariance and its standard error from the product terms
    std::vector<double> prod(n_sub);
    for (std::size_t i = 0; i < n_sub; ++i) prod[i] = (x[i] - mx) * (y[i] - my);
    const double cov = mean(prod);
    double var = 0;
    for (double p : prod) var += (p - cov) * (p - cov);
    const double se = std::sqrt(var / (n_sub - 1.0) / n_sub);
    CHECK(std::abs(cov - c01) < 4.0 * se);
  }

  TEST_CASE("rescaling") {
    const auto s = run_subsampling(Graph::complete(10), make_config(5, 20, {catalog_motif("edge"), catalog_motif("triangle")}, 1));
    for (double z : rescale(s).data) CHECK(z == 0.0);

    MomentSample one;
    one.config = make_config(16, 1, {catalog_motif("edge")}, 0);
    one.rho_hat = 0.25;
    one.host_moments = {0.25};
    one.y = from_rows({{0.25 + 0.01}});
    CHECK(rescale(one).at(0, 0) == doctest::Approx(4.0 * 0.01 / 0.25));

    const auto empty = run_subsampling(Graph::empty(6), make_config(3, 4, {catalog_motif("edge")}, 1));
    try {
      rescale(empty);
      FAIL("expected a degenerate-host error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate);
    }
  }

  TEST_CASE("diagnostics") {
    std::mt19937_64 rng(8);
    const Graph g = oracle::random_graph(60, 0.3, rng);
    const auto s = run_subsampling(g, make_config(20, 400, {catalog_motif("edge"), catalog_motif("twostar")}, 4));
    const auto d = diagnostics(s);
    CHECK(d.rho_hat == s.rho_hat);
    CHECK(d.b_rho_2e[0] == doctest::Approx(20 * std::pow(s.rho_hat, 2)));
    CHECK(d.b_rho_2e[1] == doctest::Approx(20 * std::pow(s.rho_hat, 4)));
    CHECK(d.condition_number >= 1.0);
    CHECK(std::isfinite(d.condition_number));
    // duplicated motif makes the covariance singular
    const auto twin = run_subsampling(g, make_config(20, 50, {catalog_motif("edge"), catalog_motif("edge")}, 4));
    CHECK(diagnostics(twin).condition_number > 1e8);
  }

  TEST_CASE("reference sample contracts") {
    ReferenceConfig cfg;
    cfg.b = 12;
    cfg.n_sub = 10;
    cfg.motifs = {catalog_motif("edge"), catalog_motif("triangle")};
    cfg.pool_size = 5;
    cfg.seed = 1;
    cfg.pool_seed = 2;
    for (double z : reference_sample(GraphonModel::builtin("constant"), cfg).z.data) CHECK(z == doctest::Approx(0.0));

    const auto model = GraphonModel::builtin("graphon1", 0.3);
    cfg.b = 30;
    const auto full = reference_sample(model, cfg);
    cfg.n_host = 60;
    const auto half = reference_sample(model, cfg);
    for (std::size_t i = 0; i < full.z.data.size(); ++i) CHECK(half.z.data[i] == doctest::Approx(std::sqrt(0.5) * full.z.data[i]));
  }

  TEST_CASE("reference sample is centered") {
    const double rho = 0.25 * std::pow(2000.0, -0.1);
    const auto model = GraphonModel::builtin("graphon1", rho);
    ReferenceConfig cfg;
    cfg.b = 159;
    cfg.n_sub = 2000;
    cfg.motifs = {catalog_motif("edge"), catalog_motif("twostar"), catalog_motif("triangle")};
    cfg.seed = 100;
    cfg.pool_seed = 200;
    cfg.pool_size = 2000;
    const auto ref = reference_sample(model, cfg);
    // The pool has the same size as the sample, hence the sqrt(2).
    for (std::size_t j = 0; j < 3; ++j) {
      const auto col = ref.z.column(j);
      const double m = mean(col);
      double var = 0;
      for (double x : col) var += (x - m) * (x - m);
      const double se = std::sqrt(var / (col.size() - 1.0) / col.size());
      CHECK(std::abs(m) < 3.0 * se * std::sqrt(2.0));
    }

    // Per-draw density turns rho-hat^-1 U_edge into the constant one.
    cfg.per_draw_density = true;
    const auto edge = reference_sample(model, cfg).z.column(0);
    for (double x : edge) CHECK(x == doctest::Approx(edge[0]));
  }

  TEST_CASE("empirical CDF") {
    const EmpiricalJointCDF one(from_rows({{1}, {2}, {3}}));
    const double q2[] = {2.0};
    CHECK(one(q2) == doctest::Approx(2.0 / 3.0));
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal;
    Matrix sample(50, 3);
    for (double& x : sample.data) x = normal(rng);
    const EmpiricalJointCDF cdf(sample);
    std::vector<double> hi(3, -1e9), lo(3, 1e9);
    for (std::size_t i = 0; i < 50; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        hi[j] = std::max(hi[j], sample.at(i, j));
        lo[j] = std::min(lo[j], sample.at(i, j));
      }
    CHECK(cdf(hi) == 1.0);
    for (double& x : lo) x -= 1e-9;
    CHECK(cdf(lo) == 0.0);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> q = {normal(rng), normal(rng), normal(rng)};
      const double base = cdf(q);
      CHECK(base >= 0.0);
      CHECK(base <= 1.0);
      for (std::size_t j = 0; j < 3; ++j) {
        auto r = q;
        r[j] += std::abs(normal(rng));
        CHECK(cdf(r) >= base);
      }
    }
    CHECK_THROWS_AS(EmpiricalJointCDF(Matrix(0, 2)), Error);
  }

  TEST_CASE("KS distance examples") {
    const EmpiricalJointCDF a(from_rows({{1}, {2}, {3}}));
    CHECK(ks_distance(a, a) == 0.0);
    CHECK(ks_distance(EmpiricalJointCDF(from_rows({{0}, {1}})), EmpiricalJointCDF(from_rows({{10}, {11}}))) == 1.0);
    CHECK(ks_distance(a, EmpiricalJointCDF(from_rows({{2}, {3}, {4}}))) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(ks_distance(a, EmpiricalJointCDF(from_rows({{1, 2}}))), Error);
  }

  TEST_CASE("KS distance matches brute force") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
      const std::size_t m = 1 + t % 3;
      const std::size_t ka = 1 + rng() % 40, kb = 1 + rng() % 40;
      Matrix a(ka, m), b(kb, m);
      // small integer values so ties are common
      for (double& x : a.data) x = static_cast<double>(rng() % 6);
      for (double& x : b.data) x = static_cast<double>(rng() % 6) + (t % 2 ? 0.5 : 0.0);
      const EmpiricalJointCDF ca(a), cb(b);
      const double d = ks_distance(ca, cb);
      CHECK(d == doctest::Approx(brute_ks(a, b)).epsilon(1e-15));
      CHECK(d == ks_distance(cb, ca));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
    }
  }
}
