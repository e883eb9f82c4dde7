#include <doctest.h>

#include <cmath>

#include "netmoments/counting.hpp"
#include "netmoments/error.hpp"
#include "netmoments/graphon.hpp"
#include "netmoments/schedule.hpp"

using namespace netmoments;

namespace {

// Integral of exp(-a (u - v)^2) over the unit square.
double gaussian_band_integral(double a) {
  return 2.0 * (std::sqrt(M_PI) / (2.0 * std::sqrt(a)) * std::erf(std::sqrt(a)) - (1.0 - std::exp(-a)) / (2.0 * a));
}

// Midpoint-rule triangle density: trace(W^3) / N^3 on an N x N grid.
double grid_triangle(const GraphonModel& model, int grid) {
  std::vector<double> w(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) w[i * grid + j] = model.w((i + 0.5) / grid, (j + 0.5) / grid);
  long double total = 0.0L;
  std::vector<double> row(grid);
  for (int i = 0; i < grid; ++i) {
    // row = (W^2)_{i,.}
    std::fill(row.begin(), row.end(), 0.0);
    for (int k = 0; k < grid; ++k) {
      const double wik = w[i * grid + k];
      for (int j = 0; j < grid; ++j) row[j] += wik * w[k * grid + j];
    }
    for (int j = 0; j < grid; ++j) total += row[j] * w[j * grid + i];
  }
  return static_cast<double>(total / (static_cast<long double>(grid) * grid * grid));
}

}  // namespace

TEST_SUITE("graphon-sim") {
  TEST_CASE("rate expressions") {
    CHECK(RateExpression::parse("0.25*n^-0.1")(2000.0) == doctest::Approx(0.25 * std::pow(2000.0, -0.1)));
    CHECK(RateExpression::parse("0.25 * n ^ (-0.5)")(400.0) == doctest::Approx(0.0125));
    CHECK(RateExpression::parse("2*n^0.5 + 1")(16.0) == doctest::Approx(9.0));
    CHECK(RateExpression::parse("(n-1)/2")(7.0) == doctest::Approx(3.0));
    CHECK(RateExpression::parse("-n^2")(3.0) == doctest::Approx(-9.0));
    CHECK(RateExpression::parse("2^3^2")(1.0) == doctest::Approx(512.0));
    CHECK(RateExpression::parse("1e-2*n")(100.0) == doctest::Approx(1.0));
    for (const char* bad : {"", "n +", "0.25*m", "(n", "n)", "2**n"}) {
      try {
        RateExpression::parse(bad);
        FAIL("expected a parse error for " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse);
      }
    }
  }

  TEST_CASE("graphon1 normalization against the closed form") {
    const auto model = GraphonModel::builtin("graphon1");
    const double exact = gaussian_band_integral(12.5);
    CHECK(std::abs(model.normalizer().value - exact) < 3.0 * model.normalizer().std_error + 1e-7);
    CHECK(model.normalizer().std_error < 1e-5);
  }

  TEST_CASE("builtin graphons") {
    const auto g1 = GraphonModel::builtin("graphon1");
    CHECK(g1.w(0.2, 0.7) == g1.w(0.7, 0.2));
    const auto g2 = GraphonModel::builtin("2");
    CHECK(g2.name() == "graphon2");
    CHECK(g2.raw(0.5, 0.5) == doctest::Approx(0.5 * std::cos(0.01) * std::pow(0.5, 2.0 / 3.0) + 0.4));
    for (double u = 0.05; u < 1.0; u += 0.1)
      for (double v = 0.05; v < 1.0; v += 0.1) {
        CHECK(g2.w(u, v) == doctest::Approx(g2.w(v, u)));
        CHECK(g1.with_rho(0.3).h(u, v) >= 0.0);
        CHECK(g1.with_rho(0.3).h(u, v) <= 1.0);
      }
    CHECK_THROWS_AS(GraphonModel::builtin("graphon3"), Error);
    // h clips to zero where rho w exceeds one
    const auto big = g1.with_rho(5.0);
    CHECK(big.h(0.5, 0.5) == 0.0);
    // Monte Carlo integral of the normalized graphon is one
    const auto check = integrate_unit_square([&](double u, double v) { return g2.w(u, v); }, 200000, 10, 99);
    CHECK(std::abs(check.value - 1.0) < 3.0 * check.std_error + 1e-6);
  }

  TEST_CASE("sampling contracts") {
    const auto constant = GraphonModel::builtin("constant");
    CHECK(sample_graph(constant.with_rho(0.0), 50, 1).edge_count() == 0);
    CHECK(sample_graph(constant, 40, 1) == Graph::complete(40));
    const auto model = GraphonModel::builtin("graphon1", 0.2);
    const Graph a = sample_graph(model, 300, 42, 1);
    const Graph b = sample_graph(model, 300, 42, 4);
    CHECK(a == b);
    CHECK(to_edge_list_string(a) == to_edge_list_string(b));
    CHECK_FALSE(a == sample_graph(model, 300, 43, 1));
  }

  TEST_CASE("edge density tracks rho") {
    const double rho = 0.25 * std::pow(2000.0, -0.1);
    const auto model = GraphonModel::builtin("graphon1", rho);
    std::vector<double> d;
    for (std::uint64_t s = 0; s < 50; ++s) d.push_back(edge_density(sample_graph(model, 2000, 1000 + s)));
    double mean = 0;
    for (double x : d) mean += x;
    mean /= 50.0;
    double var = 0;
    for (double x : d) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / 49.0 / 50.0);
    CHECK(std::abs(mean - rho) < 3.0 * se);
  }

  TEST_CASE("population moments") {
    const auto constant = GraphonModel::builtin("constant");
    for (const auto& m : motif_catalog()) CHECK(population_moment(constant, m.graph(), 1000, 1).value == 1.0);
    const auto model = GraphonModel::builtin("graphon1");
    const auto edge = population_moment(model, catalog_motif("edge").graph(), 2'000'000, 5);
    CHECK(edge.std_error > 0.0);
    CHECK(std::abs(edge.value - 1.0) < 4.0 * edge.std_error);
    const auto tri = population_moment(model, catalog_motif("triangle").graph(), 2'000'000, 6);
    const double grid = grid_triangle(model, 400);
    CHECK(std::abs(tri.value - grid) < 4.0 * tri.std_error + 1e-4 * grid);
    // threads do not change the estimate
    const auto t1 = population_moment(model, catalog_motif("twostar").graph(), 100000, 7, 1);
    const auto t4 = population_moment(model, catalog_motif("twostar").graph(), 100000, 7, 4);
    CHECK(t1.value == t4.value);
  }

  TEST_CASE("theoretical mean") {
    const auto constant = GraphonModel::builtin("constant");
    CHECK(theoretical_mean(constant, catalog_motif("edge"), 1000).value == doctest::Approx(1.0));
    CHECK(theoretical_mean(constant, catalog_motif("triangle"), 1000).value == doctest::Approx(1.0));
    const auto model = GraphonModel::builtin("graphon1");
    const auto two = theoretical_mean(model, catalog_motif("twostar"), 500000, 3);
    const auto p = population_moment(model, catalog_motif("twostar").graph(), 500000, 3);
    CHECK(two.value == doctest::Approx(3.0 * p.value));
  }

  TEST_CASE("limiting covariance") {
    const auto constant = GraphonModel::builtin("constant");
    CHECK(std::abs(limiting_covariance(constant, catalog_motif("edge"), catalog_motif("edge"), 1000).value) < 1e-9);
    CHECK(std::abs(limiting_covariance(constant, catalog_motif("triangle"), catalog_motif("triangle"), 1000).value) < 1e-9);
    const auto model = GraphonModel::builtin("graphon1");
    const auto a = limiting_covariance(model, catalog_motif("edge"), catalog_motif("edge"), 400000, 1);
    const auto b = limiting_covariance(model, catalog_motif("edge"), catalog_motif("edge"), 400000, 2);
    CHECK(a.value > 0.0);
    CHECK(std::abs(a.value - b.value) < 3.0 * std::hypot(a.std_error, b.std_error));
  }

  TEST_CASE("empirical moments approach the theoretical mean") {
    const auto base = GraphonModel::builtin("graphon1");
    const Motif& two = catalog_motif("twostar");
    const double target = theoretical_mean(base, two, 2'000'000, 11).value;
    int closer = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      double err[2];
      int k = 0;
      for (std::size_t n : {1000, 4000}) {
        const double rho = 0.25 * std::pow(static_cast<double>(n), -0.1);
        const Graph g = sample_graph(base.with_rho(rho), n, 500 + s);
        const double rho_hat = edge_density(g);
        err[k++] = std::abs(network_moment(g, two, CountMode::noninduced) / (rho_hat * rho_hat) - target);
      }
      closer += err[1] < err[0] ? 1 : 0;
    }
    CHECK(closer >= 8);
  }
}
