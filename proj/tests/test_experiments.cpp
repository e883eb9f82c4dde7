#include <doctest.h>

#include <cmath>

#include "netmoments/error.hpp"
#include "netmoments/experiments.hpp"
#include "netmoments/graphon.hpp"
#include "netmoments/subsample.hpp"

using namespace netmoments;

TEST_SUITE("experiments") {
  TEST_CASE("size rules") {
    CHECK(SizeRule::parse("n23")(1000) == 100);
    CHECK(SizeRule::parse("n23")(2000) == 159);
    CHECK(SizeRule::parse("n23")(500) == 63);
    CHECK(SizeRule::parse("2sqrt")(400) == 40);
    CHECK(SizeRule::parse("2sqrt")(500) == 45);
    CHECK(SizeRule::parse("n/10")(95) == 10);
    CHECK_THROWS_AS(SizeRule::parse("n^"), Error);
  }

  TEST_CASE("grid validation") {
    ExperimentGrid grid;
    grid.ns = {100, 50};
    grid.motif_sets = ExperimentGrid::default_motif_sets();
    CHECK_THROWS_AS(grid.validate(), Error);
    grid.ns = {100};
    grid.b_rule = SizeRule::parse("2");
    CHECK_THROWS_AS(grid.validate(), Error);
    grid.b_rule = SizeRule::parse("n23");
    CHECK_NOTHROW(grid.validate());
    CHECK(ExperimentGrid::default_motif_sets().size() == 6);
  }

  TEST_CASE("table is deterministic") {
    ExperimentGrid grid;
    grid.ns = {150, 300};
    grid.motif_sets = ExperimentGrid::default_motif_sets();
    grid.n_sub = 60;
    grid.reps = 3;
    grid.reference_size = 80;
    grid.seed = 12;
    const auto a = ks_error_experiment(grid, 1);
    const auto b = ks_error_experiment(grid, 3);
    REQUIRE(a.size() == 12);
    CHECK(experiment_csv(a, false) == experiment_csv(b, false));
    for (const auto& row : a) {
      CHECK(row.mean_ks >= 0.0);
      CHECK(row.mean_ks <= 1.0);
      CHECK(row.runtime_s >= 0.0);
      CHECK(row.replicate_ks.size() == 3);
    }
    CHECK(a[3].motif_set == "twostar+triangle");
    const std::string csv = experiment_csv(a);
    CHECK(csv.rfind("graphon,n,b,rho,motif_set,mean_ks,se_ks,runtime_s\n", 0) == 0);
  }

  TEST_CASE("same generator on both sides gives a small distance") {
    const auto model = GraphonModel::builtin("graphon1", 0.3);
    ReferenceConfig cfg;
    cfg.b = 40;
    cfg.n_sub = 2000;
    cfg.motifs = {catalog_motif("twostar")};
    cfg.pool_size = 200;
    cfg.pool_seed = 1;
    cfg.seed = 2;
    const auto a = reference_sample(model, cfg);
    cfg.seed = 3;
    const auto b = reference_sample(model, cfg);
    CHECK(ks_distance(EmpiricalJointCDF(a.z), EmpiricalJointCDF(b.z)) < 2.0 / std::sqrt(2000.0));
    CHECK(ks_distance(EmpiricalJointCDF(a.z), EmpiricalJointCDF(a.z)) == 0.0);
  }
}
