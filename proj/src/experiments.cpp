#include "netmoments/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "netmoments/error.hpp"
#include "netmoments/graphon.hpp"
#include "netmoments/parallel.hpp"
#include "netmoments/random.hpp"
#include "netmoments/subsample.hpp"

namespace netmoments {

SizeRule SizeRule::parse(std::string_view text) {
  SizeRule rule;
  rule.text_ = std::string(text);
  if (text == "n23") {
    rule.expression_ = RateExpression::parse("n^(2/3)");
  } else if (text == "2sqrt") {
    rule.expression_ = RateExpression::parse("2*n^0.5");
  } else {
    rule.expression_ = RateExpression::parse(text);
  }
  return rule;
}

std::size_t SizeRule::operator()(std::size_t n) const {
  const double value = expression_(static_cast<double>(n));
  require(std::isfinite(value) && value >= 0.0, "subsample size rule '" + text_ + "' gives an invalid value");
  // Guard against n^(2/3) landing a hair above an exact integer.
  return static_cast<std::size_t>(std::ceil(value - 1e-9));
}

std::vector<std::vector<Motif>> ExperimentGrid::default_motif_sets() {
  const Motif& two = catalog_motif("twostar");
  const Motif& tri = catalog_motif("triangle");
  const Motif& three = catalog_motif("threestar");
  return {{two}, {tri}, {three}, {two, tri}, {two, three}, {tri, three}};
}

void ExperimentGrid::validate() const {
  require(!ns.empty(), "experiment needs at least one n");
  for (std::size_t i = 1; i < ns.size(); ++i) require(ns[i] > ns[i - 1], "n values must be strictly increasing");
  require(!motif_sets.empty(), "experiment needs at least one motif set");
  for (const auto& set : motif_sets) require(!set.empty(), "motif sets must be non-empty");
  require(n_sub >= 1 && reps >= 1 && reference_size >= 1, "n_sub, reps and reference size must be positive");
  for (std::size_t n : ns) {
    const std::size_t b = b_rule(n);
    for (const auto& set : motif_sets)
      for (const auto& m : set)
        require(b >= static_cast<std::size_t>(m.nodes()),
                "subsample size b = " + std::to_string(b) + " at n = " + std::to_string(n) + " is smaller than motif " +
                    m.name());
    require(b <= n, "subsample size b = " + std::to_string(b) + " exceeds n = " + std::to_string(n));
    const double rho = this->rho(static_cast<double>(n));
    require(std::isfinite(rho) && rho > 0.0, "sparsity schedule must be positive at n = " + std::to_string(n));
  }
}

std::string motif_set_label(const std::vector<Motif>& set) {
  std::string out;
  for (const auto& m : set) {
    if (!out.empty()) out += '+';
    out += m.name();
  }
  return out;
}

std::vector<ExperimentRow> ks_error_experiment(const ExperimentGrid& grid, unsigned threads) {
  grid.validate();
  std::vector<Motif> all;
  for (const auto& set : grid.motif_sets)
    for (const auto& m : set)
      if (std::none_of(all.begin(), all.end(), [&](const Motif& x) { return x.name() == m.name(); })) all.push_back(m);
  std::vector<std::vector<std::size_t>> columns;
  for (const auto& set : grid.motif_sets) {
    std::vector<std::size_t> idx;
    for (const auto& m : set)
      idx.push_back(static_cast<std::size_t>(
          std::find_if(all.begin(), all.end(), [&](const Motif& x) { return x.name() == m.name(); }) - all.begin()));
    columns.push_back(std::move(idx));
  }

  std::vector<ExperimentRow> rows;
  for (std::size_t n : grid.ns) {
    const auto start = std::chrono::steady_clock::now();
    const double rho = grid.rho(static_cast<double>(n));
    const std::size_t b = grid.b_rule(n);
    const GraphonModel model = GraphonModel::builtin(grid.graphon, rho);
    const std::uint64_t base = derive_seed(grid.seed, n);

    ReferenceConfig ref;
    ref.b = b;
    ref.n_sub = grid.reference_size;
    ref.motifs = all;
    ref.mode = grid.mode;
    ref.seed = derive_seed(base, 2);
    ref.n_host = n;
    ref.pool_size = grid.reference_size;
    ref.pool_seed = derive_seed(base, 3);
    const Matrix reference = reference_sample(model, ref, threads).z;
    std::vector<EmpiricalJointCDF> reference_cdfs;
    for (const auto& idx : columns) reference_cdfs.emplace_back(reference.select_columns(idx));

    std::vector<std::vector<double>> ks(grid.motif_sets.size(), std::vector<double>(grid.reps));
    parallel_for(grid.reps, threads, [&](std::size_t rep) {
      const Graph host = sample_graph(model, n, derive_seed(base, 0, rep), 1);
      SubsampleConfig config;
      config.b = b;
      config.n_sub = grid.n_sub;
      config.motifs = all;
      config.mode = grid.mode;
      config.seed = derive_seed(base, 1, rep);
      const Matrix z = rescale(run_subsampling(host, config, 1));
      for (std::size_t s = 0; s < columns.size(); ++s)
        ks[s][rep] = ks_distance(EmpiricalJointCDF(z.select_columns(columns[s])), reference_cdfs[s]);
    });

    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (std::size_t s = 0; s < grid.motif_sets.size(); ++s) {
      ExperimentRow row;
      row.graphon = model.name();
      row.n = n;
      row.b = b;
      row.rho = rho;
      row.motif_set = motif_set_label(grid.motif_sets[s]);
      row.replicate_ks = ks[s];
      double mean = 0.0;
      for (double x : ks[s]) mean += x;
      mean /= static_cast<double>(grid.reps);
      double var = 0.0;
      for (double x : ks[s]) var += (x - mean) * (x - mean);
      row.mean_ks = mean;
      row.se_ks = grid.reps > 1 ? std::sqrt(var / static_cast<double>(grid.reps - 1) / static_cast<double>(grid.reps)) : 0.0;
      row.runtime_s = runtime;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool include_runtime) {
  std::ostringstream out;
  out << "graphon,n,b,rho,motif_set,mean_ks,se_ks" << (include_runtime ? ",runtime_s" : "") << '\n';
  char buffer[64];
  auto num = [&](double x) {
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return std::string(buffer);
  };
  for (const auto& r : rows) {
    out << r.graphon << ',' << r.n << ',' << r.b << ',' << num(r.rho) << ',' << r.motif_set << ',' << num(r.mean_ks)
        << ',' << num(r.se_ks);
    if (include_runtime) {
      std::snprintf(buffer, sizeof buffer, "%.3f", r.runtime_s);
      out << ',' << buffer;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace netmoments
