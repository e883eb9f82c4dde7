#include "netmoments/compare.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "netmoments/error.hpp"
#include "netmoments/random.hpp"

namespace netmoments {
namespace {

int max_motif_nodes(const std::vector<Motif>& motifs) {
  int out = 0;
  for (const auto& m : motifs) out = std::max(out, m.nodes());
  return out;
}

std::vector<std::string> motif_names(const std::vector<Motif>& motifs) {
  std::vector<std::string> out;
  for (const auto& m : motifs) out.push_back(m.name());
  return out;
}

nlohmann::ordered_json summary_json(const ColumnSummary& s) {
  return {{"q05", s.q05}, {"q25", s.q25}, {"q50", s.q50}, {"q75", s.q75}, {"q95", s.q95}};
}

}  // namespace

double quantile(std::vector<double> values, double p) {
  require(!values.empty(), "quantile of an empty sample");
  require(p >= 0.0 && p <= 1.0, "quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double percentile_of(const std::vector<double>& column, double value) {
  require(!column.empty(), "percentile within an empty sample");
  const auto hits = std::count_if(column.begin(), column.end(), [&](double x) { return x <= value; });
  return static_cast<double>(hits) / static_cast<double>(column.size());
}

double default_bandwidth(const std::vector<double>& column) {
  require(!column.empty(), "bandwidth of an empty sample");
  const double k = static_cast<double>(column.size());
  double spread = (quantile(column, 0.75) - quantile(column, 0.25)) / 1.349;
  if (!(spread > 0.0) && column.size() > 1) {
    double mean = 0.0;
    for (double x : column) mean += x;
    mean /= k;
    double var = 0.0;
    for (double x : column) var += (x - mean) * (x - mean);
    spread = std::sqrt(var / (k - 1.0));
  }
  if (!(spread > 0.0)) return 1e-12;
  return 0.5 * spread * std::pow(k, -0.2);
}

ColumnSummary summarize(const std::vector<double>& column) {
  return {quantile(column, 0.05), quantile(column, 0.25), quantile(column, 0.5), quantile(column, 0.75),
          quantile(column, 0.95)};
}

ConditionalSlice conditional_slice(const Matrix& y, std::size_t cond_index, double target, double bandwidth) {
  require(bandwidth > 0.0, "bandwidth must be positive");
  require(cond_index < y.cols, "conditioning index out of range");
  ConditionalSlice slice;
  slice.cond_index = cond_index;
  slice.target = target;
  slice.bandwidth = bandwidth;
  for (std::size_t i = 0; i < y.rows; ++i)
    if (std::abs(y.at(i, cond_index) - target) <= bandwidth) slice.rows.push_back(i);
  slice.count = slice.rows.size();
  if (slice.count == 0) {
    fail(ErrorCode::empty_slice, "conditional slice is empty: no row within " + std::to_string(bandwidth) +
                                     " of " + std::to_string(target) + "; try a larger bandwidth");
  }
  for (std::size_t j = 0; j < y.cols; ++j) {
    std::vector<double> column;
    column.reserve(slice.count);
    for (std::size_t i : slice.rows) column.push_back(y.at(i, j));
    slice.summaries.push_back(summarize(column));
  }
  return slice;
}

std::uint64_t graph_fingerprint(const Graph& g) {
  std::uint64_t h = mix64(g.node_count());
  for (auto [u, v] : g.edges()) h = mix64(h ^ ((std::uint64_t{u} << 32) | v));
  return h;
}

ComparisonReport case1_compare(const Graph& g_large, const Graph& g_small, const Case1Options& options,
                               unsigned threads) {
  require(!options.motifs.empty(), "motif list is empty");
  require(g_large.node_count() > g_small.node_count(), "case 1 needs the large graph to have more nodes than the small one");
  require(g_small.node_count() >= static_cast<std::size_t>(max_motif_nodes(options.motifs)),
          "the small graph has fewer nodes than the largest motif");

  SubsampleConfig config;
  config.b = g_small.node_count();
  config.n_sub = options.n_sub;
  config.motifs = options.motifs;
  config.mode = options.mode;
  config.seed = options.seed;
  MomentSample sample = run_subsampling(g_large, config, threads);
  const std::vector<double> observed = network_moments(g_small, options.motifs, options.mode);

  ComparisonReport report;
  report.mode = "case1";
  report.motifs = motif_names(options.motifs);
  report.count_mode = options.mode;
  report.b = config.b;
  report.n_sub = config.n_sub;
  report.seed = options.seed;
  report.graph_nodes = {g_large.node_count(), g_small.node_count()};
  report.side_seeds = {options.seed};

  const Matrix& y = sample.y;
  for (std::size_t j = 0; j < y.cols; ++j) {
    const auto column = y.column(j);
    MarginalResult m;
    m.motif = report.motifs[j];
    m.observed = observed[j];
    m.percentile = percentile_of(column, observed[j]);
    m.summary = summarize(column);
    m.inside_central_90 = m.summary.q05 <= observed[j] && observed[j] <= m.summary.q95;
    report.marginals.push_back(m);
  }
  std::size_t below = 0, above = 0;
  for (std::size_t i = 0; i < y.rows; ++i) {
    bool le = true, ge = true;
    for (std::size_t j = 0; j < y.cols; ++j) {
      le = le && y.at(i, j) <= observed[j];
      ge = ge && y.at(i, j) >= observed[j];
    }
    below += le ? 1 : 0;
    above += ge ? 1 : 0;
  }
  report.fraction_dominated = static_cast<double>(below) / static_cast<double>(y.rows);
  report.fraction_dominating = static_cast<double>(above) / static_cast<double>(y.rows);

  const double bandwidth = options.bandwidth ? *options.bandwidth : default_bandwidth(y.column(0));
  try {
    ConditionalSlice slice = conditional_slice(y, 0, observed[0], bandwidth);
    for (std::size_t j = 1; j < y.cols; ++j) {
      std::vector<double> column;
      for (std::size_t i : slice.rows) column.push_back(y.at(i, j));
      report.marginals[j].slice_percentile = percentile_of(column, observed[j]);
    }
    report.slice = std::move(slice);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::empty_slice) throw;
    report.slice_note = e.what();
  }
  report.clouds.push_back(std::move(sample.y));
  return report;
}

ComparisonReport case2_compare(const Graph& g, const Graph& gp, const Case2Options& options, unsigned threads) {
  require(!options.motifs.empty(), "motif list is empty");
  require(options.b <= std::min(g.node_count(), gp.node_count()), "subsample size exceeds one of the graphs");
  require(options.b >= static_cast<std::size_t>(max_motif_nodes(options.motifs)),
          "subsample size is smaller than the largest motif");

  // Stream 0 goes to the graph with the smaller fingerprint.
  const std::uint64_t fa = graph_fingerprint(g), fb = graph_fingerprint(gp);
  const bool a_first = fa <= fb;
  const std::uint64_t seed_a = derive_seed(options.seed, a_first ? 0 : 1);
  const std::uint64_t seed_b = derive_seed(options.seed, a_first ? 1 : 0);

  auto run = [&](const Graph& host, std::uint64_t seed) {
    SubsampleConfig config;
    config.b = options.b;
    config.n_sub = options.n_sub;
    config.motifs = options.motifs;
    config.mode = options.mode;
    config.seed = seed;
    return run_subsampling(host, config, threads).y;
  };
  Matrix ya = run(g, seed_a);
  Matrix yb = run(gp, seed_b);

  ComparisonReport report;
  report.mode = "case2";
  report.motifs = motif_names(options.motifs);
  report.count_mode = options.mode;
  report.b = options.b;
  report.n_sub = options.n_sub;
  report.seed = options.seed;
  report.graph_nodes = {g.node_count(), gp.node_count()};
  report.side_seeds = {seed_a, seed_b};
  for (std::size_t j = 0; j < ya.cols; ++j) {
    const std::size_t col[] = {j};
    report.marginal_ks.push_back(
        ks_distance(EmpiricalJointCDF(ya.select_columns(col)), EmpiricalJointCDF(yb.select_columns(col))));
  }
  report.joint_ks = ks_distance(EmpiricalJointCDF(ya), EmpiricalJointCDF(yb));
  if (options.baseline) {
    report.baseline_joint_ks.push_back(ks_distance(EmpiricalJointCDF(ya), EmpiricalJointCDF(run(g, derive_seed(seed_a, 2)))));
    report.baseline_joint_ks.push_back(ks_distance(EmpiricalJointCDF(yb), EmpiricalJointCDF(run(gp, derive_seed(seed_b, 2)))));
  }
  report.clouds.push_back(std::move(ya));
  report.clouds.push_back(std::move(yb));
  return report;
}

std::string report_to_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = report.mode;
  j["motifs"] = report.motifs;
  j["count_mode"] = std::string(to_string(report.count_mode));
  j["b"] = report.b;
  j["n_sub"] = report.n_sub;
  j["seed"] = report.seed;
  j["graph_nodes"] = report.graph_nodes;
  j["side_seeds"] = report.side_seeds;
  if (report.mode == "case1") {
    auto marginals = nlohmann::ordered_json::array();
    for (const auto& m : report.marginals) {
      nlohmann::ordered_json e;
      e["motif"] = m.motif;
      e["observed"] = m.observed;
      e["percentile"] = m.percentile;
      e["summary"] = summary_json(m.summary);
      e["inside_central_90"] = m.inside_central_90;
      if (m.slice_percentile) e["slice_percentile"] = *m.slice_percentile;
      marginals.push_back(e);
    }
    j["marginals"] = marginals;
    j["fraction_dominated"] = report.fraction_dominated;
    j["fraction_dominating"] = report.fraction_dominating;
    if (report.slice) {
      const auto& s = *report.slice;
      nlohmann::ordered_json slice;
      slice["cond_motif"] = report.motifs[s.cond_index];
      slice["target"] = s.target;
      slice["bandwidth"] = s.bandwidth;
      slice["count"] = s.count;
      auto summaries = nlohmann::ordered_json::array();
      for (const auto& c : s.summaries) summaries.push_back(summary_json(c));
      slice["summaries"] = summaries;
      j["conditional_slice"] = slice;
    } else {
      j["conditional_slice"] = nullptr;
      j["conditional_slice_note"] = report.slice_note;
    }
  } else {
    j["marginal_ks"] = report.marginal_ks;
    j["joint_ks"] = report.joint_ks;
    if (!report.baseline_joint_ks.empty()) j["baseline_joint_ks"] = report.baseline_joint_ks;
  }
  return j.dump(2);
}

}  // namespace netmoments
