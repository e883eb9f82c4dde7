#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netmoments/subsample.hpp"

namespace netmoments {

inline constexpr int kReportSchemaVersion = 1;

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double p);

/// Fraction of `column` that is <= value.
double percentile_of(const std::vector<double>& column, double value);

/// 0.5 * (IQR / 1.349) * k^(-1/5); falls back to the standard deviation when
/// the IQR is zero and to 1e-12 when the column is constant.
double default_bandwidth(const std::vector<double>& column);

struct ColumnSummary {
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

ColumnSummary summarize(const std::vector<double>& column);

struct ConditionalSlice {
  std::size_t cond_index = 0;
  double target = 0.0;
  double bandwidth = 0.0;
  /// Selected row indices, in sample order.
  std::vector<std::size_t> rows;
  std::size_t count = 0;
  /// Summary of every column over the selected rows.
  std::vector<ColumnSummary> summaries;
};

/// Rows with |y[row, cond_index] - target| <= bandwidth. Throws
/// ErrorCode::empty_slice when nothing is selected.
ConditionalSlice conditional_slice(const Matrix& y, std::size_t cond_index, double target, double bandwidth);

struct Case1Options {
  std::vector<Motif> motifs;
  std::size_t n_sub = 0;
  CountMode mode = CountMode::noninduced;
  std::uint64_t seed = 0;
  /// Window for the slice on the first motif; default_bandwidth when unset.
  std::optional<double> bandwidth;
};

struct Case2Options {
  std::size_t b = 0;
  std::vector<Motif> motifs;
  std::size_t n_sub = 0;
  CountMode mode = CountMode::noninduced;
  std::uint64_t seed = 0;
  /// Also compare each graph against a second, independent run on itself.
  bool baseline = false;
};

struct MarginalResult {
  std::string motif;
  double observed = 0.0;
  double percentile = 0.0;
  ColumnSummary summary;
  bool inside_central_90 = false;
  /// Fraction of slice rows <= observed; absent for the conditioning motif.
  std::optional<double> slice_percentile;
};

struct ComparisonReport {
  std::string mode;
  std::vector<std::string> motifs;
  CountMode count_mode = CountMode::noninduced;
  std::size_t b = 0;
  std::size_t n_sub = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> graph_nodes;
  std::vector<std::uint64_t> side_seeds;

  // case1
  std::vector<MarginalResult> marginals;
  double fraction_dominated = 0.0;   // rows coordinatewise <= observed
  double fraction_dominating = 0.0;  // rows coordinatewise >= observed
  std::optional<ConditionalSlice> slice;
  std::string slice_note;

  // case2
  std::vector<double> marginal_ks;
  double joint_ks = 0.0;
  std::vector<double> baseline_joint_ks;

  /// Raw moment clouds, one per side.
  std::vector<Matrix> clouds;
};

/// Subsamples g_large with b = |g_small| and locates U(g_small) in the cloud.
ComparisonReport case1_compare(const Graph& g_large, const Graph& g_small, const Case1Options& options,
                               unsigned threads = 0);

/// Subsamples both graphs with a common b and compares the raw clouds. Each
/// side's stream is fixed by graph content, so swapping the inputs leaves the
/// distances unchanged.
ComparisonReport case2_compare(const Graph& g, const Graph& gp, const Case2Options& options, unsigned threads = 0);

/// Versioned JSON document; clouds are not included.
std::string report_to_json(const ComparisonReport& report);

/// Content hash of a graph (node count and sorted edges).
std::uint64_t graph_fingerprint(const Graph& g);

}  // namespace netmoments
