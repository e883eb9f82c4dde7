#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netmoments/counting.hpp"
#include "netmoments/motif.hpp"
#include "netmoments/schedule.hpp"

namespace netmoments {

/// Subsample size as a function of n. "n23" is ceil(n^(2/3)), "2sqrt" is
/// ceil(2 n^(1/2)); anything else is parsed as an expression in n and
/// rounded up.
class SizeRule {
 public:
  static SizeRule parse(std::string_view text);
  std::size_t operator()(std::size_t n) const;
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
  RateExpression expression_ = RateExpression::parse("n");
};

struct ExperimentGrid {
  std::string graphon = "graphon1";
  std::vector<std::size_t> ns;
  SizeRule b_rule = SizeRule::parse("n23");
  RateExpression rho = RateExpression::parse("0.25*n^-0.1");
  /// Each set is compared through its joint CDF; singletons are marginals.
  std::vector<std::vector<Motif>> motif_sets;
  CountMode mode = CountMode::noninduced;
  std::size_t n_sub = 500;
  std::size_t reps = 10;
  /// Draws in the reference sample and in the centering pool.
  std::size_t reference_size = 2000;
  std::uint64_t seed = 0;

  /// Marginals twostar, triangle, threestar and their three pairs.
  static std::vector<std::vector<Motif>> default_motif_sets();
  void validate() const;
};

struct ExperimentRow {
  std::string graphon;
  std::size_t n = 0;
  std::size_t b = 0;
  double rho = 0.0;
  std::string motif_set;
  double mean_ks = 0.0;
  double se_ks = 0.0;
  double runtime_s = 0.0;
  /// KS distance of each replicate, in replicate order.
  std::vector<double> replicate_ks;
};

/// Per n: draws `reps` host graphs, subsamples each, and compares the
/// rescaled subsampling CDF with the reference CDF of every motif set.
std::vector<ExperimentRow> ks_error_experiment(const ExperimentGrid& grid, unsigned threads = 0);

/// "twostar+triangle" style label.
std::string motif_set_label(const std::vector<Motif>& set);

/// Columns graphon,n,b,rho,motif_set,mean_ks,se_ks,runtime_s.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool include_runtime = true);

}  // namespace netmoments
