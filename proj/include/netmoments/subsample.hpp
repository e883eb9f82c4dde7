#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netmoments/counting.hpp"
#include "netmoments/graph.hpp"
#include "netmoments/graphon.hpp"
#include "netmoments/motif.hpp"

namespace netmoments {

/// Dense row-major matrix of doubles; one row per replicate.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::vector<double> column(std::size_t j) const;
  /// Sub-matrix with the given columns, in the given order.
  Matrix select_columns(std::span<const std::size_t> columns) const;

  bool operator==(const Matrix&) const = default;
};

struct SubsampleConfig {
  std::size_t b = 0;
  std::size_t n_sub = 0;
  std::vector<Motif> motifs;
  CountMode mode = CountMode::noninduced;
  std::uint64_t seed = 0;
};

/// Output of uniform node subsampling: replicate i holds the moments of the
/// subgraph induced by a uniform b-subset drawn from stream (seed, i).
struct MomentSample {
  Matrix y;
  double rho_hat = 0.0;
  std::vector<double> host_moments;
  std::size_t host_nodes = 0;
  SubsampleConfig config;
};

/// Uniform b-subset of [0, n) by partial Fisher-Yates on stream `seed`.
NodeSet draw_subset(std::size_t n, std::size_t b, std::uint64_t seed);

/// Throws when b > n, b < the largest motif, n_sub == 0 or the motif list is
/// empty. Rows do not depend on `threads`.
MomentSample run_subsampling(const Graph& g, const SubsampleConfig& config, unsigned threads = 0);

/// z_ij = sqrt(b) (rho^-e_j y_ij - rho^-e_j U_j(G)), rho = edge density of G.
/// Throws when the host graph has no edges.
Matrix rescale(const MomentSample& sample);

/// Heuristic checks on the sparsity and non-degeneracy conditions. They
/// carry no pass/fail claim.
struct SubsampleDiagnostics {
  double rho_hat = 0.0;
  /// b * rho_hat^(2 e_j) per motif.
  std::vector<double> b_rho_2e;
  /// Ratio of extreme eigenvalues of the sample covariance of y; infinite
  /// when the covariance is singular.
  double condition_number = 0.0;
};

SubsampleDiagnostics diagnostics(const MomentSample& sample);

struct ReferenceConfig {
  std::size_t b = 0;
  std::size_t n_sub = 0;
  std::vector<Motif> motifs;
  CountMode mode = CountMode::noninduced;
  std::uint64_t seed = 0;
  /// Size of the network the subsample stands in for; scales rows by
  /// sqrt(1 - b / n_host). Unset means no size correction.
  std::optional<std::size_t> n_host;
  std::size_t pool_size = 2000;
  std::uint64_t pool_seed = 0;
  /// Scale each draw by its own edge density instead of the model sparsity.
  /// The per-draw ratio adds edge-density noise the subsampling side does
  /// not carry, so the two distributions no longer share a limit.
  bool per_draw_density = false;
};

struct ReferenceSample {
  Matrix z;
  /// Centers rho^-e_j E[U_j(G_b)], estimated from the auxiliary pool.
  std::vector<double> centers;
  std::size_t pool_size = 0;
  std::uint64_t pool_seed = 0;
};

/// Moment vectors of n_sub independent b-node graphs from `model`:
/// sqrt(b c) (rhohat^-e_j U_j(G_b) - center_j), c = 1 - b / n_host.
ReferenceSample reference_sample(const GraphonModel& model, const ReferenceConfig& config, unsigned threads = 0);

/// Centers only; exposed so callers can reuse one pool across samples.
std::vector<double> reference_centers(const GraphonModel& model, std::size_t b, std::span<const Motif> motifs,
                                      CountMode mode, std::size_t pool_size, std::uint64_t pool_seed,
                                      unsigned threads = 0);

/// F(t) = fraction of rows with every coordinate <= t.
class EmpiricalJointCDF {
 public:
  explicit EmpiricalJointCDF(Matrix sample);

  double operator()(std::span<const double> query) const;
  std::size_t dimension() const noexcept { return sample_.cols; }
  std::size_t size() const noexcept { return sample_.rows; }
  const Matrix& sample() const noexcept { return sample_; }

  /// F evaluated at every row of `queries`.
  std::vector<double> evaluate(const Matrix& queries) const;

 private:
  Matrix sample_;
};

/// sup |F_a - F_b| over the pooled sample points of both CDFs (exact in one
/// dimension). Throws on a dimension mismatch.
double ks_distance(const EmpiricalJointCDF& a, const EmpiricalJointCDF& b);

}  // namespace netmoments
