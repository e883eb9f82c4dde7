#include "netmoments/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "netmoments/error.hpp"
#include "netmoments/parallel.hpp"
#include "netmoments/random.hpp"

namespace netmoments {

std::vector<double> Matrix::column(std::size_t j) const {
  require(j < cols, "column index out of range");
  std::vector<double> out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
  Matrix out(rows, columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) require(columns[k] < cols, "column index out of range");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < columns.size(); ++k) out.at(i, k) = at(i, columns[k]);
  return out;
}

namespace {

constexpr std::size_t kReplicateBlock = 32;

// Partial Fisher-Yates on a scratch permutation that is restored afterwards,
// so each draw depends only on its own stream.
void draw_into(std::vector<Node>& perm, std::vector<std::size_t>& swaps, std::size_t b, std::uint64_t seed,
               std::vector<Node>& out) {
  const std::size_t n = perm.size();
  Engine rng(seed);
  swaps.clear();
  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t j = k + uniform_below(rng, n - k);
    std::swap(perm[k], perm[j]);
    swaps.push_back(j);
  }
  out.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(b));
  for (std::size_t k = b; k-- > 0;) std::swap(perm[k], perm[swaps[k]]);
}

int max_motif_nodes(std::span<const Motif> motifs) {
  int out = 0;
  for (const auto& m : motifs) out = std::max(out, m.nodes());
  return out;
}

double scaled_moment(double moment, double rho, int edges) {
  if (moment == 0.0) return 0.0;
  return moment / std::pow(rho, edges);
}

}  // namespace

NodeSet draw_subset(std::size_t n, std::size_t b, std::uint64_t seed) {
  require(b <= n, "subset size exceeds population");
  std::vector<Node> perm(n);
  std::iota(perm.begin(), perm.end(), Node{0});
  std::vector<std::size_t> swaps;
  std::vector<Node> out;
  draw_into(perm, swaps, b, seed, out);
  return NodeSet::from_unsorted(std::move(out));
}

MomentSample run_subsampling(const Graph& g, const SubsampleConfig& config, unsigned threads) {
  const std::size_t n = g.node_count();
  require(!config.motifs.empty(), "motif list is empty");
  require(config.n_sub >= 1, "replicate count must be positive");
  require(config.b <= n, "subsample size b = " + std::to_string(config.b) + " exceeds n = " + std::to_string(n));
  require(config.b >= static_cast<std::size_t>(max_motif_nodes(config.motifs)),
          "subsample size b is smaller than the largest motif");

  MomentSample out;
  out.config = config;
  out.host_nodes = n;
  out.rho_hat = n >= 2 ? edge_density(g) : 0.0;
  out.host_moments = network_moments(g, config.motifs, config.mode);
  out.y = Matrix(config.n_sub, config.motifs.size());

  const std::size_t blocks = (config.n_sub + kReplicateBlock - 1) / kReplicateBlock;
  parallel_for(blocks, threads, [&](std::size_t block) {
    std::vector<Node> perm(n);
    std::iota(perm.begin(), perm.end(), Node{0});
    std::vector<std::size_t> swaps;
    std::vector<Node> chosen;
    const std::size_t end = std::min(config.n_sub, (block + 1) * kReplicateBlock);
    for (std::size_t i = block * kReplicateBlock; i < end; ++i) {
      draw_into(perm, swaps, config.b, derive_seed(config.seed, i), chosen);
      const Graph sub = induced_subgraph(g, NodeSet::from_unsorted(chosen));
      MotifCounter counter(sub);
      for (std::size_t j = 0; j < config.motifs.size(); ++j) out.y.at(i, j) = counter.moment(config.motifs[j], config.mode);
    }
  });
  return out;
}

Matrix rescale(const MomentSample& sample) {
  if (!(sample.rho_hat > 0.0)) {
    fail(ErrorCode::degenerate, "cannot rescale: the host graph has no edges (edge density 0)");
  }
  const auto& motifs = sample.config.motifs;
  const double root_b = std::sqrt(static_cast<double>(sample.config.b));
  Matrix z(sample.y.rows, sample.y.cols);
  for (std::size_t j = 0; j < z.cols; ++j) {
    const double scale = std::pow(sample.rho_hat, -motifs[j].edges());
    const double center = scale * sample.host_moments[j];
    for (std::size_t i = 0; i < z.rows; ++i) z.at(i, j) = root_b * (scale * sample.y.at(i, j) - center);
  }
  return z;
}

SubsampleDiagnostics diagnostics(const MomentSample& sample) {
  SubsampleDiagnostics out;
  out.rho_hat = sample.rho_hat;
  const auto b = static_cast<double>(sample.config.b);
  for (const auto& m : sample.config.motifs) out.b_rho_2e.push_back(b * std::pow(sample.rho_hat, 2 * m.edges()));
  const Matrix& y = sample.y;
  if (y.rows < 2) {
    out.condition_number = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::MatrixXd data(y.rows, y.cols);
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t j = 0; j < y.cols; ++j) data(i, j) = y.at(i, j);
  const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  const Eigen::MatrixXd cov = centered.adjoint() * centered / static_cast<double>(y.rows - 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff(), hi = solver.eigenvalues().maxCoeff();
  out.condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<double> reference_centers(const GraphonModel& model, std::size_t b, std::span<const Motif> motifs,
                                      CountMode mode, std::size_t pool_size, std::uint64_t pool_seed,
                                      unsigned threads) {
  require(pool_size >= 1, "reference pool must be non-empty");
  require(b >= static_cast<std::size_t>(max_motif_nodes(motifs)), "graph size is smaller than the largest motif");
  Matrix pool(pool_size, motifs.size());
  parallel_for(pool_size, threads, [&](std::size_t k) {
    const Graph draw = sample_graph(model, b, derive_seed(pool_seed, k));
    MotifCounter counter(draw);
    for (std::size_t j = 0; j < motifs.size(); ++j) pool.at(k, j) = counter.moment(motifs[j], mode);
  });
  std::vector<double> centers(motifs.size());
  for (std::size_t j = 0; j < motifs.size(); ++j) {
    long double sum = 0.0L;
    for (std::size_t k = 0; k < pool_size; ++k) sum += pool.at(k, j);
    const double mean = static_cast<double>(sum / static_cast<long double>(pool_size));
    centers[j] = scaled_moment(mean, model.rho(), motifs[j].edges());
  }
  return centers;
}

ReferenceSample reference_sample(const GraphonModel& model, const ReferenceConfig& config, unsigned threads) {
  require(!config.motifs.empty(), "motif list is empty");
  require(config.n_sub >= 1, "replicate count must be positive");
  require(model.rho() > 0.0, "reference distribution needs a positive sparsity");
  double c = 1.0;
  if (config.n_host) {
    require(*config.n_host >= config.b, "host size must be at least b");
    c = 1.0 - static_cast<double>(config.b) / static_cast<double>(*config.n_host);
  }
  ReferenceSample out;
  out.pool_size = config.pool_size;
  out.pool_seed = config.pool_seed;
  out.centers = reference_centers(model, config.b, config.motifs, config.mode, config.pool_size, config.pool_seed, threads);
  out.z = Matrix(config.n_sub, config.motifs.size());
  const double factor = std::sqrt(static_cast<double>(config.b) * c);
  parallel_for(config.n_sub, threads, [&](std::size_t i) {
    const Graph draw = sample_graph(model, config.b, derive_seed(config.seed, i));
    const double rho = config.per_draw_density ? (config.b >= 2 ? edge_density(draw) : 0.0) : model.rho();
    MotifCounter counter(draw);
    for (std::size_t j = 0; j < config.motifs.size(); ++j) {
      const double u = counter.moment(config.motifs[j], config.mode);
      const double scaled = rho > 0.0 ? scaled_moment(u, rho, config.motifs[j].edges()) : 0.0;
      out.z.at(i, j) = factor * (scaled - out.centers[j]);
    }
  });
  return out;
}

EmpiricalJointCDF::EmpiricalJointCDF(Matrix sample) : sample_(std::move(sample)) {
  require(sample_.rows >= 1, "empirical CDF needs at least one row");
  require(sample_.cols >= 1, "empirical CDF needs at least one column");
}

double EmpiricalJointCDF::operator()(std::span<const double> query) const {
  require(query.size() == sample_.cols, "query dimension mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < sample_.rows; ++i) {
    bool below = true;
    for (std::size_t j = 0; j < sample_.cols && below; ++j) below = sample_.at(i, j) <= query[j];
    hits += below ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(sample_.rows);
}

std::vector<double> EmpiricalJointCDF::evaluate(const Matrix& queries) const {
  require(queries.cols == sample_.cols, "query dimension mismatch");
  std::vector<double> out(queries.rows);
  const auto k = static_cast<double>(sample_.rows);

  if (sample_.cols == 1) {
    std::vector<double> sorted = sample_.column(0);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t q = 0; q < queries.rows; ++q) {
      const auto hits = std::upper_bound(sorted.begin(), sorted.end(), queries.at(q, 0)) - sorted.begin();
      out[q] = static_cast<double>(hits) / k;
    }
    return out;
  }

  if (sample_.cols == 2) {
    // Offline dominance counting: sweep in the first coordinate and keep a
    // Fenwick tree over ranks of the second.
    std::vector<double> ys;
    ys.reserve(sample_.rows);
    for (std::size_t i = 0; i < sample_.rows; ++i) ys.push_back(sample_.at(i, 1));
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<std::size_t> tree(ys.size() + 1, 0);
    auto add = [&](std::size_t pos) {
      for (++pos; pos < tree.size(); pos += pos & (~pos + 1)) ++tree[pos];
    };
    auto prefix = [&](std::size_t count) {
      std::size_t total = 0;
      for (; count > 0; count -= count & (~count + 1)) total += tree[count];
      return total;
    };
    std::vector<std::size_t> rows(sample_.rows), order(queries.rows);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) { return sample_.at(a, 0) < sample_.at(b, 0); });
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return queries.at(a, 0) < queries.at(b, 0); });
    std::size_t inserted = 0;
    for (std::size_t q : order) {
      const double qx = queries.at(q, 0);
      while (inserted < rows.size() && sample_.at(rows[inserted], 0) <= qx) {
        const double y = sample_.at(rows[inserted], 1);
        add(static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()));
        ++inserted;
      }
      const auto count = static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), queries.at(q, 1)) - ys.begin());
      out[q] = static_cast<double>(prefix(count)) / k;
    }
    return out;
  }

  for (std::size_t q = 0; q < queries.rows; ++q) out[q] = (*this)(queries.row(q));
  return out;
}

double ks_distance(const EmpiricalJointCDF& a, const EmpiricalJointCDF& b) {
  require(a.dimension() == b.dimension(), "KS distance needs CDFs of equal dimension");
  Matrix pooled(a.size() + b.size(), a.dimension());
  std::copy(a.sample().data.begin(), a.sample().data.end(), pooled.data.begin());
  std::copy(b.sample().data.begin(), b.sample().data.end(),
            pooled.data.begin() + static_cast<std::ptrdiff_t>(a.sample().data.size()));
  const auto fa = a.evaluate(pooled);
  const auto fb = b.evaluate(pooled);
  double best = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) best = std::max(best, std::abs(fa[i] - fb[i]));
  return best;
}

}  // namespace netmoments
