#include "netmoments/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "netmoments/error.hpp"
#include "netmoments/motif_algebra.hpp"
#include "netmoments/parallel.hpp"
#include "netmoments/random.hpp"

namespace netmoments {
namespace {

constexpr std::size_t kNormalizationPoints = 1'000'000;
constexpr int kNormalizationShifts = 10;
constexpr std::uint64_t kNormalizationSeed = 20240611;
constexpr std::size_t kMonteCarloChunks = 64;

double graphon1(double u, double v) { return std::exp(-25.0 * (u - v) * (u - v) / 2.0); }

double graphon2(double u, double v) {
  const double du = u - 0.5, dv = v - 0.5;
  return 0.5 * std::cos(0.1 * (du * du + dv * dv) + 0.01) * std::pow(std::max(u, v), 2.0 / 3.0) + 0.4;
}

double constant(double, double) { return 1.0; }

Estimate builtin_normalizer(const std::string& name, const GraphonModel::Kernel& kernel) {
  static std::mutex mutex;
  static std::map<std::string, Estimate> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const Estimate value = integrate_unit_square(kernel, kNormalizationPoints, kNormalizationShifts, kNormalizationSeed);
  cache.emplace(name, value);
  return value;
}

std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

}  // namespace

Estimate integrate_unit_square(const std::function<double(double, double)>& kernel, std::size_t points_per_shift,
                               int shifts, std::uint64_t seed) {
  require(points_per_shift > 0 && shifts >= 2, "quadrature needs points and at least two shifts");
  // R2 sequence: alpha = (1/g, 1/g^2) with g the plastic number.
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  Engine rng(seed);
  std::vector<double> means;
  for (int s = 0; s < shifts; ++s) {
    const double s1 = uniform_unit(rng), s2 = uniform_unit(rng);
    long double sum = 0.0L;
    for (std::size_t k = 0; k < points_per_shift; ++k) {
      const double x = std::fmod(s1 + a1 * static_cast<double>(k + 1), 1.0);
      const double y = std::fmod(s2 + a2 * static_cast<double>(k + 1), 1.0);
      sum += kernel(x, y);
    }
    means.push_back(static_cast<double>(sum / static_cast<long double>(points_per_shift)));
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(shifts);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= static_cast<double>(shifts - 1);
  return {mean, std::sqrt(var / static_cast<double>(shifts))};
}

GraphonModel::GraphonModel(std::string name, Kernel raw, double rho)
    : GraphonModel(name, raw,
                   integrate_unit_square(raw, kNormalizationPoints, kNormalizationShifts, kNormalizationSeed), rho) {}

GraphonModel::GraphonModel(std::string name, Kernel raw, Estimate normalizer, double rho)
    : name_(std::move(name)), raw_(std::move(raw)), normalizer_(normalizer), rho_(rho) {
  require(normalizer_.value > 0.0, "graphon must have a positive integral");
  require(rho_ >= 0.0, "sparsity must be nonnegative");
}

GraphonModel GraphonModel::builtin(std::string_view name, double rho) {
  if (name == "graphon1" || name == "1") return GraphonModel("graphon1", graphon1, builtin_normalizer("graphon1", graphon1), rho);
  if (name == "graphon2" || name == "2") return GraphonModel("graphon2", graphon2, builtin_normalizer("graphon2", graphon2), rho);
  if (name == "constant") return GraphonModel("constant", constant, Estimate{1.0, 0.0}, rho);
  fail(ErrorCode::invalid_argument, "unknown graphon '" + std::string(name) + "'");
}

GraphonModel GraphonModel::with_rho(double rho) const {
  GraphonModel copy = *this;
  require(rho >= 0.0, "sparsity must be nonnegative");
  copy.rho_ = rho;
  return copy;
}

Graph sample_graph(const GraphonModel& model, std::size_t n, std::uint64_t seed, unsigned threads) {
  require(n >= 1, "graph size must be positive");
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) xi[i] = counter_uniform(seed, 0, i);

  std::vector<std::vector<Node>> upper(n);
  if (model.rho() > 0.0) {
    parallel_for(n, threads, [&](std::size_t i) {
      auto& row = upper[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (counter_uniform(seed, 1, i, j) < model.h(xi[i], xi[j])) row.push_back(static_cast<Node>(j));
      }
    });
  }

  if (n <= Graph::kBitsetLimit) {
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(n * words, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (Node j : upper[i]) {
        rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
        rows[std::size_t{j} * words + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
    return Graph::from_bitset_rows(n, std::move(rows));
  }
  std::vector<std::pair<Node, Node>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (Node j : upper[i]) edges.emplace_back(static_cast<Node>(i), j);
  return Graph::from_edges(n, edges);
}

PopulationMoment population_moment(const GraphonModel& model, const SmallGraph& pattern, std::size_t draws,
                                   std::uint64_t seed, unsigned threads) {
  require(draws >= 1, "need at least one Monte Carlo draw");
  const int s = pattern.node_count();
  const auto edges = pattern.edges();
  struct Partial {
    long double sum = 0.0L;
    long double sum_sq = 0.0L;
  };
  std::vector<Partial> partial(kMonteCarloChunks);
  parallel_for(kMonteCarloChunks, threads, [&](std::size_t chunk) {
    const std::size_t begin = draws * chunk / kMonteCarloChunks;
    const std::size_t end = draws * (chunk + 1) / kMonteCarloChunks;
    Engine rng(derive_seed(seed, chunk));
    std::array<double, SmallGraph::kMaxNodes> xi{};
    Partial p;
    for (std::size_t d = begin; d < end; ++d) {
      for (int i = 0; i < s; ++i) xi[i] = uniform_unit(rng);
      double product = 1.0;
      for (auto [u, v] : edges) product *= model.w(xi[u], xi[v]);
      p.sum += product;
      p.sum_sq += static_cast<long double>(product) * product;
    }
    partial[chunk] = p;
  });
  long double sum = 0.0L, sum_sq = 0.0L;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const long double count = static_cast<long double>(draws);
  const long double mean = sum / count;
  long double var = draws > 1 ? (sum_sq - count * mean * mean) / (count - 1) : 0.0L;
  if (var < 0) var = 0;
  PopulationMoment out;
  out.motif = canonical_string(pattern);
  out.value = static_cast<double>(mean);
  out.std_error = static_cast<double>(std::sqrt(var / count));
  out.draws = draws;
  return out;
}

Estimate theoretical_mean(const GraphonModel& model, const Motif& r, std::size_t draws, std::uint64_t seed,
                          unsigned threads) {
  const auto p = population_moment(model, r.graph(), draws, seed, threads);
  const double scale = static_cast<double>(factorial(r.nodes())) / static_cast<double>(r.automorphisms());
  return {scale * p.value, scale * p.std_error};
}

Estimate limiting_covariance(const GraphonModel& model, const Motif& r, const Motif& rp, std::size_t draws,
                             std::uint64_t seed, unsigned threads) {
  const auto table = build_merge_table(r, rp);
  const double rr = static_cast<double>(factorial(r.nodes())) * static_cast<double>(factorial(rp.nodes()));
  double value = 0.0, var = 0.0;
  std::uint64_t stream = 0;
  for (const auto& e : table->entries) {
    if (e.q > 1) continue;
    double coefficient = static_cast<double>(e.c) * rr / static_cast<double>(e.automorphisms);
    if (e.q == 0) coefficient = -coefficient * r.nodes() * rp.nodes();
    const auto p = population_moment(model, e.merged, draws, derive_seed(seed, stream++), threads);
    value += coefficient * p.value;
    var += coefficient * coefficient * p.std_error * p.std_error;
  }
  return {value, std::sqrt(var)};
}

}  // namespace netmoments
