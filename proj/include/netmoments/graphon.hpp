#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "netmoments/graph.hpp"
#include "netmoments/motif.hpp"

namespace netmoments {

/// Monte Carlo (or quasi Monte Carlo) estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Integral of `kernel` over the unit square by randomly shifted rank-1
/// lattice (R2 sequence) quadrature; the error is the spread across shifts.
Estimate integrate_unit_square(const std::function<double(double, double)>& kernel, std::size_t points_per_shift,
                               int shifts, std::uint64_t seed);

/// Sparse graphon rho * w(u, v) with w symmetric, nonnegative and
/// integrating to one. The unnormalized kernel is divided by a numerically
/// computed constant.
class GraphonModel {
 public:
  using Kernel = std::function<double(double, double)>;

  /// Normalizes `raw` with 10^7 quasi-random points.
  GraphonModel(std::string name, Kernel raw, double rho = 1.0);
  /// Uses a known normalization constant.
  GraphonModel(std::string name, Kernel raw, Estimate normalizer, double rho);

  /// "graphon1" (smooth), "graphon2" (nonsmooth) or "constant" (w = 1).
  /// "1" and "2" are accepted as aliases.
  static GraphonModel builtin(std::string_view name, double rho = 1.0);

  const std::string& name() const noexcept { return name_; }
  double rho() const noexcept { return rho_; }
  GraphonModel with_rho(double rho) const;

  double raw(double u, double v) const { return raw_(u, v); }
  /// Normalized graphon w(u, v).
  double w(double u, double v) const { return raw_(u, v) / normalizer_.value; }
  /// Clipped edge probability h(u, v) = rho w(u, v) 1{rho w(u, v) <= 1}.
  double h(double u, double v) const {
    const double p = rho_ * w(u, v);
    return p <= 1.0 ? p : 0.0;
  }
  const Estimate& normalizer() const noexcept { return normalizer_; }

 private:
  std::string name_;
  Kernel raw_;
  Estimate normalizer_;
  double rho_ = 1.0;
};

/// Draws latent positions xi_i ~ U(0, 1) and connects i < j with probability
/// h(xi_i, xi_j). Every random number is a pure function of (seed, i, j), so
/// the result does not depend on the worker count.
Graph sample_graph(const GraphonModel& model, std::size_t n, std::uint64_t seed, unsigned threads = 1);

struct PopulationMoment {
  std::string motif;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

inline constexpr std::size_t kDefaultPopulationDraws = 2'000'000;

/// Monte Carlo estimate of P_w(S) = integral over [0,1]^s of the product of
/// w over the edges of S. Disconnected S are handled by the same integral.
PopulationMoment population_moment(const GraphonModel& model, const SmallGraph& pattern, std::size_t draws,
                                   std::uint64_t seed, unsigned threads = 1);

/// r! / |Aut(R)| * P_w(R), the limit of rho^-e E[U_R].
Estimate theoretical_mean(const GraphonModel& model, const Motif& r, std::size_t draws = kDefaultPopulationDraws,
                          std::uint64_t seed = 1, unsigned threads = 1);

/// Limit of cov(sqrt(n) rho^-e U_R, sqrt(n) rho^-e' U_R'):
///   sum_{S, q=1} c_S r! r'! / |Aut(S)| P_w(S)
/// - sum_{S, q=0} c_S r! r'! r r' / |Aut(S)| P_w(S).
/// The error combines the per-term Monte Carlo errors.
Estimate limiting_covariance(const GraphonModel& model, const Motif& r, const Motif& rp,
                             std::size_t draws = kDefaultPopulationDraws, std::uint64_t seed = 1, unsigned threads = 1);

}  // namespace netmoments
