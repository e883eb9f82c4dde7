#include "netmoments/motif_algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <sstream>

#include "netmoments/error.hpp"

namespace netmoments {
namespace {

// Distinct subgraphs of `s` isomorphic to `pattern`, as (node mask, edge code).
std::set<std::pair<std::uint8_t, std::uint32_t>> copies_in(const SmallGraph& s, const SmallGraph& pattern) {
  std::set<std::pair<std::uint8_t, std::uint32_t>> out;
  const int k = pattern.node_count();
  const int n = s.node_count();
  if (k > n) return out;
  const auto pattern_edges = pattern.edges();
  std::array<int, SmallGraph::kMaxNodes> image{};
  std::uint8_t used = 0;
  auto place = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      SmallGraph sub(n);
      for (auto [u, v] : pattern_edges) {
        if (!s.adjacent(image[u], image[v])) return;
        sub.add_edge(image[u], image[v]);
      }
      out.emplace(used, sub.code());
      return;
    }
    for (int x = 0; x < n; ++x) {
      if ((used >> x) & 1U) continue;
      image[depth] = x;
      used = static_cast<std::uint8_t>(used | (1U << x));
      self(self, depth + 1);
      used = static_cast<std::uint8_t>(used & ~(1U << x));
    }
  };
  place(place, 0);
  return out;
}

std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

std::shared_ptr<const MergeTable> compute_table(const Motif& r, const Motif& rp) {
  const SmallGraph& a = r.graph();
  const SmallGraph& b = rp.graph();
  const int na = a.node_count(), nb = b.node_count();
  std::map<std::uint64_t, MergeEntry> found;

  // match[j] = node of R identified with node j of R', or -1.
  std::array<int, SmallGraph::kMaxNodes> match{};
  match.fill(-1);
  auto glue = [&](auto&& self, int j, std::uint8_t taken, int q) -> void {
    if (j == nb) {
      std::array<int, SmallGraph::kMaxNodes> image{};
      int next = na;
      for (int v = 0; v < nb; ++v) image[v] = match[v] >= 0 ? match[v] : next++;
      SmallGraph merged(next);
      for (auto [u, v] : a.edges()) merged.add_edge(u, v);
      for (auto [u, v] : b.edges())
        if (!merged.adjacent(image[u], image[v])) merged.add_edge(image[u], image[v]);
      const auto& form = canonical_form(merged);
      if (!found.contains(form.key)) {
        MergeEntry e;
        e.merged = form.graph;
        e.q = q;
        e.s = next;
        e.edges = merged.edge_count();
        e.automorphisms = form.automorphisms;
        e.key = canonical_string(merged);
        found.emplace(form.key, std::move(e));
      }
      return;
    }
    match[j] = -1;
    self(self, j + 1, taken, q);
    for (int i = 0; i < na; ++i) {
      if ((taken >> i) & 1U) continue;
      match[j] = i;
      self(self, j + 1, static_cast<std::uint8_t>(taken | (1U << i)), q + 1);
    }
    match[j] = -1;
  };
  glue(glue, 0, 0, 0);

  auto table = std::make_shared<MergeTable>(MergeTable{r, rp, {}});
  for (auto& [key, entry] : found) {
    entry.c = covering_pairs(entry.merged, a, b);
    table->entries.push_back(std::move(entry));
  }
  std::sort(table->entries.begin(), table->entries.end(), [](const MergeEntry& x, const MergeEntry& y) {
    return std::tie(x.q, x.key) < std::tie(y.q, y.key);
  });
  if (!table->self_check()) {
    fail(ErrorCode::invalid_argument, "merge table for (" + r.name() + ", " + rp.name() + ") failed its complete-graph check");
  }
  return table;
}

struct TableCache {
  std::shared_mutex mutex;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const MergeTable>> tables;
};

TableCache& table_cache() {
  static TableCache instance;
  return instance;
}

long double u_moment(const Graph& g, const Motif& m) {
  return static_cast<long double>(network_moment(g, m, CountMode::noninduced));
}

}  // namespace

std::uint64_t covering_pairs(const SmallGraph& s, const SmallGraph& r, const SmallGraph& rp) {
  const auto first = copies_in(s, r);
  const auto second = copies_in(s, rp);
  const std::uint8_t all_nodes = static_cast<std::uint8_t>((1U << s.node_count()) - 1U);
  const std::uint32_t all_edges = s.code();
  std::uint64_t total = 0;
  for (const auto& [m1, e1] : first)
    for (const auto& [m2, e2] : second)
      if (static_cast<std::uint8_t>(m1 | m2) == all_nodes && (e1 | e2) == all_edges) ++total;
  return total;
}

bool MergeTable::self_check() const {
  const int size = first.nodes() + second.nodes();
  auto complete_count = [&](const SmallGraph& h) {
    return checked_mul(binomial(size, h.node_count()), factorial(h.node_count()) / automorphism_count(h));
  };
  const Count product = checked_mul(complete_count(first.graph()), complete_count(second.graph()));
  Count sum = 0;
  for (const auto& e : entries) sum = checked_add(sum, checked_mul(e.c, complete_count(e.merged)));
  return sum == product;
}

std::shared_ptr<const MergeTable> build_merge_table(const Motif& r, const Motif& rp) {
  require(r.nodes() + rp.nodes() <= SmallGraph::kMaxNodes,
          "merge tables need r + r' <= 8 (got " + std::to_string(r.nodes() + rp.nodes()) + ")");
  auto& cache = table_cache();
  const auto key = std::make_pair(r.canonical_key(), rp.canonical_key());
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.tables.find(key); it != cache.tables.end()) {
      if (it->second->first.name() == r.name() && it->second->second.name() == rp.name()) return it->second;
      auto renamed = std::make_shared<MergeTable>(*it->second);
      renamed->first = r;
      renamed->second = rp;
      return renamed;
    }
  }
  auto table = compute_table(r, rp);
  std::unique_lock lock(cache.mutex);
  cache.tables.try_emplace(key, table);
  return table;
}

LinearityReport verify_linearity(const Graph& g, const Motif& r, const Motif& rp) {
  const auto table = build_merge_table(r, rp);
  MotifCounter counter(g);
  LinearityReport report;
  report.product = checked_mul(counter.noninduced(r), counter.noninduced(rp));
  std::ostringstream detail;
  for (const auto& e : table->entries) {
    const Count x = count_subgraphs(g, e.merged);
    report.merged_sum = checked_add(report.merged_sum, checked_mul(e.c, x));
    detail << "  q=" << e.q << " S=" << e.key << " c=" << e.c << " X_S=" << to_string(x) << '\n';
  }
  report.holds = report.product == report.merged_sum;
  if (!report.holds) {
    report.detail = "X_R X_R' = " + to_string(report.product) + " but sum c_S X_S = " +
                    to_string(report.merged_sum) + "\n" + detail.str();
  }
  return report;
}

double exact_subsample_expectation(const Graph& g, const Motif& r, std::size_t b, CountMode mode) {
  require(b >= static_cast<std::size_t>(r.nodes()) && b <= g.node_count(),
          "subsample size b must satisfy r <= b <= n");
  return network_moment(g, r, mode);
}

double exact_subsample_covariance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b) {
  const std::size_t n = g.node_count();
  require(b >= static_cast<std::size_t>(std::max(r.nodes(), rp.nodes())) && b <= n,
          "subsample size b must satisfy max(r, r') <= b <= n");
  const auto table = build_merge_table(r, rp);
  long double sum = 0.0L;
  for (const auto& e : table->entries) {
    const auto s = static_cast<std::size_t>(e.s);
    if (s > b) continue;
    const Count x = count_subgraphs(g, e.merged);
    if (x == 0) continue;
    sum += static_cast<long double>(e.c) * binomial_ld(b, s) / binomial_ld(n, s) * to_long_double(x);
  }
  sum /= binomial_ld(b, static_cast<std::uint64_t>(r.nodes())) * binomial_ld(b, static_cast<std::uint64_t>(rp.nodes()));
  return static_cast<double>(sum - u_moment(g, r) * u_moment(g, rp));
}

double hoeffding_g1(const Graph& g, const Motif& r, Node v, std::size_t b) {
  const std::size_t n = g.node_count();
  require(n >= static_cast<std::size_t>(r.nodes()) + 1, "g1 needs n >= r + 1");
  require(v < n, "node index out of range");
  require(b >= 1, "subsample size must be positive");
  const long double full = u_moment(g, r);
  const long double without = u_moment(delete_node(g, v), r);
  return static_cast<double>(static_cast<long double>(n - 1) / static_cast<long double>(b) * (full - without));
}

std::vector<double> hoeffding_g1_all(const Graph& g, const Motif& r, std::size_t b) {
  const std::size_t n = g.node_count();
  require(n >= static_cast<std::size_t>(r.nodes()) + 1, "g1 needs n >= r + 1");
  require(b >= 1, "subsample size must be positive");
  const long double full = u_moment(g, r);
  std::vector<double> out(n);
  for (Node v = 0; v < n; ++v) {
    const long double without = u_moment(delete_node(g, v), r);
    out[v] = static_cast<double>(static_cast<long double>(n - 1) / static_cast<long double>(b) * (full - without));
  }
  return out;
}

double g1_node_covariance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b) {
  const auto a = hoeffding_g1_all(g, r, b);
  const auto c = hoeffding_g1_all(g, rp, b);
  const auto n = static_cast<long double>(a.size());
  long double sa = 0, sc = 0, sac = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sc += c[i];
    sac += static_cast<long double>(a[i]) * c[i];
  }
  return static_cast<double>(sac / n - (sa / n) * (sc / n));
}

double g1_node_covariance_closed_form(const Graph& g, const Motif& r, const Motif& rp, std::size_t b) {
  const std::size_t n = g.node_count();
  require(n >= static_cast<std::size_t>(std::max(r.nodes(), rp.nodes())) + 1, "g1 needs n >= r + 1");
  require(b >= 1, "subsample size must be positive");
  // K_R = r! (n - r - 1)! / (b (n - 2)!) = r! / (b prod_{k=n-r}^{n-2} k)
  auto scale = [&](int r_nodes) {
    long double out = static_cast<long double>(factorial(r_nodes)) / static_cast<long double>(b);
    for (std::size_t k = n - static_cast<std::size_t>(r_nodes); k <= n - 2; ++k) out /= static_cast<long double>(k);
    return out;
  };
  const auto table = build_merge_table(r, rp);
  const long double nn = static_cast<long double>(n);
  const long double rr = static_cast<long double>(r.nodes()) * rp.nodes();
  long double sum = 0.0L;
  for (const auto& e : table->entries) {
    const Count x = count_subgraphs(g, e.merged);
    if (x == 0) continue;
    sum += static_cast<long double>(e.c) * (nn * e.q - rr) / (nn * nn) * to_long_double(x);
  }
  return static_cast<double>(scale(r.nodes()) * scale(rp.nodes()) * sum);
}

double g1_sum_variance(const Graph& g, const Motif& r, const Motif& rp, std::size_t b) {
  const std::size_t n = g.node_count();
  require(b <= n, "subsample size exceeds node count");
  const long double factor = static_cast<long double>(b) * static_cast<long double>(n - b) / static_cast<long double>(n - 1);
  return static_cast<double>(factor * g1_node_covariance(g, r, rp, b));
}

}  // namespace netmoments
