#include "netmoments/counting.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "netmoments/error.hpp"

namespace netmoments {

std::string_view to_string(CountMode mode) { return mode == CountMode::noninduced ? "noninduced" : "induced"; }

CountMode parse_count_mode(std::string_view text) {
  if (text == "noninduced" || text == "non-induced") return CountMode::noninduced;
  if (text == "induced") return CountMode::induced;
  fail(ErrorCode::invalid_argument, "unknown count mode '" + std::string(text) + "'");
}

namespace {

// Depth-first enumeration of injective maps of a connected pattern. Pattern
// nodes are placed so that every node after the first has an already placed
// neighbor; its candidates are then the common neighbors of the images of
// its placed neighbors.
class ConnectedInjections {
 public:
  ConnectedInjections(const Graph& g, const SmallGraph& pattern) : g_(g), k_(pattern.node_count()) {
    std::array<bool, SmallGraph::kMaxNodes> placed{};
    std::array<int, SmallGraph::kMaxNodes> position{};
    for (int step = 0; step < k_; ++step) {
      int best = -1, best_back = -1, best_degree = -1;
      for (int v = 0; v < k_; ++v) {
        if (placed[v]) continue;
        int back = 0;
        for (int u = 0; u < k_; ++u)
          if (placed[u] && pattern.adjacent(u, v)) ++back;
        if (step > 0 && back == 0) continue;
        if (back > best_back || (back == best_back && pattern.degree(v) > best_degree)) {
          best = v;
          best_back = back;
          best_degree = pattern.degree(v);
        }
      }
      require(best >= 0, "pattern passed to the connected enumerator is disconnected");
      placed[best] = true;
      position[best] = step;
      order_[step] = best;
    }
    for (int step = 0; step < k_; ++step) {
      back_[step].clear();
      for (int u = 0; u < k_; ++u)
        if (pattern.adjacent(order_[step], u) && position[u] < step) back_[step].push_back(position[u]);
    }
  }

  Count run() {
    const std::size_t n = g_.node_count();
    if (k_ == 0) return 1;
    if (static_cast<std::size_t>(k_) > n) return 0;
    if (k_ == 1) return n;
    total_ = 0;
    if (g_.has_bitsets()) {
      words_ = g_.words_per_row();
      scratch_.assign(static_cast<std::size_t>(k_) * words_, 0);
      used_.assign(words_, 0);
      for (Node v = 0; v < n; ++v) {
        image_[0] = v;
        used_[v / 64] |= std::uint64_t{1} << (v % 64);
        extend_bitset(1);
        used_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      }
    } else {
      used_list_.assign(n, false);
      for (Node v = 0; v < n; ++v) {
        image_[0] = v;
        used_list_[v] = true;
        extend_list(1);
        used_list_[v] = false;
      }
    }
    return total_;
  }

 private:
  void extend_bitset(int depth) {
    std::uint64_t* cand = scratch_.data() + static_cast<std::size_t>(depth) * words_;
    const auto& back = back_[depth];
    const std::uint64_t* first = g_.row(image_[back[0]]);
    for (std::size_t w = 0; w < words_; ++w) cand[w] = first[w] & ~used_[w];
    for (std::size_t i = 1; i < back.size(); ++i) {
      const std::uint64_t* r = g_.row(image_[back[i]]);
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= r[w];
    }
    if (depth == k_ - 1) {
      std::uint64_t leaves = 0;
      for (std::size_t w = 0; w < words_; ++w) leaves += static_cast<std::uint64_t>(std::popcount(cand[w]));
      total_ += leaves;
      return;
    }
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const Node v = static_cast<Node>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        image_[depth] = v;
        used_[w] |= std::uint64_t{1} << (v % 64);
        extend_bitset(depth + 1);
        used_[w] &= ~(std::uint64_t{1} << (v % 64));
      }
    }
  }

  void extend_list(int depth) {
    const auto& back = back_[depth];
    // Anchor on the placed neighbor whose image has the fewest neighbors.
    Node anchor = image_[back[0]];
    for (int p : back)
      if (g_.degree(image_[p]) < g_.degree(anchor)) anchor = image_[p];
    for (Node v : g_.neighbors(anchor)) {
      if (used_list_[v]) continue;
      bool ok = true;
      for (int p : back) {
        if (image_[p] != anchor && !g_.adjacent(image_[p], v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (depth == k_ - 1) {
        ++total_;
        continue;
      }
      image_[depth] = v;
      used_list_[v] = true;
      extend_list(depth + 1);
      used_list_[v] = false;
    }
  }

  const Graph& g_;
  int k_;
  std::array<int, SmallGraph::kMaxNodes> order_{};
  std::array<std::vector<int>, SmallGraph::kMaxNodes> back_;
  std::array<Node, SmallGraph::kMaxNodes> image_{};
  std::size_t words_ = 0;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> used_;
  std::vector<bool> used_list_;
  Count total_ = 0;
};

// inj(A + B) = inj(A) inj(B) - sum over nonempty partial matchings s of
// inj(A glued to B along s): every pair of injections of A and B is an
// injection of exactly one glued graph, determined by where images collide.
class InjectionCache {
 public:
  explicit InjectionCache(const Graph& g) : g_(g) {}

  Count get(const SmallGraph& pattern) {
    const auto& form = canonical_form(pattern);
    if (auto it = memo_.find(form.key); it != memo_.end()) return it->second;
    const Count value = compute(form.graph);
    memo_.emplace(form.key, value);
    return value;
  }

 private:
  Count compute(const SmallGraph& s) {
    if (s.node_count() > static_cast<int>(g_.node_count())) return 0;
    const auto comps = s.components();
    if (comps.size() <= 1) return ConnectedInjections(g_, s).run();

    const std::uint8_t a_mask = comps.front();
    const std::uint8_t b_mask = static_cast<std::uint8_t>(((1U << s.node_count()) - 1U) & ~a_mask);
    const SmallGraph a = s.induced(a_mask);
    const SmallGraph b = s.induced(b_mask);
    const int na = a.node_count(), nb = b.node_count();

    Count total = checked_mul(get(a), get(b));
    // match[i] = node of b identified with node i of a, or -1.
    std::array<int, SmallGraph::kMaxNodes> match{};
    match.fill(-1);
    Count overlap = 0;
    auto visit = [&](auto&& self, int i, std::uint8_t taken, bool any) -> void {
      if (i == na) {
        if (!any) return;
        // Glued graph: nodes of b first, then the unmatched nodes of a.
        std::array<int, SmallGraph::kMaxNodes> image{};
        int next = nb;
        for (int v = 0; v < na; ++v) image[v] = match[v] >= 0 ? match[v] : next++;
        SmallGraph glued(next);
        for (auto [u, v] : b.edges()) glued.add_edge(u, v);
        for (auto [u, v] : a.edges()) {
          if (!glued.adjacent(image[u], image[v])) glued.add_edge(image[u], image[v]);
        }
        overlap = checked_add(overlap, get(glued));
        return;
      }
      match[i] = -1;
      self(self, i + 1, taken, any);
      for (int j = 0; j < nb; ++j) {
        if ((taken >> j) & 1U) continue;
        match[i] = j;
        self(self, i + 1, static_cast<std::uint8_t>(taken | (1U << j)), true);
      }
      match[i] = -1;
    };
    visit(visit, 0, 0, false);
    return checked_sub(total, overlap);
  }

  const Graph& g_;
  std::map<std::uint64_t, Count> memo_;
};

// Enumerates every connected induced subgraph on k nodes exactly once
// (Wernicke's ESU scheme) and hands the node list to `visit`.
template <typename Visit>
void enumerate_connected_subsets(const Graph& g, int k, Visit&& visit) {
  const std::size_t n = g.node_count();
  std::vector<Node> subset;
  std::vector<std::uint32_t> blocked(n, 0);  // >0 when in subset or adjacent to it
  auto extend = [&](auto&& self, std::vector<Node> extension, Node root) -> void {
    if (static_cast<int>(subset.size()) == k) {
      visit(std::span<const Node>(subset));
      return;
    }
    while (!extension.empty()) {
      const Node w = extension.back();
      extension.pop_back();
      std::vector<Node> next = extension;
      for (Node u : g.neighbors(w))
        if (u > root && blocked[u] == 0) next.push_back(u);
      subset.push_back(w);
      ++blocked[w];
      for (Node u : g.neighbors(w)) ++blocked[u];
      self(self, std::move(next), root);
      for (Node u : g.neighbors(w)) --blocked[u];
      --blocked[w];
      subset.pop_back();
    }
  };
  for (Node v = 0; v < n; ++v) {
    std::vector<Node> extension;
    for (Node u : g.neighbors(v))
      if (u > v) extension.push_back(u);
    subset.assign(1, v);
    ++blocked[v];
    for (Node u : g.neighbors(v)) ++blocked[u];
    extend(extend, std::move(extension), v);
    for (Node u : g.neighbors(v)) --blocked[u];
    --blocked[v];
  }
}

Count induced_by_enumeration(const Graph& g, const Motif& motif) {
  const int k = motif.nodes();
  const std::uint64_t target = motif.canonical_key();
  Count total = 0;
  enumerate_connected_subsets(g, k, [&](std::span<const Node> nodes) {
    SmallGraph sub(k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (g.adjacent(nodes[i], nodes[j])) sub.add_edge(i, j);
    if (canonical_form(sub).key == target) ++total;
  });
  return total;
}

}  // namespace

Count injective_homomorphisms(const Graph& g, const SmallGraph& pattern) {
  return InjectionCache(g).get(pattern);
}

Count count_subgraphs(const Graph& g, const SmallGraph& pattern) {
  return injective_homomorphisms(g, pattern) / automorphism_count(pattern);
}

Count count_noninduced(const Graph& g, const Motif& motif) {
  return injective_homomorphisms(g, motif.graph()) / motif.automorphisms();
}

Count spanning_copies(const SmallGraph& pattern, const SmallGraph& host) {
  if (pattern.node_count() != host.node_count()) return 0;
  const auto host_edges = host.edges();
  const int want = pattern.edge_count();
  const auto target = canonical_form(pattern).key;
  Count total = 0;
  const std::uint32_t limit = std::uint32_t{1} << host_edges.size();
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    if (std::popcount(subset) != want) continue;
    SmallGraph candidate(host.node_count());
    for (std::size_t e = 0; e < host_edges.size(); ++e)
      if ((subset >> e) & 1U) candidate.add_edge(host_edges[e].first, host_edges[e].second);
    if (canonical_form(candidate).key == target) ++total;
  }
  return total;
}

MotifCounter::MotifCounter(const Graph& g) : g_(g) {}

const std::vector<std::uint32_t>& MotifCounter::edge_common() {
  if (have_common_) return common_;
  const std::size_t n = g_.node_count();
  common_.assign(2 * g_.edge_count(), 0);
  std::size_t pos = 0;
  for (Node u = 0; u < n; ++u) {
    for (Node v : g_.neighbors(u)) {
      std::uint32_t c = 0;
      if (g_.has_bitsets()) {
        const std::uint64_t* a = g_.row(u);
        const std::uint64_t* b = g_.row(v);
        for (std::size_t w = 0; w < g_.words_per_row(); ++w) c += static_cast<std::uint32_t>(std::popcount(a[w] & b[w]));
      } else {
        auto a = g_.neighbors(u);
        auto b = g_.neighbors(v);
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
          if (a[i] < b[j]) ++i;
          else if (a[i] > b[j]) ++j;
          else { ++c; ++i; ++j; }
        }
      }
      common_[pos++] = c;
    }
  }
  have_common_ = true;
  return common_;
}

Count MotifCounter::triangles() {
  if (triangles_) return *triangles_;
  const auto& common = edge_common();
  Count sum = 0;
  for (auto c : common) sum += c;
  // Each triangle is seen from its three edges in both directions.
  triangles_ = sum / 6;
  return *triangles_;
}

std::optional<Count> MotifCounter::closed_form(const Motif& motif) {
  const std::size_t n = g_.node_count();
  const Motif* known = find_catalog_motif(motif.graph());
  if (!known) return std::nullopt;
  const std::string& kind = known->name();
  if (kind == "edge") return Count{g_.edge_count()};
  if (kind == "twostar" || kind == "threestar") {
    const std::uint64_t k = kind == "twostar" ? 2 : 3;
    Count total = 0;
    for (Node v = 0; v < n; ++v) total = checked_add(total, binomial(g_.degree(v), k));
    return total;
  }
  if (kind == "triangle") return triangles();
  if (kind == "path4") {
    Count total = 0;
    for (Node u = 0; u < n; ++u)
      for (Node v : g_.neighbors(u))
        if (u < v) total = checked_add(total, Count{g_.degree(u) - 1u} * (g_.degree(v) - 1u));
    return checked_sub(total, 3 * triangles());
  }
  if (kind == "diamond") {
    const auto& common = edge_common();
    Count total = 0;
    std::size_t pos = 0;
    for (Node u = 0; u < n; ++u)
      for (Node v : g_.neighbors(u)) {
        if (u < v) total = checked_add(total, binomial(common[pos], 2));
        ++pos;
      }
    return total;
  }
  if (kind == "paw") {
    const auto& common = edge_common();
    Count total = 0;
    std::size_t pos = 0;
    for (Node v = 0; v < n; ++v) {
      std::uint64_t twice_local = 0;
      for (std::size_t i = 0; i < g_.degree(v); ++i) twice_local += common[pos++];
      const std::uint64_t local = twice_local / 2;
      if (g_.degree(v) >= 2) total = checked_add(total, Count{local} * (g_.degree(v) - 2u));
    }
    return total;
  }
  if (kind == "cycle4") {
    std::vector<std::uint32_t> paths(n, 0);
    std::vector<Node> touched;
    Count total = 0;
    for (Node u = 0; u < n; ++u) {
      for (Node v : g_.neighbors(u))
        for (Node w : g_.neighbors(v)) {
          if (w <= u) continue;
          if (paths[w]++ == 0) touched.push_back(w);
        }
      for (Node w : touched) {
        total = checked_add(total, binomial(paths[w], 2));
        paths[w] = 0;
      }
      touched.clear();
    }
    return total / 2;
  }
  return std::nullopt;
}

Count MotifCounter::noninduced(const Motif& motif) {
  const std::uint64_t key = motif.canonical_key() * 2;
  for (auto& [k, v] : memo_)
    if (k == key) return v;
  Count value;
  if (auto closed = closed_form(motif)) value = *closed;
  else value = count_noninduced(g_, motif);
  memo_.emplace_back(key, value);
  return value;
}

Count MotifCounter::induced(const Motif& motif) {
  const std::uint64_t key = motif.canonical_key() * 2 + 1;
  for (auto& [k, v] : memo_)
    if (k == key) return v;
  Count value = 0;
  const int r = motif.nodes();
  if (r <= 4) {
    // Every connected graph on r <= 4 nodes is in the catalog, so the
    // non-induced counts of all same-size catalog motifs determine the
    // induced ones: X_H = sum over supergraphs H' of a(H, H') X~_H'.
    std::vector<const Motif*> same;
    for (const auto& m : motif_catalog())
      if (m.nodes() == r) same.push_back(&m);
    std::sort(same.begin(), same.end(), [](const Motif* a, const Motif* b) { return a->edges() > b->edges(); });
    std::vector<SignedCount> induced_counts(same.size(), 0);
    for (std::size_t i = 0; i < same.size(); ++i) {
      SignedCount x = static_cast<SignedCount>(noninduced(*same[i]));
      for (std::size_t j = 0; j < i; ++j) {
        if (same[j]->edges() <= same[i]->edges()) continue;
        x -= static_cast<SignedCount>(spanning_copies(same[i]->graph(), same[j]->graph())) * induced_counts[j];
      }
      if (x < 0) fail(ErrorCode::overflow, "negative induced count; exact arithmetic overflowed");
      induced_counts[i] = x;
      if (same[i]->canonical_key() == motif.canonical_key()) value = static_cast<Count>(x);
    }
  } else {
    value = induced_by_enumeration(g_, motif);
  }
  memo_.emplace_back(key, value);
  return value;
}

double MotifCounter::moment(const Motif& motif, CountMode mode) {
  const std::size_t n = g_.node_count();
  require(n >= static_cast<std::size_t>(motif.nodes()),
          "network moment of '" + motif.name() + "' needs at least " + std::to_string(motif.nodes()) + " nodes");
  const Count x = count(motif, mode);
  return static_cast<double>(to_long_double(x) / binomial_ld(n, static_cast<std::uint64_t>(motif.nodes())));
}

Count fast_count(const Graph& g, const Motif& motif) { return MotifCounter(g).noninduced(motif); }

bool has_closed_form(const Motif& motif) {
  const Motif* known = find_catalog_motif(motif.graph());
  return known && known->name() != "k4";
}

Count count_induced(const Graph& g, const Motif& motif) { return MotifCounter(g).induced(motif); }

Count count_motif(const Graph& g, const Motif& motif, CountMode mode) { return MotifCounter(g).count(motif, mode); }

double network_moment(const Graph& g, const Motif& motif, CountMode mode) { return MotifCounter(g).moment(motif, mode); }

std::vector<double> network_moments(const Graph& g, std::span<const Motif> motifs, CountMode mode) {
  MotifCounter counter(g);
  std::vector<double> out;
  out.reserve(motifs.size());
  for (const auto& m : motifs) out.push_back(counter.moment(m, mode));
  return out;
}

}  // namespace netmoments
