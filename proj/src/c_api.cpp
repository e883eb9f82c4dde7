#include "netmoments/netmoments.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netmoments/compare.hpp"
#include "netmoments/counting.hpp"
#include "netmoments/error.hpp"
#include "netmoments/experiments.hpp"
#include "netmoments/graph.hpp"
#include "netmoments/graphon.hpp"
#include "netmoments/motif.hpp"
#include "netmoments/motif_algebra.hpp"
#include "netmoments/schedule.hpp"
#include "netmoments/subsample.hpp"

using namespace netmoments;

struct nm_graph {
  Graph g;
};

struct nm_motif_list {
  std::vector<Motif> motifs;
};

struct nm_merge_table {
  std::shared_ptr<const MergeTable> table;
};

struct nm_graphon {
  GraphonModel model;
};

struct nm_sample {
  Matrix m;
  std::vector<std::string> names;
  // Present only for raw subsampling output.
  std::optional<MomentSample> raw;
};

namespace {

thread_local std::string last_error;

nm_status set_error(nm_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename F>
nm_status guarded(F&& f) {
  try {
    f();
    return NM_OK;
  } catch (const Error& e) {
    return set_error(static_cast<nm_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NM_ERR_INTERNAL, e.what());
  }
}

void check(bool condition, const char* what) {
  if (!condition) fail(ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

CountMode mode_of(nm_count_mode mode) {
  check(mode == NM_NONINDUCED || mode == NM_INDUCED, "unknown count mode");
  return mode == NM_INDUCED ? CountMode::induced : CountMode::noninduced;
}

const Motif& motif_at(const nm_motif_list* list, std::size_t i) {
  check(list != nullptr, "motif list is null");
  check(i < list->motifs.size(), "motif index out of range");
  return list->motifs[i];
}

std::vector<std::string> names_of(const std::vector<Motif>& motifs) {
  std::vector<std::string> out;
  for (const auto& m : motifs) out.push_back(m.name());
  return out;
}

EdgeListOptions edge_options(int index_base, int drop_self_loops) {
  check(index_base == 0 || index_base == 1, "index base must be 0 or 1");
  EdgeListOptions o;
  o.index_base = index_base;
  o.drop_self_loops = drop_self_loops != 0;
  return o;
}

std::vector<std::vector<Motif>> parse_motif_sets(const char* text) {
  if (!text) return ExperimentGrid::default_motif_sets();
  std::vector<std::vector<Motif>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.empty()) continue;
    std::vector<Motif> set;
    std::stringstream parts(item);
    std::string name;
    while (std::getline(parts, name, '+'))
      if (!name.empty()) set.push_back(parse_motif(name));
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

extern "C" {

const char* nm_version(void) { return NETMOMENTS_VERSION; }

const char* nm_last_error(void) { return last_error.c_str(); }

void nm_string_free(char* s) { std::free(s); }

const char* nm_status_name(nm_status status) {
  switch (status) {
    case NM_OK: return "ok";
    case NM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NM_ERR_PARSE: return "parse";
    case NM_ERR_IO: return "io";
    case NM_ERR_OVERFLOW: return "overflow";
    case NM_ERR_EMPTY_SLICE: return "empty_slice";
    case NM_ERR_DEGENERATE: return "degenerate";
    case NM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

nm_status nm_graph_load_file(const char* path, int index_base, int drop_self_loops, nm_graph** out) {
  return guarded([&] {
    check(path && out, "null argument");
    *out = new nm_graph{load_edge_list_file(path, edge_options(index_base, drop_self_loops))};
  });
}

nm_status nm_graph_load_string(const char* text, int index_base, int drop_self_loops, nm_graph** out) {
  return guarded([&] {
    check(text && out, "null argument");
    std::istringstream in(text);
    *out = new nm_graph{load_edge_list(in, edge_options(index_base, drop_self_loops))};
  });
}

nm_status nm_graph_from_edges(size_t n, const uint32_t* pairs, size_t m, nm_graph** out) {
  return guarded([&] {
    check(out && (pairs || m == 0), "null argument");
    std::vector<std::pair<Node, Node>> edges(m);
    for (size_t i = 0; i < m; ++i) edges[i] = {pairs[2 * i], pairs[2 * i + 1]};
    *out = new nm_graph{Graph::from_edges(n, edges)};
  });
}

void nm_graph_free(nm_graph* g) { delete g; }

size_t nm_graph_node_count(const nm_graph* g) { return g ? g->g.node_count() : 0; }

uint64_t nm_graph_edge_count(const nm_graph* g) { return g ? g->g.edge_count() : 0; }

nm_status nm_graph_largest_component(const nm_graph* g, nm_graph** out) {
  return guarded([&] {
    check(g && out, "null argument");
    *out = new nm_graph{largest_connected_component(g->g)};
  });
}

nm_status nm_graph_edge_density(const nm_graph* g, double* out) {
  return guarded([&] {
    check(g && out, "null argument");
    *out = edge_density(g->g);
  });
}

nm_status nm_graph_to_edge_list(const nm_graph* g, char** out) {
  return guarded([&] {
    check(g && out, "null argument");
    *out = dup_string(to_edge_list_string(g->g));
  });
}

nm_status nm_graph_write_file(const nm_graph* g, const char* path) {
  return guarded([&] {
    check(g && path, "null argument");
    std::ofstream file(path, std::ios::binary);
    if (!file) fail(ErrorCode::io, std::string("cannot open ") + path + " for writing");
    write_edge_list(file, g->g);
    if (!file) fail(ErrorCode::io, std::string("write failed: ") + path);
  });
}

nm_status nm_motifs_parse(const char* spec, nm_motif_list** out) {
  return guarded([&] {
    check(spec && out, "null argument");
    *out = new nm_motif_list{parse_motif_list(spec)};
  });
}

void nm_motifs_free(nm_motif_list* list) { delete list; }

size_t nm_motifs_size(const nm_motif_list* list) { return list ? list->motifs.size() : 0; }

const char* nm_motifs_name(const nm_motif_list* list, size_t i) {
  if (!list || i >= list->motifs.size()) return nullptr;
  return list->motifs[i].name().c_str();
}

nm_status nm_motifs_info(const nm_motif_list* list, size_t i, int* nodes, int* edges, uint64_t* automorphisms) {
  return guarded([&] {
    const Motif& m = motif_at(list, i);
    if (nodes) *nodes = m.nodes();
    if (edges) *edges = m.edges();
    if (automorphisms) *automorphisms = m.automorphisms();
  });
}

const char* nm_motif_catalog(void) {
  static const std::string names = [] {
    std::string out;
    for (const auto& m : motif_catalog()) {
      if (!out.empty()) out += ',';
      out += m.name();
    }
    return out;
  }();
  return names.c_str();
}

nm_status nm_count(const nm_graph* g, const nm_motif_list* list, size_t i, nm_count_mode mode, char** out) {
  return guarded([&] {
    check(g && out, "null argument");
    *out = dup_string(to_string(count_motif(g->g, motif_at(list, i), mode_of(mode))));
  });
}

nm_status nm_moments(const nm_graph* g, const nm_motif_list* list, nm_count_mode mode, double* out) {
  return guarded([&] {
    check(g && list && out, "null argument");
    const auto values = network_moments(g->g, list->motifs, mode_of(mode));
    std::copy(values.begin(), values.end(), out);
  });
}

nm_status nm_merge_table_build(const nm_motif_list* list, size_t i, size_t j, nm_merge_table** out) {
  return guarded([&] {
    check(out != nullptr, "null argument");
    *out = new nm_merge_table{build_merge_table(motif_at(list, i), motif_at(list, j))};
  });
}

void nm_merge_table_free(nm_merge_table* t) { delete t; }

size_t nm_merge_table_size(const nm_merge_table* t) { return t ? t->table->entries.size() : 0; }

nm_status nm_merge_table_entry(const nm_merge_table* t, size_t k, int* q, int* s, int* edges, uint64_t* c,
                               uint64_t* automorphisms, const char** key) {
  return guarded([&] {
    check(t != nullptr, "null argument");
    check(k < t->table->entries.size(), "merge entry index out of range");
    const MergeEntry& e = t->table->entries[k];
    if (q) *q = e.q;
    if (s) *s = e.s;
    if (edges) *edges = e.edges;
    if (c) *c = e.c;
    if (automorphisms) *automorphisms = e.automorphisms;
    if (key) *key = e.key.c_str();
  });
}

int nm_merge_table_self_check(const nm_merge_table* t) { return t && t->table->self_check() ? 1 : 0; }

nm_status nm_verify_linearity(const nm_graph* g, const nm_motif_list* list, size_t i, size_t j, int* holds,
                              char** detail) {
  return guarded([&] {
    check(g && holds, "null argument");
    const LinearityReport r = verify_linearity(g->g, motif_at(list, i), motif_at(list, j));
    *holds = r.holds ? 1 : 0;
    if (detail) *detail = dup_string(r.detail);
  });
}

nm_status nm_exact_subsample_covariance(const nm_graph* g, const nm_motif_list* list, size_t i, size_t j, size_t b,
                                        double* out) {
  return guarded([&] {
    check(g && out, "null argument");
    *out = exact_subsample_covariance(g->g, motif_at(list, i), motif_at(list, j), b);
  });
}

nm_status nm_rate_eval(const char* expression, double n, double* out) {
  return guarded([&] {
    check(expression && out, "null argument");
    *out = RateExpression::parse(expression)(n);
  });
}

nm_status nm_graphon_builtin(const char* name, double rho, nm_graphon** out) {
  return guarded([&] {
    check(name && out, "null argument");
    check(std::isfinite(rho) && rho > 0.0, "rho must be positive");
    *out = new nm_graphon{GraphonModel::builtin(name, rho)};
  });
}

void nm_graphon_free(nm_graphon* w) { delete w; }

const char* nm_graphon_name(const nm_graphon* w) { return w ? w->model.name().c_str() : nullptr; }

double nm_graphon_rho(const nm_graphon* w) { return w ? w->model.rho() : std::numeric_limits<double>::quiet_NaN(); }

void nm_graphon_normalizer(const nm_graphon* w, double* value, double* std_error) {
  if (!w) return;
  if (value) *value = w->model.normalizer().value;
  if (std_error) *std_error = w->model.normalizer().std_error;
}

nm_status nm_graphon_sample(const nm_graphon* w, size_t n, uint64_t seed, unsigned threads, nm_graph** out) {
  return guarded([&] {
    check(w && out, "null argument");
    *out = new nm_graph{sample_graph(w->model, n, seed, threads)};
  });
}

nm_status nm_graphon_moment(const nm_graphon* w, const nm_motif_list* list, size_t i, size_t draws, uint64_t seed,
                            unsigned threads, double* p_w, double* p_w_se, double* mean, double* mean_se) {
  return guarded([&] {
    check(w != nullptr, "null argument");
    check(draws > 0, "draws must be positive");
    const Motif& m = motif_at(list, i);
    const PopulationMoment p = population_moment(w->model, m.graph(), draws, seed, threads);
    double scale = 1.0;
    for (int k = 2; k <= m.nodes(); ++k) scale *= k;
    scale /= static_cast<double>(m.automorphisms());
    if (p_w) *p_w = p.value;
    if (p_w_se) *p_w_se = p.std_error;
    if (mean) *mean = scale * p.value;
    if (mean_se) *mean_se = scale * p.std_error;
  });
}

nm_status nm_graphon_limiting_covariance(const nm_graphon* w, const nm_motif_list* list, size_t i, size_t j,
                                         size_t draws, uint64_t seed, unsigned threads, double* value,
                                         double* std_error) {
  return guarded([&] {
    check(w != nullptr, "null argument");
    check(draws > 0, "draws must be positive");
    const Estimate e = limiting_covariance(w->model, motif_at(list, i), motif_at(list, j), draws, seed, threads);
    if (value) *value = e.value;
    if (std_error) *std_error = e.std_error;
  });
}

nm_status nm_subsample_run(const nm_graph* g, const nm_motif_list* list, const nm_subsample_options* options,
                           nm_sample** out) {
  return guarded([&] {
    check(g && list && options && out, "null argument");
    SubsampleConfig config;
    config.b = options->b;
    config.n_sub = options->n_sub;
    config.motifs = list->motifs;
    config.mode = mode_of(options->mode);
    config.seed = options->seed;
    MomentSample sample = run_subsampling(g->g, config, options->threads);
    auto* s = new nm_sample{sample.y, names_of(list->motifs), std::nullopt};
    s->raw = std::move(sample);
    *out = s;
  });
}

nm_status nm_sample_rescale(const nm_sample* s, nm_sample** out) {
  return guarded([&] {
    check(s && out, "null argument");
    check(s->raw.has_value(), "only raw subsampling output can be rescaled");
    *out = new nm_sample{rescale(*s->raw), s->names, std::nullopt};
  });
}

nm_status nm_reference_sample(const nm_graphon* w, const nm_motif_list* list, const nm_reference_options* options,
                              nm_sample** out) {
  return guarded([&] {
    check(w && list && options && out, "null argument");
    ReferenceConfig config;
    config.b = options->b;
    config.n_sub = options->n_sub;
    config.motifs = list->motifs;
    config.mode = mode_of(options->mode);
    config.seed = options->seed;
    if (options->n_host > 0) config.n_host = options->n_host;
    config.pool_size = options->pool_size;
    config.pool_seed = options->pool_seed;
    config.per_draw_density = options->per_draw_density != 0;
    *out = new nm_sample{reference_sample(w->model, config, options->threads).z, names_of(list->motifs),
                         std::nullopt};
  });
}

void nm_sample_free(nm_sample* s) { delete s; }

size_t nm_sample_rows(const nm_sample* s) { return s ? s->m.rows : 0; }

size_t nm_sample_cols(const nm_sample* s) { return s ? s->m.cols : 0; }

const double* nm_sample_data(const nm_sample* s) { return s ? s->m.data.data() : nullptr; }

double nm_sample_rho_hat(const nm_sample* s) {
  return s && s->raw ? s->raw->rho_hat : std::numeric_limits<double>::quiet_NaN();
}

const double* nm_sample_host_moments(const nm_sample* s) {
  return s && s->raw ? s->raw->host_moments.data() : nullptr;
}

nm_status nm_sample_csv(const nm_sample* s, char** out) {
  return guarded([&] {
    check(s && out, "null argument");
    std::string text;
    for (std::size_t j = 0; j < s->names.size(); ++j) {
      if (j) text += ',';
      text += s->names[j];
    }
    text += '\n';
    char buffer[32];
    for (std::size_t i = 0; i < s->m.rows; ++i) {
      for (std::size_t j = 0; j < s->m.cols; ++j) {
        if (j) text += ',';
        std::snprintf(buffer, sizeof buffer, "%.17g", s->m.at(i, j));
        text += buffer;
      }
      text += '\n';
    }
    *out = dup_string(text);
  });
}

nm_status nm_sample_diagnostics_json(const nm_sample* s, char** out) {
  return guarded([&] {
    check(s && out, "null argument");
    check(s->raw.has_value(), "diagnostics need raw subsampling output");
    const SubsampleDiagnostics d = diagnostics(*s->raw);
    nlohmann::ordered_json j;
    j["rho_hat"] = d.rho_hat;
    nlohmann::ordered_json host, brho;
    for (std::size_t k = 0; k < s->names.size(); ++k) {
      host[s->names[k]] = s->raw->host_moments[k];
      brho[s->names[k]] = d.b_rho_2e[k];
    }
    j["host_moments"] = host;
    j["b_rho_2e"] = brho;
    // JSON has no infinity.
    if (std::isfinite(d.condition_number))
      j["condition_number"] = d.condition_number;
    else
      j["condition_number"] = nullptr;
    *out = dup_string(j.dump(2));
  });
}

nm_status nm_sample_ecdf(const nm_sample* s, const double* query, double* out) {
  return guarded([&] {
    check(s && query && out, "null argument");
    *out = EmpiricalJointCDF(s->m)(std::span<const double>(query, s->m.cols));
  });
}

nm_status nm_ks_distance(const nm_sample* a, const nm_sample* b, double* out) {
  return guarded([&] {
    check(a && b && out, "null argument");
    *out = ks_distance(EmpiricalJointCDF(a->m), EmpiricalJointCDF(b->m));
  });
}

nm_status nm_conditional_slice_json(const nm_sample* s, size_t cond_index, double target, double bandwidth,
                                    char** out) {
  return guarded([&] {
    check(s && out, "null argument");
    const ConditionalSlice slice = conditional_slice(s->m, cond_index, target, bandwidth);
    nlohmann::ordered_json j;
    j["cond_motif"] = s->names.at(cond_index);
    j["target"] = target;
    j["bandwidth"] = bandwidth;
    j["count"] = slice.count;
    auto summaries = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < slice.summaries.size(); ++k) {
      const auto& c = slice.summaries[k];
      summaries[s->names[k]] = {{"q05", c.q05}, {"q25", c.q25}, {"q50", c.q50}, {"q75", c.q75}, {"q95", c.q95}};
    }
    j["summaries"] = summaries;
    *out = dup_string(j.dump(2));
  });
}

nm_status nm_compare_case1(const nm_graph* large, const nm_graph* small, const nm_motif_list* list,
                           const nm_case1_options* options, char** report, nm_sample** cloud) {
  return guarded([&] {
    check(large && small && list && options && report, "null argument");
    Case1Options o;
    o.motifs = list->motifs;
    o.n_sub = options->n_sub;
    o.mode = mode_of(options->mode);
    o.seed = options->seed;
    if (options->bandwidth > 0.0) o.bandwidth = options->bandwidth;
    ComparisonReport r = case1_compare(large->g, small->g, o, options->threads);
    std::unique_ptr<nm_sample> c;
    if (cloud) c.reset(new nm_sample{std::move(r.clouds.at(0)), names_of(list->motifs), std::nullopt});
    *report = dup_string(report_to_json(r));
    if (cloud) *cloud = c.release();
  });
}

nm_status nm_compare_case2(const nm_graph* a, const nm_graph* b, const nm_motif_list* list,
                           const nm_case2_options* options, char** report, nm_sample** cloud_a,
                           nm_sample** cloud_b) {
  return guarded([&] {
    check(a && b && list && options && report, "null argument");
    Case2Options o;
    o.b = options->b;
    o.motifs = list->motifs;
    o.n_sub = options->n_sub;
    o.mode = mode_of(options->mode);
    o.seed = options->seed;
    o.baseline = options->baseline != 0;
    ComparisonReport r = case2_compare(a->g, b->g, o, options->threads);
    std::unique_ptr<nm_sample> ca, cb;
    if (cloud_a) ca.reset(new nm_sample{std::move(r.clouds.at(0)), names_of(list->motifs), std::nullopt});
    if (cloud_b) cb.reset(new nm_sample{std::move(r.clouds.at(1)), names_of(list->motifs), std::nullopt});
    *report = dup_string(report_to_json(r));
    if (cloud_a) *cloud_a = ca.release();
    if (cloud_b) *cloud_b = cb.release();
  });
}

nm_status nm_experiment_ks_error(const nm_experiment_options* options, char** csv) {
  return guarded([&] {
    check(options && csv, "null argument");
    check(options->ns || options->n_count == 0, "null n list");
    ExperimentGrid grid;
    if (options->graphon) grid.graphon = options->graphon;
    grid.ns.assign(options->ns, options->ns + options->n_count);
    if (options->b_rule) grid.b_rule = SizeRule::parse(options->b_rule);
    if (options->rho) grid.rho = RateExpression::parse(options->rho);
    grid.motif_sets = parse_motif_sets(options->motif_sets);
    grid.mode = mode_of(options->mode);
    grid.n_sub = options->n_sub;
    grid.reps = options->reps;
    grid.reference_size = options->reference_size;
    grid.seed = options->seed;
    *csv = dup_string(experiment_csv(ks_error_experiment(grid, options->threads), options->include_runtime != 0));
  });
}

}  // extern "C"
