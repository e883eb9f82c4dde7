// netmoments command-line tool. Talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "netmoments/netmoments.h"

using json = nlohmann::ordered_json;

namespace {

struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ok(nm_status status) {
  if (status != NM_OK) throw RuntimeFailure(nm_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<nm_graph, Deleter<nm_graph, nm_graph_free>>;
using MotifsPtr = std::unique_ptr<nm_motif_list, Deleter<nm_motif_list, nm_motifs_free>>;
using SamplePtr = std::unique_ptr<nm_sample, Deleter<nm_sample, nm_sample_free>>;
using GraphonPtr = std::unique_ptr<nm_graphon, Deleter<nm_graphon, nm_graphon_free>>;
using TablePtr = std::unique_ptr<nm_merge_table, Deleter<nm_merge_table, nm_merge_table_free>>;

std::string take(char* s) {
  std::string out(s);
  nm_string_free(s);
  return out;
}

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buffer;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0)
    EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot open " + path + " for writing");
  out << text;
  if (!out) throw RuntimeFailure("write failed: " + path);
}

// JSON config: either a flat object of option names, or a run manifest whose
// "config" member is such an object. Keys apply to the selected subcommand.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (doc.contains("config") && doc.contains("command")) doc = doc["config"];
    if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<std::string> parents;
    for (const CLI::App* sub = app_; !sub->get_subcommands().empty();) {
      sub = sub->get_subcommands().front();
      parents.push_back(sub->get_name());
    }
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }
  const CLI::App* app_;
};

// Resolved values of every option of `sub`, keyed by long name.
json resolved_config(const CLI::App* sub) {
  json config = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "manifest") continue;
    const auto& results = opt->results();
    if (opt->get_expected_min() == 0) {
      if (!results.empty()) config[name] = true;
      continue;
    }
    if (results.empty()) {
      if (!opt->get_default_str().empty()) config[name] = opt->get_default_str();
      continue;
    }
    if (opt->get_items_expected_max() > 1)
      config[name] = results;
    else
      config[name] = results.back();
  }
  return config;
}

struct Manifest {
  std::string command;
  json config;
  std::uint64_t seed = 0;
  bool has_seed = false;
  json inputs = json::array();
  json outputs = json::array();
  json derived = json::object();
  std::string started = now_utc();

  void input(const std::string& path) { inputs.push_back({{"path", path}, {"sha256", sha256_file(path)}}); }
  void output(const std::string& path) { outputs.push_back(path); }

  void write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["config"] = config;
    if (has_seed)
      j["seed"] = seed;
    else
      j["seed"] = nullptr;
    j["version"] = nm_version();
    if (!derived.empty()) j["derived"] = derived;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["started_at"] = started;
    j["finished_at"] = now_utc();
    write_text(path, j.dump(2) + "\n");
  }
};

nm_count_mode parse_mode(const std::string& s) {
  return s == "induced" ? NM_INDUCED : NM_NONINDUCED;
}

struct GraphInput {
  int index_base = 0;
  bool drop_self_loops = false;
  bool lcc = false;

  void add(CLI::App* app) {
    app->add_option("--index-base", index_base, "Smallest node id in the file")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();
    app->add_flag("--drop-self-loops", drop_self_loops, "Skip self-loops instead of failing");
    app->add_flag("--lcc", lcc, "Keep only the largest connected component");
  }

  GraphPtr load(const std::string& path, Manifest& manifest) const {
    nm_graph* raw = nullptr;
    ok(nm_graph_load_file(path.c_str(), index_base, drop_self_loops ? 1 : 0, &raw));
    GraphPtr g(raw);
    manifest.input(path);
    if (lcc) {
      ok(nm_graph_largest_component(g.get(), &raw));
      g.reset(raw);
    }
    return g;
  }
};

MotifsPtr parse_motifs(const std::string& spec) {
  nm_motif_list* raw = nullptr;
  ok(nm_motifs_parse(spec.c_str(), &raw));
  return MotifsPtr(raw);
}

std::string graphon_name(const std::string& s) {
  if (s == "1") return "graphon1";
  if (s == "2") return "graphon2";
  return s;
}

std::string num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Seed {
  std::uint64_t value = 0;

  void add(CLI::App* app) { app->add_option("--seed", value, "Master seed (random when omitted)"); }

  // Draws a seed if none was given and records it in the manifest config.
  std::uint64_t resolve(CLI::App* app, Manifest& manifest) {
    if (app->count("--seed") == 0) value = random_seed();
    manifest.seed = value;
    manifest.has_seed = true;
    manifest.config["seed"] = std::to_string(value);
    return value;
  }
};

std::string command_path(const CLI::App* sub) {
  std::string out = sub->get_name();
  for (const CLI::App* p = sub->get_parent(); p && p->get_parent(); p = p->get_parent()) out = p->get_name() + " " + out;
  return out;
}

Manifest begin(const CLI::App* sub) {
  Manifest m;
  m.command = command_path(sub);
  m.config = resolved_config(sub);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network moments under node subsampling"};
  app.set_version_flag("--version", nm_version());
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON config or run manifest; flags win");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.failure_message(CLI::FailureMessage::help);

  unsigned threads = 0;
  auto add_threads = [&](CLI::App* a) {
    a->add_option("--threads", threads, "Worker threads (default NETMOMENTS_THREADS or all cores)");
  };
  std::string manifest_path;
  auto add_manifest = [&](CLI::App* a) {
    a->add_option("--manifest", manifest_path, "Write a run manifest to this path");
  };

  GraphInput graph_in;
  std::string in_path, motifs = "edge,twostar,triangle", mode = "noninduced";
  auto add_mode = [&](CLI::App* a) {
    a->add_option("--mode", mode, "Count mode")->check(CLI::IsMember({"noninduced", "induced"}))->capture_default_str();
  };

  // count / moment
  auto* count = app.add_subcommand("count", "Exact motif counts of a graph");
  count->add_option("--in", in_path, "Edge-list file")->required();
  count->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  add_mode(count);
  graph_in.add(count);
  add_manifest(count);

  auto* moment = app.add_subcommand("moment", "Network moments X / C(n, r)");
  moment->add_option("--in", in_path, "Edge-list file")->required();
  moment->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  add_mode(moment);
  graph_in.add(moment);
  add_manifest(moment);

  // merge-table
  std::string first, second;
  bool self_check = false;
  auto* merge = app.add_subcommand("merge-table", "Merge table of a motif pair");
  merge->add_option("first", first, "Motif R")->required();
  merge->add_option("second", second, "Motif R'")->required();
  merge->add_flag("--check", self_check, "Also evaluate the product identity on a complete graph");
  add_manifest(merge);

  // simulate
  std::string graphon = "1", rho_schedule = "0.25*n^-0.1", out_path;
  std::size_t n = 0;
  Seed sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Sample a sparse graphon graph");
  simulate->add_option("--graphon", graphon, "1, 2, graphon1, graphon2 or constant")->capture_default_str();
  simulate->add_option("--n", n, "Number of nodes")->required();
  simulate->add_option("--rho-schedule", rho_schedule, "Sparsity as an expression in n")->capture_default_str();
  simulate->add_option("--out", out_path, "Output edge list")->required();
  sim_seed.add(simulate);
  add_threads(simulate);

  // subsample
  std::size_t b = 0, nsub = 0;
  bool rescaled = false;
  Seed sub_seed;
  auto* subsample = app.add_subcommand("subsample", "Moments of uniformly drawn induced subgraphs");
  subsample->add_option("--in", in_path, "Edge-list file")->required();
  subsample->add_option("--b", b, "Subsample size")->required();
  subsample->add_option("--nsub", nsub, "Number of subsamples")->required();
  subsample->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  add_mode(subsample);
  subsample->add_option("--out", out_path, "Output CSV")->required();
  subsample->add_flag("--rescale", rescaled, "Write sqrt(b) rho^-e (y - U(G)) instead of raw moments");
  graph_in.add(subsample);
  sub_seed.add(subsample);
  add_threads(subsample);

  // compare
  auto* compare = app.add_subcommand("compare", "Compare networks of different sizes");
  compare->require_subcommand(1);
  std::string large, small, report_path, cloud_path;
  std::size_t nsub_cmp = 0;
  double bandwidth = 0.0;
  Seed cmp1_seed;
  auto* case1 = compare->add_subcommand("case1", "Locate a small graph in the subsampling cloud of a large one");
  case1->add_option("--large", large, "Edge list of the large graph")->required();
  case1->add_option("--small", small, "Edge list of the small graph")->required();
  case1->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  case1->add_option("--nsub", nsub_cmp, "Number of subsamples")->required();
  add_mode(case1);
  case1->add_option("--bandwidth", bandwidth, "Window of the conditional slice (default: rule of thumb)");
  case1->add_option("--report", report_path, "JSON report (stdout when omitted)");
  case1->add_option("--cloud", cloud_path, "CSV of the subsampled moments");
  graph_in.add(case1);
  cmp1_seed.add(case1);
  add_threads(case1);
  add_manifest(case1);

  std::string path_a, path_b, cloud_a, cloud_b;
  std::size_t b_cmp = 0;
  bool baseline = false;
  Seed cmp2_seed;
  auto* case2 = compare->add_subcommand("case2", "Compare subsampling clouds of two graphs at a common size");
  case2->add_option("--a", path_a, "Edge list of the first graph")->required();
  case2->add_option("--b", path_b, "Edge list of the second graph")->required();
  case2->add_option("--subsample-size", b_cmp, "Common subsample size")->required();
  case2->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  case2->add_option("--nsub", nsub_cmp, "Number of subsamples per graph")->required();
  add_mode(case2);
  case2->add_flag("--baseline", baseline, "Also compare each graph with an independent rerun on itself");
  case2->add_option("--report", report_path, "JSON report (stdout when omitted)");
  case2->add_option("--cloud-a", cloud_a, "CSV cloud of the first graph");
  case2->add_option("--cloud-b", cloud_b, "CSV cloud of the second graph");
  graph_in.add(case2);
  cmp2_seed.add(case2);
  add_threads(case2);
  add_manifest(case2);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Validation experiments");
  experiment->require_subcommand(1);
  std::vector<std::size_t> ns;
  std::string b_rule = "n23", rho = "0.25*n^-0.1", motif_sets;
  std::size_t reps = 10, reference_size = 2000, nsub_exp = 500;
  bool no_runtime = false;
  Seed exp_seed;
  auto* ks_error = experiment->add_subcommand("ks-error", "KS distance between subsampling and reference CDFs");
  ks_error->add_option("--graphon", graphon, "1, 2, graphon1, graphon2 or constant")->capture_default_str();
  ks_error->add_option("--n", ns, "Host sizes, comma separated")->delimiter(',')->required();
  ks_error->add_option("--b-rule", b_rule, "n23, 2sqrt or an expression in n")->capture_default_str();
  ks_error->add_option("--rho", rho, "Sparsity as an expression in n")->capture_default_str();
  ks_error->add_option("--motif-sets", motif_sets, "Sets such as 'triangle;twostar+triangle' (default: six sets)");
  ks_error->add_option("--nsub", nsub_exp, "Subsamples per host")->capture_default_str();
  ks_error->add_option("--reps", reps, "Host graphs per n")->capture_default_str();
  ks_error->add_option("--reference-size", reference_size, "Reference draws per n")->capture_default_str();
  add_mode(ks_error);
  ks_error->add_flag("--no-runtime", no_runtime, "Omit the runtime column");
  ks_error->add_option("--out", out_path, "Output CSV")->required();
  exp_seed.add(ks_error);
  add_threads(ks_error);

  // graphon-moment
  double rho_value = 1.0;
  std::size_t draws = 2'000'000;
  bool covariance = false;
  Seed gm_seed;
  auto* graphon_moment = app.add_subcommand("graphon-moment", "Population moments of a graphon");
  graphon_moment->add_option("--graphon", graphon, "1, 2, graphon1, graphon2 or constant")->capture_default_str();
  graphon_moment->add_option("--motifs", motifs, "Comma separated motif names")->capture_default_str();
  graphon_moment->add_option("--rho", rho_value, "Sparsity level used for clipping")->capture_default_str();
  graphon_moment->add_option("--draws", draws, "Monte Carlo draws per integral")->capture_default_str();
  graphon_moment->add_flag("--covariance", covariance, "Also print the limiting covariance matrix");
  gm_seed.add(graphon_moment);
  add_threads(graphon_moment);
  add_manifest(graphon_moment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const nm_count_mode count_mode = parse_mode(mode);

    if (*count || *moment) {
      CLI::App* sub = *count ? count : moment;
      Manifest manifest = begin(sub);
      GraphPtr g = graph_in.load(in_path, manifest);
      MotifsPtr list = parse_motifs(motifs);
      const std::size_t k = nm_motifs_size(list.get());
      if (*count) {
        for (std::size_t i = 0; i < k; ++i) {
          char* value = nullptr;
          ok(nm_count(g.get(), list.get(), i, count_mode, &value));
          std::cout << nm_motifs_name(list.get(), i) << ' ' << take(value) << '\n';
        }
      } else {
        std::vector<double> values(k);
        ok(nm_moments(g.get(), list.get(), count_mode, values.data()));
        for (std::size_t i = 0; i < k; ++i) std::cout << nm_motifs_name(list.get(), i) << ' ' << num(values[i]) << '\n';
      }
      if (!manifest_path.empty()) manifest.write(manifest_path);
      return 0;
    }

    if (*merge) {
      Manifest manifest = begin(merge);
      MotifsPtr list = parse_motifs(first + "," + second);
      nm_merge_table* raw = nullptr;
      ok(nm_merge_table_build(list.get(), 0, 1, &raw));
      TablePtr table(raw);
      std::cout << "graph q c\n";
      for (std::size_t k = 0; k < nm_merge_table_size(table.get()); ++k) {
        int q = 0;
        std::uint64_t c = 0;
        const char* key = nullptr;
        ok(nm_merge_table_entry(table.get(), k, &q, nullptr, nullptr, &c, nullptr, &key));
        std::cout << key << ' ' << q << ' ' << c << '\n';
      }
      if (self_check) {
        const bool holds = nm_merge_table_self_check(table.get()) != 0;
        std::cout << "self-check " << (holds ? "ok" : "FAILED") << '\n';
        if (!holds) return 1;
      }
      if (!manifest_path.empty()) manifest.write(manifest_path);
      return 0;
    }

    if (*simulate) {
      Manifest manifest = begin(simulate);
      const std::uint64_t seed = sim_seed.resolve(simulate, manifest);
      double rho_n = 0.0;
      ok(nm_rate_eval(rho_schedule.c_str(), static_cast<double>(n), &rho_n));
      nm_graphon* w_raw = nullptr;
      ok(nm_graphon_builtin(graphon_name(graphon).c_str(), rho_n, &w_raw));
      GraphonPtr w(w_raw);
      nm_graph* raw = nullptr;
      ok(nm_graphon_sample(w.get(), n, seed, threads, &raw));
      GraphPtr g(raw);
      ok(nm_graph_write_file(g.get(), out_path.c_str()));
      manifest.output(out_path);
      manifest.derived["rho"] = rho_n;
      manifest.write(out_path + ".manifest.json");
      double density = 0.0;
      ok(nm_graph_edge_density(g.get(), &density));
      std::cerr << "nodes " << n << " edges " << nm_graph_edge_count(g.get()) << " rho " << num(rho_n)
                << " edge_density " << num(density) << '\n';
      return 0;
    }

    if (*subsample) {
      Manifest manifest = begin(subsample);
      const std::uint64_t seed = sub_seed.resolve(subsample, manifest);
      GraphPtr g = graph_in.load(in_path, manifest);
      MotifsPtr list = parse_motifs(motifs);
      nm_subsample_options options{b, nsub, count_mode, seed, threads};
      nm_sample* raw = nullptr;
      ok(nm_subsample_run(g.get(), list.get(), &options, &raw));
      SamplePtr sample(raw);
      SamplePtr written;
      if (rescaled) {
        ok(nm_sample_rescale(sample.get(), &raw));
        written.reset(raw);
      }
      char* csv = nullptr;
      ok(nm_sample_csv(written ? written.get() : sample.get(), &csv));
      write_text(out_path, take(csv));
      manifest.output(out_path);

      char* diag = nullptr;
      ok(nm_sample_diagnostics_json(sample.get(), &diag));
      json sidecar;
      sidecar["rho_hat"] = nm_sample_rho_hat(sample.get());
      json host = json::object();
      const double* hm = nm_sample_host_moments(sample.get());
      for (std::size_t i = 0; i < nm_motifs_size(list.get()); ++i) host[nm_motifs_name(list.get(), i)] = hm[i];
      sidecar["host_moments"] = host;
      sidecar["host_nodes"] = nm_graph_node_count(g.get());
      sidecar["config"] = manifest.config;
      sidecar["seed"] = seed;
      sidecar["replicate_streams"] = "replicate i uses stream (seed, i)";
      sidecar["diagnostics"] = json::parse(take(diag));
      write_text(out_path + ".json", sidecar.dump(2) + "\n");
      manifest.output(out_path + ".json");
      manifest.write(out_path + ".manifest.json");

      const json& d = sidecar["diagnostics"];
      std::cerr << "rho_hat " << num(d["rho_hat"].get<double>()) << '\n';
      for (const auto& [name, value] : d["b_rho_2e"].items())
        std::cerr << "b*rho_hat^(2e) " << name << ' ' << num(value.get<double>()) << '\n';
      std::cerr << "condition_number " << (d["condition_number"].is_null() ? "inf" : num(d["condition_number"].get<double>()))
                << " (heuristic, no pass/fail claim)\n";
      return 0;
    }

    if (*case1) {
      Manifest manifest = begin(case1);
      const std::uint64_t seed = cmp1_seed.resolve(case1, manifest);
      GraphPtr gl = graph_in.load(large, manifest);
      GraphPtr gs = graph_in.load(small, manifest);
      MotifsPtr list = parse_motifs(motifs);
      nm_case1_options options{nsub_cmp, count_mode, seed, bandwidth, threads};
      char* report = nullptr;
      nm_sample* raw = nullptr;
      ok(nm_compare_case1(gl.get(), gs.get(), list.get(), &options, &report, cloud_path.empty() ? nullptr : &raw));
      SamplePtr cloud(raw);
      const std::string text = take(report) + "\n";
      if (!cloud_path.empty()) {
        char* csv = nullptr;
        ok(nm_sample_csv(cloud.get(), &csv));
        write_text(cloud_path, take(csv));
        manifest.output(cloud_path);
      }
      if (report_path.empty()) {
        std::cout << text;
        if (!manifest_path.empty()) manifest.write(manifest_path);
      } else {
        write_text(report_path, text);
        manifest.output(report_path);
        manifest.write(report_path + ".manifest.json");
      }
      return 0;
    }

    if (*case2) {
      Manifest manifest = begin(case2);
      const std::uint64_t seed = cmp2_seed.resolve(case2, manifest);
      GraphPtr ga = graph_in.load(path_a, manifest);
      GraphPtr gb = graph_in.load(path_b, manifest);
      MotifsPtr list = parse_motifs(motifs);
      nm_case2_options options{b_cmp, nsub_cmp, count_mode, seed, baseline ? 1 : 0, threads};
      char* report = nullptr;
      nm_sample *ra = nullptr, *rb = nullptr;
      ok(nm_compare_case2(ga.get(), gb.get(), list.get(), &options, &report, cloud_a.empty() ? nullptr : &ra,
                          cloud_b.empty() ? nullptr : &rb));
      SamplePtr ca(ra), cb(rb);
      const std::string text = take(report) + "\n";
      for (auto [path, sample] : {std::pair{&cloud_a, ca.get()}, std::pair{&cloud_b, cb.get()}}) {
        if (path->empty()) continue;
        char* csv = nullptr;
        ok(nm_sample_csv(sample, &csv));
        write_text(*path, take(csv));
        manifest.output(*path);
      }
      if (report_path.empty()) {
        std::cout << text;
        if (!manifest_path.empty()) manifest.write(manifest_path);
      } else {
        write_text(report_path, text);
        manifest.output(report_path);
        manifest.write(report_path + ".manifest.json");
      }
      return 0;
    }

    if (*ks_error) {
      Manifest manifest = begin(ks_error);
      const std::uint64_t seed = exp_seed.resolve(ks_error, manifest);
      const std::string name = graphon_name(graphon);
      nm_experiment_options options{};
      options.graphon = name.c_str();
      options.ns = ns.data();
      options.n_count = ns.size();
      options.b_rule = b_rule.c_str();
      options.rho = rho.c_str();
      options.motif_sets = motif_sets.empty() ? nullptr : motif_sets.c_str();
      options.mode = count_mode;
      options.n_sub = nsub_exp;
      options.reps = reps;
      options.reference_size = reference_size;
      options.seed = seed;
      options.include_runtime = no_runtime ? 0 : 1;
      options.threads = threads;
      char* csv = nullptr;
      ok(nm_experiment_ks_error(&options, &csv));
      write_text(out_path, take(csv));
      manifest.output(out_path);
      manifest.write(out_path + ".manifest.json");
      return 0;
    }

    if (*graphon_moment) {
      Manifest manifest = begin(graphon_moment);
      const std::uint64_t seed = gm_seed.resolve(graphon_moment, manifest);
      nm_graphon* w_raw = nullptr;
      ok(nm_graphon_builtin(graphon_name(graphon).c_str(), rho_value, &w_raw));
      GraphonPtr w(w_raw);
      MotifsPtr list = parse_motifs(motifs);
      const std::size_t k = nm_motifs_size(list.get());
      std::cout << "motif p_w p_w_se mean mean_se\n";
      for (std::size_t i = 0; i < k; ++i) {
        double p = 0, p_se = 0, mean = 0, mean_se = 0;
        ok(nm_graphon_moment(w.get(), list.get(), i, draws, seed, threads, &p, &p_se, &mean, &mean_se));
        std::cout << nm_motifs_name(list.get(), i) << ' ' << num(p) << ' ' << num(p_se) << ' ' << num(mean) << ' '
                  << num(mean_se) << '\n';
      }
      if (covariance) {
        std::cout << "covariance motif_a motif_b value se\n";
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i; j < k; ++j) {
            double value = 0, se = 0;
            ok(nm_graphon_limiting_covariance(w.get(), list.get(), i, j, draws, seed, threads, &value, &se));
            std::cout << "covariance " << nm_motifs_name(list.get(), i) << ' ' << nm_motifs_name(list.get(), j) << ' '
                      << num(value) << ' ' << num(se) << '\n';
          }
      }
      if (!manifest_path.empty()) manifest.write(manifest_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
