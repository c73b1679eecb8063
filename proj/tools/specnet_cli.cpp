// specnet command-line tool. Talks to the library exclusively through the C API.

#include <specnet/specnet.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void raise(int code, std::string message) { throw CliFailure{code, std::move(message)}; }

void check(specnet_status s) {
  if (s != SPECNET_OK) raise(s, specnet_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<specnet_graph, Deleter<specnet_graph, specnet_graph_free>>;
using Result = std::unique_ptr<specnet_result, Deleter<specnet_result, specnet_result_free>>;
using Clusters =
    std::unique_ptr<specnet_clustering, Deleter<specnet_clustering, specnet_clustering_free>>;
using Fans = std::unique_ptr<specnet_fans, Deleter<specnet_fans, specnet_fans_free>>;
using Condensed =
    std::unique_ptr<specnet_condensed, Deleter<specnet_condensed, specnet_condensed_free>>;
using Comparison =
    std::unique_ptr<specnet_comparison, Deleter<specnet_comparison, specnet_comparison_free>>;

std::string fmt(double x, const char* format = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

template <class Seq>
std::string join(const Seq& values, const char* format = "%.10g") {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_integral_v<std::decay_t<decltype(v)>>) {
      out += std::to_string(v);
    } else {
      out += fmt(v, format);
    }
  }
  return out;
}

Graph load_graph(const std::string& path) {
  specnet_graph* g = nullptr;
  const bool csv = path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  check(csv ? specnet_graph_load_csv(path.c_str(), &g) : specnet_graph_load_json(path.c_str(), &g));
  return Graph(g);
}

std::string metadata_of(const specnet_graph* g) {
  char* raw = nullptr;
  check(specnet_graph_metadata(g, &raw));
  std::string s(raw);
  specnet_string_free(raw);
  return s;
}

// Pulls an integer or number field out of a flat metadata object such as
// {"ell":4,"m":0.25}. Only used to default --ell / --m from a design result.
std::optional<double> metadata_number(const std::string& json, const std::string& key) {
  const std::string needle = "\"" + key + "\":";
  const auto at = json.find(needle);
  if (at == std::string::npos) return std::nullopt;
  try {
    return std::stod(json.substr(at + needle.size()));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<double> spectrum_of(const specnet_graph* g) {
  std::vector<double> v(specnet_graph_n(g));
  check(specnet_graph_spectrum(g, v.data()));
  return v;
}

// ---------------------------------------------------------------- design

struct DesignArgs {
  int n = 0;
  int ell = 0;
  double m = 0;
  int starts = 16;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  int parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out;
  std::string trace;
  specnet_solver_config cfg{};
};

int cmd_design(DesignArgs& a) {
  specnet_result* raw = nullptr;
  if (a.seeds.empty()) {
    check(specnet_design(a.n, a.ell, a.m, a.seed, a.starts, a.parallelism, &a.cfg, &raw));
  } else {
    check(specnet_design_with_seeds(a.n, a.ell, a.m, a.seeds.data(),
                                    static_cast<int>(a.seeds.size()), a.parallelism, &a.cfg,
                                    &raw));
  }
  Result r(raw);
  const int count = specnet_result_start_count(r.get());
  int converged = 0, failed = 0;
  for (int i = 0; i < count; ++i) {
    specnet_start_info info;
    check(specnet_result_start(r.get(), i, &info));
    converged += info.converged;
    failed += info.failed;
  }
  std::cout << "objective=" << fmt(specnet_result_objective(r.get())) << '\n'
            << "bound=" << fmt(specnet_result_bound(r.get())) << '\n'
            << "ratio=" << fmt(specnet_result_ratio(r.get()), "%.4f") << '\n'
            << "lambda2=" << fmt(specnet_result_lambda2(r.get())) << '\n'
            << "best_seed=" << specnet_result_best_seed(r.get()) << '\n'
            << "starts=" << count << " converged=" << converged << " failed=" << failed << '\n'
            << "wall_time_seconds=" << fmt(specnet_result_wall_time(r.get()), "%.3f") << '\n';
  if (!a.out.empty()) {
    check(specnet_result_save_json(r.get(), a.out.c_str()));
    std::cout << "wrote " << a.out << '\n';
  }
  if (!a.trace.empty()) {
    check(specnet_result_save_trace(r.get(), a.trace.c_str()));
    std::cout << "wrote " << a.trace << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string in;
  std::string out;
  std::string dot;
  double display_threshold = 0;
  std::string threshold = "auto";
  int keep_top = 0;
  int ell = 0;
  std::uint64_t seed = 0;
  std::string clusters;
  std::string fan_tol = "auto";
  std::string variant = "weak";
};

int resolve_ell(const AnalyzeArgs& a, const specnet_graph* g) {
  if (a.ell > 0) return a.ell;
  if (auto ell = metadata_number(metadata_of(g), "ell")) return static_cast<int>(*ell);
  raise(SPECNET_INVALID_ARGUMENT, "--ell is required (input carries no ell metadata)");
}

double parse_auto(const std::string& text, const char* flag, double fallback) {
  if (text == "auto") return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  raise(SPECNET_INVALID_ARGUMENT, std::string(flag) + " must be a number or 'auto'");
}

Clusters clustering_for(const AnalyzeArgs& a, const specnet_graph* g) {
  specnet_clustering* c = nullptr;
  if (!a.clusters.empty()) {
    check(specnet_clustering_load_json(g, a.clusters.c_str(), &c));
  } else {
    check(specnet_cluster(g, resolve_ell(a, g), a.seed, &c));
  }
  return Clusters(c);
}

Fans fans_for(const AnalyzeArgs& a, const specnet_graph* g, const specnet_clustering* c,
              double* tol_used) {
  double qm = 0;
  check(specnet_quarter_mean_weight(g, &qm));
  const double tol = parse_auto(a.fan_tol, "--fan-tol", qm);
  if (tol_used != nullptr) *tol_used = tol;
  specnet_fans* f = nullptr;
  check(specnet_detect_fans(g, c, tol, &f));
  return Fans(f);
}

std::vector<int> assignment_of(const specnet_clustering* c) {
  std::vector<int> a(specnet_clustering_n(c));
  check(specnet_clustering_assignment(c, a.data()));
  return a;
}

void write_graph(const AnalyzeArgs& a, const specnet_graph* g, const specnet_clustering* c) {
  if (!a.out.empty()) {
    check(specnet_graph_save_json(g, a.out.c_str(), nullptr));
    std::cout << "wrote " << a.out << '\n';
  }
  if (!a.dot.empty()) {
    check(specnet_graph_save_dot(g, c, a.display_threshold, a.dot.c_str()));
    std::cout << "wrote " << a.dot << '\n';
  }
}

int cmd_truncate(const AnalyzeArgs& a) {
  Graph g = load_graph(a.in);
  specnet_graph* raw = nullptr;
  if (a.keep_top > 0) {
    check(specnet_truncate_keep_top(g.get(), a.keep_top, &raw));
    std::cout << "keep_top=" << a.keep_top << '\n';
  } else {
    double qm = 0;
    check(specnet_quarter_mean_weight(g.get(), &qm));
    const double threshold = parse_auto(a.threshold, "--threshold", qm);
    check(specnet_truncate(g.get(), threshold, &raw));
    std::cout << "threshold=" << fmt(threshold) << '\n';
  }
  Graph t(raw);
  const auto before = spectrum_of(g.get());
  const auto after = spectrum_of(t.get());
  std::cout << "lambda2_before=" << fmt(before[1]) << '\n'
            << "lambda2_after=" << fmt(after[1]) << '\n';
  write_graph(a, t.get(), nullptr);
  return 0;
}

int cmd_cluster(const AnalyzeArgs& a) {
  Graph g = load_graph(a.in);
  Clusters c = clustering_for(a, g.get());
  std::vector<double> mass(specnet_clustering_count(c.get()));
  check(specnet_clustering_intra_mass(c.get(), mass.data()));
  std::cout << "clusters=" << mass.size() << '\n'
            << "assignment=" << join(assignment_of(c.get())) << '\n'
            << "intra_mass=" << join(mass, "%.6g") << '\n';
  if (!a.out.empty()) {
    check(specnet_clustering_save_json(c.get(), a.out.c_str()));
    std::cout << "wrote " << a.out << '\n';
  }
  if (!a.dot.empty()) {
    check(specnet_graph_save_dot(g.get(), c.get(), a.display_threshold, a.dot.c_str()));
    std::cout << "wrote " << a.dot << '\n';
  }
  return 0;
}

int cmd_fans(const AnalyzeArgs& a) {
  Graph g = load_graph(a.in);
  Clusters c = clustering_for(a, g.get());
  double tol = 0;
  Fans f = fans_for(a, g.get(), c.get(), &tol);
  const int count = specnet_fans_count(f.get());
  std::cout << "fan_tol=" << fmt(tol) << '\n' << "fans=" << count << '\n';
  for (int i = 0; i < count; ++i) {
    specnet_fan_info info;
    check(specnet_fans_get(f.get(), i, &info));
    std::cout << "fan liaison=" << info.liaison << " home=" << info.home
              << " target=" << info.target << " ties=" << info.tie_count
              << " total_weight=" << fmt(info.total_weight, "%.6g") << '\n';
  }
  if (!a.out.empty()) {
    check(specnet_fans_save_json(f.get(), a.out.c_str()));
    std::cout << "wrote " << a.out << '\n';
  }
  return 0;
}

int cmd_brokerize(const AnalyzeArgs& a) {
  if (a.variant != "weak" && a.variant != "strong") {
    raise(SPECNET_INVALID_ARGUMENT, "--variant must be weak or strong");
  }
  Graph g = load_graph(a.in);
  Clusters c = clustering_for(a, g.get());
  Fans f = fans_for(a, g.get(), c.get(), nullptr);
  specnet_graph* raw = nullptr;
  check(specnet_brokerize(g.get(), c.get(), f.get(),
                          a.variant == "strong" ? SPECNET_BROKER_STRONG : SPECNET_BROKER_WEAK,
                          &raw));
  Graph b(raw);
  std::cout << "variant=" << a.variant << '\n'
            << "fans=" << specnet_fans_count(f.get()) << '\n'
            << "lambda2_before=" << fmt(spectrum_of(g.get())[1]) << '\n'
            << "lambda2_after=" << fmt(spectrum_of(b.get())[1]) << '\n';
  write_graph(a, b.get(), c.get());
  return 0;
}

int cmd_condense(const AnalyzeArgs& a) {
  Graph g = load_graph(a.in);
  Clusters c = clustering_for(a, g.get());
  Fans f = fans_for(a, g.get(), c.get(), nullptr);
  specnet_condensed* raw = nullptr;
  check(specnet_condense(c.get(), f.get(), &raw));
  Condensed d(raw);
  std::vector<int> deg(specnet_condensed_clusters(d.get()));
  check(specnet_condensed_out_degrees(d.get(), deg.data()));
  std::vector<int> sorted = deg;
  std::sort(sorted.rbegin(), sorted.rend());
  std::cout << "is_dag=" << (specnet_condensed_is_dag(d.get()) ? "true" : "false") << '\n'
            << "out_degrees=" << join(deg) << '\n'
            << "out_degrees_sorted=" << join(sorted) << '\n';
  for (int i = 0; i < specnet_condensed_edge_count(d.get()); ++i) {
    int from = 0, to = 0;
    check(specnet_condensed_edge(d.get(), i, &from, &to));
    std::cout << "edge " << from << " -> " << to << '\n';
  }
  if (!a.out.empty()) {
    check(specnet_condensed_save_json(d.get(), a.out.c_str()));
    std::cout << "wrote " << a.out << '\n';
  }
  if (!a.dot.empty()) {
    check(specnet_condensed_save_dot(d.get(), a.dot.c_str()));
    std::cout << "wrote " << a.dot << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::vector<std::string> in;
  std::vector<std::string> names;
  int n = 0;
  int ell = 0;
  double m = -1;
  std::string out;
};

std::string stem(const std::string& path) {
  auto base = path.substr(path.find_last_of('/') + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

int cmd_compare(CompareArgs& a) {
  if (!a.names.empty() && a.names.size() != a.in.size()) {
    raise(SPECNET_INVALID_ARGUMENT, "--names must list one name per --in graph");
  }
  std::vector<Graph> graphs;
  std::vector<const specnet_graph*> ptrs;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < a.in.size(); ++k) {
    graphs.push_back(load_graph(a.in[k]));
    ptrs.push_back(graphs.back().get());
    names.push_back(a.names.empty() ? stem(a.in[k]) : a.names[k]);
  }
  const int n = specnet_graph_n(ptrs.front());
  for (std::size_t k = 0; k < ptrs.size(); ++k) {
    if (specnet_graph_n(ptrs[k]) != n) {
      raise(SPECNET_INVALID_ARGUMENT, "graph '" + a.in[k] + "' has n = " +
                                          std::to_string(specnet_graph_n(ptrs[k])) +
                                          ", expected " + std::to_string(n));
    }
  }
  if (a.n > 0 && a.n != n) {
    raise(SPECNET_INVALID_ARGUMENT,
          "--n " + std::to_string(a.n) + " does not match graph size " + std::to_string(n));
  }
  const std::string meta = metadata_of(ptrs.front());
  if (a.ell <= 0) {
    auto ell = metadata_number(meta, "ell");
    if (!ell) raise(SPECNET_INVALID_ARGUMENT, "--ell is required");
    a.ell = static_cast<int>(*ell);
  }
  if (a.m < 0) {
    auto m = metadata_number(meta, "m");
    if (!m) raise(SPECNET_INVALID_ARGUMENT, "--m is required");
    a.m = *m;
  }
  std::vector<const char*> cnames;
  for (const auto& s : names) cnames.push_back(s.c_str());
  specnet_comparison* raw = nullptr;
  check(specnet_compare(ptrs.data(), cnames.data(), static_cast<int>(ptrs.size()), a.ell, a.m,
                        &raw));
  Comparison c(raw);
  std::cout << "bound=" << fmt(specnet_comparison_bound(c.get())) << '\n';
  for (int i = 0; i < specnet_comparison_rows(c.get()); ++i) {
    specnet_comparison_row row;
    check(specnet_comparison_row_info(c.get(), i, &row));
    std::cout << names[i] << ": objective=" << fmt(row.objective, "%.6g")
              << " lambda2=" << fmt(row.lambda2, "%.6g")
              << " mixing_deviation=" << fmt(row.mixing_deviation, "%.6g")
              << " modularity_deviation=" << fmt(row.modularity_deviation, "%.6g") << '\n';
  }
  std::cout << "closest_mixing=" << names[specnet_comparison_closest_mixing(c.get())] << '\n'
            << "closest_modularity=" << names[specnet_comparison_closest_modularity(c.get())]
            << '\n';
  if (!a.out.empty()) {
    check(specnet_comparison_save_csv(c.get(), a.out.c_str()));
    std::cout << "wrote " << a.out << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- bound

int cmd_bound(int n, int ell, double m) {
  double b = 0;
  check(specnet_bound(n, ell, m, &b));
  std::vector<double> ideal(n);
  check(specnet_ideal_spectrum(n, ell, m, ideal.data()));
  std::cout << "bound=" << fmt(b, "%.7f") << '\n' << "ideal=" << join(ideal, "%.7f") << '\n';
  return 0;
}

// ---------------------------------------------------------------- config file

// Flat key = value file. Keys name long flags of the active subcommand
// ("outer-tol" or "outer_tol" for --outer-tol); anything given on the
// command line wins.
std::vector<std::string> apply_config(CLI::App& leaf, std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) raise(SPECNET_INVALID_ARGUMENT, "cannot read config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::ParseError& e) {
    raise(SPECNET_INVALID_ARGUMENT, "config file '" + path + "': " + e.what());
  }
  for (const auto& item : items) {
    std::string key = item.name;
    if (key == "++" || key == "--" || item.inputs.empty()) continue;
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (leaf.get_option_no_throw(flag) == nullptr || key == "config") {
      std::cerr << "warning: config key '" << item.name << "' ignored by this command\n";
      continue;
    }
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
      return s == flag || s.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    args.push_back(flag);
    for (const auto& v : item.inputs) args.push_back(v);
  }
  return args;
}

CLI::App* active_leaf(CLI::App& app, const std::vector<std::string>& args) {
  CLI::App* cur = &app;
  for (const auto& a : args) {
    if (!a.empty() && a[0] == '-') continue;
    CLI::App* sub = nullptr;
    for (CLI::App* s : cur->get_subcommands([](CLI::App*) { return true; })) {
      if (s->check_name(a)) sub = s;
    }
    if (sub == nullptr) break;
    cur = sub;
  }
  return cur;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral design and analysis of weighted communication networks", "specnet"};
  app.set_version_flag("--version", std::string(specnet_version()));
  app.require_subcommand(1);

  DesignArgs design;
  specnet_solver_config_default(&design.cfg);
  auto* d = app.add_subcommand("design", "Optimize a network for the spectral gap objective");
  d->add_option("--n", design.n, "Number of nodes")->required();
  d->add_option("--ell", design.ell, "Number of teams (gap index)")->required();
  d->add_option("--m", design.m, "Mixing-rate floor on lambda_2")->required();
  d->add_option("--starts", design.starts, "Number of random starts")->capture_default_str();
  d->add_option("--seed", design.seed, "Base seed for derived per-start seeds")
      ->capture_default_str();
  d->add_option("--seeds", design.seeds, "Explicit per-start seeds (overrides --seed/--starts)");
  d->add_option("--parallelism", design.parallelism, "Concurrent starts")->capture_default_str();
  d->add_option("--out", design.out, "Result JSON path");
  d->add_option("--trace", design.trace, "Trace CSV path");
  d->add_option("--outer-tol", design.cfg.outer_tol)->capture_default_str();
  d->add_option("--outer-max-iter", design.cfg.outer_max_iter)->capture_default_str();
  d->add_option("--inner-tol", design.cfg.inner_tol)->capture_default_str();
  d->add_option("--inner-max-iter", design.cfg.inner_max_iter)->capture_default_str();
  d->add_option("--inner-patience", design.cfg.inner_patience)->capture_default_str();
  d->add_option("--rho", design.cfg.penalty_rho, "Penalty weight (0 = 10 n)")
      ->capture_default_str();
  d->add_option("--penalty-doublings", design.cfg.penalty_doublings)->capture_default_str();
  d->add_option("--eta0", design.cfg.step_eta0, "Initial step (0 = 1/n)")->capture_default_str();
  d->add_option("--feasibility-tol", design.cfg.feasibility_tol)->capture_default_str();
  d->add_option("--mu0", design.cfg.smoothing_mu0, "Initial smoothing (0 disables)")
      ->capture_default_str();
  d->add_option("--mu-decay", design.cfg.smoothing_decay)->capture_default_str();
  d->add_option("--mu-floor", design.cfg.smoothing_floor)->capture_default_str();
  d->add_option("--init-density", design.cfg.init_density)->capture_default_str();
  d->add_option("--config", "Flat key=value file mirroring these flags");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Transform and inspect a designed network");
  analyze->require_subcommand(1);
  auto common = [&](CLI::App* s, bool graph_out) {
    s->add_option("--in", an.in, "Graph JSON, result JSON or matrix CSV")
        ->required()
        ->check(CLI::ExistingFile);
    s->add_option("--out", an.out, graph_out ? "Output graph JSON" : "Output JSON");
    s->add_option("--config", "Flat key=value file mirroring these flags");
  };
  auto clustering_opts = [&](CLI::App* s) {
    s->add_option("--ell", an.ell, "Number of clusters (defaults to the input's ell)");
    s->add_option("--seed", an.seed, "Clustering seed")->capture_default_str();
    s->add_option("--clusters", an.clusters, "Clustering JSON to use instead of clustering")
        ->check(CLI::ExistingFile);
  };
  auto dot_opts = [&](CLI::App* s) {
    s->add_option("--dot", an.dot, "DOT output path");
    s->add_option("--display-threshold", an.display_threshold,
                  "Ties below this weight are not drawn")
        ->capture_default_str();
  };

  auto* tr = analyze->add_subcommand("truncate", "Drop weak ties and renormalize");
  common(tr, true);
  dot_opts(tr);
  auto* thr = tr->add_option("--threshold", an.threshold, "Absolute threshold or 'auto'")
                  ->capture_default_str();
  tr->add_option("--keep-top", an.keep_top, "Keep ties among each node's k strongest")
      ->excludes(thr)
      ->check(CLI::PositiveNumber);

  auto* cl = analyze->add_subcommand("cluster", "Spectral clustering into ell teams");
  common(cl, false);
  clustering_opts(cl);
  dot_opts(cl);

  auto* fa = analyze->add_subcommand("fans", "Detect liaison fans between teams");
  common(fa, false);
  clustering_opts(fa);
  fa->add_option("--fan-tol", an.fan_tol, "Minimum fan tie weight or 'auto'")
      ->capture_default_str();

  auto* br = analyze->add_subcommand("brokerize", "Replace fans with single broker ties");
  common(br, true);
  clustering_opts(br);
  dot_opts(br);
  br->add_option("--fan-tol", an.fan_tol, "Minimum fan tie weight or 'auto'")
      ->capture_default_str();
  br->add_option("--variant", an.variant, "weak or strong")->capture_default_str();

  auto* co = analyze->add_subcommand("condense", "Collapse teams and fans into a digraph");
  common(co, false);
  clustering_opts(co);
  dot_opts(co);
  co->add_option("--fan-tol", an.fan_tol, "Minimum fan tie weight or 'auto'")
      ->capture_default_str();

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Compare Laplacian spectra against the ideal spectrum");
  c->add_option("--in", cmp.in, "Graph or result JSON files")
      ->required()
      ->expected(1, -1)
      ->check(CLI::ExistingFile);
  c->add_option("--names", cmp.names, "Row names (default: file stems)");
  c->add_option("--n", cmp.n, "Expected node count");
  c->add_option("--ell", cmp.ell, "Gap index (defaults to the first input's ell)");
  c->add_option("--m", cmp.m, "Mixing floor (defaults to the first input's m)");
  c->add_option("--out", cmp.out, "Comparison CSV path");
  c->add_option("--config", "Flat key=value file mirroring these flags");

  int bn = 0, bell = 0;
  double bm = 0;
  auto* b = app.add_subcommand("bound", "Evaluate the objective upper bound");
  b->add_option("--n", bn)->required();
  b->add_option("--ell", bell)->required();
  b->add_option("--m", bm)->required();
  b->add_option("--config", "Flat key=value file mirroring these flags");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config(*active_leaf(app, args), args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::Success& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      raise(SPECNET_INVALID_ARGUMENT, e.what());
    }

    if (d->parsed()) return cmd_design(design);
    if (tr->parsed()) return cmd_truncate(an);
    if (cl->parsed()) return cmd_cluster(an);
    if (fa->parsed()) return cmd_fans(an);
    if (br->parsed()) return cmd_brokerize(an);
    if (co->parsed()) return cmd_condense(an);
    if (c->parsed()) return cmd_compare(cmp);
    if (b->parsed()) return cmd_bound(bn, bell, bm);
    raise(SPECNET_INVALID_ARGUMENT, "no command given");
  } catch (const CliFailure& f) {
    std::cout.flush();
    std::cerr << "ERROR:" << f.code << ':' << specnet_status_name(static_cast<specnet_status>(f.code))
              << ": " << one_line(f.message) << std::endl;
    return f.code;
  }
}
