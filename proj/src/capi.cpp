#include "specnet/specnet.h"

#include "specnet/analysis.hpp"
#include "specnet/error.hpp"
#include "specnet/graph.hpp"
#include "specnet/io.hpp"
#include "specnet/optimizer.hpp"
#include "specnet/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using specnet::Error;
using specnet::Status;

struct specnet_graph {
  specnet::WeightMatrix w;
  nlohmann::json metadata = nlohmann::json::object();
};

struct specnet_result {
  specnet::DesignResult result;
  nlohmann::json seeds;
};

struct specnet_clustering {
  specnet::Clustering c;
};

struct specnet_fans {
  specnet::FanSet f;
};

struct specnet_condensed {
  specnet::CondensedGraph g;
};

struct specnet_comparison {
  specnet::SpectraComparison c;
};

namespace {

thread_local std::string g_last_error;

specnet_status to_c(Status s) {
  switch (s) {
    case Status::ok: return SPECNET_OK;
    case Status::invalid_argument: return SPECNET_INVALID_ARGUMENT;
    case Status::infeasible: return SPECNET_INFEASIBLE;
    case Status::not_converged: return SPECNET_NOT_CONVERGED;
    case Status::disconnected: return SPECNET_DISCONNECTED;
    case Status::empty_fan_set: return SPECNET_EMPTY_FAN_SET;
    case Status::numerical: return SPECNET_NUMERICAL;
    case Status::io: return SPECNET_IO;
  }
  return SPECNET_INTERNAL;
}

specnet_status fail(specnet_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

template <class F>
specnet_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SPECNET_OK;
  } catch (const Error& e) {
    return fail(to_c(e.status()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPECNET_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPECNET_INTERNAL, e.what());
  } catch (...) {
    return fail(SPECNET_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(Status::invalid_argument, what);
}

template <class T>
T* nonnull(T* p, const char* name) {
  if (p == nullptr) throw Error(Status::invalid_argument, std::string(name) + " must not be NULL");
  return p;
}

specnet::Matrix dense(int n, const double* data) {
  require(n >= 2, "n must be >= 2");
  nonnull(data, "weights");
  specnet::Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = data[static_cast<std::size_t>(i) * n + j];
  }
  return w;
}

void copy_out(const specnet::Matrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

specnet::SolverConfig to_config(const specnet_solver_config* c) {
  specnet::SolverConfig cfg;
  if (c == nullptr) return cfg;
  cfg.outer_tol = c->outer_tol;
  cfg.outer_max_iter = c->outer_max_iter;
  cfg.inner_tol = c->inner_tol;
  cfg.inner_max_iter = c->inner_max_iter;
  cfg.inner_patience = c->inner_patience;
  cfg.penalty_rho = c->penalty_rho;
  cfg.penalty_doublings = c->penalty_doublings;
  cfg.step_rule.eta0 = c->step_eta0;
  cfg.feasibility_tol = c->feasibility_tol;
  cfg.smoothing_mu0 = c->smoothing_mu0;
  cfg.smoothing_decay = c->smoothing_decay;
  cfg.smoothing_floor = c->smoothing_floor;
  return cfg;
}

void check_problem_args(int n, int ell, double m) {
  require(n >= 2, "n must be >= 2");
  require(ell >= 1 && ell < n, "ell must satisfy 1 <= ell < n");
  require(std::isfinite(m) && m >= 0, "m must be a finite value >= 0");
}

specnet_status run_design(int n, int ell, double m, const std::vector<std::uint64_t>& seeds,
                          nlohmann::json seed_doc, int parallelism,
                          const specnet_solver_config* cfg, specnet_result** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = nullptr;
    const specnet::DesignProblem problem(n, ell, m);
    const double density = cfg != nullptr ? cfg->init_density : 1.0;
    require(density > 0 && density <= 1, "init_density must lie in (0, 1]");
    std::vector<specnet::StartSpec> starts;
    starts.reserve(seeds.size());
    for (auto s : seeds) starts.push_back({s, density});
    auto r = specnet::multi_start(problem, starts, to_config(cfg), parallelism);
    seed_doc["init_density"] = density;
    *out = new specnet_result{std::move(r), std::move(seed_doc)};
  });
}

}  // namespace

extern "C" {

const char* specnet_version(void) { return specnet::kVersion; }

const char* specnet_last_error(void) { return g_last_error.c_str(); }

const char* specnet_status_name(specnet_status status) {
  if (status == SPECNET_INTERNAL) return "internal";
  return specnet::status_name(static_cast<Status>(status));
}

void specnet_string_free(char* s) { std::free(s); }

/* ---- graphs ---- */

specnet_status specnet_graph_from_dense(int n, const double* weights, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_graph{specnet::WeightMatrix(dense(n, weights))};
  });
}

specnet_status specnet_graph_sinkhorn(int n, const double* raw, double tol, int max_iter,
                                      specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    specnet::SinkhornOptions opts;
    if (tol > 0) opts.tol = tol;
    if (max_iter > 0) opts.max_iter = max_iter;
    *out = new specnet_graph{specnet::sinkhorn_symmetric(dense(n, raw), opts)};
  });
}

specnet_status specnet_graph_uniform(int n, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_graph{specnet::WeightMatrix::uniform_complete(n)};
  });
}

specnet_status specnet_graph_block_diagonal(const specnet_graph* const* blocks, int count,
                                            specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    require(count >= 1 && blocks != nullptr, "at least one block is required");
    std::vector<specnet::WeightMatrix> parts;
    for (int k = 0; k < count; ++k) parts.push_back(nonnull(blocks[k], "block")->w);
    *out = new specnet_graph{specnet::block_diagonal(parts)};
  });
}

specnet_status specnet_graph_clone(const specnet_graph* g, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_graph(*nonnull(g, "graph"));
  });
}

void specnet_graph_free(specnet_graph* g) { delete g; }

specnet_status specnet_graph_load_json(const char* path, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    auto file = specnet::graph_from_json(specnet::read_file(nonnull(path, "path")));
    *out = new specnet_graph{std::move(file.w), std::move(file.metadata)};
  });
}

specnet_status specnet_graph_load_csv(const char* path, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    auto m = specnet::matrix_from_csv(specnet::read_file(nonnull(path, "path")));
    *out = new specnet_graph{specnet::WeightMatrix(std::move(m))};
  });
}

specnet_status specnet_graph_save_json(const specnet_graph* g, const char* path,
                                       const char* metadata_json) {
  return guarded([&] {
    nonnull(g, "graph");
    nlohmann::json meta = g->metadata;
    if (metadata_json != nullptr) {
      try {
        meta = nlohmann::json::parse(metadata_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Status::invalid_argument, std::string("metadata: ") + e.what());
      }
      require(meta.is_object(), "metadata must be a JSON object");
    }
    specnet::write_file(nonnull(path, "path"), specnet::graph_to_json(g->w, meta));
  });
}

specnet_status specnet_graph_save_csv(const specnet_graph* g, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::matrix_to_csv(nonnull(g, "graph")->w.weights()));
  });
}

specnet_status specnet_graph_save_dot(const specnet_graph* g,
                                      const specnet_clustering* clustering,
                                      double display_threshold, const char* path) {
  return guarded([&] {
    nonnull(g, "graph");
    const specnet::Clustering* c = clustering != nullptr ? &clustering->c : nullptr;
    require(c == nullptr || static_cast<int>(c->assignment.size()) == g->w.n(),
            "clustering does not match graph size");
    specnet::write_file(nonnull(path, "path"), specnet::graph_to_dot(g->w, c, display_threshold));
  });
}

specnet_status specnet_graph_metadata(const specnet_graph* g, char** out_json) {
  return guarded([&] {
    nonnull(out_json, "out");
    *out_json = dup_string(nonnull(g, "graph")->metadata.dump());
  });
}

int specnet_graph_n(const specnet_graph* g) { return g != nullptr ? g->w.n() : 0; }

specnet_status specnet_graph_weights(const specnet_graph* g, double* out) {
  return guarded([&] { copy_out(nonnull(g, "graph")->w.weights(), nonnull(out, "out")); });
}

specnet_status specnet_graph_spectrum(const specnet_graph* g, double* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto s = specnet::spectrum(nonnull(g, "graph")->w);
    for (int k = 0; k < s.n(); ++k) out[k] = s.values[k];
  });
}

specnet_status specnet_graph_components(const specnet_graph* g, double tol, int* out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = specnet::component_count(specnet::spectrum(nonnull(g, "graph")->w),
                                    tol > 0 ? tol : 1e-6);
  });
}

specnet_status specnet_graph_objective(const specnet_graph* g, int ell, double* out) {
  return guarded([&] {
    *nonnull(out, "out") = specnet::objective(nonnull(g, "graph")->w, ell);
  });
}

specnet_status specnet_graph_kyfan(const specnet_graph* g, int k, double* out) {
  return guarded([&] {
    *nonnull(out, "out") = specnet::kyfan_sum(nonnull(g, "graph")->w, k).value;
  });
}

specnet_status specnet_graph_max_abs_diff(const specnet_graph* a, const specnet_graph* b,
                                          double* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& x = nonnull(a, "a")->w;
    const auto& y = nonnull(b, "b")->w;
    require(x.n() == y.n(), "graphs differ in size");
    *out = (x.weights() - y.weights()).cwiseAbs().maxCoeff();
  });
}

/* ---- bound ---- */

specnet_status specnet_bound(int n, int ell, double m, double* out) {
  return guarded([&] {
    nonnull(out, "out");
    check_problem_args(n, ell, m);
    *out = specnet::bound(n, ell, m);
  });
}

specnet_status specnet_ideal_spectrum(int n, int ell, double m, double* out) {
  return guarded([&] {
    nonnull(out, "out");
    check_problem_args(n, ell, m);
    const auto v = specnet::ideal_spectrum(n, ell, m);
    for (int k = 0; k < n; ++k) out[k] = v[k];
  });
}

/* ---- design ---- */

void specnet_solver_config_default(specnet_solver_config* cfg) {
  if (cfg == nullptr) return;
  const specnet::SolverConfig d;
  cfg->outer_tol = d.outer_tol;
  cfg->outer_max_iter = d.outer_max_iter;
  cfg->inner_tol = d.inner_tol;
  cfg->inner_max_iter = d.inner_max_iter;
  cfg->inner_patience = d.inner_patience;
  cfg->penalty_rho = d.penalty_rho;
  cfg->penalty_doublings = d.penalty_doublings;
  cfg->step_eta0 = d.step_rule.eta0;
  cfg->feasibility_tol = d.feasibility_tol;
  cfg->smoothing_mu0 = d.smoothing_mu0;
  cfg->smoothing_decay = d.smoothing_decay;
  cfg->smoothing_floor = d.smoothing_floor;
  cfg->init_density = 1.0;
}

specnet_status specnet_derive_seeds(uint64_t base, int count, uint64_t* out) {
  return guarded([&] {
    nonnull(out, "out");
    require(count >= 1, "count must be >= 1");
    const auto seeds = specnet::derive_seeds(base, count);
    for (int i = 0; i < count; ++i) out[i] = seeds[i];
  });
}

specnet_status specnet_design(int n, int ell, double m, uint64_t base_seed, int starts,
                              int parallelism, const specnet_solver_config* cfg,
                              specnet_result** out) {
  if (starts < 1) return fail(SPECNET_INVALID_ARGUMENT, "starts must be >= 1");
  const auto seeds = specnet::derive_seeds(base_seed, starts);
  nlohmann::json doc = {
      {"base", base_seed},
      {"count", starts},
      {"derivation", "seed_i = splitmix64(base + (i + 1) * 0x9e3779b97f4a7c15), i = 0..count-1"},
      {"values", seeds}};
  return run_design(n, ell, m, seeds, std::move(doc), parallelism, cfg, out);
}

specnet_status specnet_design_with_seeds(int n, int ell, double m, const uint64_t* seeds,
                                         int count, int parallelism,
                                         const specnet_solver_config* cfg,
                                         specnet_result** out) {
  if (seeds == nullptr || count < 1) {
    return fail(SPECNET_INVALID_ARGUMENT, "at least one seed is required");
  }
  std::vector<std::uint64_t> list(seeds, seeds + count);
  if (std::set<std::uint64_t>(list.begin(), list.end()).size() != list.size()) {
    return fail(SPECNET_INVALID_ARGUMENT, "seeds must be pairwise distinct");
  }
  nlohmann::json doc = {{"count", count}, {"derivation", "explicit"}, {"values", list}};
  return run_design(n, ell, m, list, std::move(doc), parallelism, cfg, out);
}

void specnet_result_free(specnet_result* r) { delete r; }

double specnet_result_objective(const specnet_result* r) {
  return r != nullptr ? r->result.objective : NAN;
}
double specnet_result_lambda2(const specnet_result* r) {
  return r != nullptr ? r->result.lambda2 : NAN;
}
double specnet_result_bound(const specnet_result* r) {
  return r != nullptr ? r->result.bound : NAN;
}
double specnet_result_ratio(const specnet_result* r) {
  return r != nullptr ? r->result.ratio : NAN;
}
uint64_t specnet_result_best_seed(const specnet_result* r) {
  return r != nullptr ? r->result.best_seed : 0;
}
double specnet_result_wall_time(const specnet_result* r) {
  return r != nullptr ? r->result.wall_time.count() : NAN;
}
int specnet_result_start_count(const specnet_result* r) {
  return r != nullptr ? static_cast<int>(r->result.starts.size()) : 0;
}

specnet_status specnet_result_start(const specnet_result* r, int index,
                                    specnet_start_info* out) {
  return guarded([&] {
    nonnull(out, "out");
    nonnull(r, "result");
    require(index >= 0 && index < static_cast<int>(r->result.starts.size()),
            "start index out of range");
    const auto& s = r->result.starts[index];
    *out = {s.seed,        s.objective, s.lambda2,
            s.outer_iterations, s.converged ? 1 : 0, s.failed ? 1 : 0,
            specnet::stop_reason_name(s.stop), s.max_violation, s.final_rho};
  });
}

int specnet_result_trace_length(const specnet_result* r, int index) {
  if (r == nullptr || index < 0 || index >= static_cast<int>(r->result.starts.size())) return 0;
  return static_cast<int>(r->result.starts[index].trace.size());
}

specnet_status specnet_result_trace(const specnet_result* r, int index, double* out) {
  return guarded([&] {
    nonnull(out, "out");
    nonnull(r, "result");
    require(index >= 0 && index < static_cast<int>(r->result.starts.size()),
            "start index out of range");
    const auto& t = r->result.starts[index].trace;
    std::copy(t.begin(), t.end(), out);
  });
}

specnet_status specnet_result_graph(const specnet_result* r, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& res = nonnull(r, "result")->result;
    nlohmann::json meta = {{"source", "design"},
                           {"n", res.problem.n()},
                           {"ell", res.problem.ell()},
                           {"m", res.problem.m()},
                           {"seed", res.best_seed}};
    *out = new specnet_graph{res.w_best, std::move(meta)};
  });
}

specnet_status specnet_result_save_json(const specnet_result* r, const char* path) {
  return guarded([&] {
    nonnull(r, "result");
    specnet::write_file(nonnull(path, "path"), specnet::result_to_json(r->result, r->seeds));
  });
}

specnet_status specnet_result_save_trace(const specnet_result* r, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::trace_csv(nonnull(r, "result")->result));
  });
}

/* ---- analysis ---- */

specnet_status specnet_quarter_mean_weight(const specnet_graph* g, double* out) {
  return guarded([&] {
    *nonnull(out, "out") = specnet::quarter_mean_weight(nonnull(g, "graph")->w);
  });
}

specnet_status specnet_truncate(const specnet_graph* g, double threshold, specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    auto w = specnet::truncate(nonnull(g, "graph")->w, threshold);
    nlohmann::json meta = g->metadata;
    meta["truncation_threshold"] = threshold;
    *out = new specnet_graph{std::move(w), std::move(meta)};
  });
}

specnet_status specnet_truncate_keep_top(const specnet_graph* g, int keep,
                                         specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    auto w = specnet::truncate_keep_top(nonnull(g, "graph")->w, keep);
    nlohmann::json meta = g->metadata;
    meta["truncation_keep_top"] = keep;
    *out = new specnet_graph{std::move(w), std::move(meta)};
  });
}

specnet_status specnet_cluster(const specnet_graph* g, int ell, uint64_t seed,
                               specnet_clustering** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_clustering{specnet::cluster_assign(nonnull(g, "graph")->w, ell, seed)};
  });
}

specnet_status specnet_clustering_from_assignment(const specnet_graph* g, const int* assignment,
                                                  specnet_clustering** out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& w = nonnull(g, "graph")->w;
    nonnull(assignment, "assignment");
    std::vector<int> a(assignment, assignment + w.n());
    *out = new specnet_clustering{specnet::make_clustering(w, a)};
  });
}

specnet_status specnet_clustering_load_json(const specnet_graph* g, const char* path,
                                            specnet_clustering** out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& w = nonnull(g, "graph")->w;
    *out = new specnet_clustering{
        specnet::clustering_from_json(specnet::read_file(nonnull(path, "path")), w)};
  });
}

void specnet_clustering_free(specnet_clustering* c) { delete c; }

int specnet_clustering_n(const specnet_clustering* c) {
  return c != nullptr ? static_cast<int>(c->c.assignment.size()) : 0;
}

int specnet_clustering_count(const specnet_clustering* c) {
  return c != nullptr ? c->c.count() : 0;
}

specnet_status specnet_clustering_assignment(const specnet_clustering* c, int* out) {
  return guarded([&] {
    const auto& a = nonnull(c, "clustering")->c.assignment;
    std::copy(a.begin(), a.end(), nonnull(out, "out"));
  });
}

specnet_status specnet_clustering_intra_mass(const specnet_clustering* c, double* out) {
  return guarded([&] {
    const auto& m = nonnull(c, "clustering")->c.intra_mass;
    std::copy(m.begin(), m.end(), nonnull(out, "out"));
  });
}

specnet_status specnet_clustering_save_json(const specnet_clustering* c, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::clustering_to_json(nonnull(c, "clustering")->c));
  });
}

specnet_status specnet_detect_fans(const specnet_graph* g, const specnet_clustering* c,
                                   double fan_tol, specnet_fans** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_fans{
        specnet::detect_fans(nonnull(g, "graph")->w, nonnull(c, "clustering")->c, fan_tol)};
  });
}

void specnet_fans_free(specnet_fans* f) { delete f; }

int specnet_fans_count(const specnet_fans* f) {
  return f != nullptr ? static_cast<int>(f->f.fans.size()) : 0;
}

specnet_status specnet_fans_get(const specnet_fans* f, int index, specnet_fan_info* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& fans = nonnull(f, "fans")->f.fans;
    require(index >= 0 && index < static_cast<int>(fans.size()), "fan index out of range");
    const auto& fan = fans[index];
    *out = {fan.liaison, fan.home, fan.target, static_cast<int>(fan.ties.size()),
            fan.total_weight()};
  });
}

specnet_status specnet_fans_tie(const specnet_fans* f, int index, int tie, int* node,
                                double* weight) {
  return guarded([&] {
    const auto& fans = nonnull(f, "fans")->f.fans;
    require(index >= 0 && index < static_cast<int>(fans.size()), "fan index out of range");
    const auto& ties = fans[index].ties;
    require(tie >= 0 && tie < static_cast<int>(ties.size()), "tie index out of range");
    if (node != nullptr) *node = ties[tie].first;
    if (weight != nullptr) *weight = ties[tie].second;
  });
}

specnet_status specnet_fans_save_json(const specnet_fans* f, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"), specnet::fans_to_json(nonnull(f, "fans")->f));
  });
}

specnet_status specnet_broker_raw(const specnet_graph* g, const specnet_clustering* c,
                                  const specnet_fans* f, specnet_broker_variant variant,
                                  double* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto v = variant == SPECNET_BROKER_STRONG ? specnet::BrokerVariant::strong
                                                    : specnet::BrokerVariant::weak;
    copy_out(specnet::broker_network_raw(nonnull(g, "graph")->w, nonnull(c, "clustering")->c,
                                         nonnull(f, "fans")->f, v),
             out);
  });
}

specnet_status specnet_brokerize(const specnet_graph* g, const specnet_clustering* c,
                                 const specnet_fans* f, specnet_broker_variant variant,
                                 specnet_graph** out) {
  return guarded([&] {
    nonnull(out, "out");
    require(variant == SPECNET_BROKER_WEAK || variant == SPECNET_BROKER_STRONG,
            "unknown broker variant");
    const bool strong = variant == SPECNET_BROKER_STRONG;
    auto w = specnet::brokerize(nonnull(g, "graph")->w, nonnull(c, "clustering")->c,
                                nonnull(f, "fans")->f,
                                strong ? specnet::BrokerVariant::strong
                                       : specnet::BrokerVariant::weak);
    nlohmann::json meta = g->metadata;
    meta["broker_variant"] = strong ? "strong" : "weak";
    *out = new specnet_graph{std::move(w), std::move(meta)};
  });
}

specnet_status specnet_condense(const specnet_clustering* c, const specnet_fans* f,
                                specnet_condensed** out) {
  return guarded([&] {
    nonnull(out, "out");
    *out = new specnet_condensed{
        specnet::condense(nonnull(c, "clustering")->c, nonnull(f, "fans")->f)};
  });
}

void specnet_condensed_free(specnet_condensed* d) { delete d; }

int specnet_condensed_clusters(const specnet_condensed* d) {
  return d != nullptr ? d->g.clusters : 0;
}

int specnet_condensed_is_dag(const specnet_condensed* d) {
  return d != nullptr && d->g.is_dag ? 1 : 0;
}

int specnet_condensed_edge_count(const specnet_condensed* d) {
  return d != nullptr ? static_cast<int>(d->g.edges.size()) : 0;
}

specnet_status specnet_condensed_edge(const specnet_condensed* d, int index, int* from,
                                      int* to) {
  return guarded([&] {
    const auto& e = nonnull(d, "condensed")->g.edges;
    require(index >= 0 && index < static_cast<int>(e.size()), "edge index out of range");
    if (from != nullptr) *from = e[index].first;
    if (to != nullptr) *to = e[index].second;
  });
}

specnet_status specnet_condensed_out_degrees(const specnet_condensed* d, int* out) {
  return guarded([&] {
    const auto deg = nonnull(d, "condensed")->g.out_degrees();
    std::copy(deg.begin(), deg.end(), nonnull(out, "out"));
  });
}

specnet_status specnet_condensed_save_json(const specnet_condensed* d, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::condensed_to_json(nonnull(d, "condensed")->g));
  });
}

specnet_status specnet_condensed_save_dot(const specnet_condensed* d, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::condensed_to_dot(nonnull(d, "condensed")->g));
  });
}

specnet_status specnet_compare(const specnet_graph* const* graphs, const char* const* names,
                               int count, int ell, double m, specnet_comparison** out) {
  return guarded([&] {
    nonnull(out, "out");
    require(graphs != nullptr && count >= 1, "at least one graph is required");
    std::vector<std::pair<std::string, specnet::WeightMatrix>> named;
    for (int k = 0; k < count; ++k) {
      std::string name = names != nullptr && names[k] != nullptr ? names[k]
                                                                 : "graph" + std::to_string(k);
      named.emplace_back(std::move(name), nonnull(graphs[k], "graph")->w);
    }
    const int n = named.front().second.n();
    check_problem_args(n, ell, m);
    *out = new specnet_comparison{
        specnet::compare_spectra(named, specnet::DesignProblem(n, ell, m))};
  });
}

void specnet_comparison_free(specnet_comparison* c) { delete c; }

int specnet_comparison_rows(const specnet_comparison* c) {
  return c != nullptr ? static_cast<int>(c->c.rows.size()) : 0;
}

int specnet_comparison_n(const specnet_comparison* c) { return c != nullptr ? c->c.n : 0; }

double specnet_comparison_bound(const specnet_comparison* c) {
  return c != nullptr ? c->c.bound : NAN;
}

namespace {
const specnet::SpectrumRow& row_at(const specnet_comparison* c, int index) {
  const auto& rows = nonnull(c, "comparison")->c.rows;
  require(index >= 0 && index < static_cast<int>(rows.size()), "row index out of range");
  return rows[index];
}
}  // namespace

specnet_status specnet_comparison_row_info(const specnet_comparison* c, int index,
                                           specnet_comparison_row* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& r = row_at(c, index);
    *out = {r.objective, r.lambda2, r.mixing_deviation, r.modularity_deviation};
  });
}

specnet_status specnet_comparison_row_name(const specnet_comparison* c, int index, char** out) {
  return guarded([&] { *nonnull(out, "out") = dup_string(row_at(c, index).name); });
}

specnet_status specnet_comparison_row_spectrum(const specnet_comparison* c, int index,
                                               double* out) {
  return guarded([&] {
    nonnull(out, "out");
    const auto& v = row_at(c, index).values;
    for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v[k];
  });
}

int specnet_comparison_closest_mixing(const specnet_comparison* c) {
  return c != nullptr && !c->c.rows.empty() ? static_cast<int>(c->c.closest_mixing()) : -1;
}

int specnet_comparison_closest_modularity(const specnet_comparison* c) {
  return c != nullptr && !c->c.rows.empty() ? static_cast<int>(c->c.closest_modularity()) : -1;
}

specnet_status specnet_comparison_save_csv(const specnet_comparison* c, const char* path) {
  return guarded([&] {
    specnet::write_file(nonnull(path, "path"),
                        specnet::comparison_csv(nonnull(c, "comparison")->c));
  });
}

}  // extern "C"
