#include "specnet/analysis.hpp"

#include "specnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace specnet {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct KMeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  bool empty_cluster = false;
};

KMeansRun kmeans_once(const Matrix& points, int k, std::mt19937_64& rng) {
  const auto n = points.rows();
  Matrix centers(k, points.cols());

  // k-means++ seeding
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  centers.row(0) = points.row(static_cast<Eigen::Index>(uniform01(rng) * n));
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c - 1)).squaredNorm());
      total += d2[i];
    }
    Eigen::Index pick = n - 1;
    if (total > 0) {
      double r = uniform01(rng) * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= d2[i];
        if (r < 0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(uniform01(rng) * n);
    }
    centers.row(c) = points.row(pick);
  }

  KMeansRun run;
  run.labels.assign(n, -1);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.labels[i] != best) {
        run.labels[i] = best;
        changed = true;
      }
    }
    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(run.labels[i]) += points.row(i);
      ++counts[run.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        run.empty_cluster = true;
        return run;
      }
      centers.row(c) = sums.row(c) / counts[c];
    }
    if (!changed) break;
  }
  run.inertia = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    run.inertia += (points.row(i) - centers.row(run.labels[i])).squaredNorm();
  }
  return run;
}

// Depth-first cycle check on a small directed graph.
bool has_cycle(int nodes, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : edges) adj[a].push_back(b);
  std::vector<int> state(nodes, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < nodes; ++root) {
    if (state[root] != 0) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < adj[v].size()) {
        const int u = adj[v][idx++];
        if (state[u] == 1) return true;
        if (state[u] == 0) {
          state[u] = 1;
          stack.push_back({u, 0});
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

WeightMatrix truncate(const WeightMatrix& w, double threshold) {
  const int n = w.n();
  double max_off = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) max_off = std::max(max_off, w(i, j));
    }
  }
  if (!(threshold >= 0) || threshold >= max_off) {
    std::ostringstream os;
    os << "truncation threshold " << threshold
       << " must lie in [0, max off-diagonal weight " << max_off << ")";
    throw Error(Status::invalid_argument, os.str());
  }
  Matrix raw = w.weights();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && raw(i, j) < threshold) raw(i, j) = 0;
    }
  }
  auto disconnected = [&](int parts) {
    std::ostringstream os;
    os << "truncation at threshold " << threshold << " disconnects the graph";
    if (parts > 0) os << " into " << parts << " components";
    return Error(Status::disconnected, os.str());
  };
  for (int i = 0; i < n; ++i) {
    if (raw.row(i).sum() - raw(i, i) <= 0) throw disconnected(0);
  }
  WeightMatrix out = sinkhorn_symmetric(raw);
  const int parts = component_count(spectrum(out));
  if (parts > 1) throw disconnected(parts);
  return out;
}

WeightMatrix truncate_keep_top(const WeightMatrix& w, int keep) {
  const int n = w.n();
  if (keep < 1 || keep >= n) {
    throw Error(Status::invalid_argument, "keep must satisfy 1 <= keep < n");
  }
  Matrix mask = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> order;
    for (int j = 0; j < n; ++j) {
      if (j != i && w(i, j) > 0) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return w(i, a) > w(i, b); });
    for (std::size_t r = 0; r < order.size() && static_cast<int>(r) < keep; ++r) {
      mask(i, order[r]) = mask(order[r], i) = 1;
    }
  }
  Matrix raw = w.weights().cwiseProduct(mask);
  raw.diagonal() = w.weights().diagonal();
  WeightMatrix out = sinkhorn_symmetric(raw);
  const int parts = component_count(spectrum(out));
  if (parts > 1) {
    std::ostringstream os;
    os << "keeping the top " << keep << " ties per node disconnects the graph into "
       << parts << " components";
    throw Error(Status::disconnected, os.str());
  }
  return out;
}

double quarter_mean_weight(const WeightMatrix& w) {
  double total = 0;
  int count = 0;
  for (int i = 0; i < w.n(); ++i) {
    for (int j = 0; j < w.n(); ++j) {
      if (i != j && w(i, j) > 0) {
        total += w(i, j);
        ++count;
      }
    }
  }
  return count > 0 ? 0.25 * total / count : 0.0;
}

std::vector<std::vector<int>> Clustering::members() const {
  std::vector<std::vector<int>> out(count());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[assignment[i]].push_back(static_cast<int>(i));
  }
  return out;
}

Clustering make_clustering(const WeightMatrix& w, const std::vector<int>& assignment,
                           std::string method) {
  if (static_cast<int>(assignment.size()) != w.n()) {
    throw Error(Status::invalid_argument, "assignment length must equal n");
  }
  std::map<int, int> relabel;
  Clustering c;
  c.method = std::move(method);
  c.assignment.reserve(assignment.size());
  for (int id : assignment) {
    if (id < 0) throw Error(Status::invalid_argument, "cluster ids must be >= 0");
    auto [it, inserted] = relabel.emplace(id, static_cast<int>(relabel.size()));
    c.assignment.push_back(it->second);
  }
  c.intra_mass.assign(relabel.size(), 0.0);
  for (int i = 0; i < w.n(); ++i) {
    for (int j = 0; j < w.n(); ++j) {
      if (c.assignment[i] == c.assignment[j]) c.intra_mass[c.assignment[i]] += w(i, j);
    }
  }
  return c;
}

Clustering cluster_assign(const WeightMatrix& w, int ell, std::uint64_t seed) {
  if (ell < 2 || ell > w.n()) {
    throw Error(Status::invalid_argument, "cluster_assign needs 2 <= ell <= n");
  }
  const Spectrum s = spectrum(w);
  const Matrix points = s.vectors.leftCols(ell);
  constexpr int kRestarts = 50;
  constexpr int kAttempts = 10;

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(sub_seed(seed, attempt));
    KMeansRun best;
    bool any_empty = false;
    for (int r = 0; r < kRestarts; ++r) {
      KMeansRun run = kmeans_once(points, ell, rng);
      if (run.empty_cluster) {
        any_empty = true;
        continue;
      }
      if (run.inertia < best.inertia - 1e-12) best = std::move(run);
    }
    if (!best.labels.empty() && !any_empty) {
      std::ostringstream method;
      method << "spectral k-means (ell=" << ell << ", restarts=" << kRestarts
             << ", seed=" << seed << ", attempt=" << attempt << ")";
      return make_clustering(w, best.labels, method.str());
    }
  }
  throw Error(Status::not_converged,
              "k-means produced an empty cluster in every attempt");
}

double Fan::total_weight() const {
  double total = 0;
  for (const auto& t : ties) total += t.second;
  return total;
}

FanSet detect_fans(const WeightMatrix& w, const Clustering& c, double fan_tol) {
  if (static_cast<int>(c.assignment.size()) != w.n()) {
    throw Error(Status::invalid_argument, "clustering does not match graph size");
  }
  if (!(fan_tol > 0)) throw Error(Status::invalid_argument, "fan_tol must be positive");
  const auto members = c.members();
  FanSet out;
  for (int i = 0; i < w.n(); ++i) {
    const int home = c.assignment[i];
    for (int target = 0; target < c.count(); ++target) {
      if (target == home) continue;
      Fan fan{i, home, target, {}};
      for (int j : members[target]) {
        if (w(i, j) >= fan_tol) fan.ties.emplace_back(j, w(i, j));
      }
      const auto size = static_cast<int>(members[target].size());
      if (fan.ties.size() >= 2 && 2 * static_cast<int>(fan.ties.size()) >= size) {
        out.fans.push_back(std::move(fan));
      }
    }
  }
  return out;
}

Matrix broker_network_raw(const WeightMatrix& w, const Clustering& c, const FanSet& fans,
                          BrokerVariant variant) {
  if (fans.empty()) {
    throw Error(Status::empty_fan_set, "brokerize needs at least one fan");
  }
  const int n = w.n();
  if (static_cast<int>(c.assignment.size()) != n) {
    throw Error(Status::invalid_argument, "clustering does not match graph size");
  }
  Matrix raw = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && c.assignment[i] == c.assignment[j]) raw(i, j) = w(i, j);
    }
  }
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (const Fan& fan : fans.fans) {
    // strongest counterpart not already carrying a broker tie
    int partner = -1;
    double strongest = -1;
    for (const auto& [j, weight] : fan.ties) {
      if (!used[fan.liaison][j] && weight > strongest) {
        strongest = weight;
        partner = j;
      }
    }
    if (partner < 0) partner = fan.ties.front().first;
    used[fan.liaison][partner] = used[partner][fan.liaison] = true;
    raw(fan.liaison, partner) += fan.total_weight();
    raw(partner, fan.liaison) = raw(fan.liaison, partner);
  }
  if (variant == BrokerVariant::strong) {
    raw = (raw.array() > 0).cast<double>().matrix();
  }
  return raw;
}

WeightMatrix brokerize(const WeightMatrix& w, const Clustering& c, const FanSet& fans,
                       BrokerVariant variant) {
  return sinkhorn_symmetric(broker_network_raw(w, c, fans, variant));
}

std::vector<int> CondensedGraph::out_degrees() const {
  std::vector<int> deg(clusters, 0);
  for (auto [a, b] : edges) ++deg[a];
  return deg;
}

CondensedGraph condense(const Clustering& c, const FanSet& fans) {
  CondensedGraph g;
  g.clusters = c.count();
  for (const Fan& fan : fans.fans) {
    if (fan.home == fan.target) continue;
    g.edges.emplace_back(fan.home, fan.target);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.is_dag = !has_cycle(g.clusters, g.edges);
  return g;
}

std::size_t SpectraComparison::closest_mixing() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].mixing_deviation < rows[best].mixing_deviation) best = i;
  }
  return best;
}

std::size_t SpectraComparison::closest_modularity() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].modularity_deviation < rows[best].modularity_deviation) best = i;
  }
  return best;
}

SpectraComparison compare_spectra(
    const std::vector<std::pair<std::string, WeightMatrix>>& graphs,
    const DesignProblem& problem) {
  if (graphs.empty()) throw Error(Status::invalid_argument, "no graphs to compare");
  const int n = problem.n();
  const int ell = problem.ell();
  SpectraComparison out;
  out.n = n;
  out.ell = ell;
  out.m = problem.m();
  out.bound = problem.bound();
  out.ideal = ideal_spectrum(n, ell, problem.m());
  for (const auto& [name, w] : graphs) {
    if (w.n() != n) {
      std::ostringstream os;
      os << "graph '" << name << "' has n = " << w.n() << ", expected " << n;
      throw Error(Status::invalid_argument, os.str());
    }
    const Spectrum s = spectrum(w);
    SpectrumRow row;
    row.name = name;
    row.values = s.values;
    row.objective = objective(s, ell);
    row.lambda2 = mixing_rate(s);
    for (int k = 1; k < ell; ++k) row.mixing_deviation += std::abs(s.values[k] - out.ideal[k]);
    for (int k = ell; k < n; ++k) {
      row.modularity_deviation += std::abs(s.values[k] - out.ideal[k]);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace specnet
