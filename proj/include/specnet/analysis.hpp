#pragma once

#include "specnet/graph.hpp"
#include "specnet/spectral.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace specnet {

/// Off-diagonal entries below `threshold` are zeroed and the result is
/// renormalized with sinkhorn_symmetric. Throws disconnected if the surviving
/// pattern splits the graph.
WeightMatrix truncate(const WeightMatrix& w, double threshold);

/// Keeps a tie when it is among the `keep` strongest ties of either endpoint.
WeightMatrix truncate_keep_top(const WeightMatrix& w, int keep);

/// 25% of the mean positive off-diagonal weight; used as the default fan
/// tolerance and the automatic truncation threshold.
double quarter_mean_weight(const WeightMatrix& w);

struct Clustering {
  std::vector<int> assignment;     // node -> cluster id, ids contiguous from 0
  std::vector<double> intra_mass;  // sum of w_ij over i, j in the cluster
  std::string method;

  int count() const noexcept { return static_cast<int>(intra_mass.size()); }
  std::vector<std::vector<int>> members() const;
};

/// Wraps a given assignment; ids are relabeled in order of first appearance.
Clustering make_clustering(const WeightMatrix& w, const std::vector<int>& assignment,
                           std::string method = "given");

/// Seeded k-means (k-means++ seeding, 50 restarts) on the rows of the n x ell
/// eigenvector matrix of the ell smallest Laplacian eigenvalues.
Clustering cluster_assign(const WeightMatrix& w, int ell, std::uint64_t seed);

struct Fan {
  int liaison = 0;
  int home = 0;
  int target = 0;
  std::vector<std::pair<int, double>> ties;  // (member of target, weight)

  double total_weight() const;
};

struct FanSet {
  std::vector<Fan> fans;

  bool empty() const noexcept { return fans.empty(); }
};

/// A node emits a fan into another cluster when it holds ties >= fan_tol to at
/// least half of that cluster's members (and at least two of them).
FanSet detect_fans(const WeightMatrix& w, const Clustering& c, double fan_tol);

enum class BrokerVariant { weak, strong };

/// Pre-normalization broker network: intra-cluster ties of `w` plus one tie
/// per fan from the liaison to its strongest counterpart in the target
/// cluster. Weak variant carries the fan's total weight on that tie; strong
/// sets every surviving tie to 1.
Matrix broker_network_raw(const WeightMatrix& w, const Clustering& c, const FanSet& fans,
                          BrokerVariant variant);

/// broker_network_raw followed by sinkhorn_symmetric.
WeightMatrix brokerize(const WeightMatrix& w, const Clustering& c, const FanSet& fans,
                       BrokerVariant variant);

struct CondensedGraph {
  int clusters = 0;
  std::vector<std::pair<int, int>> edges;  // (home, target), deduplicated, sorted
  bool is_dag = true;

  std::vector<int> out_degrees() const;
};

/// One node per cluster and a directed edge home -> target per fan.
CondensedGraph condense(const Clustering& c, const FanSet& fans);

struct SpectrumRow {
  std::string name;
  Vector values;
  double objective = 0;
  double lambda2 = 0;
  double mixing_deviation = 0;      // sum_{2<=k<=ell} |lambda_k - ideal_k|
  double modularity_deviation = 0;  // sum_{k>ell} |lambda_k - ideal_k|
};

struct SpectraComparison {
  int n = 0;
  int ell = 0;
  double m = 0;
  double bound = 0;
  Vector ideal;
  std::vector<SpectrumRow> rows;

  /// Index of the row with the smallest mixing / modularity deviation.
  std::size_t closest_mixing() const;
  std::size_t closest_modularity() const;
};

SpectraComparison compare_spectra(
    const std::vector<std::pair<std::string, WeightMatrix>>& graphs,
    const DesignProblem& problem);

}  // namespace specnet
