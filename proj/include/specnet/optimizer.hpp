#pragma once

#include "specnet/error.hpp"
#include "specnet/graph.hpp"
#include "specnet/spectral.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace specnet {

/// Diminishing step schedule eta_t = eta0 / sqrt(t), t counted per inner solve.
struct StepRule {
  double eta0 = 0;  // 0 selects 1/n
  std::string describe() const;
};

struct SolverConfig {
  double outer_tol = 1e-6;
  int outer_max_iter = 300;
  double inner_tol = 1e-7;
  int inner_max_iter = 50;
  // Inner solve stops after this many steps without improving the surrogate
  // by more than inner_tol.
  int inner_patience = 50;
  double penalty_rho = 0;  // 0 selects 10 n
  int penalty_doublings = 5;
  StepRule step_rule;
  double feasibility_tol = 1e-6;
  // Entropy smoothing of the Ky Fan sums used for ascent directions:
  // mu_t = max(smoothing_mu0 * smoothing_decay^t, smoothing_floor) at outer
  // iteration t. smoothing_mu0 = 0 gives plain supergradient ascent.
  double smoothing_mu0 = 0.05;
  double smoothing_decay = 0.9;
  double smoothing_floor = 1e-4;
  int projection_max_sweeps = 10000;

  /// Throws invalid_argument naming the first non-positive field.
  void validate() const;
  double rho_for(int n) const { return penalty_rho > 0 ? penalty_rho : 10.0 * n; }
  double eta0_for(int n) const {
    return step_rule.eta0 > 0 ? step_rule.eta0 : 1.0 / n;
  }
};

struct StartSpec {
  std::uint64_t seed = 0;
  double init_density = 1.0;
};

enum class StopReason { tolerance, iteration_cap, solver_failure };
const char* stop_reason_name(StopReason r) noexcept;

struct StartRecord {
  std::uint64_t seed = 0;
  double objective = 0;
  double lambda2 = 0;
  int outer_iterations = 0;
  bool converged = false;   // outer_tol fired
  bool failed = false;      // inner solver or initialization error
  StopReason stop = StopReason::iteration_cap;
  double max_violation = 0; // worst of symmetry, row-sum and mixing-floor violation at output
  double final_rho = 0;
  int degenerate_linearizations = 0;  // outer steps with lambda_{ell+1} - lambda_ell < 1e-8
  std::vector<double> trace;  // true objective F after each outer iteration (index 0 = start)
  std::string error;

  bool feasible(double m, double tol) const {
    return !failed && lambda2 >= m - tol && max_violation <= tol;
  }
};

struct StartOutcome {
  StartRecord record;
  Matrix w;  // final iterate (valid WeightMatrix entries when !record.failed)
};

struct DesignResult {
  DesignProblem problem;
  SolverConfig config;
  WeightMatrix w_best;
  double objective = 0;
  double lambda2 = 0;
  double bound = 0;
  double ratio = 0;
  std::uint64_t best_seed = 0;
  std::vector<StartRecord> starts;
  std::chrono::duration<double> wall_time{0};
};

/// Random initial graph: upper-triangle uniform(0,1) weights kept with
/// probability init_density, mirrored, then sinkhorn_symmetric.
WeightMatrix random_start(int n, const StartSpec& start);

struct ProjectionOptions {
  double tol = 1e-12;  // row-sum residual and per-sweep change at exit
  int max_sweeps = 10000;
};

/// Euclidean projection onto {W = W^T, W 1 = 1, W >= 0} via Dykstra's
/// alternating projections between the symmetric row-stochastic affine set
/// (closed form) and the nonnegative orthant.
WeightMatrix project_feasible(const Matrix& x, ProjectionOptions opts = {});

/// Minimal mixing with the uniform complete graph that lifts lambda_2 to m.
/// Eigenvectors are unchanged; lambda_k (k >= 2) moves affinely toward n/(n-1).
WeightMatrix lift_mixing(const WeightMatrix& w, double m);

/// CCP surrogate around an expansion point w_hat:
///   Phi(W) = S_{l-1}(W) + S_{l+1}(W) - 2 (S_l(w_hat) + <dS_l(w_hat), W - w_hat>)
///            + rho * min(0, S_2(W) - m)
/// Phi <= F + penalty everywhere and Phi(w_hat) = F(w_hat) + penalty(w_hat).
class Surrogate {
 public:
  Surrogate(const DesignProblem& problem, const WeightMatrix& w_hat, double rho);

  double value(const Matrix& w, const Spectrum& s) const;
  double value(const WeightMatrix& w) const;
  double rho() const noexcept { return rho_; }
  const Matrix& tangent_projector() const noexcept { return projector_; }
  double expansion_gap() const noexcept { return gap_; }

 private:
  DesignProblem problem_;
  Matrix w_hat_;
  Matrix projector_;     // V_l V_l^T at w_hat
  double s_ell_hat_ = 0;
  double rho_ = 0;
  double gap_ = 0;
};

struct InnerResult {
  WeightMatrix w;
  double phi_start = 0;
  double phi_end = 0;
  int iterations = 0;
};

/// Approximately maximizes the surrogate over the symmetric doubly stochastic
/// polytope by projected ascent; the returned iterate never scores below w_hat.
InnerResult inner_solve(const DesignProblem& problem, const WeightMatrix& w_hat,
                        const SolverConfig& cfg, double rho, double mu);

StartOutcome ccp_solve(const DesignProblem& problem, const StartSpec& start,
                       const SolverConfig& cfg);

/// Runs ccp_solve from `init` instead of a random start.
StartOutcome ccp_solve_from(const DesignProblem& problem, const WeightMatrix& init,
                            std::uint64_t seed, const SolverConfig& cfg);

/// Per-start seeds: splitmix64 outputs for state base + (i+1) * golden gamma.
std::vector<std::uint64_t> derive_seeds(std::uint64_t base, int count);

/// Thrown by multi_start when no start produced a feasible iterate.
class NoFeasibleStart : public Error {
 public:
  NoFeasibleStart(const std::string& what, std::vector<StartRecord> records)
      : Error(Status::not_converged, what), records_(std::move(records)) {}
  const std::vector<StartRecord>& records() const noexcept { return records_; }

 private:
  std::vector<StartRecord> records_;
};

DesignResult multi_start(const DesignProblem& problem,
                         const std::vector<StartSpec>& starts,
                         const SolverConfig& cfg, int parallelism = 1);

}  // namespace specnet
