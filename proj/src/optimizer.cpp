#include "specnet/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace specnet {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53-bit uniform in [0, 1); independent of the standard library's
// distribution implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Orthogonal projection of a symmetric matrix onto {W = W^T, W 1 = 1}.
void project_row_stochastic(Matrix& x, double target) {
  const auto n = x.rows();
  const Vector s = Vector::Constant(n, target) - x.rowwise().sum();
  const Vector a = (s.array() - s.sum() / (2.0 * n)).matrix() / static_cast<double>(n);
  x.colwise() += a;
  x.rowwise() += a.transpose();
}

// V diag(x) V^T
Matrix weighted_projector(const Spectrum& s, const Vector& x) {
  return s.vectors * x.asDiagonal() * s.vectors.transpose();
}

double max_violation(const Matrix& w, const Spectrum& s, double m) {
  const double rows = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double neg = std::max(0.0, -w.minCoeff());
  const double mix = std::max(0.0, m - s.values[1]);
  const double asym = (w - w.transpose()).cwiseAbs().maxCoeff();
  return std::max({rows, neg, mix, asym});
}

// Lifts lambda_2 to m in place by mixing with the uniform complete graph;
// the spectrum is updated without a new decomposition.
void lift_in_place(Matrix& w, Spectrum& s, double m) {
  const auto n = w.rows();
  const double lambda2 = s.values[1];
  if (lambda2 >= m) return;
  const double top = static_cast<double>(n) / (n - 1);
  const double alpha = std::min(1.0, (m - lambda2) / (top - lambda2));
  Matrix uniform = Matrix::Constant(n, n, 1.0 / (n - 1));
  uniform.diagonal().setZero();
  w = (1.0 - alpha) * w + alpha * uniform;
  for (Eigen::Index k = 1; k < n; ++k) {
    s.values[k] = (1.0 - alpha) * s.values[k] + alpha * top;
  }
  // Keep lambda_2 >= m exactly despite rounding in the affine update.
  if (s.values[1] < m) s.values[1] = m;
}

}  // namespace

std::string StepRule::describe() const {
  std::ostringstream os;
  os << "eta_t = eta0/sqrt(t), eta0 = ";
  if (eta0 > 0) os << eta0; else os << "1/n";
  return os.str();
}

void SolverConfig::validate() const {
  auto need = [](bool ok, const char* name) {
    if (!ok) {
      throw Error(Status::invalid_argument,
                  std::string("solver config: ") + name + " must be positive");
    }
  };
  need(outer_tol > 0, "outer_tol");
  need(outer_max_iter > 0, "outer_max_iter");
  need(inner_tol > 0, "inner_tol");
  need(inner_max_iter > 0, "inner_max_iter");
  need(inner_patience > 0, "inner_patience");
  need(penalty_rho >= 0, "penalty_rho");
  need(penalty_doublings >= 0, "penalty_doublings");
  need(step_rule.eta0 >= 0, "step_rule.eta0");
  need(feasibility_tol > 0, "feasibility_tol");
  need(smoothing_mu0 >= 0, "smoothing_mu0");
  need(smoothing_decay > 0 && smoothing_decay <= 1, "smoothing_decay");
  need(smoothing_floor >= 0, "smoothing_floor");
  need(projection_max_sweeps > 0, "projection_max_sweeps");
}

const char* stop_reason_name(StopReason r) noexcept {
  switch (r) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::iteration_cap: return "iteration_cap";
    case StopReason::solver_failure: return "solver_failure";
  }
  return "unknown";
}

WeightMatrix random_start(int n, const StartSpec& start) {
  if (n < 2) throw Error(Status::invalid_argument, "n must be >= 2");
  if (!(start.init_density > 0) || start.init_density > 1) {
    throw Error(Status::invalid_argument, "init_density must lie in (0, 1]");
  }
  std::mt19937_64 rng(start.seed);
  Matrix raw = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double value = uniform01(rng);
      const bool keep = start.init_density >= 1.0 || uniform01(rng) < start.init_density;
      if (keep) raw(i, j) = raw(j, i) = value;
    }
  }
  if (start.init_density < 1.0) {
    // Random self-weights give every sparse pattern a doubly stochastic scaling.
    for (int i = 0; i < n; ++i) raw(i, i) = uniform01(rng) + 0.5;
  }
  return sinkhorn_symmetric(raw);
}

WeightMatrix project_feasible(const Matrix& x, ProjectionOptions opts) {
  const auto n = x.rows();
  if (n < 2 || x.cols() != n || !x.allFinite()) {
    throw Error(Status::invalid_argument, "projection input must be finite, square, n >= 2");
  }
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(Status::invalid_argument, "projection input must be symmetric");
  }
  Matrix w = 0.5 * (x + x.transpose());
  // The affine set needs no Dykstra correction; the orthant does.
  Matrix correction = Matrix::Zero(n, n);
  double residual = 0;
  double change = 0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    Matrix a = w;
    project_row_stochastic(a, 1.0);
    const Matrix shifted = a + correction;
    Matrix next = shifted.cwiseMax(0.0);
    correction = shifted - next;
    change = (next - w).cwiseAbs().maxCoeff();
    residual = (next.rowwise().sum().array() - 1.0).abs().maxCoeff();
    w = std::move(next);
    if (residual <= opts.tol && change <= opts.tol) {
      return WeightMatrix(std::move(w));
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "Dykstra projection did not converge in " << opts.max_sweeps
     << " sweeps (row residual " << residual << ", last change " << change
     << "); iterate:\n" << w;
  throw Error(Status::not_converged, os.str());
}

WeightMatrix lift_mixing(const WeightMatrix& w, double m) {
  Matrix out = w.weights();
  Spectrum s = spectrum(w);
  if (s.values[1] >= m) return w;
  lift_in_place(out, s, m);
  return WeightMatrix(std::move(out));
}

Surrogate::Surrogate(const DesignProblem& problem, const WeightMatrix& w_hat, double rho)
    : problem_(problem), w_hat_(w_hat.weights()), rho_(rho) {
  const Spectrum s = spectrum(w_hat);
  const KyFanValue tangent = kyfan_sum(s, problem.ell());
  projector_ = -tangent.supergradient;
  s_ell_hat_ = tangent.value;
  gap_ = tangent.gap;
}

double Surrogate::value(const Matrix& w, const Spectrum& s) const {
  const int ell = problem_.ell();
  const double concave = kyfan_value(s, ell - 1) + kyfan_value(s, ell + 1);
  // <dS_l(w_hat), W - w_hat> with dS_l/dW = -P
  const double linear = -inner(projector_, w - w_hat_);
  const double penalty = rho_ * std::min(0.0, kyfan_value(s, 2) - problem_.m());
  return concave - 2.0 * (s_ell_hat_ + linear) + penalty;
}

double Surrogate::value(const WeightMatrix& w) const {
  return value(w.weights(), spectrum(w));
}

InnerResult inner_solve(const DesignProblem& problem, const WeightMatrix& w_hat,
                        const SolverConfig& cfg, double rho, double mu) {
  const int n = problem.n();
  const int ell = problem.ell();
  const double m = problem.m();
  const Surrogate surrogate(problem, w_hat, rho);
  const double eta0 = cfg.eta0_for(n);
  const ProjectionOptions popts{1e-12, cfg.projection_max_sweeps};

  Matrix x = w_hat.weights();
  Spectrum sx = spectrum(w_hat);
  InnerResult out{w_hat, 0, 0, 0};
  out.phi_start = surrogate.value(x, sx);
  double best_phi = out.phi_start;
  Matrix best = x;
  int stall = 0;

  for (int t = 1; t <= cfg.inner_max_iter; ++t) {
    Vector weights = kyfan_smoothed_weights(sx.values, ell + 1, mu);
    if (ell > 1) weights += kyfan_smoothed_weights(sx.values, ell - 1, mu);
    if (sx.values[1] < m - 1e-10) weights += rho * kyfan_smoothed_weights(sx.values, 2, mu);
    Matrix direction = 2.0 * surrogate.tangent_projector() - weighted_projector(sx, weights);
    project_row_stochastic(direction, 0.0);

    const Matrix trial = x + (eta0 / std::sqrt(static_cast<double>(t))) * direction;
    Matrix y = project_feasible(0.5 * (trial + trial.transpose()), popts).weights();
    Spectrum sy = spectrum_of_laplacian(Matrix::Identity(n, n) - y);
    lift_in_place(y, sy, m);

    const double phi = surrogate.value(y, sy);
    out.iterations = t;
    if (phi > best_phi + cfg.inner_tol) stall = 0; else ++stall;
    if (phi > best_phi) {
      best_phi = phi;
      best = y;
    }
    if (stall >= cfg.inner_patience) break;
    x = std::move(y);
    sx = std::move(sy);
  }
  out.w = WeightMatrix(std::move(best));
  out.phi_end = best_phi;
  return out;
}

StartOutcome ccp_solve_from(const DesignProblem& problem, const WeightMatrix& init,
                            std::uint64_t seed, const SolverConfig& cfg) {
  cfg.validate();
  const int ell = problem.ell();
  const double m = problem.m();
  StartOutcome out;
  StartRecord& rec = out.record;
  rec.seed = seed;
  out.w = init.weights();
  double rho = cfg.rho_for(problem.n());

  try {
    WeightMatrix w = lift_mixing(init, m);
    out.w = w.weights();
    double f = objective(w, ell);
    rec.trace.push_back(f);
    for (int outer = 0; outer < cfg.outer_max_iter; ++outer) {
      const double mu = std::max(
          cfg.smoothing_mu0 * std::pow(cfg.smoothing_decay, outer), cfg.smoothing_floor);
      const double mu_eff = cfg.smoothing_mu0 > 0 ? mu : 0.0;
      if (f < 1e-8) ++rec.degenerate_linearizations;

      InnerResult inner = inner_solve(problem, w, cfg, rho, mu_eff);
      Spectrum s = spectrum(inner.w);
      for (int d = 0; d < cfg.penalty_doublings &&
                      max_violation(inner.w.weights(), s, m) > cfg.feasibility_tol;
           ++d) {
        rho *= 2.0;
        inner = inner_solve(problem, w, cfg, rho, mu_eff);
        s = spectrum(inner.w);
      }
      w = inner.w;
      out.w = w.weights();
      const double f_next = objective(s, ell);
      rec.trace.push_back(f_next);
      rec.outer_iterations = outer + 1;
      const bool settled = std::abs(f_next - f) < cfg.outer_tol;
      f = f_next;
      if (settled) {
        rec.converged = true;
        rec.stop = StopReason::tolerance;
        break;
      }
    }
    if (!rec.converged) rec.stop = StopReason::iteration_cap;
    const Spectrum s = spectrum(w);
    rec.objective = objective(s, ell);
    rec.lambda2 = mixing_rate(s);
    rec.max_violation = max_violation(w.weights(), s, m);
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.converged = false;
    rec.stop = StopReason::solver_failure;
    rec.error = e.what();
  }
  rec.final_rho = rho;
  return out;
}

StartOutcome ccp_solve(const DesignProblem& problem, const StartSpec& start,
                       const SolverConfig& cfg) {
  Matrix init;
  try {
    init = random_start(problem.n(), start).weights();
  } catch (const Error& e) {
    if (e.status() == Status::invalid_argument) throw;
    StartOutcome out;
    out.record.seed = start.seed;
    out.record.failed = true;
    out.record.stop = StopReason::solver_failure;
    out.record.error = std::string("initialization: ") + e.what();
    return out;
  }
  return ccp_solve_from(problem, WeightMatrix(std::move(init)), start.seed, cfg);
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) {
    seeds.push_back(splitmix64_mix(base + static_cast<std::uint64_t>(i + 1) * kGoldenGamma));
  }
  return seeds;
}

DesignResult multi_start(const DesignProblem& problem,
                         const std::vector<StartSpec>& starts,
                         const SolverConfig& cfg, int parallelism) {
  if (starts.empty()) throw Error(Status::invalid_argument, "at least one start is required");
  if (parallelism < 1) throw Error(Status::invalid_argument, "parallelism must be >= 1");
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<StartOutcome> outcomes(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      outcomes[i] = ccp_solve(problem, starts[i], cfg);
    }
  };
  const int threads = std::min<int>(parallelism, static_cast<int>(starts.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<StartRecord> records;
  records.reserve(outcomes.size());
  int best = -1;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const StartRecord& r = outcomes[i].record;
    records.push_back(r);
    if (!r.feasible(problem.m(), cfg.feasibility_tol)) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const StartRecord& b = outcomes[best].record;
    if (r.objective > b.objective + 1e-12 ||
        (std::abs(r.objective - b.objective) <= 1e-12 && r.seed < b.seed)) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    std::ostringstream os;
    os << "none of " << starts.size() << " starts produced a feasible design";
    throw NoFeasibleStart(os.str(), std::move(records));
  }

  WeightMatrix w_best(outcomes[best].w);
  const Spectrum s = spectrum(w_best);
  DesignResult result{problem, cfg, w_best, 0, 0, 0, 0, 0, {}, {}};
  result.objective = objective(s, problem.ell());
  result.lambda2 = mixing_rate(s);
  result.bound = problem.bound();
  result.ratio = result.objective / result.bound;
  result.best_seed = outcomes[best].record.seed;
  result.starts = std::move(records);
  result.wall_time = std::chrono::steady_clock::now() - t0;
  return result;
}

}  // namespace specnet
