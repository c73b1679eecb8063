#pragma once

#include "specnet/graph.hpp"

namespace specnet {

/// One design instance: n nodes, `ell` target clusters, mixing floor `m` on
/// lambda_2. Construction rejects configurations whose objective bound is not
/// positive or whose floor exceeds what the uniform complete graph achieves.
class DesignProblem {
 public:
  DesignProblem(int n, int ell, double m);

  int n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }
  double m() const noexcept { return m_; }

  /// Upper bound on lambda_{ell+1} - lambda_ell for this instance.
  double bound() const;

 private:
  int n_;
  int ell_;
  double m_;
};

/// Sum of the k smallest Laplacian eigenvalues with a supergradient at W.
struct KyFanValue {
  int k = 0;
  double value = 0;
  Matrix supergradient;  // dS_k/dW = -V_k V_k^T
  double gap = 0;        // lambda_{k+1} - lambda_k; +inf when k == n
};

KyFanValue kyfan_sum(const Spectrum& s, int k);
KyFanValue kyfan_sum(const WeightMatrix& w, int k);

/// Sum of the k smallest values of an ascending spectrum; 0 for k == 0.
double kyfan_value(const Spectrum& s, int k);

/// Weights x in [0,1]^n with sum k minimizing <x, values> + mu * sum h(x_i),
/// h(x) = x log x + (1-x) log(1-x): x_i = 1/(1 + exp((values_i - tau)/mu)).
/// The smoothed Ky Fan gradient at the W level is -V diag(x) V^T. mu == 0
/// returns the indicator of the k smallest entries (values ascending).
Vector kyfan_smoothed_weights(const Vector& values, int k, double mu);

/// lambda_{ell+1} - lambda_ell (1-based).
double objective(const Spectrum& s, int ell);
double objective(const WeightMatrix& w, int ell);

/// Algebraic connectivity lambda_2.
double mixing_rate(const Spectrum& s);
double mixing_rate(const WeightMatrix& w);

/// (n - m(ell-1))/(n-ell) - m.
double bound(int n, int ell, double m);

/// achieved / bound(n, ell, m); throws infeasible if the bound is not positive.
double optimality_ratio(double achieved, int n, int ell, double m);

/// lambda of the graph that meets the bound: 0, m x (ell-1), then
/// (n - m(ell-1))/(n-ell) repeated n-ell times.
Vector ideal_spectrum(int n, int ell, double m);

/// Frobenius inner product <a, b>.
inline double inner(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace specnet
