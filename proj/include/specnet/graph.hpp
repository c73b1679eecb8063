#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace specnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric doubly stochastic tie-strength matrix.
///
/// Construction symmetrizes to (w + w^T)/2, clamps entries in [-1e-12, 1e-12]
/// to exactly zero and rejects anything that is not, within tolerance,
/// symmetric, nonnegative and row-stochastic. Diagonal entries (unused
/// capacity) are allowed. Instances are immutable.
class WeightMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-9;
  static constexpr double kRowSumTol = 1e-9;
  static constexpr double kZeroClamp = 1e-12;

  explicit WeightMatrix(Matrix w);

  int n() const noexcept { return static_cast<int>(w_.rows()); }
  const Matrix& weights() const noexcept { return w_; }
  double operator()(int i, int j) const { return w_(i, j); }

  /// Sum of self-weights, i.e. total unused capacity.
  double diagonal_mass() const { return w_.trace(); }

  /// Uniform complete graph without self-loops: off-diagonal 1/(n-1).
  static WeightMatrix uniform_complete(int n);

  friend bool operator==(const WeightMatrix& a, const WeightMatrix& b) {
    return a.w_ == b.w_;
  }

 private:
  Matrix w_;
};

/// Laplacian eigenpairs, values ascending, column k of `vectors` paired with
/// `values[k]`.
struct Spectrum {
  Vector values;
  Matrix vectors;

  int n() const noexcept { return static_cast<int>(values.size()); }
};

/// L = I - W.
Matrix laplacian(const WeightMatrix& w);

/// Dense symmetric eigendecomposition of laplacian(w).
Spectrum spectrum(const WeightMatrix& w);
Spectrum spectrum_of_laplacian(const Matrix& lap);

/// Number of eigenvalues below `tol`, i.e. the connected component count.
int component_count(const Spectrum& s, double tol = 1e-6);

struct ComplementCheck {
  Vector complement_values;  // spectrum of n(I - 11^T/n) - L, ascending
  double max_deviation = 0;  // max_k |lambda_k(G^C) - (n - lambda_{n+2-k}(G))|
};

/// Verifies the Laplacian complement identity at the Laplacian level.
ComplementCheck complement_spectrum_check(const WeightMatrix& w);

struct SinkhornOptions {
  double tol = 1e-10;
  int max_iter = 10000;
};

/// Alternates row normalization with averaging against the transpose until
/// every row sums to one within `tol`. Zero pattern of raw + raw^T is kept.
WeightMatrix sinkhorn_symmetric(const Matrix& raw, SinkhornOptions opts = {});

/// Block-diagonal assembly (test and construction helper).
WeightMatrix block_diagonal(const std::vector<WeightMatrix>& blocks);

}  // namespace specnet
