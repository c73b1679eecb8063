#include "specnet/graph.hpp"

#include "specnet/error.hpp"

#include <cmath>
#include <sstream>

namespace specnet {

namespace {

std::string dump(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << m;
  return os.str();
}

}  // namespace

WeightMatrix::WeightMatrix(Matrix w) {
  const auto n = w.rows();
  if (n < 2 || w.cols() != n) {
    throw Error(Status::invalid_argument,
                "weight matrix must be square with n >= 2");
  }
  if (!w.allFinite()) {
    throw Error(Status::invalid_argument, "weight matrix has non-finite entries");
  }
  const double asym = 0.5 * (w - w.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream os;
    os << "weight matrix is not symmetric (max |w_ij - w_ji|/2 = " << asym << ")";
    throw Error(Status::invalid_argument, os.str());
  }
  w_ = 0.5 * (w + w.transpose());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double& x = w_(i, j);
      if (x < -kZeroClamp) {
        std::ostringstream os;
        os << "negative weight " << x << " at (" << i << ", " << j << ")";
        throw Error(Status::invalid_argument, os.str());
      }
      if (x < kZeroClamp) x = 0.0;
    }
  }
  const Vector rows = w_.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(rows[i] - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os.precision(12);
      os << "row " << i << " sums to " << rows[i] << ", expected 1";
      throw Error(Status::invalid_argument, os.str());
    }
  }
}

WeightMatrix WeightMatrix::uniform_complete(int n) {
  if (n < 2) throw Error(Status::invalid_argument, "n must be >= 2");
  Matrix w = Matrix::Constant(n, n, 1.0 / (n - 1));
  w.diagonal().setZero();
  return WeightMatrix(std::move(w));
}

Matrix laplacian(const WeightMatrix& w) {
  return Matrix::Identity(w.n(), w.n()) - w.weights();
}

Spectrum spectrum_of_laplacian(const Matrix& lap) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(lap);
  if (es.info() != Eigen::Success) {
    throw Error(Status::numerical,
                "eigensolver did not converge on matrix:\n" + dump(lap));
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

Spectrum spectrum(const WeightMatrix& w) {
  return spectrum_of_laplacian(laplacian(w));
}

int component_count(const Spectrum& s, double tol) {
  int count = 0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values[k] < tol) ++count;
  }
  return count;
}

ComplementCheck complement_spectrum_check(const WeightMatrix& w) {
  const int n = w.n();
  const Matrix lap = laplacian(w);
  const Matrix centered =
      n * Matrix::Identity(n, n) - Matrix::Ones(n, n);
  const Spectrum primary = spectrum_of_laplacian(lap);
  const Spectrum comp = spectrum_of_laplacian(centered - lap);

  ComplementCheck out;
  out.complement_values = comp.values;
  // 1-based: lambda_k(G^C) = n - lambda_{n+2-k}(G), 2 <= k <= n.
  for (int k = 2; k <= n; ++k) {
    const double expected = n - primary.values[n + 2 - k - 1];
    out.max_deviation = std::max(
        out.max_deviation, std::abs(comp.values[k - 1] - expected));
  }
  return out;
}

WeightMatrix sinkhorn_symmetric(const Matrix& raw, SinkhornOptions opts) {
  const auto n = raw.rows();
  if (n < 2 || raw.cols() != n) {
    throw Error(Status::invalid_argument, "sinkhorn input must be square, n >= 2");
  }
  if (!(opts.tol > 0) || opts.max_iter < 1) {
    throw Error(Status::invalid_argument, "sinkhorn tol and max_iter must be positive");
  }
  if (!raw.allFinite() || raw.minCoeff() < 0) {
    throw Error(Status::invalid_argument, "sinkhorn input must be finite and nonnegative");
  }
  Matrix x = raw;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x.row(i).sum() <= 0) {
      std::ostringstream os;
      os << "row " << i << " is all zero";
      throw Error(Status::invalid_argument, os.str());
    }
  }

  double worst = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vector rows = x.rowwise().sum();
    worst = (rows.array() - 1.0).abs().maxCoeff();
    const bool symmetric = (x - x.transpose()).cwiseAbs().maxCoeff() <= 1e-15;
    if (worst <= opts.tol && symmetric) {
      x = 0.5 * (x + x.transpose()).eval();
      return WeightMatrix(std::move(x));
    }
    x = rows.cwiseInverse().asDiagonal() * x;
    x = 0.5 * (x + x.transpose()).eval();
  }
  std::ostringstream os;
  os << "sinkhorn did not converge in " << opts.max_iter
     << " iterations (worst row deviation " << worst << ")";
  throw Error(Status::not_converged, os.str());
}

WeightMatrix block_diagonal(const std::vector<WeightMatrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.n();
  Matrix w = Matrix::Zero(n, n);
  int at = 0;
  for (const auto& b : blocks) {
    w.block(at, at, b.n(), b.n()) = b.weights();
    at += b.n();
  }
  return WeightMatrix(std::move(w));
}

}  // namespace specnet
