#include "specnet/spectral.hpp"

#include "specnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specnet {

DesignProblem::DesignProblem(int n, int ell, double m) : n_(n), ell_(ell), m_(m) {
  if (n < 2) throw Error(Status::invalid_argument, "n must be >= 2");
  if (ell < 1 || ell >= n) {
    throw Error(Status::invalid_argument, "ell must satisfy 1 <= ell < n");
  }
  if (!(m >= 0) || !std::isfinite(m)) {
    throw Error(Status::invalid_argument, "m must be a finite value >= 0");
  }
  const double max_mixing = static_cast<double>(n) / (n - 1);
  if (m > max_mixing + 1e-9) {
    std::ostringstream os;
    os << "m = " << m << " exceeds the maximum achievable lambda_2 n/(n-1) = "
       << max_mixing;
    throw Error(Status::infeasible, os.str());
  }
  if (!(bound() > 0)) {
    std::ostringstream os;
    os << "bound(" << n << ", " << ell << ", " << m << ") = " << bound()
       << " is not positive";
    throw Error(Status::infeasible, os.str());
  }
}

double DesignProblem::bound() const { return specnet::bound(n_, ell_, m_); }

double kyfan_value(const Spectrum& s, int k) {
  return k <= 0 ? 0.0 : s.values.head(k).sum();
}

KyFanValue kyfan_sum(const Spectrum& s, int k) {
  const int n = s.n();
  if (k < 1 || k > n) {
    throw Error(Status::invalid_argument, "kyfan order must satisfy 1 <= k <= n");
  }
  KyFanValue out;
  out.k = k;
  out.value = kyfan_value(s, k);
  const auto vk = s.vectors.leftCols(k);
  out.supergradient = -(vk * vk.transpose());
  out.gap = k < n ? s.values[k] - s.values[k - 1]
                  : std::numeric_limits<double>::infinity();
  return out;
}

KyFanValue kyfan_sum(const WeightMatrix& w, int k) {
  return kyfan_sum(spectrum(w), k);
}

Vector kyfan_smoothed_weights(const Vector& values, int k, double mu) {
  const auto n = values.size();
  Vector x = Vector::Zero(n);
  if (k <= 0) return x;
  if (k >= n) return Vector::Ones(n);
  if (!(mu > 0)) {
    x.head(k).setOnes();
    return x;
  }
  auto weights_at = [&](double tau) {
    double total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = 1.0 / (1.0 + std::exp(std::clamp((values[i] - tau) / mu, -700.0, 700.0)));
      total += x[i];
    }
    return total;
  };
  // sum of weights is increasing in tau
  double lo = values.minCoeff() - 60 * mu - 1.0;
  double hi = values.maxCoeff() + 60 * mu + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (weights_at(mid) > k) hi = mid; else lo = mid;
  }
  weights_at(0.5 * (lo + hi));
  return x;
}

double objective(const Spectrum& s, int ell) {
  if (ell < 1 || ell >= s.n()) {
    throw Error(Status::invalid_argument, "ell must satisfy 1 <= ell < n");
  }
  return s.values[ell] - s.values[ell - 1];
}

double objective(const WeightMatrix& w, int ell) {
  return objective(spectrum(w), ell);
}

double mixing_rate(const Spectrum& s) { return s.values[1]; }

double mixing_rate(const WeightMatrix& w) { return mixing_rate(spectrum(w)); }

double bound(int n, int ell, double m) {
  if (ell >= n) throw Error(Status::invalid_argument, "ell must be < n");
  return (n - m * (ell - 1)) / (n - ell) - m;
}

double optimality_ratio(double achieved, int n, int ell, double m) {
  const double b = bound(n, ell, m);
  if (!(b > 0)) {
    throw Error(Status::infeasible, "bound is not positive; ratio undefined");
  }
  return achieved / b;
}

Vector ideal_spectrum(int n, int ell, double m) {
  Vector v(n);
  v[0] = 0;
  for (int k = 1; k < ell; ++k) v[k] = m;
  const double top = (n - m * (ell - 1)) / (n - ell);
  for (int k = ell; k < n; ++k) v[k] = top;
  return v;
}

}  // namespace specnet
