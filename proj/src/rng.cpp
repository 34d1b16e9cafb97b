#include "netnorm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace netnorm {

namespace {

CMatrix gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

// Inverse square root of a positive definite Hermitian matrix.
CMatrix inv_sqrt(const CMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(s));
  RVector lam = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CVector random_unit_vector(Rng& rng, int d) {
  CVector v = gaussian_matrix(rng, d, 1).col(0);
  return v / v.norm();
}

CMatrix random_hermitian(Rng& rng, int d) {
  const CMatrix g = gaussian_matrix(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_density(Rng& rng, int d, int rank) {
  const CMatrix g = gaussian_matrix(rng, d, rank);
  CMatrix rho = g * g.adjoint();
  return hermitize(rho / trace_re(rho));
}

std::vector<CMatrix> random_subnormalized_povm(Rng& rng, int d, int n, bool complete) {
  std::vector<CMatrix> parts;
  CMatrix total = CMatrix::Zero(d, d);
  int rank_sum = 0;
  for (int i = 0; i < n; ++i) {
    int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    // the last part fills any missing rank so the sum is invertible
    if (i == n - 1) rank = std::max(rank, std::min(d, d - rank_sum));
    rank_sum += rank;
    const CMatrix g = gaussian_matrix(rng, d, rank);
    parts.push_back(g * g.adjoint());
    total += parts.back();
  }
  // S^{-1/2} P_i S^{-1/2} sums to the identity
  CMatrix w = inv_sqrt(total);
  double shrink = 1.0;
  if (!complete) shrink = std::uniform_real_distribution<double>(0.6, 1.0)(rng);
  for (auto& p : parts) p = hermitize(shrink * (w * p * w));
  return parts;
}

CMatrix random_effect(Rng& rng, int d) {
  const CMatrix h = random_hermitian(rng, d);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RVector lam(d);
  for (int i = 0; i < d; ++i) lam(i) = u(rng);
  return hermitize(es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace netnorm
