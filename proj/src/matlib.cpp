#include "netnorm/matlib.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace netnorm {

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> decompose(const CMatrix& x) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitize(x));
}

}  // namespace

RVector hermitian_eigenvalues(const CMatrix& x) {
  if (x.rows() != x.cols()) throw ParameterError("hermitian_eigenvalues: matrix is not square");
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitize(x), Eigen::EigenvaluesOnly).eigenvalues();
}

double lambda_max(const CMatrix& x) { return hermitian_eigenvalues(x).maxCoeff(); }
double lambda_min(const CMatrix& x) { return hermitian_eigenvalues(x).minCoeff(); }

RVector singular_values(const CMatrix& x) {
  if (x.size() == 0) return RVector();
  RVector s;
  if (is_hermitian(x, 1e-12)) {
    s = hermitian_eigenvalues(x).cwiseAbs();
  } else {
    s = Eigen::JacobiSVD<CMatrix>(x).singularValues();
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double power_norm(const RVector& s, double alpha) {
  if (s.size() == 0) return 0.0;
  const double top = s.cwiseAbs().maxCoeff();
  if (std::isinf(alpha) || top == 0.0) return top;
  if (alpha == 1.0) return s.cwiseAbs().sum();
  if (alpha == 2.0) return s.norm();
  // scale by the largest entry to keep pow() in range
  double acc = 0.0;
  for (double v : s) acc += std::pow(std::abs(v) / top, alpha);
  return top * std::pow(acc, 1.0 / alpha);
}

Eigenpair top_eigenpair(const CMatrix& x) {
  auto es = decompose(x);
  const auto last = x.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

Eigenpair top_abs_eigenpair(const CMatrix& x) {
  auto es = decompose(x);
  const auto last = x.rows() - 1;
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(last);
  if (-lo > hi) return {lo, es.eigenvectors().col(0)};
  return {hi, es.eigenvectors().col(last)};
}

RVector simplex_project(const RVector& v) {
  const auto n = v.size();
  if (n == 0) return v;
  RVector u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u(j);
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u(j) - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

RVector l1_ball_project(const RVector& v) {
  if (v.cwiseAbs().sum() <= 1.0) return v;
  RVector mag = simplex_project(v.cwiseAbs());
  return mag.cwiseProduct(v.unaryExpr([](double a) { return a < 0.0 ? -1.0 : 1.0; }));
}

CMatrix project_to_density(const CMatrix& x) {
  auto es = decompose(x);
  const RVector lam = simplex_project(es.eigenvalues());
  const CMatrix& u = es.eigenvectors();
  return u * lam.cast<Complex>().asDiagonal() * u.adjoint();
}

CMatrix project_to_trace_ball(const CMatrix& x) {
  auto es = decompose(x);
  const RVector lam = l1_ball_project(es.eigenvalues());
  const CMatrix& u = es.eigenvectors();
  return u * lam.cast<Complex>().asDiagonal() * u.adjoint();
}

CMatrix partial_trace(const CMatrix& m, Side traced, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows())
    throw ParameterError("partial_trace: operator dimension does not equal d1*d2");
  if (traced == Side::B) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

DensityMatrix::DensityMatrix(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw ParameterError("DensityMatrix: not square");
  if (!is_hermitian(rho, 1e-8)) throw ParameterError("DensityMatrix: not Hermitian");
  rho_ = hermitize(rho);
  if (lambda_min(rho_) < kPsdFloor) throw ParameterError("DensityMatrix: not positive semidefinite");
  if (std::abs(trace_re(rho_) - 1.0) > kTraceTol) throw ParameterError("DensityMatrix: trace differs from 1");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const CVector v = psi / psi.norm();
  return DensityMatrix(projector(v));
}

}  // namespace netnorm
