#pragma once

#include <complex>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "netnorm/errors.hpp"

namespace netnorm {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = Matrix<Complex>;
using CVector = Vector<Complex>;
using RMatrix = Matrix<double>;
using RVector = Vector<double>;

/// Sentinel exponent for the operator (Schatten-infinity / ell-infinity) norm.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kTraceTol = 1e-9;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& x, double tol = kHermitianTol) {
  if (x.rows() != x.cols() || x.rows() == 0) return false;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// (X + X^dagger) / 2.
template <typename Derived>
CMatrix hermitize(const Eigen::MatrixBase<Derived>& x) {
  CMatrix m = x.template cast<Complex>();
  return (m + m.adjoint()) / 2.0;
}

template <typename Derived>
double trace_re(const Eigen::MatrixBase<Derived>& x) {
  return std::real(Complex(x.trace()));
}

/// Re tr(A^dagger B), the real Hilbert-Schmidt inner product.
inline double hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix (input is symmetrized first).
RVector hermitian_eigenvalues(const CMatrix& x);
double lambda_max(const CMatrix& x);
double lambda_min(const CMatrix& x);

/// Singular values, descending. Hermitian inputs take the eigenvalue path.
RVector singular_values(const CMatrix& x);

/// ell_alpha norm of a nonnegative vector of singular values (alpha in [1, inf]).
double power_norm(const RVector& s, double alpha);

/// Schatten-alpha norm: (sum sigma_i^alpha)^(1/alpha); alpha = kInf gives the
/// largest singular value.
template <typename Derived>
double schatten_norm(const Eigen::MatrixBase<Derived>& x, double alpha) {
  if (!(alpha >= 1.0)) throw ParameterError("schatten_norm: alpha must be >= 1");
  return power_norm(singular_values(CMatrix(x.template cast<Complex>())), alpha);
}

/// Entrywise ell_q norm.
template <typename Derived>
double ell_norm(const Eigen::MatrixBase<Derived>& x, double q) {
  if (!(q >= 1.0)) throw ParameterError("ell_norm: q must be >= 1");
  const CMatrix m = x.template cast<Complex>();
  return power_norm(m.cwiseAbs().reshaped(), q);
}

inline double operator_norm(const CMatrix& x) { return schatten_norm(x, kInf); }

struct Eigenpair {
  double value;
  CVector vector;
};

/// Largest eigenvalue and a unit eigenvector. Degenerate top eigenspaces
/// return the vector chosen by the ascending-order decomposition.
Eigenpair top_eigenpair(const CMatrix& x);

/// Eigenpair whose eigenvalue has the largest magnitude (ties go to the
/// positive end).
Eigenpair top_abs_eigenpair(const CMatrix& x);

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

/// Euclidean projection onto the probability simplex (sort-and-threshold).
RVector simplex_project(const RVector& v);

/// Euclidean projection onto the ell_1 ball of radius one.
RVector l1_ball_project(const RVector& v);

/// Frobenius projection of a Hermitian matrix onto the density matrices.
CMatrix project_to_density(const CMatrix& x);

/// Frobenius projection of a Hermitian matrix onto the trace-norm unit ball.
CMatrix project_to_trace_ball(const CMatrix& x);

enum class Side { A, B };

/// tr_A or tr_B of an operator on C^{d1} (x) C^{d2}; basis index i1 * d2 + i2.
CMatrix partial_trace(const CMatrix& m, Side traced, int d1, int d2);

/// Density matrix with checked invariants (PSD within kPsdFloor, unit trace).
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& rho);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const CVector& psi);

  const CMatrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  CMatrix rho_;
};

}  // namespace netnorm
