#include "netnorm/matlib.hpp"

#include <gtest/gtest.h>

#include "netnorm/errors.hpp"
#include "netnorm/rng.hpp"

using namespace netnorm;

namespace {

CMatrix diag(std::initializer_list<double> v) {
  RVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(matlib, schatten_norm_diagonal) {
  const CMatrix x = diag({3, 4});
  EXPECT_NEAR(schatten_norm(x, 1.0), 7.0, 1e-12);
  EXPECT_NEAR(schatten_norm(x, 2.0), 5.0, 1e-12);
  EXPECT_NEAR(schatten_norm(x, kInf), 4.0, 1e-12);
  EXPECT_THROW(schatten_norm(x, 0.5), ParameterError);
}

TEST(matlib, schatten_norm_general_matrix) {
  CMatrix x(2, 3);
  x << 1, 2, 0, 0, 1, Complex(0, 1);
  const RVector s = Eigen::JacobiSVD<CMatrix>(x).singularValues();
  EXPECT_NEAR(schatten_norm(x, 1.0), s.sum(), 1e-12);
  EXPECT_NEAR(schatten_norm(x, 2.0), x.norm(), 1e-12);
}

TEST(matlib, schatten_norm_monotone_in_alpha) {
  Rng rng = make_rng(1, {});
  for (int t = 0; t < 50; ++t) {
    const CMatrix x = random_hermitian(rng, 4);
    double prev = schatten_norm(x, 1.0);
    for (double a : {1.5, 2.0, 3.0, 4.0, 8.0, kInf}) {
      const double cur = schatten_norm(x, a);
      EXPECT_LE(cur, prev + 1e-12);
      prev = cur;
    }
  }
}

TEST(matlib, ell_norm_entrywise) {
  CMatrix v(3, 1);
  v << 3, Complex(0, -4), 0;
  EXPECT_NEAR(ell_norm(v, 1.0), 7.0, 1e-12);
  EXPECT_NEAR(ell_norm(v, 2.0), 5.0, 1e-12);
  EXPECT_NEAR(ell_norm(v, kInf), 4.0, 1e-12);
}

TEST(matlib, top_eigenpair_examples) {
  Eigenpair e = top_eigenpair(diag({1, 2}));
  EXPECT_NEAR(e.value, 2.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vector(1)), 1.0, 1e-12);

  e = top_eigenpair(CMatrix::Identity(2, 2));
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  EXPECT_NEAR(e.vector.norm(), 1.0, 1e-12);

  CMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  e = top_eigenpair(sx);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vector(0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(e.vector(0) - e.vector(1)) / std::abs(e.vector(0)), 0.0, 1e-12);
}

TEST(matlib, top_eigenpair_residual) {
  Rng rng = make_rng(2, {});
  for (int t = 0; t < 50; ++t) {
    const CMatrix x = random_hermitian(rng, 5);
    const Eigenpair e = top_eigenpair(x);
    EXPECT_LE((x * e.vector - e.value * e.vector).norm(), 1e-8 * operator_norm(x));
    EXPECT_NEAR(e.value, hermitian_eigenvalues(x).maxCoeff(), 1e-12);
  }
}

TEST(matlib, eigenvalues_ascending) {
  Rng rng = make_rng(3, {});
  const RVector lam = hermitian_eigenvalues(random_hermitian(rng, 6));
  for (Eigen::Index i = 1; i < lam.size(); ++i) EXPECT_LE(lam(i - 1), lam(i));
}

TEST(matlib, simplex_project_examples) {
  RVector v(2);
  v << 0.5, 0.5;
  EXPECT_TRUE(simplex_project(v).isApprox(v));
  v << 2, 0;
  EXPECT_NEAR(simplex_project(v)(0), 1.0, 1e-15);
  EXPECT_NEAR(simplex_project(v)(1), 0.0, 1e-15);
  v << 0, 0;
  EXPECT_NEAR(simplex_project(v)(0), 0.5, 1e-15);
  EXPECT_NEAR(simplex_project(v)(1), 0.5, 1e-15);
}

TEST(matlib, l1_ball_project_inside_and_outside) {
  RVector v(3);
  v << 0.2, -0.3, 0.1;
  EXPECT_TRUE(l1_ball_project(v).isApprox(v));
  v << 2, -1, 0;
  const RVector p = l1_ball_project(v);
  EXPECT_NEAR(p.cwiseAbs().sum(), 1.0, 1e-12);
  EXPECT_NEAR(p(0), 1.0, 1e-12);
}

TEST(matlib, project_to_density_examples) {
  EXPECT_TRUE(project_to_density(diag({0.5, 0.5})).isApprox(diag({0.5, 0.5})));
  EXPECT_TRUE(project_to_density(diag({2, 0})).isApprox(diag({1, 0})));
  EXPECT_TRUE(project_to_density(diag({0.6, 0.6})).isApprox(diag({0.5, 0.5})));
}

TEST(matlib, project_to_density_is_minimizer) {
  Rng rng = make_rng(4, {});
  for (int t = 0; t < 100; ++t) {
    const CMatrix x = random_hermitian(rng, 3);
    const CMatrix p = project_to_density(x);
    EXPECT_NO_THROW(DensityMatrix{p});
    const double dist = (x - p).norm();
    for (int s = 0; s < 100; ++s) {
      const CMatrix sigma = random_density(rng, 3, 1 + s % 3);
      EXPECT_LE(dist, (x - sigma).norm() + 1e-12);
    }
  }
}

TEST(matlib, partial_trace_product) {
  Rng rng = make_rng(5, {});
  const CMatrix x = random_hermitian(rng, 2);
  const CMatrix y = random_hermitian(rng, 3);
  EXPECT_TRUE(partial_trace(kron(x, y), Side::B, 2, 3).isApprox(y.trace() * x));
  EXPECT_TRUE(partial_trace(kron(x, y), Side::A, 2, 3).isApprox(x.trace() * y));
  EXPECT_TRUE(partial_trace(CMatrix::Identity(6, 6), Side::A, 2, 3).isApprox(2.0 * CMatrix::Identity(3, 3)));
  EXPECT_THROW(partial_trace(CMatrix::Identity(5, 5), Side::A, 2, 3), ParameterError);
}

TEST(matlib, partial_trace_linear_and_trace_preserving) {
  Rng rng = make_rng(6, {});
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random_hermitian(rng, 6);
    const CMatrix b = random_hermitian(rng, 6);
    EXPECT_NEAR(partial_trace(a, Side::B, 2, 3).trace().real(), a.trace().real(), 1e-12);
    EXPECT_NEAR(partial_trace(a, Side::A, 2, 3).trace().real(), a.trace().real(), 1e-12);
    const CMatrix lhs = partial_trace(CMatrix(2.0 * a - b), Side::B, 2, 3);
    const CMatrix rhs = 2.0 * partial_trace(a, Side::B, 2, 3) - partial_trace(b, Side::B, 2, 3);
    EXPECT_LE((lhs - rhs).norm(), 1e-12);
  }
}

TEST(matlib, norm_ordering) {
  Rng rng = make_rng(7, {});
  for (int t = 0; t < 50; ++t) {
    const CMatrix x = random_hermitian(rng, 4);
    EXPECT_LE(schatten_norm(x, kInf), schatten_norm(x, 2.0) + 1e-12);
    EXPECT_LE(schatten_norm(x, 2.0), schatten_norm(x, 1.0) + 1e-12);
  }
}

TEST(matlib, density_matrix_checks) {
  EXPECT_THROW(DensityMatrix{diag({1.5, -0.5})}, ParameterError);
  EXPECT_THROW(DensityMatrix{diag({0.5, 0.4})}, ParameterError);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}
