#include "netnorm/apps.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "netnorm/errors.hpp"
#include "netnorm/instances.hpp"
#include "netnorm/oracle.hpp"
#include "netnorm/rng.hpp"

using namespace netnorm;

namespace {

EstimateOptions with_k(int k, std::uint64_t seed = 0) {
  EstimateOptions o;
  o.k_override = k;
  o.seed = seed;
  return o;
}

double top_singular_sq(const CMatrix& a) {
  const double s = singular_values(a)(0);
  return s * s;
}

}  // namespace

TEST(eb_channel, depolarizing_output_norm) {
  for (int d : {2, 3}) {
    for (double alpha : {2.0, 4.0}) {
      const EstimateReport r = eb_channel_max_output_norm(depolarizing_channel(d), alpha, 0.1);
      EXPECT_NEAR(r.value, std::pow(d, -1.0 + 1.0 / alpha), 1e-9) << d << " " << alpha;
    }
  }
  EXPECT_NEAR(eb_channel_max_output_norm(depolarizing_channel(2), 2.0, 0.1).value, 0.70711, 1e-5);
}

TEST(eb_channel, dephasing_reaches_a_pure_output) {
  const EstimateReport r = eb_channel_max_output_norm(dephasing_channel(2), 2.0, 0.3);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(eb_channel, random_channel_against_sphere_oracle) {
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(600 + s, {});
    const EBChannel ch = random_eb_channel(rng, 2, 2, 3);
    const EstimateReport r = eb_channel_max_output_norm(ch, 3.0, 0.25, with_k(30, s));
    std::vector<CMatrix> xs, ys;
    for (const auto& t : ch.terms) {
      xs.push_back(t.X);
      ys.push_back(t.Y);
    }
    const double oracle = qubit_sphere_search(xs, ys, banach_constants(Family::schatten, 3.0, 2), 60).value;
    EXPECT_LE(r.value, oracle + 2e-4);
    EXPECT_GE(r.value, oracle - r.delta_attained);
    EXPECT_LE(r.value, 1.0 + 1e-8);
    EXPECT_GE(r.value, std::pow(2.0, -1.0 + 1.0 / 3.0) - 1e-8);
  }
}

TEST(eb_channel, rejects_alpha_one) {
  EXPECT_THROW(eb_channel_max_output_norm(depolarizing_channel(2), 1.0, 0.1), ParameterError);
}

TEST(two_to_q, q_two_is_the_squared_singular_value) {
  for (int s = 0; s < 20; ++s) {
    Rng rng = make_rng(700 + s, {});
    const CMatrix a = random_real_matrix(rng, 3 + s % 3, 2 + s % 4);
    EXPECT_NEAR(two_to_q_norm(a, 2.0, 0.1).value, top_singular_sq(a), 1e-6);
  }
}

TEST(two_to_q, identity_gives_one) {
  for (double q : {3.0, 4.0, 6.0}) {
    EXPECT_NEAR(two_to_q_norm(CMatrix::Identity(3, 3), q, 0.5).value, 1.0, 1e-6) << q;
  }
}

TEST(two_to_q, single_row) {
  Rng rng = make_rng(19, {});
  const CMatrix u = random_real_matrix(rng, 1, 4);
  EXPECT_NEAR(two_to_q_norm(u, 4.0, 0.5).value, u.squaredNorm(), 1e-6);
}

TEST(two_to_q, random_matrix_against_gradient_oracle) {
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(800 + s, {});
    const CMatrix a = random_real_matrix(rng, 4, 6);
    const EstimateReport r = two_to_q_norm(a, 4.0, 0.25, with_k(20, s));
    const double oracle = two_to_q_gradient(a, 4.0, 100, 300, s);
    EXPECT_LE(r.value, oracle * oracle + 2e-4 * top_singular_sq(a));
    EXPECT_GE(r.value, oracle * oracle - r.delta_attained);
    EXPECT_LE(r.delta_attained, 0.25 * top_singular_sq(a) * 4.0);
  }
}

TEST(two_to_q, scale_covariance) {
  Rng rng = make_rng(20, {});
  const CMatrix a = random_real_matrix(rng, 3, 4);
  const double x1 = two_to_q_norm(a, 4.0, 0.5, with_k(10)).value;
  const double x3 = two_to_q_norm(CMatrix(3.0 * a), 4.0, 0.5, with_k(10)).value;
  EXPECT_NEAR(x3, 9.0 * x1, 1e-6);
}

TEST(two_to_q, intermediate_q_uses_the_smaller_type) {
  Rng rng = make_rng(21, {});
  const CMatrix a = random_real_matrix(rng, 3, 3);
  const EstimateReport r = two_to_q_norm(a, 3.0, 0.5, with_k(10));
  const double oracle = two_to_q_gradient(a, 3.0, 100, 300, 1);
  EXPECT_LE(r.value, oracle * oracle + 1e-3);
  EXPECT_GE(r.value, oracle * oracle - r.delta_attained);
}

TEST(two_to_q, rejects_bad_q_and_zero_matrix) {
  EXPECT_THROW(two_to_q_norm(CMatrix::Identity(2, 2), 1.5, 0.1), ParameterError);
  EXPECT_THROW(two_to_q_norm(CMatrix::Zero(2, 2), 4.0, 0.1), ParameterError);
}

TEST(two_to_q_even, identity_and_projector) {
  EXPECT_NEAR(two_to_q_even(CMatrix::Identity(2, 2), 4.0, 0.5, with_k(10)).value, 1.0, 1e-6);
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1;
  EXPECT_NEAR(two_to_q_even(p, 4.0, 0.5, with_k(10)).value, 1.0, 1e-6);
}

TEST(two_to_q_even, random_matrix_against_gradient_oracle) {
  for (int s = 0; s < 2; ++s) {
    Rng rng = make_rng(900 + s, {});
    const CMatrix a = random_real_matrix(rng, 3, 3);
    const EstimateReport r = two_to_q_even(a, 4.0, 0.3, with_k(15, s));
    const double oracle = two_to_q_gradient(a, 4.0, 100, 300, s);
    const double o4 = std::pow(oracle, 4.0);
    EXPECT_LE(r.value, o4 + 1e-3 * o4);
    EXPECT_GE(r.value, o4 - r.delta_attained);
  }
}

TEST(two_to_q_even, odd_q_is_routed) {
  Rng rng = make_rng(22, {});
  const CMatrix a = random_real_matrix(rng, 2, 2);
  const EstimateReport r = two_to_q_even(a, 3.0, 0.5, with_k(8));
  EXPECT_EQ(r.algorithm, "two_to_q_norm");
}
