#include "netnorm/sparsify.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "netnorm/errors.hpp"
#include "netnorm/instances.hpp"

using namespace netnorm;

TEST(sparsify, sample_count_formula) {
  // delta = 0.1, D = 4: 8 * 16 * ln 8 / 0.01
  EXPECT_EQ(sparse_sample_count(4, 0.3), static_cast<int>(std::ceil(8.0 * 16.0 * std::log(8.0) / 0.01 - 1e-6)));
  EXPECT_THROW(sparse_sample_count(4, 0.0), ParameterError);
  EXPECT_THROW(sparse_sample_count(4, 1.0), ParameterError);
}

TEST(sparsify, single_term) {
  Rng rng = make_rng(41, {});
  OneWayLOCC m{2, 2, {{random_density(rng, 2, 2), random_effect(rng, 2)}}};
  const auto s = sparsify_locc(m, 0.3, 0);
  ASSERT_EQ(s.result.terms.size(), 1u);
  const double delta = 0.1;
  const CMatrix mm = m.assemble();
  EXPECT_LE(operator_norm(s.result.assemble() - mm / (1 + delta)), 1e-12);
  EXPECT_LE(operator_norm(s.result.assemble() - mm), 0.3);
}

TEST(sparsify, random_instances) {
  Rng rng = make_rng(42, {});
  for (int t = 0; t < 5; ++t) {
    const OneWayLOCC m = random_locc(rng, 2, 2, 50);
    const auto s = sparsify_locc(m, 0.3, t);
    EXPECT_TRUE(validate(s.result).empty());
    const double dist = operator_norm(m.assemble() - s.result.assemble());
    EXPECT_LE(dist, 0.3);
    EXPECT_NEAR(dist, s.sample.distance, 1e-12);
    EXPECT_LE(s.sample.deviation_a, 0.1);
    EXPECT_LE(static_cast<int>(s.result.terms.size()), 50);
  }
}

TEST(sparsify, zero_term_dropped) {
  Rng rng = make_rng(43, {});
  OneWayLOCC m = random_locc(rng, 2, 2, 5);
  const auto base = sparsify_locc(m, 0.3, 7);
  OneWayLOCC with_zero = m;
  with_zero.terms.push_back({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
  with_zero.terms.insert(with_zero.terms.begin() + 2, {CMatrix::Identity(2, 2) * 0.0, CMatrix::Zero(2, 2)});
  const auto s = sparsify_locc(with_zero, 0.3, 7);
  EXPECT_LE(operator_norm(base.result.assemble() - s.result.assemble()), 1e-12);
}

TEST(sparsify, empty_measurement) {
  OneWayLOCC m{2, 2, {{CMatrix::Zero(2, 2), CMatrix::Identity(2, 2)}}};
  EXPECT_TRUE(sparsify_locc(m, 0.3, 0).result.terms.empty());
}

TEST(sparsify, deterministic) {
  Rng rng = make_rng(44, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 20);
  const auto a = sparsify_locc(m, 0.3, 11);
  const auto b = sparsify_locc(m, 0.3, 11);
  EXPECT_EQ(a.sample.indices, b.sample.indices);
  EXPECT_EQ(a.sample.weights, b.sample.weights);
}

TEST(sparsify, failure_reports_deviations) {
  Rng rng = make_rng(45, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 200);
  // a single attempt at eps close to the bound can fail; either outcome is
  // allowed but a failure must carry the observed deviations
  try {
    sparsify_locc(m, 0.99, 0, 1);
  } catch (const SparsificationFailed& e) {
    EXPECT_GT(e.deviation_a + e.deviation_b, 0.0);
  }
}

TEST(sparsify, general_single_term) {
  const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
  CMatrix y = CMatrix::Identity(2, 2) / std::sqrt(2.0);
  GeneralDecomposition g{2, s2, {CMatrix::Identity(2, 2)}, {y}};
  const auto s = sparsify_general(g, 0.4, 0);
  ASSERT_EQ(s.result.X.size(), 1u);
  EXPECT_LE((s.result.X[0] - CMatrix::Identity(2, 2) / 1.4).norm(), 1e-12);
}

TEST(sparsify, general_acceptance_rate) {
  const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
  Rng rng = make_rng(46, {});
  const GeneralDecomposition g = random_general(rng, 2, 40, s2);
  int good = 0;
  for (int seed = 0; seed < 50; ++seed)
    good += general_candidate(g, 0.4, seed, 0).estimated_deviation <= 0.4 ? 1 : 0;
  EXPECT_GE(good, 45);
  const auto s = sparsify_general(g, 0.4, 0);
  EXPECT_TRUE(validate(s.result).empty());
  EXPECT_LE(s.estimated_deviation, 0.4);
}

TEST(sparsify, general_rejects_zero_samples) {
  const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
  GeneralDecomposition g{2, s2, {CMatrix::Identity(2, 2)}, {CMatrix::Identity(2, 2) / 2.0}};
  EXPECT_THROW(sparsify_general(g, 1e-3, 0, 0.0), ParameterError);
}
