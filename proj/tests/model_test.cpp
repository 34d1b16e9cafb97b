#include "netnorm/model.hpp"

#include <gtest/gtest.h>

#include "netnorm/errors.hpp"
#include "netnorm/rng.hpp"

using namespace netnorm;

namespace {

OneWayLOCC random_locc(Rng& rng, int d1, int d2, int n) {
  OneWayLOCC m{d1, d2, {}};
  const auto xs = random_subnormalized_povm(rng, d1, n, false);
  for (int i = 0; i < n; ++i) m.terms.push_back({xs[i], random_effect(rng, d2)});
  return m;
}

}  // namespace

TEST(model, validate_examples) {
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_TRUE(validate(OneWayLOCC{2, 2, {{id, id}}}).empty());

  auto v = validate(OneWayLOCC{2, 2, {{2.0 * id, id}}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, "sum X <= I");
  EXPECT_NEAR(v[0].magnitude, 1.0, 1e-12);

  CMatrix y = CMatrix::Zero(2, 2);
  y(0, 0) = 1.5;
  v = validate(OneWayLOCC{2, 2, {{id, y}}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, "Y <= I");
  EXPECT_EQ(v[0].index, 0);
  EXPECT_NEAR(v[0].magnitude, 0.5, 1e-12);
}

TEST(model, validate_reports_negative_x) {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = -0.1;
  const auto v = validate(OneWayLOCC{2, 2, {{x, CMatrix::Identity(2, 2)}}});
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].constraint, "X >= 0");
  EXPECT_NEAR(v[0].magnitude, 0.1, 1e-12);
  EXPECT_THROW(require_valid(OneWayLOCC{2, 2, {{x, CMatrix::Identity(2, 2)}}}), ValidationError);
}

TEST(model, banach_constants_examples) {
  BanachDescriptor d = banach_constants(Family::schatten, 5.0, 4);
  EXPECT_NEAR(d.type_constant, 2.0, 1e-12);
  EXPECT_EQ(d.gamma, 2.0);
  EXPECT_NEAR(d.smoothness, 2.0, 1e-12);

  d = banach_constants(Family::schatten, 2.0, 4);
  EXPECT_NEAR(d.type_constant, 1.0, 1e-12);
  EXPECT_EQ(d.gamma, 2.0);
  EXPECT_NEAR(d.smoothness, 0.5, 1e-12);

  d = banach_constants(Family::schatten, 1.5, 4);
  EXPECT_EQ(d.gamma, 1.5);
  EXPECT_EQ(d.type_constant, 1.0);

  EXPECT_THROW(banach_constants(Family::schatten, 1.0, 4), ParameterError);
  EXPECT_THROW(banach_constants(Family::ell, 0.5, 4), ParameterError);
}

TEST(model, banach_constants_monotone_above_two) {
  double prev = 0.0;
  for (double a = 2.0; a < 20.0; a += 0.5) {
    const double c = banach_constants(Family::schatten, a, 3).type_constant;
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(model, infinite_exponent_constants) {
  const BanachDescriptor d = banach_constants(Family::schatten, kInf, 8);
  EXPECT_NEAR(d.type_constant, std::sqrt(2.0 * std::log(8.0)), 1e-12);
  EXPECT_NEAR(d.smoothness, std::log(8.0), 1e-12);
  EXPECT_EQ(banach_constants(Family::schatten, kInf, 1).type_constant, 1.0);
}

TEST(model, norming_functional_pairs_to_norm) {
  Rng rng = make_rng(11, {});
  for (double a : {1.0, 1.5, 2.0, 3.0, kInf}) {
    for (int t = 0; t < 10; ++t) {
      const CMatrix y = random_hermitian(rng, 3);
      for (Family f : {Family::schatten, Family::ell}) {
        BanachDescriptor d;
        d.family = f;
        d.exponent = a;
        d.dim = 3;
        const CMatrix g = norming_functional(d, y);
        EXPECT_NEAR(hs_inner(g, y), banach_norm(d, y), 1e-9) << a;
        // dual norm of G is at most one
        const double conj = std::isinf(a) ? 1.0 : (a == 1.0 ? kInf : a / (a - 1.0));
        const double dual = f == Family::schatten ? schatten_norm(g, conj) : ell_norm(g, conj);
        EXPECT_LE(dual, 1.0 + 1e-9);
      }
    }
  }
}

TEST(model, normalize_examples) {
  const CMatrix id = CMatrix::Identity(2, 2);
  OneWayLOCC m{2, 2, {{id / 2.0, id / 2.0}, {id / 2.0, CMatrix::Zero(2, 2)}}};
  const OneWayLOCC out = normalize_locc(m);
  ASSERT_EQ(out.terms.size(), 1u);
  EXPECT_TRUE(out.terms[0].X.isApprox(id / 4.0));
  EXPECT_TRUE(out.terms[0].Y.isApprox(id));
}

TEST(model, normalize_preserves_operator) {
  Rng rng = make_rng(12, {});
  for (int t = 0; t < 30; ++t) {
    const OneWayLOCC m = random_locc(rng, 2, 3, 5);
    ASSERT_TRUE(validate(m).empty());
    const OneWayLOCC out = normalize_locc(m);
    EXPECT_TRUE(validate(out).empty());
    EXPECT_LE(operator_norm(m.assemble() - out.assemble()), 1e-9);
    for (const auto& term : out.terms) EXPECT_NEAR(operator_norm(term.Y), 1.0, 1e-12);
  }
}

TEST(model, eb_channel_validation) {
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_TRUE(validate(EBChannel{2, 2, {{id, id / 2.0}}}).empty());
  EXPECT_FALSE(validate(EBChannel{2, 2, {{id / 2.0, id / 2.0}}}).empty());
  EXPECT_FALSE(validate(EBChannel{2, 2, {{id, id}}}).empty());
}

TEST(model, multipartite_assemble_and_validate) {
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  MultipartiteLOCC t{{2, 2, 2}, {{p0, {{p0, {{p0, {}}}}}}}};
  EXPECT_TRUE(validate(t).empty());
  const CMatrix m = t.assemble();
  EXPECT_EQ(m.rows(), 8);
  EXPECT_NEAR(m(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(m.cwiseAbs().sum(), 1.0, 1e-15);

  MultipartiteLOCC bad{{2, 2}, {{2.0 * p0, {{p0, {}}}}}};
  EXPECT_FALSE(validate(bad).empty());
}

TEST(model, povm_deficit) {
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_FALSE(povm_deficit({id / 2.0, id / 2.0}).has_value());
  const auto d = povm_deficit({id / 4.0});
  ASSERT_TRUE(d.has_value());
  EXPECT_TRUE(d->isApprox(0.75 * id));
}
