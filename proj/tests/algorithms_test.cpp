#include "netnorm/algorithms.hpp"

#include <gtest/gtest.h>

#include "netnorm/errors.hpp"
#include "netnorm/instances.hpp"
#include "netnorm/oracle.hpp"
#include "netnorm/rng.hpp"

using namespace netnorm;

namespace {

CMatrix ket_bra(int d, int i) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, i) = 1;
  return m;
}

EstimateOptions with_k(int k, std::uint64_t seed = 0) {
  EstimateOptions o;
  o.k_override = k;
  o.seed = seed;
  return o;
}

OneWayLOCC flatten(const MultipartiteLOCC& t) {
  OneWayLOCC m{t.dims[0], t.dims[1], {}};
  for (const auto& node : t.roots) m.terms.push_back({node.X, forest_operator(node.children, t.dims, 2)});
  return m;
}

double ell_norm_of(const CMatrix& v, double p) { return ell_norm(RVector(v.real().reshaped()), p); }

}  // namespace

TEST(hsep_basic, single_product_projector) {
  const OneWayLOCC m{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}}};
  const EstimateReport r = hsep_basic(m, 0.5);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  ASSERT_EQ(r.witnesses.size(), 2u);
  EXPECT_NEAR(r.witnesses[0](0, 0).real(), 1.0, 1e-6);
  EXPECT_NEAR(r.witnesses[1](0, 0).real(), 1.0, 1e-6);
  EXPECT_FALSE(r.fallback);
}

TEST(hsep_basic, classical_copy_reaches_one) {
  const OneWayLOCC m{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}, {ket_bra(2, 1), ket_bra(2, 1)}}};
  const EstimateReport r = hsep_basic(m, 0.5);
  EXPECT_LE(r.value, 1.0 + 2 * 1e-4);
  EXPECT_GE(r.value, 1.0 - r.delta_attained);
}

TEST(hsep_basic, half_weight_copy) {
  const OneWayLOCC m{2, 2, {{ket_bra(2, 0), 0.5 * ket_bra(2, 0)}, {ket_bra(2, 1), 0.5 * ket_bra(2, 1)}}};
  const EstimateReport r = hsep_basic(m, 0.5);
  EXPECT_NEAR(r.value, 0.5, 1e-6);
}

TEST(hsep_basic, sound_and_close_against_oracle) {
  for (int s = 0; s < 6; ++s) {
    Rng rng = make_rng(100 + s, {});
    const OneWayLOCC m = random_locc(rng, 2, 2, 3);
    const EstimateReport r = hsep_basic(m, 0.5, with_k(20, s));
    const double oracle = hsep_alternating(m.assemble(), 2, 2, 50, 200, s).value;
    EXPECT_LE(r.value, oracle + 2e-4) << "instance " << s;
    EXPECT_GE(r.value, oracle - r.delta_attained) << "instance " << s;
  }
}

TEST(hsep_basic, value_is_certified_from_witnesses) {
  Rng rng = make_rng(7, {});
  const OneWayLOCC m = random_locc(rng, 3, 2, 4);
  const EstimateReport r = hsep_basic(m, 0.6, with_k(6));
  const double direct = trace_re(CMatrix(m.assemble() * kron(r.witnesses[0], r.witnesses[1])));
  EXPECT_NEAR(r.value, direct, 1e-12);
  for (const auto& [name, v] : r.diagnostics) {
    if (name == "certification_gap") EXPECT_LE(v, 1e-8);
  }
  EXPECT_EQ(r.net.scanned, multiset_count(5, 6));
  EXPECT_EQ(r.net.feasible + r.net.infeasible + r.net.indeterminate, r.net.scanned);
}

TEST(hsep_basic, budget_cap_is_reported) {
  Rng rng = make_rng(8, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 3);
  EstimateOptions o;
  o.budget = 100;
  const EstimateReport r = hsep_basic(m, 0.2, o);
  EXPECT_TRUE(r.net.capped);
  EXPECT_LT(r.net.k, r.net.k_requested);
  EXPECT_LE(r.net.scanned, 100u);
  EXPECT_GT(r.delta_attained, r.delta_requested);
}

TEST(hsep_basic, deterministic_across_thread_counts) {
  Rng rng = make_rng(9, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 3);
  EstimateOptions a = with_k(12, 5);
  EstimateOptions b = a;
  a.threads = 1;
  b.threads = 4;
  const EstimateReport ra = hsep_basic(m, 0.5, a);
  const EstimateReport rb = hsep_basic(m, 0.5, b);
  EXPECT_EQ(ra.value, rb.value);
  EXPECT_EQ(ra.best_rank, rb.best_rank);
  EXPECT_EQ(ra.net.feasible, rb.net.feasible);
  EXPECT_TRUE(ra.witnesses[0] == rb.witnesses[0]);
}

TEST(hsep_basic, rejects_bad_input) {
  const OneWayLOCC bad{2, 2, {{2.0 * ket_bra(2, 0), ket_bra(2, 0)}}};
  EXPECT_THROW(hsep_basic(bad, 0.5), ValidationError);
  const OneWayLOCC ok{2, 2, {{ket_bra(2, 0), ket_bra(2, 0)}}};
  EXPECT_THROW(hsep_basic(ok, 0.0), ParameterError);
  EXPECT_THROW(hsep_basic(ok, 1.5), ParameterError);
}

TEST(hsep_sparse, small_instance_skips_sparsification) {
  Rng rng = make_rng(11, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 3);
  const EstimateReport s = hsep_sparse(m, 0.5, with_k(10));
  const EstimateReport b = hsep_basic(m, 0.5, with_k(10));
  EXPECT_EQ(s.algorithm, "hsep_sparse");
  EXPECT_EQ(s.value, b.value);
}

TEST(hsep_sparse, duplicate_terms_are_merged) {
  Rng rng = make_rng(12, {});
  const CMatrix y = random_effect(rng, 2);
  const CMatrix x = random_effect(rng, 2) / 100.0;
  OneWayLOCC m{2, 2, {}};
  for (int i = 0; i < 100; ++i) m.terms.push_back({x, y});
  const EstimateReport s = hsep_sparse(m, 0.5, with_k(10));
  double merged = -1;
  for (const auto& [name, v] : s.diagnostics) {
    if (name == "terms_merged") merged = v;
  }
  EXPECT_EQ(merged, 1.0);
  const double oracle = hsep_alternating(m.assemble(), 2, 2).value;
  EXPECT_LE(s.value, oracle + 2e-4);
  EXPECT_GE(s.value, oracle - s.delta_attained);
}

TEST(hsep_sparse, many_terms_against_oracle) {
  Rng rng = make_rng(13, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 200);
  EstimateOptions o;
  o.budget = 25'000;
  const EstimateReport s = hsep_sparse(m, 0.6, o);
  const double oracle = hsep_alternating(m.assemble(), 2, 2).value;
  EXPECT_LE(s.value, oracle + 2e-4);
  EXPECT_GE(s.value, oracle - s.delta_attained);
  EXPECT_TRUE(s.net.capped);
}

TEST(hsep_multipartite, product_projector_chain) {
  const EstimateReport r = hsep_multipartite(product_projector_tree(3, 2), 0.5, with_k(10));
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_EQ(r.witnesses.size(), 3u);
}

TEST(hsep_multipartite, two_parties_match_flattened_basic) {
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(200 + s, {});
    const MultipartiteLOCC t = random_tree(rng, {2, 2}, 3);
    const EstimateReport multi = hsep_multipartite(t, 0.6, with_k(12, s));
    const EstimateReport flat = hsep_basic(flatten(t), 0.3, with_k(12, s));
    EXPECT_NEAR(multi.value, flat.value, 1e-9) << "instance " << s;
    EXPECT_DOUBLE_EQ(multi.eps, flat.eps);
  }
}

TEST(hsep_multipartite, classical_and_tree_against_grid) {
  for (int s = 0; s < 2; ++s) {
    Rng rng = make_rng(300 + s, {});
    const MultipartiteLOCC t = classical_and_tree(rng, 3);
    const EstimateReport r = hsep_multipartite(t, 0.5, with_k(8, s));
    const double grid = product_qubit_grid(t.assemble(), 3, 20).value;
    EXPECT_LE(r.value, grid + 4e-4);
    EXPECT_GE(r.value, grid - r.delta_attained);
    CMatrix prod = kron(kron(r.witnesses[0], r.witnesses[1]), r.witnesses[2]);
    EXPECT_NEAR(r.value, trace_re(CMatrix(t.assemble() * prod)), 1e-12);
  }
}

TEST(hsep_multipartite, rejects_large_assembly_and_single_party) {
  EXPECT_THROW(hsep_multipartite(product_projector_tree(3, 8), 0.5, with_k(2)), ParameterError);
  EXPECT_THROW(hsep_multipartite(product_projector_tree(1, 2), 0.5, with_k(2)), ParameterError);
}

TEST(s1_to_banach, constant_y_gives_its_norm) {
  Rng rng = make_rng(14, {});
  const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
  CMatrix y0 = random_hermitian(rng, 2);
  y0 /= schatten_norm(y0, 2.0);
  GeneralDecomposition g = random_general(rng, 2, 3, s2);
  for (auto& y : g.Y) y = y0;
  const EstimateReport r = s1_to_banach(g, 0.5);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(s1_to_banach, operator_norm_case_matches_hsep_basic) {
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(400 + s, {});
    const OneWayLOCC m = random_locc(rng, 2, 2, 3);
    const GeneralDecomposition g{2, banach_constants(Family::schatten, kInf, 2), m.xs(), m.ys()};
    S1Options extra;
    extra.sparsify = false;
    const EstimateReport a = s1_to_banach(g, 0.25, with_k(15, s), extra);
    const EstimateReport b = hsep_basic(m, 0.5, with_k(15, s));
    EXPECT_NEAR(a.value, b.value, 1e-9);
  }
}

TEST(s1_to_banach, qubit_instance_against_sphere_oracle) {
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(500 + s, {});
    const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
    const GeneralDecomposition g = random_general(rng, 2, 3, s2);
    const EstimateReport r = s1_to_banach(g, 0.3, with_k(22, s));
    const double oracle = qubit_sphere_search(g.X, g.Y, s2, 60).value;
    EXPECT_LE(r.value, oracle + 2e-4);
    EXPECT_GE(r.value, oracle - r.delta_attained);
  }
}

TEST(s1_to_banach, low_rank_mode) {
  Rng rng = make_rng(15, {});
  const OneWayLOCC m = random_locc(rng, 2, 2, 3);
  double r2 = 0;
  for (const auto& t : m.terms) r2 = std::max(r2, schatten_norm(t.Y, 2.0));
  const EstimateReport r = hsep_lowrank(m, r2, 0.5, with_k(15));
  const double oracle = hsep_alternating(m.assemble(), 2, 2).value;
  EXPECT_LE(r.value, oracle + 2e-4);
  EXPECT_GE(r.value, oracle - r.delta_attained);
  EXPECT_EQ(r.witnesses.size(), 2u);
  EXPECT_THROW(hsep_lowrank(m, 0.5 * r2, 0.5, with_k(15)), ValidationError);
}

TEST(injective_norm, psd_functionals_on_s1_match_s1_to_banach) {
  Rng rng = make_rng(16, {});
  const BanachDescriptor s2 = banach_constants(Family::schatten, 2.0, 2);
  const GeneralDecomposition g = random_general(rng, 2, 3, s2);
  InjectiveProblem prob{InputBall::trace_ball, 2, g.X, g.Y, s2};
  const double delta = 0.5;
  const EstimateReport inj = injective_norm(prob, delta);
  S1Options extra;
  extra.sparsify = false;
  const EstimateReport ref = s1_to_banach(g, delta, with_k(choose_k_injective(s2, delta)), extra);
  EXPECT_NEAR(inj.value, ref.value, 1e-9);
  EXPECT_EQ(inj.net.k, ref.net.k);
}

TEST(injective_norm, unit_functional_and_unit_vector) {
  const BanachDescriptor l4 = banach_constants(Family::ell, 4.0, 2);
  CMatrix x = CMatrix::Zero(3, 1);
  x(0) = 1;
  CMatrix y = CMatrix::Zero(2, 1);
  y(1) = 1;
  const InjectiveProblem prob{InputBall::l2, 3, {x}, {y}, l4};
  const EstimateReport r = injective_norm(prob, 0.5);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(injective_norm, l2_to_l4_against_ascent_oracle) {
  Rng rng = make_rng(17, {});
  const BanachDescriptor l4 = banach_constants(Family::ell, 4.0, 3);
  InjectiveProblem prob{InputBall::l2, 3, {}, {}, l4};
  for (int i = 0; i < 3; ++i) {
    prob.functionals.push_back(random_real_matrix(rng, 3, 1));
    CMatrix y = random_real_matrix(rng, 3, 1);
    prob.ys.push_back(y / ell_norm_of(y, 4.0));
  }
  const double scale = factorization_bound(prob).first;
  for (auto& x : prob.functionals) x /= scale;
  EXPECT_NEAR(factorization_bound(prob).first, 1.0, 1e-9);
  EstimateOptions o;
  o.budget = 40'000;
  const EstimateReport r = injective_norm(prob, 0.3, o);
  const double oracle = linear_ascent(prob.functionals, prob.ys, l4, InputSpace{InputBall::l2, 3}, 50, 100, 3).value;
  EXPECT_LE(r.value, oracle + 2e-4);
  EXPECT_GE(r.value, oracle - r.delta_attained);
  EXPECT_TRUE(r.net.capped);
}

TEST(injective_norm, preconditions) {
  const BanachDescriptor l2 = banach_constants(Family::ell, 2.0, 1);
  CMatrix x = CMatrix::Zero(2, 1);
  x << 1.0, 1.0;
  CMatrix y = CMatrix::Ones(1, 1);
  // sup over the l2 ball of |a_0 + a_1| is sqrt 2
  EXPECT_THROW(injective_norm({InputBall::l2, 2, {x}, {y}, l2}, 0.5), ValidationError);
  // over the l1 ball it is 1
  EXPECT_NEAR(factorization_bound({InputBall::l1, 2, {x}, {y}, l2}).first, 1.0, 1e-12);
  EXPECT_THROW(injective_norm({InputBall::density, 2, {x}, {y}, l2}, 0.5), ParameterError);
  EXPECT_THROW(injective_norm({InputBall::l1, 2, {x}, {2.0 * y}, l2}, 0.5), ValidationError);
}

TEST(injective_norm, factorization_bound_is_exact_for_coordinates) {
  const BanachDescriptor l2 = banach_constants(Family::ell, 2.0, 1);
  InjectiveProblem prob{InputBall::l1, 4, {}, {}, l2};
  for (int i = 0; i < 4; ++i) {
    CMatrix e = CMatrix::Zero(4, 1);
    e(i) = 1;
    prob.functionals.push_back(e);
    prob.ys.push_back(CMatrix::Ones(1, 1));
  }
  const auto [bound, exact] = factorization_bound(prob);
  EXPECT_NEAR(bound, 1.0, 1e-12);
  EXPECT_TRUE(exact);
}
