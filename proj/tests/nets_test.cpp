#include "netnorm/nets.hpp"

#include <gtest/gtest.h>

#include <set>

#include "netnorm/errors.hpp"

using namespace netnorm;

TEST(nets, choose_k_basic_examples) {
  EXPECT_EQ(choose_k_basic(4, 0.5), 50);
  EXPECT_EQ(choose_k_basic(2, 1.0), 7);
  EXPECT_EQ(choose_k_basic(2, 3.0), 1);
  EXPECT_THROW(choose_k_basic(2, 0.0), ParameterError);
  EXPECT_THROW(choose_k_basic(2, -1.0), ParameterError);
}

TEST(nets, choose_k_general_examples) {
  BanachDescriptor d;
  d.gamma = 2.0;
  d.type_constant = 1.0;
  EXPECT_EQ(choose_k_general(d, 0.1, 1.0), 200);
  d.type_constant = 2.0;
  EXPECT_EQ(choose_k_general(d, 1.0, 1.0), 8);
  d.gamma = 1.5;
  d.type_constant = 1.0;
  // (2 * 0.5^-1.5)^2 = 4 * 8 = 32
  EXPECT_EQ(choose_k_general(d, 0.5, 1.0), 32);
  d.gamma = 1.0;
  EXPECT_THROW(choose_k_general(d, 0.5, 1.0), ParameterError);
}

TEST(nets, choose_k_multipartite_examples) {
  EXPECT_EQ(choose_k_multipartite(2, 2, 1.0), 25);
  EXPECT_EQ(choose_k_multipartite(2, 3, 1.0), 57);
  EXPECT_THROW(choose_k_multipartite(2, 1, 1.0), ParameterError);
}

TEST(nets, attained_delta_basic_examples) {
  EXPECT_NEAR(attained_delta_basic(2, 7), std::sqrt(9.0 * std::log(2.0) / 7.0), 1e-15);
  EXPECT_NEAR(attained_delta_basic(2, 7), 0.94403, 1e-5);
  EXPECT_LE(attained_delta_basic(4, 50), 0.5);
  double prev = attained_delta_basic(3, 1);
  for (int k = 2; k < 500; ++k) {
    const double cur = attained_delta_basic(3, k);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(nets, attained_delta_inverts_choose_k) {
  for (double delta : {0.1, 0.25, 0.5, 0.9}) {
    for (int d : {2, 3, 4, 8}) {
      EXPECT_LE(attained_delta_basic(d, choose_k_basic(d, delta)), delta + 1e-12);
      EXPECT_LE(attained_delta_multipartite(d, 3, choose_k_multipartite(d, 3, delta)), delta + 1e-12);
    }
    const BanachDescriptor b = banach_constants(Family::schatten, 3.0, 2);
    EXPECT_LE(attained_delta_general(b, 1.0, choose_k_general(b, delta, 1.0)), delta + 1e-12);
    EXPECT_LE(attained_delta_injective(b, choose_k_injective(b, delta)), delta + 1e-12);
  }
}

TEST(nets, enumeration_examples) {
  EXPECT_EQ(NetEnumerator(3, 2).size(), 6u);
  EXPECT_EQ(NetEnumerator(2, 3).size(), 4u);
  NetEnumerator one(1, 5);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.at(0).indices, std::vector<int>(5, 0));
}

TEST(nets, stream_count_and_order) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 8; ++k) {
      NetEnumerator net(n, k);
      std::set<std::vector<int>> seen;
      std::uint64_t count = 0;
      net.for_each([&](std::uint64_t rank, const NetPoint& pt) {
        EXPECT_EQ(rank, count);
        EXPECT_EQ(colex_rank(pt), rank);
        EXPECT_TRUE(std::is_sorted(pt.indices.begin(), pt.indices.end()));
        EXPECT_GE(pt.indices.front(), 0);
        EXPECT_LT(pt.indices.back(), n);
        seen.insert(pt.indices);
        ++count;
      });
      EXPECT_EQ(count, binomial(n + k - 1, k));
      EXPECT_EQ(seen.size(), count);
    }
  }
}

TEST(nets, rank_round_trip) {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k)
      for (std::uint64_t r = 0; r < multiset_count(n, k); ++r) EXPECT_EQ(colex_rank(colex_unrank(n, k, r)), r);
}

TEST(nets, ranges_partition_the_stream) {
  NetEnumerator net(4, 5);
  std::vector<std::vector<int>> whole, parts;
  net.for_each([&](std::uint64_t, const NetPoint& pt) { whole.push_back(pt.indices); });
  const std::uint64_t cut[] = {0, 7, 8, 30, net.size()};
  for (int i = 0; i < 4; ++i)
    net.for_range(cut[i], cut[i + 1], [&](std::uint64_t, const NetPoint& pt) { parts.push_back(pt.indices); });
  EXPECT_EQ(whole, parts);
}

TEST(nets, probability_vector) {
  NetPoint pt{3, 4, {0, 0, 2, 2}};
  const RVector p = pt.probability();
  EXPECT_DOUBLE_EQ(p(0), 0.5);
  EXPECT_DOUBLE_EQ(p(1), 0.0);
  EXPECT_DOUBLE_EQ(p(2), 0.5);
}

TEST(nets, budget_exceeded_carries_attained_delta) {
  try {
    NetEnumerator net(10, 20, 1000, [](int k) { return attained_delta_basic(4, k); });
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.count, multiset_count(10, 20));
    EXPECT_LE(multiset_count(10, e.affordable_k), 1000u);
    EXPECT_GT(multiset_count(10, e.affordable_k + 1), 1000u);
    EXPECT_NEAR(e.attained_delta, attained_delta_basic(4, e.affordable_k), 1e-15);
  }
}

TEST(nets, plan_net_caps) {
  const NetSpec s = plan_net(10, 20, 0.3, 1000, [](int k) { return attained_delta_basic(4, k); });
  EXPECT_TRUE(s.capped);
  EXPECT_LT(s.k, 20);
  EXPECT_LE(s.cardinality, 1000u);
  EXPECT_GT(s.delta_attained, 0.3);
  const NetSpec o = plan_net(3, 20, 0.3, kDefaultBudget, {}, 60);
  EXPECT_EQ(o.k, 60);
  EXPECT_FALSE(o.capped);
}
