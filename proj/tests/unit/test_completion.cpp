#include <gtest/gtest.h>

#include <functional>

#include "chernbord/chernbord.hpp"

using namespace chernbord;

namespace {

// Independent count of exponent vectors with sum n and weighted degree <= d.
std::size_t count_monomials(const std::vector<int>& weights, unsigned n, int d) {
  std::size_t count = 0;
  std::vector<unsigned> e(weights.size(), 0);
  std::function<void(std::size_t, unsigned, int)> walk = [&](std::size_t i, unsigned left, int deg) {
    if (deg > d) return;
    if (i == weights.size()) {
      count += left == 0;
      return;
    }
    for (unsigned v = 0; v <= left; ++v) walk(i + 1, left - v, deg + weights[i] * static_cast<int>(v));
  };
  walk(0, n, 0);
  return count;
}

std::vector<std::string> names(const GroupDescriptor& g, unsigned n) {
  const IdealDescriptor ideal(g);
  std::vector<std::string> out;
  for (const auto& e : chern_monomials(ideal.weights(), n)) out.push_back(monomial_name(ideal, e));
  return out;
}

}  // namespace

TEST(Completion, ChernMonomials) {
  EXPECT_EQ(names(GroupDescriptor({2}), 1), (std::vector<std::string>{"c1[1]", "c2[1]"}));
  EXPECT_EQ(names(GroupDescriptor({1, 1}), 2), (std::vector<std::string>{"c1[1]^2", "c1[1]*c1[2]", "c1[2]^2"}));
  EXPECT_EQ(names(GroupDescriptor({2, 1}), 0), (std::vector<std::string>{"1"}));
  EXPECT_EQ(chern_monomials({}, 0).size(), 1U);
  EXPECT_TRUE(chern_monomials({}, 2).empty());
}

TEST(Completion, GradedRanks) {
  EXPECT_EQ(associated_graded_rank(GroupDescriptor({2}), 1, 12).rank, 2U);
  EXPECT_EQ(associated_graded_rank(GroupDescriptor({2, 1}), 1, 12).rank, 3U);
  EXPECT_EQ(associated_graded_rank(GroupDescriptor({2}), 0, 12).rank, 1U);
  EXPECT_EQ(associated_graded_rank(GroupDescriptor({1, 1}), 0, 12).rank, 1U);
}

TEST(Completion, GradedRankMatchesBruteForce) {
  for (const auto& g : {GroupDescriptor({2}), GroupDescriptor({1, 1}), GroupDescriptor({2, 1}), GroupDescriptor({1})})
    for (unsigned n = 0; n <= 4; ++n) {
      const auto r = associated_graded_rank(g, n, 12);
      EXPECT_TRUE(r.certified()) << g.to_string() << " n=" << n;
      EXPECT_EQ(r.rank, count_monomials(IdealDescriptor(g).weights(), n, 12)) << g.to_string() << " n=" << n;
      EXPECT_EQ(r.full_count, count_monomials(IdealDescriptor(g).weights(), n, 1 << 20));
    }
}

TEST(Completion, TruncationIsReported) {
  const auto r = associated_graded_rank(GroupDescriptor({2}), 4, 12);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.rank, 3U);
  EXPECT_EQ(r.full_count, 5U);
  EXPECT_TRUE(associated_graded_rank(GroupDescriptor({2}), 4, 16).complete);
  EXPECT_THROW(associated_graded_rank(GroupDescriptor({2}), 7, 12), TruncationError);
  EXPECT_THROW(associated_graded_rank(GroupDescriptor({2}), 1, 7), RangeError);
}

TEST(Completion, RegularityExamples) {
  const auto u1 = regularity_check(GroupDescriptor({1}), 8);
  ASSERT_EQ(u1.steps.size(), 1U);
  EXPECT_EQ(u1.steps[0].band, 6);
  EXPECT_TRUE(u1.passed());

  const auto u2 = regularity_check(GroupDescriptor({2}), 10);
  EXPECT_TRUE(u2.passed());
  ASSERT_FALSE(u2.final_quotient_ranks.empty());
  EXPECT_EQ(u2.final_quotient_ranks[0], 1U);
  for (std::size_t t = 1; t < u2.final_quotient_ranks.size(); ++t) EXPECT_EQ(u2.final_quotient_ranks[t], 0U);

  EXPECT_TRUE(regularity_check(GroupDescriptor({1, 1}), 10).passed());
}

TEST(Completion, RegularityAndCollapse) {
  for (const auto& g : {GroupDescriptor({1}), GroupDescriptor({2}), GroupDescriptor({3}), GroupDescriptor({1, 1}),
                        GroupDescriptor({2, 1})}) {
    const auto r = regularity_check(g, 12);
    EXPECT_TRUE(r.passed()) << g.to_string();
    EXPECT_EQ(r.guard_band, 12 - IdealDescriptor(g).max_weight());
    for (const auto& c : r.collapses) EXPECT_TRUE(c.passed()) << g.to_string() << " -> U(" << c.k << ")";
  }
  const auto r = regularity_check(GroupDescriptor({3}), 12);
  EXPECT_EQ(r.collapses.size(), 3U);
}

TEST(Completion, KoszulExamples) {
  const auto u1 = koszul_local_homology(GroupDescriptor({1}), 8);
  EXPECT_TRUE(u1.higher_vanish());
  EXPECT_EQ(u1.local_h0, (std::vector<std::size_t>{1, 1, 1, 1}));

  const auto trivial = koszul_local_homology(GroupDescriptor::trivial(), 8);
  EXPECT_TRUE(trivial.passed());
  ASSERT_FALSE(trivial.local_h0.empty());
  EXPECT_EQ(trivial.local_h0[0], 1U);
  for (std::size_t t = 1; t < trivial.local_h0.size(); ++t) EXPECT_EQ(trivial.local_h0[t], 0U);

  EXPECT_TRUE(koszul_local_homology(GroupDescriptor({1, 1}), 8).higher_vanish());
}

TEST(Completion, KoszulAtTen) {
  for (const auto& g : {GroupDescriptor({1}), GroupDescriptor({2}), GroupDescriptor({1, 1})}) {
    const auto r = koszul_local_homology(g, 10);
    EXPECT_TRUE(r.passed()) << g.to_string();
    const auto weights = IdealDescriptor(g).weights();
    for (std::size_t i = 0; i < r.local_h0.size(); ++i) {
      std::size_t count = 0;
      for (unsigned n = 0; n <= 10; ++n)
        count += count_monomials(weights, n, static_cast<int>(2 * i)) - count_monomials(weights, n, static_cast<int>(2 * i) - 1);
      EXPECT_EQ(r.local_h0[i], count) << g.to_string() << " t=" << 2 * i;
    }
  }
}

TEST(CompletionProperty, ModelMultiplicationIsCommutative) {
  const CompletedModel model(GroupDescriptor({2, 1}), 10);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      EXPECT_EQ(model.generator(a) * model.generator(b), model.generator(b) * model.generator(a));
}
