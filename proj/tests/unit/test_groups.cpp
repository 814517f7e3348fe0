#include <gtest/gtest.h>

#include <algorithm>

#include "chernbord/chernbord.hpp"

using namespace chernbord;

TEST(Groups, Syntax) {
  EXPECT_EQ(parse_group("U(2,1)"), GroupDescriptor({2, 1}));
  EXPECT_EQ(parse_group("T(3)"), GroupDescriptor({1, 1, 1}));
  EXPECT_EQ(parse_group("1"), GroupDescriptor::trivial());
  EXPECT_EQ(GroupDescriptor({2, 1}).to_string(), "U(2,1)");
  EXPECT_EQ(GroupDescriptor::trivial().to_string(), "1");
}

TEST(Groups, DoubleCosetRange) {
  EXPECT_EQ(dc_index_range(1, 1, 1, 1), (std::vector<int>{0, 1}));
  EXPECT_EQ(dc_index_range(2, 1, 2, 1), (std::vector<int>{1, 2}));
  EXPECT_EQ(dc_index_range(1, 2, 1, 2), (std::vector<int>{0, 1}));
  EXPECT_THROW(dc_index_range(1, 1, 1, 2), DimensionError);
}

TEST(Groups, Shuffles) {
  EXPECT_TRUE(shuffle(1, 1, 1, 1, 1).is_identity());
  EXPECT_EQ(shuffle(1, 1, 1, 1, 0).to_string(), "[2 1]");
  EXPECT_EQ(shuffle(2, 1, 2, 1, 1).to_string(), "[1 3 2]");
  EXPECT_THROW(shuffle(2, 1, 2, 1, 0), RangeError);
}

TEST(Groups, CanonicalBlock) {
  auto c = canonical_block({1, 0, 0, 1});
  EXPECT_EQ(c.group, GroupDescriptor({1, 1}));
  EXPECT_EQ(c.position[0], std::optional<std::size_t>(0));
  EXPECT_EQ(c.position[3], std::optional<std::size_t>(1));
  EXPECT_FALSE(c.position[1].has_value());
  EXPECT_EQ(canonical_block({0, 0}).group, GroupDescriptor::trivial());
  EXPECT_EQ(canonical_block({2, 0, 1}).group, GroupDescriptor({2, 1}));
}

TEST(Groups, MaximalTorusIsTotalRefinement) {
  const auto a = SubgroupArrow::maximal_torus(GroupDescriptor({2, 1}));
  EXPECT_EQ(a.source(), GroupDescriptor::torus(3));
  EXPECT_EQ(a, SubgroupArrow::refinement(GroupDescriptor({2, 1}), GroupDescriptor({1, 1, 1})));
}

TEST(Groups, ArrowComposition) {
  const GroupDescriptor g({4}), mid({2, 2}), fine({1, 1, 2});
  const auto outer = SubgroupArrow::refinement(g, mid);
  const auto inner = SubgroupArrow::refinement(mid, fine);
  EXPECT_EQ(outer.after(inner), SubgroupArrow::refinement(g, fine));
  EXPECT_THROW(inner.after(outer), Error);
}

TEST(Groups, RejectsNonRefinements) {
  EXPECT_FALSE(is_refinement(GroupDescriptor({2, 1}), GroupDescriptor({2})));
  EXPECT_FALSE(is_refinement(GroupDescriptor({1, 2}), GroupDescriptor({2, 1})));
  EXPECT_THROW(SubgroupArrow::refinement(GroupDescriptor({2}), GroupDescriptor({2, 1})), DimensionError);
}

// Enumeration check: chi_d maps the block decomposition (d, k-d, i-d, l-i+d) of {1..i+j} onto
// (d, i-d, k-d, j-k+d), order-preservingly.
TEST(GroupsProperty, ShuffleCertificatesByEnumeration) {
  std::size_t checked = 0;
  for (int n = 0; n <= 8; ++n)
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k <= n; ++k) {
        const int j = n - i, l = n - k;
        const auto range = dc_index_range(i, j, k, l);
        for (int d = 0; d <= n; ++d) {
          const bool in = std::find(range.begin(), range.end(), d) != range.end();
          if (!in) {
            EXPECT_THROW(shuffle(i, j, k, l, d), RangeError);
            continue;
          }
          const Shuffle s(i, j, k, l, d);
          std::vector<int> image;
          for (int a = 1; a <= n; ++a) image.push_back(s(a));
          std::vector<int> sorted = image;
          std::sort(sorted.begin(), sorted.end());
          for (int a = 1; a <= n; ++a) ASSERT_EQ(sorted[static_cast<std::size_t>(a - 1)], a);
          // Independent block check.
          const int src[4] = {d, k - d, i - d, l - i + d};
          const int tgt[4] = {d, i - d, k - d, j - k + d};
          const int where[4] = {0, 2, 1, 3};
          int start = 1;
          for (int b = 0; b < 4; ++b) {
            int tstart = 1;
            for (int c = 0; c < where[b]; ++c) tstart += tgt[c];
            ASSERT_EQ(src[b], tgt[where[b]]);
            for (int off = 0; off < src[b]; ++off) ASSERT_EQ(s(start + off), tstart + off);
            start += src[b];
          }
          ASSERT_TRUE(s.certificate_holds());
          ++checked;
        }
      }
  EXPECT_GT(checked, 100U);
}

TEST(GroupsProperty, EmptyRangeIffBoundsCross) {
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j)
      for (int k = 0; k <= i + j; ++k) {
        const int l = i + j - k;
        EXPECT_EQ(dc_index_range(i, j, k, l).empty(), std::min(i, k) < std::max(0, k - j));
      }
}
