#include <gtest/gtest.h>

#include <set>

#include "esos/spider.hpp"

using namespace esos;

namespace {

// Partition counts by the standard recurrence over largest part.
long partitions(int n, int max_part) {
  if (n == 0) return 1;
  long total = 0;
  for (int p = std::min(n, max_part); p >= 1; --p) total += partitions(n - p, p);
  return total;
}

}  // namespace

TEST(Spider, LegsAreSortedNonIncreasing) {
  const Spider t({1, 3, 2});
  EXPECT_EQ(t.legs(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(t.edges(), 6);
  EXPECT_EQ(t.leg_count(), 3);
  EXPECT_EQ(t.to_string(), "3,2,1");
  EXPECT_THROW(Spider({2, 0}), InputError);
}

TEST(Spider, Parse) {
  EXPECT_EQ(Spider::parse("3,2,1"), Spider({3, 2, 1}));
  EXPECT_EQ(Spider::parse("1,2"), Spider({2, 1}));
  EXPECT_THROW(Spider::parse(""), InputError);
  EXPECT_THROW(Spider::parse("3,,1"), InputError);
  EXPECT_THROW(Spider::parse("a"), InputError);
  EXPECT_THROW(Spider::parse("2,-1"), InputError);
}

TEST(EnumerateSpiders, Examples) {
  ASSERT_EQ(enumerate_spiders(1).size(), 1u);
  EXPECT_EQ(enumerate_spiders(1)[0], Spider({1}));
  const auto four = enumerate_spiders(4);
  const std::vector<Spider> expected{Spider({4}), Spider({3, 1}), Spider({2, 2}), Spider({2, 1, 1}),
                                     Spider({1, 1, 1, 1})};
  EXPECT_EQ(four, expected);
  EXPECT_EQ(enumerate_spiders(6).size(), 11u);
  EXPECT_THROW(enumerate_spiders(0), InputError);
}

TEST(EnumerateSpiders, CountsMatchPartitionRecurrenceAndAreDistinct) {
  for (int k = 1; k <= 14; ++k) {
    const auto all = enumerate_spiders(k);
    EXPECT_EQ(static_cast<long>(all.size()), partitions(k, k)) << k;
    std::set<Spider> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    for (const auto& t : all) EXPECT_EQ(t.edges(), k);
  }
}

TEST(T0Family, Membership) {
  EXPECT_TRUE(in_T0_family(Spider({2, 2})));
  EXPECT_FALSE(in_T0_family(Spider({2, 1, 1})));
  EXPECT_TRUE(in_T0_family(Spider({4, 2})));
  EXPECT_FALSE(in_T0_family(Spider()));
}

TEST(T0Family, Representative) {
  EXPECT_EQ(t0(2), Spider({2}));
  EXPECT_EQ(t0(6), Spider({2, 2, 2}));
  EXPECT_THROW(t0(3), InputError);
  EXPECT_THROW(t0(0), InputError);
}

TEST(StripLeaf, Examples) {
  EXPECT_EQ(strip_leaf(Spider({3, 2}), 0), Spider({2, 2}));
  EXPECT_TRUE(strip_leaf(Spider({1}), 0).empty());
  EXPECT_EQ(strip_leaf(Spider({1}), 0).edges(), 0);
  EXPECT_EQ(strip_leaf(Spider({2, 2}), 1), Spider({2, 1}));
  EXPECT_THROW(strip_leaf(Spider({2, 2}), 2), InputError);
}

TEST(StripLeaf, RemovesExactlyOneEdge) {
  for (int k = 1; k <= 8; ++k)
    for (const auto& t : enumerate_spiders(k))
      for (int i = 0; i < t.leg_count(); ++i) EXPECT_EQ(strip_leaf(t, i).edges(), k - 1);
}
