#include "approxcover/sumsets.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "approxcover/enumerate.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace approxcover {
namespace {

TEST(Hfold, Examples) {
  const IntSet spread = hfold(IntSet({1, 3, 7}), 2);
  EXPECT_EQ(spread, IntSet({2, 4, 6, 8, 10, 14}));
  EXPECT_EQ(static_cast<std::int64_t>(spread.size()), oracle::binomial(4, 2));
  EXPECT_EQ(hfold(IntSet({0, 1}), 3), IntSet({0, 1, 2, 3}));
  EXPECT_EQ(hfold(IntSet({0, 1, 3, 4}), 2), IntSet::interval(0, 8));
  EXPECT_EQ(hfold(IntSet({0, 1, 3}), 1), IntSet({0, 1, 3}));
  EXPECT_EQ(hfold(IntSet({-4}), 5), IntSet({-20}));
}

TEST(Hfold, Errors) {
  EXPECT_THROW(hfold(IntSet({0, 1}), 0), InvalidFoldError);
  EXPECT_THROW(hfold(IntSet({0, 1}), -3), InvalidFoldError);
  EXPECT_THROW(hfold(IntSet(), 2), EmptySetError);
  EXPECT_THROW(hfold(IntSet({0, std::int64_t{1} << 40}), std::int64_t{1} << 30),
               OverflowError);
  EXPECT_THROW(hfold(IntSet({std::numeric_limits<std::int64_t>::min(), 0}), 2),
               OverflowError);
}

TEST(Hfold, MatchesSequentialOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> hd(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::Set a = oracle::random_set(rng, 1, 6, -30, 30);
    const int h = hd(rng);
    ASSERT_EQ(to_oracle(hfold(to_int_set(a), h)), oracle::hfold(a, h))
        << to_int_set(a).to_string() << " h=" << h;
  }
}

TEST(Hfold, PrefixMatchesDirect) {
  for (const IntSet& a : {IntSet({0, 2, 3}), IntSet({-3, 6, 9, 30}), IntSet({0, 1}), IntSet({5})}) {
    const auto prefix = hfold_prefix(a, 9);
    ASSERT_EQ(prefix.size(), 9U);
    for (std::int64_t h = 1; h <= 9; ++h) {
      EXPECT_EQ(prefix[static_cast<std::size_t>(h - 1)], hfold(a, h)) << a.to_string() << h;
    }
  }
}

TEST(Hfold, DoublingIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> hd(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const IntSet a = to_int_set(oracle::random_set(rng, 1, 5, -15, 40));
    const int h1 = hd(rng);
    const int h2 = hd(rng);
    EXPECT_EQ(hfold(a, h1 + h2), pairwise_sumset(hfold(a, h1), hfold(a, h2)));
  }
}

TEST(Hfold, AffineEquivariance) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> hd(1, 10);
  std::uniform_int_distribution<std::int64_t> xd(-100, 100);
  std::uniform_int_distribution<std::int64_t> cd(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const IntSet a = to_int_set(oracle::random_set(rng, 1, 5, -10, 25));
    const int h = hd(rng);
    const std::int64_t x = xd(rng);
    const std::int64_t c = cd(rng);
    EXPECT_EQ(hfold(translate(a, x), h), translate(hfold(a, h), h * x));
    EXPECT_EQ(hfold(dilate(a, c), h), dilate(hfold(a, h), c));
  }
}

TEST(Hfold, IntervalFastPathHandlesLargeH) {
  const IntSet big = hfold(IntSet({0, 1, 3, 4}), 10000);
  EXPECT_EQ(big, IntSet::interval(0, 40000));
  const IntSet scaled = hfold(IntSet({7, 10, 16, 19}), 1000);
  EXPECT_EQ(scaled.size(), 4001U);
  EXPECT_EQ(detect_ap(scaled), (APShape{7000, 3, 4001}));
}

TEST(Hfold, LargeHWithoutIntervalStructure) {
  // {0,2,3}: hA = {0} + [2, 3h] for h >= 2.
  const IntSet a{0, 2, 3};
  const IntSet got = hfold(a, 5000);
  EXPECT_EQ(got.size(), 15000U);
  EXPECT_FALSE(got.contains(1));
  EXPECT_EQ(got.runs(), (std::vector<approxcover::Run>{{0, 0}, {2, 15000}}));
}

TEST(DetectAp, Examples) {
  EXPECT_EQ(detect_ap(IntSet({3, 5, 7, 9})), (APShape{3, 2, 4}));
  EXPECT_FALSE(detect_ap(IntSet({0, 1, 3})).has_value());
  EXPECT_EQ(detect_ap(IntSet({4})), (APShape{4, 1, 1}));
  EXPECT_EQ(detect_ap(IntSet({-2, 9})), (APShape{-2, 11, 2}));
  EXPECT_EQ(detect_ap(IntSet::interval(-5, 200)), (APShape{-5, 1, 206}));
  EXPECT_THROW(detect_ap(IntSet()), EmptySetError);
  EXPECT_EQ((APShape{3, 2, 4}).realize(), IntSet({3, 5, 7, 9}));
}

TEST(HfoldSizeBound, Examples) {
  const auto ap = hfold_size_bound(IntSet({0, 2, 4}), 5);
  EXPECT_EQ(ap.lower_bound, 11);
  EXPECT_TRUE(ap.is_ap);
  EXPECT_EQ(hfold(IntSet({0, 2, 4}), 5).size(), 11U);

  const auto non_ap = hfold_size_bound(IntSet({0, 1, 3}), 2);
  EXPECT_EQ(non_ap.lower_bound, 6);
  EXPECT_FALSE(non_ap.is_ap);
  EXPECT_EQ(hfold(IntSet({0, 1, 3}), 2).size(), 6U);

  for (const IntSet& a : {IntSet({0, 1, 3}), IntSet({2, 4}), IntSet({0, 5, 6, 20})}) {
    const auto one = hfold_size_bound(a, 1);
    EXPECT_EQ(one.lower_bound, static_cast<std::int64_t>(a.size()));
    EXPECT_EQ(hfold(a, 1).size(), a.size());
  }
}

TEST(HfoldSizeBound, GrowthLawExhaustive) {
  // Normal-form sets with max <= 12, size <= 5, h <= 6.
  for (const IntSet& a : normal_form_sets(12, 5)) {
    const bool ap = oracle::is_ap(to_oracle(a));
    for (std::int64_t h = 1; h <= 6; ++h) {
      const auto bound = hfold_size_bound(a, h);
      const auto size = static_cast<std::int64_t>(hfold(a, h).size());
      ASSERT_EQ(bound.is_ap, ap);
      if (ap) {
        ASSERT_EQ(size, bound.lower_bound) << a.to_string() << " h=" << h;
      } else {
        ASSERT_GE(size, bound.lower_bound) << a.to_string() << " h=" << h;
      }
    }
  }
}

TEST(DetectAp, PersistsOnceReachedForConditionSets) {
  for (const IntSet& a : normal_form_sets(10, 5)) {
    if (!a.contains(1) || !a.contains(a.max() - 1)) continue;
    const std::int64_t horizon = std::max<std::int64_t>(a.max() + 4, 8);
    bool seen = false;
    for (std::int64_t h = 1; h <= horizon; ++h) {
      const bool ap = detect_ap(hfold(a, h)).has_value();
      if (seen) ASSERT_TRUE(ap) << a.to_string() << " h=" << h;
      seen = seen || ap;
    }
    EXPECT_TRUE(seen) << a.to_string();
  }
}

}  // namespace
}  // namespace approxcover
