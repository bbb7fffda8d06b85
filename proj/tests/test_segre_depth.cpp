#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "conicdiv/segre_depth.hpp"
#include "oracles.hpp"

using namespace conicdiv;

namespace {

std::vector<GradedFactor> polys(std::vector<int> dims, std::vector<std::int64_t> shifts) {
  return segre_factors(dims, shifts);
}

// Equal dimensions d: CM iff consecutive sorted shifts differ by less than d.
bool sorted_gap_cm(std::vector<std::int64_t> shifts, int d) {
  std::sort(shifts.begin(), shifts.end());
  for (std::size_t i = 0; i + 1 < shifts.size(); ++i)
    if (shifts[i + 1] - shifts[i] >= d) return false;
  return true;
}

}  // namespace

TEST(IsCm, Examples) {
  EXPECT_TRUE(is_cm(polys({3, 3, 3}, {0, 2, 4})));
  EXPECT_FALSE(is_cm(polys({3, 3, 3}, {0, 0, 3})));
  for (int d1 = 2; d1 <= 5; ++d1)
    for (int d2 = 2; d2 <= 5; ++d2) EXPECT_TRUE(is_cm(polys({d1, d2}, {0, 0})));
  EXPECT_TRUE(is_cm(polys({4}, {7})));
}

TEST(IsCm, Errors) {
  EXPECT_THROW(is_cm(std::vector<GradedFactor>{}), InputError);
  EXPECT_THROW(GradedFactor::polynomial_shift(1, 0), InputError);
  EXPECT_THROW(segre_factors(std::vector<int>{2, 2}, std::vector<std::int64_t>{0}), InputError);
}

TEST(Depth, Examples) {
  EXPECT_EQ(depth(polys({3, 3, 3}, {0, 2, 4})), 7);
  EXPECT_EQ(depth(polys({3, 3, 3}, {0, 3, 3})), 5);
  EXPECT_EQ(depth(polys({3, 3, 3}, {0, 0, 3})), 3);
}

TEST(Depth, CmIffFullDepthAndSortedGapShortcut) {
  for (int trial = 0; trial < 500; ++trial) {
    const int n = oracle::uniform(1, 5);
    const int d = oracle::uniform(2, 5);
    std::vector<int> dims(n, d);
    std::vector<std::int64_t> shifts;
    for (int i = 0; i < n; ++i) shifts.push_back(oracle::uniform(-8, 8));
    const auto fs = segre_factors(dims, shifts);
    EXPECT_EQ(is_cm(fs), depth(fs) == segre_dimension(fs));
    EXPECT_EQ(is_cm(fs), sorted_gap_cm(shifts, d));
    // only depths k d - (k - 1) occur
    const int dep = depth(fs);
    bool allowed = false;
    for (int k = 1; k <= n; ++k) allowed = allowed || dep == k * d - (k - 1);
    EXPECT_TRUE(allowed) << dep;
  }
}

TEST(Depth, PermutationInvariance) {
  for (int trial = 0; trial < 300; ++trial) {
    const int n = oracle::uniform(2, 5);
    std::vector<int> dims;
    std::vector<std::int64_t> shifts;
    for (int i = 0; i < n; ++i) {
      dims.push_back(oracle::uniform(2, 6));
      shifts.push_back(oracle::uniform(-6, 6));
    }
    auto fs = segre_factors(dims, shifts);
    const bool cm = is_cm(fs);
    const int dep = depth(fs);
    std::shuffle(fs.begin(), fs.end(), oracle::rng());
    EXPECT_EQ(is_cm(fs), cm);
    EXPECT_EQ(depth(fs), dep);
  }
}

TEST(Permutation, Examples) {
  EXPECT_EQ(cm_permutation(polys({2, 2, 2, 2}, {0, 1, 2, 3})), (std::vector<std::size_t>{0, 1, 2, 3}));
  const auto fs = polys({2, 2, 10}, {0, 3, 5});
  EXPECT_EQ(cm_permutation(fs), (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_FALSE(is_cm(std::vector<GradedFactor>{fs[0], fs[1]}));
  EXPECT_TRUE(is_cm(std::vector<GradedFactor>{fs[0], fs[2]}));
  EXPECT_EQ(cm_permutation(polys({3}, {4})), (std::vector<std::size_t>{0}));
  EXPECT_THROW(cm_permutation(polys({3, 3}, {0, 5})), InputError);
}

TEST(Permutation, PrefixesAreCm) {
  int tested = 0;
  while (tested < 300) {
    const int n = oracle::uniform(1, 6);
    std::vector<int> dims;
    std::vector<std::int64_t> shifts;
    for (int i = 0; i < n; ++i) {
      dims.push_back(oracle::uniform(2, 6));
      shifts.push_back(oracle::uniform(-10, 10));
    }
    const auto fs = segre_factors(dims, shifts);
    if (!is_cm(fs)) continue;
    ++tested;
    const auto perm = cm_permutation(fs);
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
    std::vector<GradedFactor> prefix;
    for (auto j : perm) {
      prefix.push_back(fs[j]);
      EXPECT_TRUE(is_cm(prefix));
    }
  }
}

TEST(Region, TripleSegreWindow) {
  const std::vector<int> dims{3, 3, 3};
  const auto pts = cm_region(dims, -5, 5);
  EXPECT_EQ(pts.size(), 37u);
  std::map<std::int64_t, std::vector<std::int64_t>> rows;
  for (const auto& p : pts) rows[p[1]].push_back(p[0]);
  const std::vector<std::size_t> profile{1, 2, 7, 6, 5, 6, 7, 2, 1};
  const std::vector<std::int64_t> leftmost{-2, -2, -4, -3, -2, -2, -2, 1, 2};
  ASSERT_EQ(rows.size(), 9u);
  for (std::int64_t y = -4; y <= 4; ++y) {
    EXPECT_EQ(rows[y].size(), profile[y + 4]) << "y = " << y;
    EXPECT_EQ(*std::min_element(rows[y].begin(), rows[y].end()), leftmost[y + 4]) << "y = " << y;
  }
  std::set<int> depths;
  for (const auto& p : segre_window(dims, -5, 5)) depths.insert(p.depth);
  EXPECT_EQ(depths, (std::set<int>{3, 5, 7}));
}

TEST(Region, TwoFactors) {
  auto flat = [](const std::vector<std::vector<std::int64_t>>& v) {
    std::vector<std::int64_t> out;
    for (const auto& p : v) out.push_back(p[0]);
    return out;
  };
  EXPECT_EQ(flat(cm_region(std::vector<int>{2, 2}, -3, 3)), (std::vector<std::int64_t>{-1, 0, 1}));
  EXPECT_EQ(flat(cm_region(std::vector<int>{3, 3}, -5, 5)), (std::vector<std::int64_t>{-2, -1, 0, 1, 2}));
  EXPECT_THROW(cm_region(std::vector<int>{3}, -1, 1), InputError);
  EXPECT_THROW(cm_region(std::vector<int>{3, 3}, 1, -1), InputError);
}

TEST(Veronese, Examples) {
  EXPECT_EQ(veronese_segre_cm_set(2, 2, 1, 1, -5, 5), (std::vector<std::int64_t>{-1, 0, 1}));
  const auto set = veronese_segre_cm_set(2, 2, 3, 2, -10, 10);
  EXPECT_EQ(set, (std::vector<std::int64_t>{-5, -3, -2, -1, 0, 1, 2, 3, 4, 5, 7}));
  EXPECT_EQ(std::count(set.begin(), set.end(), 9), 0);
  EXPECT_THROW(veronese_segre_cm_set(2, 2, 2, 4, -1, 1), InputError);
}

TEST(Veronese, FactorFormulas) {
  // R^(c)-module sum_k R_{kc+a}: lowest degree k with kc + a >= 0, and the
  // top local cohomology lives in degrees k with kc + a <= -dim.
  for (int dim = 2; dim <= 4; ++dim)
    for (std::int64_t c = 1; c <= 4; ++c)
      for (std::int64_t a = -6; a <= 6; ++a) {
        const auto f = GradedFactor::veronese_shift(dim, c, a);
        std::int64_t b = -100, h = 100;
        for (std::int64_t k = -50; k <= 50; ++k)
          if (k * c + a >= 0) {
            b = k;
            break;
          }
        for (std::int64_t k = 50; k >= -50; --k)
          if (k * c + a <= -dim) {
            h = k;
            break;
          }
        EXPECT_EQ(f.b, b);
        EXPECT_EQ(f.h, h);
      }
}
