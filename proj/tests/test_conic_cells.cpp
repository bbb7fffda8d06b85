#include <gtest/gtest.h>

#include <set>

#include "conicdiv/conic_cells.hpp"
#include "conicdiv/presets.hpp"
#include "oracles.hpp"

using namespace conicdiv;

namespace {

IntVector random_vector(std::size_t n, long lo, long hi) {
  IntVector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(oracle::uniform(lo, hi));
  return v;
}

std::vector<Cone> small_cones() {
  return {orthant(2), two_ray_cone(), segre_monoid(std::vector<int>{2, 2}).cone, veronese(2, 2), veronese(2, 5),
          Cone::from_generators({{1, 0}, {2, 5}}, 2), Cone::from_generators({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}, 3)};
}

// x with ceil(sigma(x)) == u, checked directly
bool witness_ok(const Cone& c, const IntVector& u, const RatVector& x) { return ceil_sigma(c, x).ceiling == u; }

}  // namespace

TEST(IsConic, Examples) {
  const auto c = two_ray_cone();
  const auto zero = is_conic(c, IntVector{0, 0});
  ASSERT_TRUE(zero.conic);
  EXPECT_EQ(*zero.witness, (RatVector{0, 0}));
  const auto e = is_conic(c, IntVector{1, 0});
  ASSERT_TRUE(e.conic);
  EXPECT_EQ(*e.witness, (RatVector{Rational(1, 3), 1}));
  EXPECT_THROW(is_conic(c, IntVector{1}), InputError);
}

TEST(IsConic, TripleSegreOutsideHexagon) {
  const auto sm = segre_monoid(std::vector<int>{3, 3, 3});
  const ClassGroup g(sm.cone);
  const std::int64_t far[] = {0, 3, 0};
  const auto u = segre_divisor(sm, far);
  EXPECT_FALSE(is_conic(sm.cone, u).conic);
  // any representative of the same class
  for (int trial = 0; trial < 5; ++trial) {
    auto v = u;
    const auto s = sm.cone.sigma(random_vector(7, -3, 3));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s[i];
    EXPECT_FALSE(is_conic(sm.cone, v).conic);
  }
}

TEST(IsConic, WitnessesAndClassInvariance) {
  for (const auto& c : small_cones()) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto u = random_vector(c.num_forms(), -3, 3);
      const auto t = is_conic(c, u);
      if (t.conic) EXPECT_TRUE(witness_ok(c, u, *t.witness));
      const auto s = c.sigma(random_vector(c.dim(), -4, 4));
      auto v = u;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += s[i];
      EXPECT_EQ(is_conic(c, v).conic, t.conic);
    }
  }
}

TEST(IsConic, AgreesWithGridSearch) {
  // u is conic iff ceil(sigma(x)) = u for some x; the cells of the
  // arrangement contain points of the 1/N grid for N a multiple of all
  // vertex denominators, and cell interiors contain grid points of 1/(2N).
  const auto c = two_ray_cone();
  std::set<IntVector> hit;
  for (long i = -36; i <= 36; ++i)
    for (long j = -36; j <= 36; ++j) hit.insert(ceil_sigma(c, RatVector{Rational(i, 12), Rational(j, 12)}).ceiling);
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) EXPECT_EQ(is_conic(c, IntVector{a, b}).conic, hit.count(IntVector{a, b}) > 0);
}

TEST(IsConic, PrimeDivisorsAndDuality) {
  for (const auto& c : small_cones()) {
    const std::size_t s = c.num_forms();
    for (std::size_t i = 0; i < s; ++i) {
      IntVector e(s, 0);
      e[i] = 1;
      EXPECT_TRUE(is_conic(c, e).conic);
    }
    for (int trial = 0; trial < 40; ++trial) {
      const auto u = random_vector(s, -3, 3);
      IntVector dual(s);
      for (std::size_t i = 0; i < s; ++i) dual[i] = 1 - u[i];
      EXPECT_EQ(is_conic(c, u).conic, is_conic(c, dual).conic);
    }
  }
}

TEST(Enumerate, Orthant) {
  const auto c = orthant(3);
  const auto t = enumerate_conic_classes(c, ClassGroup(c));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].volume, 1);
  EXPECT_TRUE(t.rows[0].label.is_zero());
}

TEST(Enumerate, TwoRayCone) {
  const auto c = two_ray_cone();
  const ClassGroup g(c);
  const auto t = enumerate_conic_classes(c, g);
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto& r : t.rows) {
    EXPECT_EQ(r.volume, Rational(1, 3));
    EXPECT_TRUE(is_torsion(g, r.label));
  }
  EXPECT_EQ(t.total_volume(), 1);
  // number of classes equals |Cl| when the group is finite
  EXPECT_EQ(Integer(static_cast<unsigned long>(t.rows.size())), g.torsion_order());
}

TEST(Enumerate, SegreTwoByTwo) {
  const auto c = segre_monoid(std::vector<int>{2, 2}).cone;
  const ClassGroup g(c);
  const auto t = enumerate_conic_classes(c, g);
  ASSERT_EQ(t.rows.size(), 3u);
  const auto* zero = t.find(g.zero());
  ASSERT_NE(zero, nullptr);
  EXPECT_EQ(zero->volume, Rational(2, 3));
  for (const auto& r : t.rows)
    if (!r.label.is_zero()) {
      EXPECT_EQ(r.volume, Rational(1, 6));
      EXPECT_EQ(abs(r.label.free[0]), 1);
    }
}

TEST(Enumerate, StructuralInvariants) {
  for (const auto& c : small_cones()) {
    const ClassGroup g(c);
    const auto t = enumerate_conic_classes(c, g);
    EXPECT_EQ(t.total_volume(), 1);
    for (const auto& r : t.rows) {
      EXPECT_TRUE(is_conic(c, r.representative).conic);
      EXPECT_EQ(g.class_of(r.representative), r.label);
      Rational v = 0;
      for (const auto& p : r.pieces) {
        v += oracle::lasserre_volume(p.facets(), c.dim());
        // equal labels: ceiling differences are principal
        const auto a = ceil_sigma(c, p.interior_sample()).ceiling;
        const auto b = ceil_sigma(c, r.pieces.front().interior_sample()).ceiling;
        IntVector diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
        EXPECT_TRUE(g.class_of(diff).is_zero());
      }
      EXPECT_EQ(v, r.volume);
    }
    // is_conic agrees with table membership over a window of divisors
    for (int trial = 0; trial < 60; ++trial) {
      const auto u = random_vector(c.num_forms(), -4, 4);
      EXPECT_EQ(is_conic(c, u).conic, t.find(g.class_of(u)) != nullptr);
    }
  }
}

TEST(Polytope, TwoRayConeIsAPoint) {
  const auto c = two_ray_cone();
  const ClassGroup g(c);
  const auto p = conic_polytope(c, g, enumerate_conic_classes(c, g));
  EXPECT_EQ(p.dimension, 0u);
  EXPECT_EQ(p.lattice_points.size(), 1u);
}

TEST(Polytope, SegreTwoByTwoSegment) {
  const auto c = segre_monoid(std::vector<int>{2, 2}).cone;
  const ClassGroup g(c);
  const auto p = conic_polytope(c, g, enumerate_conic_classes(c, g));
  EXPECT_EQ(p.dimension, 1u);
  EXPECT_EQ(p.lattice_points.size(), 3u);
  EXPECT_EQ(std::set<RatVector>(p.vertices.begin(), p.vertices.end()), (std::set<RatVector>{{-1}, {1}}));
}

TEST(Polytope, TripleSegreHexagon) {
  const auto sm = segre_monoid(std::vector<int>{3, 3, 3});
  const ClassGroup g(sm.cone);
  std::vector<ClassLabel> conic;
  std::map<ClassLabel, std::pair<long, long>> xy;
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      const std::int64_t shifts[] = {0, x, y};
      const auto u = segre_divisor(sm, shifts);
      const bool expected = -2 <= x && x <= 2 && -2 <= y && y <= 2 && -2 <= y - x && y - x <= 2;
      EXPECT_EQ(is_conic(sm.cone, u).conic, expected) << x << "," << y;
      if (expected) conic.push_back(g.class_of(u));
      xy[g.class_of(u)] = {x, y};
    }
  ASSERT_EQ(conic.size(), 19u);
  const auto p = conic_polytope(sm.cone, g, conic);
  EXPECT_EQ(p.dimension, 2u);
  EXPECT_EQ(p.vertices.size(), 6u);
  EXPECT_EQ(p.lattice_points.size(), 19u);
  std::set<std::pair<long, long>> corners;
  for (const auto& v : p.vertices) {
    ClassLabel l{{}, {v[0].get_num(), v[1].get_num()}};
    ASSERT_TRUE(xy.count(l));
    corners.insert(xy[l]);
  }
  EXPECT_EQ(corners, (std::set<std::pair<long, long>>{{2, 0}, {-2, 0}, {0, 2}, {0, -2}, {2, 2}, {-2, -2}}));
}

TEST(Polytope, RejectsNonConicLabels) {
  const auto c = segre_monoid(std::vector<int>{2, 2}).cone;
  const ClassGroup g(c);
  // the segment [-1, 3] is not symmetric about 0
  std::vector<ClassLabel> labels{{{}, {-1}}, {{}, {3}}};
  EXPECT_THROW(conic_polytope(c, g, labels), ContractViolation);
}
