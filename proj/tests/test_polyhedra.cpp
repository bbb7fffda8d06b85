#include <gtest/gtest.h>

#include "conicdiv/polyhedra.hpp"
#include "oracles.hpp"

using namespace conicdiv;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Rational total_volume(const std::vector<CellPiece>& pieces) {
  Rational t = 0;
  for (const auto& p : pieces) t += volume(p);
  return t;
}

}  // namespace

TEST(Feasible, HalfOpenInterval) {
  LinearSystem sys(1);
  sys.add(rv({1}), 0, Relation::LessEqual).add(rv({1}), -1, Relation::Greater);
  const auto w = feasible(sys);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, rv({0}));
}

TEST(Feasible, Contradiction) {
  LinearSystem sys(1);
  sys.add(rv({1}), 0, Relation::LessEqual).add(rv({1}), 1, Relation::GreaterEqual);
  EXPECT_FALSE(feasible(sys));
}

TEST(Feasible, StrictnessMatters) {
  LinearSystem closed(1), open(1);
  closed.add(rv({1}), 0, Relation::LessEqual).add(rv({1}), 0, Relation::GreaterEqual);
  open.add(rv({1}), 0, Relation::LessEqual).add(rv({1}), 0, Relation::Greater);
  EXPECT_TRUE(feasible(closed));
  EXPECT_FALSE(feasible(open));
}

TEST(Feasible, TwoRayConicSystem) {
  // 0 < x2 <= 1, -1 < 3x1 - x2 <= 0
  LinearSystem sys(2);
  sys.add(rv({0, 1}), 1, Relation::LessEqual)
      .add(rv({0, 1}), 0, Relation::Greater)
      .add(rv({3, -1}), 0, Relation::LessEqual)
      .add(rv({3, -1}), -1, Relation::Greater);
  const auto w = feasible(sys);
  ASSERT_TRUE(w);
  EXPECT_TRUE(satisfies(sys, *w));
  EXPECT_EQ(*w, (RatVector{Rational(1, 3), 1}));
}

TEST(Feasible, EqualityConstraints) {
  LinearSystem sys(3);
  sys.add(rv({1, 1, 1}), 1, Relation::Equal).add(rv({1, -1, 0}), 0, Relation::Equal);
  sys.add(rv({0, 0, 1}), 0, Relation::Greater);
  const auto w = feasible(sys);
  ASSERT_TRUE(w);
  EXPECT_TRUE(satisfies(sys, *w));
}

TEST(Feasible, AgreesWithVerticesOnRandomBoundedSystems) {
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = oracle::uniform(1, 3);
    LinearSystem sys(d);
    for (std::size_t j = 0; j < d; ++j) {
      RatVector e(d);
      e[j] = 1;
      sys.add(e, 3, Relation::LessEqual).add(e, -3, Relation::GreaterEqual);
    }
    const int extra = oracle::uniform(1, 4);
    for (int k = 0; k < extra; ++k) {
      RatVector a(d);
      for (auto& x : a) x = oracle::uniform(-3, 3);
      sys.add(a, oracle::uniform(-6, 2), Relation::LessEqual);
    }
    const auto w = feasible(sys);
    EXPECT_EQ(w.has_value(), !vertices(sys).empty());
    if (w) {
      EXPECT_TRUE(satisfies(sys, *w));
    }
  }
}

TEST(Feasible, StrictRandomMatchesFaceBarycenters) {
  // Mixed strict systems in the plane. Every face of the closure has its
  // relative interior either inside or outside the solution set, so the
  // system is feasible iff some face barycenter satisfies it. Vertices are
  // found by Cramer's rule on every pair of rows.
  for (int trial = 0; trial < 200; ++trial) {
    LinearSystem sys(2);
    sys.add(rv({1, 0}), 4, Relation::Less).add(rv({1, 0}), -4, Relation::Greater);
    sys.add(rv({0, 1}), 4, Relation::Less).add(rv({0, 1}), -4, Relation::Greater);
    for (int k = 0; k < 3; ++k) {
      RatVector a{Rational(oracle::uniform(-2, 2)), Rational(oracle::uniform(-2, 2))};
      sys.add(a, oracle::uniform(-3, 3), k % 2 ? Relation::Less : Relation::LessEqual);
    }
    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (const auto& c : sys.constraints()) {
      const bool flip = c.relation == Relation::Greater || c.relation == Relation::GreaterEqual;
      rows.push_back(flip ? RatVector{-c.coefficients[0], -c.coefficients[1]} : c.coefficients);
      rhs.push_back(flip ? -c.bound : c.bound);
    }
    std::vector<RatVector> verts;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const Rational det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
        if (det == 0) continue;
        RatVector x{(rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det, (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det};
        bool ok = true;
        for (std::size_t k = 0; k < rows.size(); ++k) ok = ok && dot<Rational>(rows[k], x) <= rhs[k];
        if (ok) verts.push_back(x);
      }
    bool expected = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rows.size()) && !expected; ++mask) {
      RatVector bary{0, 0};
      std::size_t count = 0;
      for (const auto& v : verts) {
        bool on_face = true;
        for (std::size_t k = 0; k < rows.size(); ++k)
          if ((mask >> k) & 1u) on_face = on_face && dot<Rational>(rows[k], v) == rhs[k];
        if (!on_face) continue;
        bary[0] += v[0];
        bary[1] += v[1];
        ++count;
      }
      if (count == 0) continue;
      bary[0] /= static_cast<unsigned long>(count);
      bary[1] /= static_cast<unsigned long>(count);
      expected = satisfies(sys, bary);
    }
    EXPECT_EQ(feasible(sys).has_value(), expected);
  }
}

TEST(LatticePoints, Triangle) {
  // x >= 0, y >= 0, x + y <= 3: 10 points
  std::vector<Halfspace> hs{{rv({-1, 0}), 0}, {rv({0, -1}), 0}, {rv({1, 1}), 3}};
  int count = 0;
  for_each_lattice_point(hs, 2, [&](const IntVector&) { ++count; });
  EXPECT_EQ(count, 10);
}

TEST(LatticePoints, UnboundedThrows) {
  std::vector<Halfspace> hs{{rv({-1, 0}), 0}};
  EXPECT_THROW(for_each_lattice_point(hs, 2, [](const IntVector&) {}), InputError);
}

TEST(Split, SquareByVerticalLine) {
  const auto sq = CellPiece::unit_cube(2);
  const auto parts = split(sq, Hyperplane{rv({1, 0}), Rational(1, 2)});
  ASSERT_EQ(parts.size(), 2u);
  for (const auto& p : parts) EXPECT_EQ(volume(p), Rational(1, 2));
}

TEST(Split, MissingHyperplaneKeepsCell) {
  const auto sq = CellPiece::unit_cube(2);
  const auto parts = split(sq, Hyperplane{rv({1, 0}), 2});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(volume(parts[0]), 1);
  // a supporting hyperplane only touches the boundary
  EXPECT_EQ(split(sq, Hyperplane{rv({1, 0}), 1}).size(), 1u);
}

TEST(Split, CubeByDiagonalPlane) {
  const auto cube = CellPiece::unit_cube(3);
  const auto parts = split(cube, Hyperplane{rv({-1, 0, 1}), 0});
  ASSERT_EQ(parts.size(), 2u);
  for (const auto& p : parts) EXPECT_EQ(volume(p), Rational(1, 2));
}

TEST(Split, ThroughVertices) {
  // x + y = 1 passes through two vertices of the square
  const auto parts = split(CellPiece::unit_cube(2), Hyperplane{rv({1, 1}), 1});
  ASSERT_EQ(parts.size(), 2u);
  for (const auto& p : parts) {
    EXPECT_EQ(p.vertices().size(), 3u);
    EXPECT_EQ(volume(p), Rational(1, 2));
  }
}

TEST(Split, RandomCutsConserveVolumeAndKeepInteriorSamples) {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = oracle::uniform(2, 3);
    std::vector<CellPiece> pieces{CellPiece::unit_cube(d)};
    const int cuts = oracle::uniform(1, 4);
    for (int k = 0; k < cuts; ++k) {
      RatVector n(d);
      for (auto& x : n) x = oracle::uniform(-3, 3);
      if (std::all_of(n.begin(), n.end(), [](const Rational& x) { return x == 0; })) continue;
      const Hyperplane hp{n, Rational(oracle::uniform(-3, 3)) / 2};
      std::vector<CellPiece> next;
      for (const auto& p : pieces)
        for (auto& q : split(p, hp)) next.push_back(std::move(q));
      pieces = std::move(next);
    }
    EXPECT_EQ(total_volume(pieces), 1);
    for (const auto& p : pieces) {
      EXPECT_TRUE(p.contains_strictly(p.interior_sample()));
      EXPECT_TRUE(feasible(p.as_system(true)));
      EXPECT_EQ(volume(p), oracle::lasserre_volume(p.facets(), d));
    }
  }
}

TEST(Volume, CubesAndSimplices) {
  unsigned long fact = 1;
  for (std::size_t d = 1; d <= 5; ++d) {
    fact *= d;
    EXPECT_EQ(volume(CellPiece::unit_cube(d)), 1);
    std::vector<Halfspace> hs;
    RatVector ones(d, Rational(1));
    hs.push_back({ones, 1});
    for (std::size_t j = 0; j < d; ++j) {
      RatVector e(d);
      e[j] = -1;
      hs.push_back({e, 0});
    }
    const auto simplex = CellPiece::from_halfspaces(d, hs);
    EXPECT_EQ(volume(simplex), Rational(1, fact));
    EXPECT_EQ(oracle::lasserre_volume(hs, d), Rational(1, fact));
  }
}

TEST(Volume, PyramidOverSquare) {
  // 0 <= a, b, t <= 1, t >= a, t >= b
  std::vector<Halfspace> hs;
  for (std::size_t j = 0; j < 3; ++j) {
    RatVector up(3), down(3);
    up[j] = 1;
    down[j] = -1;
    hs.push_back({up, 1});
    hs.push_back({down, 0});
  }
  hs.push_back({rv({1, 0, -1}), 0});
  hs.push_back({rv({0, 1, -1}), 0});
  const auto p = CellPiece::from_halfspaces(3, hs);
  EXPECT_EQ(volume(p), Rational(1, 3));
  EXPECT_EQ(p.facets().size(), 5u);  // redundant rows dropped
  EXPECT_EQ(p.vertices().size(), 5u);
}

TEST(CellPiece, RejectsBadInput) {
  EXPECT_THROW(CellPiece::from_halfspaces(2, {{rv({-1, 0}), 0}, {rv({0, -1}), 0}}), InputError);
  // a segment in the plane
  EXPECT_THROW(CellPiece::from_halfspaces(2, {{rv({1, 0}), 1}, {rv({-1, 0}), 0}, {rv({0, 1}), 0}, {rv({0, -1}), 0}}),
               InputError);
}

TEST(Triangulation, SquareConeAndPolytope) {
  // cone over the square with apex at the origin, generators (x, y, 1)
  const std::vector<RatVector> gens{rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1}), rv({1, 1, 1})};
  const std::vector<std::vector<std::size_t>> facets{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const auto simplices = pulling_triangulation(gens, facets);
  ASSERT_EQ(simplices.size(), 2u);
  Rational total = 0;
  for (const auto& s : simplices) {
    RatMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = gens[s[i]][j];
    total += abs(determinant(m));
  }
  EXPECT_EQ(total, 2);  // normalized volume of the unit square
}
