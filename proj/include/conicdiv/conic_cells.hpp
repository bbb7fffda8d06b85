#pragma once

// Conic divisor classes: the conic-ness test, enumeration of the
// full-dimensional cells of the torus decomposition cut out by the
// hyperplanes sigma_i = z, and the polytope spanned by the conic classes.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "conicdiv/cone.hpp"
#include "conicdiv/divisor_theory.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"
#include "conicdiv/polyhedra.hpp"

namespace conicdiv {

struct ConicTest {
  bool conic = false;
  std::optional<RatVector> witness;  // x with ceil(sigma(x)) == u
};

/// D(u) is conic iff some x has u_i - 1 < sigma_i(x) <= u_i for all i.
inline ConicTest is_conic(const Cone& cone, std::span<const Integer> u) {
  if (u.size() != cone.num_forms()) throw InputError("divisor vector length does not match the number of forms");
  LinearSystem sys(cone.dim());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const RatVector f = to_rational(cone.support_forms()[i]);
    sys.add(f, Rational(u[i]), Relation::LessEqual);
    sys.add(f, Rational(u[i] - 1), Relation::Greater);
  }
  auto w = feasible(sys);
  return {w.has_value(), std::move(w)};
}

struct ConicClass {
  ClassLabel label;
  IntVector representative;
  std::vector<CellPiece> pieces;
  Rational volume;
};

/// One row per conic class, ordered by label.
struct ConicTable {
  std::vector<ConicClass> rows;

  const ConicClass* find(const ClassLabel& label) const {
    for (const auto& r : rows)
      if (r.label == label) return &r;
    return nullptr;
  }

  Rational total_volume() const {
    Rational v = 0;
    for (const auto& r : rows) v += r.volume;
    return v;
  }
};

/// Cuts the unit cube [0,1]^d by every hyperplane sigma_i = l meeting its
/// interior (forms in stored order, levels ascending), labels each piece by
/// the class of ceil(sigma) at its interior sample and groups by label.
///
/// Pieces of one class are translates of parts of the same torus cell.
/// Practical up to d = 5 or so; the piece count grows exponentially.
inline ConicTable enumerate_conic_classes(const Cone& cone, const ClassGroup& group) {
  const std::size_t d = cone.dim();
  std::vector<CellPiece> pieces{CellPiece::unit_cube(d)};
  for (const auto& form : cone.support_forms()) {
    Integer lo = 0, hi = 0;
    for (const auto& c : form) (c < 0 ? lo : hi) += c;
    const RatVector normal = to_rational(form);
    for (Integer level = lo + 1; level < hi; ++level) {
      std::vector<CellPiece> next;
      for (const auto& p : pieces)
        for (auto& q : split(p, Hyperplane{normal, Rational(level)})) next.push_back(std::move(q));
      pieces = std::move(next);
    }
  }
  std::map<ClassLabel, ConicClass> grouped;
  for (auto& p : pieces) {
    const auto sv = ceil_sigma(cone, p.interior_sample());
    ClassLabel label = group.class_of(sv.ceiling);
    auto it = grouped.find(label);
    if (it == grouped.end()) it = grouped.emplace(label, ConicClass{label, sv.ceiling, {}, 0}).first;
    it->second.volume += volume(p);
    it->second.pieces.push_back(std::move(p));
  }
  ConicTable table;
  for (auto& [label, row] : grouped) table.rows.push_back(std::move(row));
  return table;
}

/// Convex hull of the free parts of the conic classes.
struct ConicPolytope {
  std::size_t dimension = 0;
  std::vector<RatVector> vertices;
  std::vector<Halfspace> facets;  // normal . x <= offset
  RatVector center;
  std::vector<IntVector> lattice_points;

  bool contains(std::span<const Rational> x) const {
    for (const auto& f : facets)
      if (dot<Rational>(f.normal, x) > f.offset) return false;
    return true;
  }
};

namespace detail {

inline std::size_t affine_rank(const std::vector<RatVector>& pts, std::size_t m) {
  if (pts.empty()) return 0;
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVector v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(v));
  }
  return rank_of_vectors<Rational>(diffs, m);
}

// Facets of the full-dimensional hull of `pts` in R^m (m >= 1), found from
// m-subsets spanning a hyperplane with all points on one side.
inline std::vector<Halfspace> hull_facets(const std::vector<RatVector>& pts, std::size_t m) {
  std::set<std::pair<IntVector, Rational>> found;
  std::vector<Halfspace> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == m) {
      RatMatrix diffs(m - 1, m);
      for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) diffs(i - 1, j) = pts[pick[i]][j] - pts[pick[0]][j];
      const auto ker = kernel_basis(std::move(diffs));
      if (ker.size() != 1) return;
      IntVector n = primitive_integer(ker[0]);
      const RatVector nr = to_rational(n);
      Rational offset = dot<Rational>(nr, pts[pick[0]]);
      bool above = false, below = false;
      for (const auto& p : pts) {
        const Rational v = dot<Rational>(nr, p);
        above = above || v > offset;
        below = below || v < offset;
      }
      if (above && below) return;
      if (above) {
        for (auto& x : n) x = -x;
        offset = -offset;
      }
      if (found.emplace(n, offset).second) out.push_back({to_rational(n), offset});
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

/// Builds the conic polytope from the labels of all conic classes and checks
/// its structure: dimension equal to the free rank, central symmetry about
/// half the canonical class, and that every class whose free part lies in
/// the polytope is conic for every torsion lift. Failures throw
/// ContractViolation.
inline ConicPolytope conic_polytope(const Cone& cone, const ClassGroup& group, std::span<const ClassLabel> conic_labels) {
  const std::size_t m = group.free_rank();
  ConicPolytope poly;
  poly.dimension = m;
  const auto omega = canonical_class(group, cone);
  poly.center.resize(m);
  for (std::size_t j = 0; j < m; ++j) poly.center[j] = Rational(omega.free[j]) / 2;
  if (m == 0) {
    poly.vertices.push_back({});
    poly.lattice_points.push_back({});
  } else {
    std::set<RatVector> uniq;
    for (const auto& l : conic_labels) uniq.insert(to_rational(l.free));
    std::vector<RatVector> pts(uniq.begin(), uniq.end());
    if (detail::affine_rank(pts, m) != m) throw ContractViolation("conic polytope is not of full dimension m = s - d");
    poly.facets = detail::hull_facets(pts, m);
    for (const auto& p : pts) {
      std::vector<RatVector> normals;
      for (const auto& f : poly.facets)
        if (dot<Rational>(f.normal, p) == f.offset) normals.push_back(f.normal);
      if (rank_of_vectors<Rational>(normals, m) == m) poly.vertices.push_back(p);
    }
    IntVector lo(m), hi(m);
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = ceil(poly.vertices[0][j]);
      hi[j] = floor(poly.vertices[0][j]);
      for (const auto& v : poly.vertices) {
        lo[j] = std::min(lo[j], ceil(v[j]));
        hi[j] = std::max(hi[j], floor(v[j]));
      }
    }
    IntVector z = lo;
    for (;;) {
      if (poly.contains(to_rational(z))) poly.lattice_points.push_back(z);
      std::size_t j = 0;
      while (j < m) {
        if (++z[j] <= hi[j]) break;
        z[j] = lo[j];
        ++j;
      }
      if (j == m) break;
    }
  }

  std::set<RatVector> vset(poly.vertices.begin(), poly.vertices.end());
  for (const auto& v : poly.vertices) {
    RatVector mirror(m);
    for (std::size_t j = 0; j < m; ++j) mirror[j] = 2 * poly.center[j] - v[j];
    if (!vset.count(mirror)) throw ContractViolation("conic polytope is not centrally symmetric about [omega]/2");
  }
  for (const auto& f : poly.lattice_points)
    for (const auto& t : group.torsion_elements()) {
      const ClassLabel label{t, f};
      if (!is_conic(cone, group.representative(label)).conic)
        throw ContractViolation("class " + label.to_string() + " lies over the conic polytope but is not conic");
    }
  return poly;
}

inline ConicPolytope conic_polytope(const Cone& cone, const ClassGroup& group, const ConicTable& table) {
  std::vector<ClassLabel> labels;
  for (const auto& r : table.rows) labels.push_back(r.label);
  return conic_polytope(cone, group, labels);
}

}  // namespace conicdiv
