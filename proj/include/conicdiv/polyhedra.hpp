#pragma once

// Exact rational polyhedra: feasibility of mixed strict/non-strict systems,
// integer point enumeration, full-dimensional cell pieces and their volumes.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"

namespace conicdiv {

enum class Relation { LessEqual, Less, GreaterEqual, Greater, Equal };

struct Constraint {
  RatVector coefficients;
  Rational bound;
  Relation relation = Relation::LessEqual;
};

/// A conjunction of linear constraints over a fixed ambient dimension.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  LinearSystem& add(RatVector coefficients, Rational bound, Relation relation) {
    if (coefficients.size() != dim_) throw InputError("constraint dimension does not match the system");
    constraints_.push_back({std::move(coefficients), std::move(bound), relation});
    return *this;
  }

 private:
  std::size_t dim_;
  std::vector<Constraint> constraints_;
};

/// normal . x <= offset
struct Halfspace {
  RatVector normal;
  Rational offset;
};

struct Hyperplane {
  RatVector normal;
  Rational level;
};

namespace detail {

struct FmRow {
  RatVector a;  // a . x <= b
  Rational b;
  boost::dynamic_bitset<> history;
};

// Scales a row so that its first nonzero coefficient has absolute value 1.
inline void normalize(FmRow& row) {
  for (const auto& c : row.a) {
    if (c == 0) continue;
    const Rational s = abs(c);
    for (auto& x : row.a) x /= s;
    row.b /= s;
    return;
  }
}

// Successive Fourier-Motzkin projections of a non-strict system.
//
// stage(k) is the system in the variables 0..k-1 (coefficients of later
// variables are zero); stage(n) is the input. Redundant rows are pruned with
// Imbert's history criterion and by keeping only the tightest row per
// direction, both of which preserve every projection exactly.
class Projection {
 public:
  Projection(std::size_t num_vars, std::vector<FmRow> rows, std::size_t keep)
      : num_vars_(num_vars), stages_(num_vars + 1) {
    std::erase_if(rows, [&](const FmRow& r) {
      if (std::any_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x != 0; })) return false;
      if (r.b < 0) infeasible_ = true;
      return true;
    });
    if (infeasible_) return;
    stages_[num_vars] = std::move(rows);
    for (std::size_t k = num_vars; k > keep; --k) {
      stages_[k - 1] = eliminate(stages_[k], k - 1, num_vars - (k - 1));
      if (infeasible_) return;
    }
    keep_ = keep;
  }

  bool infeasible() const noexcept { return infeasible_; }
  std::size_t keep() const noexcept { return keep_; }
  const std::vector<FmRow>& stage(std::size_t k) const { return stages_[k]; }

  // Bounds of variable k-1 in stage(k) after fixing variables 0..k-2.
  std::pair<std::optional<Rational>, std::optional<Rational>> bounds(std::size_t k,
                                                                     std::span<const Rational> prefix) const {
    std::optional<Rational> lo, hi;
    const std::size_t var = k - 1;
    for (const auto& row : stages_[k]) {
      const Rational& c = row.a[var];
      if (c == 0) continue;
      Rational rhs = row.b;
      for (std::size_t j = 0; j < var; ++j)
        if (row.a[j] != 0) rhs -= row.a[j] * prefix[j];
      rhs /= c;
      if (c > 0) {
        if (!hi || rhs < *hi) hi = rhs;
      } else {
        if (!lo || rhs > *lo) lo = rhs;
      }
    }
    return {lo, hi};
  }

 private:
  std::vector<FmRow> eliminate(const std::vector<FmRow>& rows, std::size_t var, std::size_t eliminated) {
    std::vector<const FmRow*> pos, neg;
    std::vector<FmRow> next;
    for (const auto& r : rows) {
      if (r.a[var] > 0)
        pos.push_back(&r);
      else if (r.a[var] < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (const auto* p : pos)
      for (const auto* q : neg) {
        auto hist = p->history | q->history;
        if (hist.count() > eliminated + 1) continue;
        const Rational sp = 1 / p->a[var];
        const Rational sq = -1 / q->a[var];
        FmRow r{RatVector(num_vars_), p->b * sp + q->b * sq, std::move(hist)};
        for (std::size_t j = 0; j < num_vars_; ++j) r.a[j] = p->a[j] * sp + q->a[j] * sq;
        r.a[var] = 0;
        next.push_back(std::move(r));
      }
    // Drop trivial rows, detect contradictions, keep tightest per direction.
    std::map<RatVector, FmRow> best;
    for (auto& r : next) {
      normalize(r);
      const bool zero = std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x == 0; });
      if (zero) {
        if (r.b < 0) {
          infeasible_ = true;
          return {};
        }
        continue;
      }
      auto it = best.find(r.a);
      if (it == best.end())
        best.emplace(r.a, std::move(r));
      else if (r.b < it->second.b || (r.b == it->second.b && r.history.count() < it->second.history.count()))
        it->second = std::move(r);
    }
    std::vector<FmRow> out;
    out.reserve(best.size());
    for (auto& [key, r] : best) out.push_back(std::move(r));
    return out;
  }

  std::size_t num_vars_;
  std::vector<std::vector<FmRow>> stages_;
  std::size_t keep_ = 0;
  bool infeasible_ = false;
};

inline std::vector<FmRow> rows_from_halfspaces(std::span<const Halfspace> hs, std::size_t dim) {
  std::vector<FmRow> rows;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    boost::dynamic_bitset<> h(hs.size());
    h.set(i);
    if (hs[i].normal.size() != dim) throw InputError("halfspace dimension mismatch");
    rows.push_back({hs[i].normal, hs[i].offset, std::move(h)});
  }
  return rows;
}

inline bool satisfies(const Constraint& c, std::span<const Rational> x) {
  const Rational v = dot<Rational>(c.coefficients, x);
  switch (c.relation) {
    case Relation::LessEqual: return v <= c.bound;
    case Relation::Less: return v < c.bound;
    case Relation::GreaterEqual: return v >= c.bound;
    case Relation::Greater: return v > c.bound;
    case Relation::Equal: return v == c.bound;
  }
  return false;
}

// Vertices of {normal_i . x <= offset_i}: feasible solutions of every
// nonsingular d-subset of rows.
inline std::vector<RatVector> basic_vertices(std::span<const Halfspace> hs, std::size_t dim) {
  std::vector<RatVector> verts;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == dim) {
      RatMatrix a(dim, dim);
      RatVector b(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = hs[pick[i]].normal[j];
        b[i] = hs[pick[i]].offset;
      }
      auto x = solve(std::move(a), std::move(b));
      if (!x) return;
      for (const auto& h : hs)
        if (dot<Rational>(h.normal, *x) > h.offset) return;
      verts.push_back(std::move(*x));
      return;
    }
    for (std::size_t i = start; i < hs.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace detail

inline bool satisfies(const LinearSystem& sys, std::span<const Rational> x) {
  return std::all_of(sys.constraints().begin(), sys.constraints().end(),
                     [&](const Constraint& c) { return detail::satisfies(c, x); });
}

/// Decides feasibility exactly and returns a witness point.
///
/// Strict rows a.x < b become a.x + e <= b with an extra variable e <= 1;
/// the system is feasible iff the largest admissible e is positive. After
/// fixing e, each variable takes its upper bound when it has one, else its
/// lower bound, else 0.
inline std::optional<RatVector> feasible(const LinearSystem& sys) {
  const std::size_t d = sys.dim();
  const bool has_strict = std::any_of(sys.constraints().begin(), sys.constraints().end(), [](const Constraint& c) {
    return c.relation == Relation::Less || c.relation == Relation::Greater;
  });
  // Variable 0 is the slack e; variables 1..d are x.
  const std::size_t n = d + 1;
  std::vector<detail::FmRow> rows;
  auto push = [&](RatVector a, Rational b, bool strict) {
    RatVector full(n);
    for (std::size_t j = 0; j < d; ++j) full[j + 1] = a[j];
    if (strict) full[0] = 1;
    rows.push_back({std::move(full), std::move(b), {}});
  };
  for (const auto& c : sys.constraints()) {
    RatVector neg(d);
    for (std::size_t j = 0; j < d; ++j) neg[j] = -c.coefficients[j];
    switch (c.relation) {
      case Relation::LessEqual: push(c.coefficients, c.bound, false); break;
      case Relation::Less: push(c.coefficients, c.bound, true); break;
      case Relation::GreaterEqual: push(neg, -c.bound, false); break;
      case Relation::Greater: push(neg, -c.bound, true); break;
      case Relation::Equal:
        push(c.coefficients, c.bound, false);
        push(neg, -c.bound, false);
        break;
    }
  }
  if (has_strict) {
    RatVector cap(n);
    cap[0] = 1;
    rows.push_back({std::move(cap), 1, {}});
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].history.resize(rows.size());
    rows[i].history.set(i);
  }

  detail::Projection proj(n, std::move(rows), 1);
  if (proj.infeasible()) return std::nullopt;

  RatVector values(n);
  auto [lo, hi] = proj.bounds(1, {});
  if (has_strict) {
    if (!hi || *hi <= 0 || (lo && *lo > *hi)) return std::nullopt;
    values[0] = *hi;
  } else if (lo && hi && *lo > *hi) {
    return std::nullopt;
  }
  for (std::size_t k = 2; k <= n; ++k) {
    auto [l, h] = proj.bounds(k, std::span<const Rational>(values).first(k - 1));
    if (l && h && *l > *h) return std::nullopt;  // cannot happen for an exact projection
    values[k - 1] = h ? *h : (l ? *l : Rational(0));
  }
  RatVector x(values.begin() + 1, values.end());
  if (!satisfies(sys, x)) throw ContractViolation("feasibility witness violates the system");
  return x;
}

/// Calls `visit` on every integer point of the bounded polyhedron
/// {x : normal_i . x <= offset_i}. Throws InputError if unbounded.
inline void for_each_lattice_point(std::span<const Halfspace> hs, std::size_t dim,
                                   const std::function<void(const IntVector&)>& visit) {
  detail::Projection proj(dim, detail::rows_from_halfspaces(hs, dim), 0);
  if (proj.infeasible()) return;
  RatVector prefix(dim);
  IntVector point(dim);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k > dim) {
      visit(point);
      return;
    }
    auto [lo, hi] = proj.bounds(k, std::span<const Rational>(prefix).first(k - 1));
    if (!lo || !hi) throw InputError("lattice point enumeration over an unbounded region");
    const Integer first = ceil(*lo);
    const Integer last = floor(*hi);
    for (Integer z = first; z <= last; ++z) {
      point[k - 1] = z;
      prefix[k - 1] = z;
      rec(k + 1);
    }
  };
  if (dim == 0) {
    visit(point);
    return;
  }
  rec(1);
}

// ---------------------------------------------------------------------------
// Pulling triangulation

/// Triangulates the pointed cone spanned by `gens` (or, with homogenized
/// vertices, a polytope). `facets` lists, for each facet, the indices of the
/// generators lying on it. Each simplex is returned as generator indices.
inline std::vector<std::vector<std::size_t>> pulling_triangulation(std::span<const RatVector> gens,
                                                                   std::span<const std::vector<std::size_t>> facets) {
  if (gens.empty()) return {};
  const std::size_t dim = gens[0].size();
  auto rank_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVector> vs;
    vs.reserve(idx.size());
    for (auto i : idx) vs.push_back(gens[i]);
    return rank_of_vectors<Rational>(vs, dim);
  };
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, std::size_t)> rec =
      [&](const std::vector<std::size_t>& face, std::size_t face_rank) {
        std::vector<std::vector<std::size_t>> out;
        if (face_rank == 1) {
          out.push_back({face.front()});
          return out;
        }
        const std::size_t apex = face.front();
        std::set<std::vector<std::size_t>> subfaces;
        for (const auto& f : facets) {
          std::vector<std::size_t> g;
          std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(g));
          if (g.empty() || std::binary_search(g.begin(), g.end(), apex)) continue;
          if (g.size() + 1 < face_rank) continue;
          if (rank_of(g) == face_rank - 1) subfaces.insert(std::move(g));
        }
        for (const auto& g : subfaces)
          for (auto simplex : rec(g, face_rank - 1)) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
          }
        return out;
      };
  std::vector<std::size_t> all(gens.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return rec(all, rank_of(all));
}

// ---------------------------------------------------------------------------
// Cell pieces

/// A bounded, full-dimensional rational polytope given by its facet
/// inequalities, with its vertices and an interior point.
class CellPiece {
 public:
  /// Builds a piece from arbitrary non-strict inequalities. Vertices are
  /// found by solving every d-subset of rows.
  static CellPiece from_halfspaces(std::size_t dim, std::vector<Halfspace> hs) {
    if (dim == 0) throw InputError("cell pieces need dimension >= 1");
    for (const auto& h : hs)
      if (h.normal.size() != dim) throw InputError("halfspace dimension mismatch");
    if (!is_bounded(dim, hs)) throw InputError("polyhedron is unbounded");
    auto verts = detail::basic_vertices(hs, dim);
    CellPiece piece(dim, std::move(hs), std::move(verts));
    if (!piece.full_dimensional()) throw InputError("polytope is not full-dimensional");
    piece.finish();
    return piece;
  }

  static CellPiece unit_cube(std::size_t dim) {
    std::vector<Halfspace> hs;
    for (std::size_t j = 0; j < dim; ++j) {
      RatVector up(dim), down(dim);
      up[j] = 1;
      down[j] = -1;
      hs.push_back({std::move(up), 1});
      hs.push_back({std::move(down), 0});
    }
    std::vector<RatVector> verts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      RatVector v(dim);
      for (std::size_t j = 0; j < dim; ++j) v[j] = (mask >> j) & 1u;
      verts.push_back(std::move(v));
    }
    std::sort(verts.begin(), verts.end());
    CellPiece piece(dim, std::move(hs), std::move(verts));
    piece.finish();
    return piece;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Halfspace>& facets() const noexcept { return facets_; }
  const std::vector<RatVector>& vertices() const noexcept { return vertices_; }
  const RatVector& interior_sample() const noexcept { return sample_; }

  /// The closure as a non-strict system; with `strict` every row is strict,
  /// which describes the topological interior.
  LinearSystem as_system(bool strict = false) const {
    LinearSystem sys(dim_);
    for (const auto& h : facets_) sys.add(h.normal, h.offset, strict ? Relation::Less : Relation::LessEqual);
    return sys;
  }

  bool contains_strictly(std::span<const Rational> x) const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Halfspace& h) { return dot<Rational>(h.normal, x) < h.offset; });
  }

  /// Indices of facets tight at each vertex.
  std::vector<std::vector<std::size_t>> vertex_incidence() const {
    std::vector<std::vector<std::size_t>> inc(vertices_.size());
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      for (std::size_t f = 0; f < facets_.size(); ++f)
        if (dot<Rational>(facets_[f].normal, vertices_[v]) == facets_[f].offset) inc[v].push_back(f);
    return inc;
  }

  /// Indices of vertices on each facet.
  std::vector<std::vector<std::size_t>> facet_incidence() const {
    std::vector<std::vector<std::size_t>> inc(facets_.size());
    for (std::size_t f = 0; f < facets_.size(); ++f)
      for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (dot<Rational>(facets_[f].normal, vertices_[v]) == facets_[f].offset) inc[f].push_back(v);
    return inc;
  }

 private:
  friend std::vector<CellPiece> split(const CellPiece&, const Hyperplane&);

  CellPiece(std::size_t dim, std::vector<Halfspace> hs, std::vector<RatVector> verts)
      : dim_(dim), facets_(std::move(hs)), vertices_(std::move(verts)) {}

  static bool is_bounded(std::size_t dim, const std::vector<Halfspace>& hs) {
    // Bounded iff the recession cone {A y <= 0} is {0}.
    for (std::size_t j = 0; j < dim; ++j)
      for (int sign : {1, -1}) {
        LinearSystem rec(dim);
        for (const auto& h : hs) rec.add(h.normal, 0, Relation::LessEqual);
        RatVector e(dim);
        e[j] = sign;
        rec.add(std::move(e), 1, Relation::GreaterEqual);
        if (feasible(rec)) return false;
      }
    return true;
  }

  std::size_t affine_rank(const std::vector<std::size_t>& idx) const {
    if (idx.empty()) return 0;
    std::vector<RatVector> diffs;
    for (std::size_t k = 1; k < idx.size(); ++k) {
      RatVector d(dim_);
      for (std::size_t j = 0; j < dim_; ++j) d[j] = vertices_[idx[k]][j] - vertices_[idx[0]][j];
      diffs.push_back(std::move(d));
    }
    return rank_of_vectors<Rational>(diffs, dim_);
  }

  bool full_dimensional() const {
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return vertices_.size() > dim_ && affine_rank(all) == dim_;
  }

  // Keeps only facet-defining rows (one per facet) and sets the sample.
  void finish() {
    std::vector<Halfspace> kept;
    std::set<std::vector<std::size_t>> seen;
    for (auto& h : facets_) {
      std::vector<std::size_t> tight;
      for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (dot<Rational>(h.normal, vertices_[v]) == h.offset) tight.push_back(v);
      if (tight.size() < dim_ || affine_rank(tight) != dim_ - 1) continue;
      if (!seen.insert(tight).second) continue;
      kept.push_back(std::move(h));
    }
    facets_ = std::move(kept);
    sample_.assign(dim_, Rational(0));
    for (const auto& v : vertices_)
      for (std::size_t j = 0; j < dim_; ++j) sample_[j] += v[j];
    for (auto& x : sample_) x /= static_cast<unsigned long>(vertices_.size());
    if (!contains_strictly(sample_)) throw ContractViolation("vertex mean is not an interior point");
  }

  std::size_t dim_ = 0;
  std::vector<Halfspace> facets_;
  std::vector<RatVector> vertices_;
  RatVector sample_;
};

/// Splits a cell by a hyperplane into its full-dimensional pieces on either
/// side (one piece if the hyperplane misses the interior).
///
/// The hyperplane meets the interior iff the vertices lie strictly on both
/// sides. Child vertices are the parent's vertices on that side plus the
/// crossing points of parent edges.
inline std::vector<CellPiece> split(const CellPiece& cell, const Hyperplane& hp) {
  const std::size_t d = cell.dim();
  if (hp.normal.size() != d) throw InputError("hyperplane dimension mismatch");
  std::vector<Rational> val;
  val.reserve(cell.vertices_.size());
  for (const auto& v : cell.vertices_) val.push_back(dot<Rational>(hp.normal, v) - hp.level);
  const bool below = std::any_of(val.begin(), val.end(), [](const Rational& x) { return x < 0; });
  const bool above = std::any_of(val.begin(), val.end(), [](const Rational& x) { return x > 0; });
  if (!below || !above) return {cell};

  const auto inc = cell.vertex_incidence();
  std::vector<RatVector> crossings;
  for (std::size_t i = 0; i < val.size(); ++i) {
    if (val[i] >= 0) continue;
    for (std::size_t j = 0; j < val.size(); ++j) {
      if (val[j] <= 0) continue;
      std::vector<std::size_t> common;
      std::set_intersection(inc[i].begin(), inc[i].end(), inc[j].begin(), inc[j].end(), std::back_inserter(common));
      if (common.size() + 1 < d) continue;
      std::vector<RatVector> normals;
      for (auto f : common) normals.push_back(cell.facets_[f].normal);
      if (rank_of_vectors<Rational>(normals, d) != d - 1) continue;
      const Rational t = val[i] / (val[i] - val[j]);
      RatVector p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = cell.vertices_[i][k] + t * (cell.vertices_[j][k] - cell.vertices_[i][k]);
      crossings.push_back(std::move(p));
    }
  }

  std::vector<CellPiece> out;
  for (int side : {-1, 1}) {
    std::vector<RatVector> verts = crossings;
    for (std::size_t i = 0; i < val.size(); ++i)
      if ((side < 0 && val[i] <= 0) || (side > 0 && val[i] >= 0)) verts.push_back(cell.vertices_[i]);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<Halfspace> hs = cell.facets_;
    RatVector n = hp.normal;
    Rational l = hp.level;
    if (side > 0) {
      for (auto& x : n) x = -x;
      l = -l;
    }
    hs.push_back({std::move(n), std::move(l)});
    CellPiece piece(d, std::move(hs), std::move(verts));
    piece.finish();
    out.push_back(std::move(piece));
  }
  return out;
}

/// Exact volume via a pulling triangulation of the vertex set.
inline Rational volume(const CellPiece& cell) {
  const std::size_t d = cell.dim();
  std::vector<RatVector> homog;
  for (const auto& v : cell.vertices()) {
    RatVector h = v;
    h.push_back(1);
    homog.push_back(std::move(h));
  }
  const auto simplices = pulling_triangulation(homog, cell.facet_incidence());
  Rational total = 0;
  Integer fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<unsigned long>(k);
  for (const auto& s : simplices) {
    RatMatrix m(d, d);
    const auto& base = cell.vertices()[s[0]];
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i - 1, j) = cell.vertices()[s[i]][j] - base[j];
    total += abs(determinant(std::move(m)));
  }
  return total / Rational(fact);
}

/// Vertices of a bounded non-strict system (empty if infeasible).
inline std::vector<RatVector> vertices(const LinearSystem& sys) {
  std::vector<Halfspace> hs;
  for (const auto& c : sys.constraints()) {
    RatVector neg(c.coefficients.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -c.coefficients[j];
    switch (c.relation) {
      case Relation::LessEqual:
      case Relation::Less: hs.push_back({c.coefficients, c.bound}); break;
      case Relation::GreaterEqual:
      case Relation::Greater: hs.push_back({std::move(neg), -c.bound}); break;
      case Relation::Equal:
        hs.push_back({c.coefficients, c.bound});
        hs.push_back({std::move(neg), -c.bound});
        break;
    }
  }
  return detail::basic_vertices(hs, sys.dim());
}

}  // namespace conicdiv
