#pragma once

// Positive normal affine monoids M = Z^d ∩ C given by a rational cone C.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"
#include "conicdiv/polyhedra.hpp"

namespace conicdiv {

/// sigma(x) together with its componentwise ceiling.
struct SigmaValue {
  RatVector value;
  IntVector ceiling;
};

namespace detail {

// Visits every k-subset of {0..n-1} whose members are linearly independent,
// pruning branches as soon as independence fails.
inline void for_each_independent_subset(std::span<const IntVector> vecs, std::size_t dim, std::size_t k,
                                        const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::vector<RatVector> echelon;  // reduced copies of picked vectors
  std::vector<std::size_t> pivot_cols;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      visit(pick);
      return;
    }
    for (std::size_t i = start; i + (k - pick.size()) <= vecs.size(); ++i) {
      RatVector r = to_rational(vecs[i]);
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Rational f = r[pivot_cols[e]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) r[j] -= f * echelon[e][j];
      }
      std::size_t pc = 0;
      while (pc < dim && r[pc] == 0) ++pc;
      if (pc == dim) continue;
      const Rational inv = 1 / r[pc];
      for (auto& x : r) x *= inv;
      pick.push_back(i);
      echelon.push_back(std::move(r));
      pivot_cols.push_back(pc);
      rec(i + 1);
      pick.pop_back();
      echelon.pop_back();
      pivot_cols.pop_back();
    }
  };
  rec(0);
}

// Primitive integer normal of the hyperplane spanned by d-1 independent vectors.
inline IntVector hyperplane_normal(std::span<const IntVector> vecs, const std::vector<std::size_t>& idx,
                                   std::size_t dim) {
  RatMatrix m(idx.size(), dim);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vecs[idx[i]][j];
  const auto ker = kernel_basis(std::move(m));
  if (ker.size() != 1) throw ContractViolation("expected a one-dimensional kernel");
  return primitive_integer(ker[0]);
}

inline Integer int_dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// True iff the forms have rank d, i.e. {x : sigma(x) = 0} = {0}.
inline bool is_positive(std::span<const IntVector> forms, std::size_t dim) {
  return rank_of_vectors<Integer>(forms, dim) == dim;
}

/// The cone R_+M of a positive normal affine monoid with gp(M) = Z^d.
///
/// Support forms are primitive, irredundant and sorted lexicographically;
/// extreme rays are primitive and sorted lexicographically.
class Cone {
 public:
  /// Facet forms from generators: every (d-1)-subset of independent
  /// generators spans a candidate hyperplane, kept when all generators lie
  /// on one side.
  static Cone from_generators(std::vector<IntVector> generators, std::size_t dim) {
    check_vectors(generators, dim, "generator");
    if (rank_of_vectors<Integer>(generators, dim) != dim)
      throw NotFullDimensional("generators do not span a full-dimensional cone");
    std::set<IntVector> forms;
    if (dim == 1) {
      bool pos = false, neg = false;
      for (const auto& g : generators) {
        pos = pos || g[0] > 0;
        neg = neg || g[0] < 0;
      }
      if (pos && !neg) forms.insert(IntVector{1});
      if (neg && !pos) forms.insert(IntVector{-1});
    } else {
      detail::for_each_independent_subset(generators, dim, dim - 1, [&](const std::vector<std::size_t>& idx) {
        IntVector n = detail::hyperplane_normal(generators, idx, dim);
        bool pos = false, neg = false;
        for (const auto& g : generators) {
          const Integer v = detail::int_dot(n, g);
          pos = pos || v > 0;
          neg = neg || v < 0;
          if (pos && neg) return;
        }
        if (neg)
          for (auto& x : n) x = -x;
        forms.insert(std::move(n));
      });
    }
    std::vector<IntVector> fv(forms.begin(), forms.end());
    if (!is_positive(fv, dim)) throw NotPointed("cone contains a line: 0 is not the only unit of the monoid");
    Cone c(dim, std::move(generators), std::move(fv));
    c.rays_ = c.compute_rays();
    return c;
  }

  /// Cone {x : sigma_i(x) >= 0}. Redundant forms are dropped, the rest are
  /// made primitive; the extreme rays become the generators.
  static Cone from_support_forms(std::vector<IntVector> forms, std::size_t dim) {
    check_vectors(forms, dim, "support form");
    if (!is_positive(forms, dim)) throw NotPointed("support forms have rank < d: the cone contains a line");
    std::set<IntVector> prim;
    for (const auto& f : forms) prim.insert(primitive_part(f));
    Cone c(dim, {}, std::vector<IntVector>(prim.begin(), prim.end()));
    c.rays_ = c.compute_rays();
    if (c.rays_.size() < dim || rank_of_vectors<Integer>(c.rays_, dim) != dim)
      throw NotFullDimensional("support forms do not define a full-dimensional cone");
    // Keep only facet-defining forms.
    std::vector<IntVector> facets;
    for (const auto& f : c.forms_) {
      std::vector<IntVector> tight;
      for (const auto& r : c.rays_)
        if (detail::int_dot(f, r) == 0) tight.push_back(r);
      if (rank_of_vectors<Integer>(tight, dim) == dim - 1) facets.push_back(f);
    }
    c.forms_ = std::move(facets);
    c.generators_ = c.rays_;
    return c;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_forms() const noexcept { return forms_.size(); }
  const std::vector<IntVector>& generators() const noexcept { return generators_; }
  const std::vector<IntVector>& support_forms() const noexcept { return forms_; }
  const std::vector<IntVector>& extreme_rays() const noexcept { return rays_; }

  /// The s x d matrix whose rows are the support forms.
  IntMatrix form_matrix() const { return IntMatrix::from_rows(std::span<const IntVector>(forms_), dim_); }

  IntVector sigma(std::span<const Integer> x) const {
    if (x.size() != dim_) throw InputError("point has wrong dimension");
    IntVector out;
    out.reserve(forms_.size());
    for (const auto& f : forms_) out.push_back(detail::int_dot(f, x));
    return out;
  }

  RatVector sigma(std::span<const Rational> x) const {
    if (x.size() != dim_) throw InputError("point has wrong dimension");
    RatVector out;
    out.reserve(forms_.size());
    for (const auto& f : forms_) out.push_back(dot(std::span<const Integer>(f), x));
    return out;
  }

  bool contains(std::span<const Integer> x) const {
    for (const auto& f : forms_)
      if (detail::int_dot(f, x) < 0) return false;
    return true;
  }

 private:
  Cone(std::size_t dim, std::vector<IntVector> gens, std::vector<IntVector> forms)
      : dim_(dim), generators_(std::move(gens)), forms_(std::move(forms)) {}

  static void check_vectors(const std::vector<IntVector>& vs, std::size_t dim, const char* what) {
    if (dim == 0) throw InputError("dimension must be positive");
    for (const auto& v : vs)
      if (v.size() != dim) throw InputError(std::string(what) + " has length " + std::to_string(v.size()) +
                                            ", expected " + std::to_string(dim));
  }

  // Extreme rays: kernels of (d-1)-subsets of forms lying in the cone.
  std::vector<IntVector> compute_rays() const {
    std::set<IntVector> rays;
    if (dim_ == 1) {
      const bool pos = std::any_of(forms_.begin(), forms_.end(), [](const IntVector& f) { return f[0] > 0; });
      const bool neg = std::any_of(forms_.begin(), forms_.end(), [](const IntVector& f) { return f[0] < 0; });
      if (pos != neg) rays.insert(IntVector{pos ? 1 : -1});
    } else {
      detail::for_each_independent_subset(forms_, dim_, dim_ - 1, [&](const std::vector<std::size_t>& idx) {
        IntVector r = detail::hyperplane_normal(forms_, idx, dim_);
        bool pos = false, neg = false;
        for (const auto& f : forms_) {
          const Integer v = detail::int_dot(f, r);
          pos = pos || v > 0;
          neg = neg || v < 0;
          if (pos && neg) return;
        }
        if (neg)
          for (auto& x : r) x = -x;
        rays.insert(std::move(r));
      });
    }
    return {rays.begin(), rays.end()};
  }

  std::size_t dim_;
  std::vector<IntVector> generators_;
  std::vector<IntVector> forms_;
  std::vector<IntVector> rays_;
};

/// Facet forms of the cone spanned by `generators`.
inline Cone support_forms(std::vector<IntVector> generators, std::size_t dim) {
  return Cone::from_generators(std::move(generators), dim);
}

inline bool is_positive(const Cone& cone) { return is_positive(cone.support_forms(), cone.dim()); }

inline SigmaValue ceil_sigma(const Cone& cone, std::span<const Rational> x) {
  SigmaValue sv{cone.sigma(x), {}};
  sv.ceiling.reserve(sv.value.size());
  for (const auto& v : sv.value) sv.ceiling.push_back(ceil(v));
  return sv;
}

/// Simplicial cones (as index sets into extreme_rays()) covering the cone.
inline std::vector<std::vector<std::size_t>> cone_triangulation(const Cone& cone) {
  const auto& rays = cone.extreme_rays();
  std::vector<RatVector> gens;
  for (const auto& r : rays) gens.push_back(to_rational(r));
  std::vector<std::vector<std::size_t>> facets;
  for (const auto& f : cone.support_forms()) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (detail::int_dot(f, rays[i]) == 0) tight.push_back(i);
    facets.push_back(std::move(tight));
  }
  return pulling_triangulation(gens, facets);
}

/// Componentwise max over simplicial cones of sum_{r in cone} sigma(r).
/// Any z = sum lambda_r r with 0 <= lambda_r < t in one of these cones has
/// sigma(z) <= t * bound.
inline IntVector parallelepiped_sigma_bound(const Cone& cone) {
  IntVector bound(cone.num_forms(), 0);
  for (const auto& simplex : cone_triangulation(cone)) {
    IntVector sum(cone.num_forms(), 0);
    for (auto i : simplex) {
      const auto s = cone.sigma(cone.extreme_rays()[i]);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += s[j];
    }
    for (std::size_t j = 0; j < sum.size(); ++j) bound[j] = std::max(bound[j], sum[j]);
  }
  return bound;
}

/// Lattice points z with lower <= sigma(z) <= upper (componentwise).
inline std::vector<IntVector> lattice_points_in_sigma_box(const Cone& cone, std::span<const Integer> lower,
                                                          std::span<const Integer> upper) {
  std::vector<Halfspace> hs;
  const std::size_t d = cone.dim();
  for (std::size_t i = 0; i < cone.num_forms(); ++i) {
    const auto& f = cone.support_forms()[i];
    RatVector up = to_rational(f), down(d);
    for (std::size_t j = 0; j < d; ++j) down[j] = -up[j];
    hs.push_back({std::move(up), Rational(upper[i])});
    hs.push_back({std::move(down), Rational(-lower[i])});
  }
  std::vector<IntVector> out;
  for_each_lattice_point(hs, d, [&](const IntVector& z) { out.push_back(z); });
  return out;
}

namespace detail {

// Among candidate points of a module, keeps those not dominated by another
// candidate in the sigma order (z' <= z componentwise means z - z' in M).
inline std::vector<IntVector> minimal_elements(const Cone& cone, std::vector<IntVector> cands) {
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<IntVector> sig;
  sig.reserve(cands.size());
  for (const auto& c : cands) sig.push_back(cone.sigma(c));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < cands.size() && minimal; ++j) {
      if (i == j) continue;
      bool le = true;
      for (std::size_t k = 0; k < sig[i].size() && le; ++k) le = sig[j][k] <= sig[i][k];
      if (le) minimal = false;
    }
    if (minimal) out.push_back(cands[i]);
  }
  return out;
}

}  // namespace detail

/// Hilbert basis of M = Z^d ∩ C.
///
/// Every element of M is a nonnegative integer combination of the extreme
/// rays of some simplicial cone of a triangulation plus a lattice point of
/// that cone's half-open parallelepiped; those points (found through the
/// Smith form of the ray matrix) together with the rays generate M, and the
/// irreducible ones among them form the Hilbert basis.
inline std::vector<IntVector> hilbert_basis(const Cone& cone) {
  const std::size_t d = cone.dim();
  const auto& rays = cone.extreme_rays();
  std::vector<IntVector> cands(rays.begin(), rays.end());
  for (const auto& simplex : cone_triangulation(cone)) {
    IntMatrix r(d, d);  // rays as columns
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t i = 0; i < d; ++i) r(i, c) = rays[simplex[c]][i];
    const auto snf = smith_normal_form(r);
    const IntMatrix uinv = unimodular_inverse(snf.U);
    const auto rinv = *inverse(to_rational(r));
    const IntVector diag = snf.diagonal();
    // Coset representatives of Z^d / r Z^d: U^{-1} k with 0 <= k_i < D_ii.
    IntVector k(d, 0);
    for (;;) {
      IntVector z = uinv * k;
      RatVector lambda = rinv * to_rational(z);
      RatVector frac(d);
      for (std::size_t i = 0; i < d; ++i) frac[i] = lambda[i] - Rational(floor(lambda[i]));
      const RatVector p = to_rational(r) * frac;
      IntVector point(d);
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        point[i] = p[i].get_num();
        nonzero = nonzero || point[i] != 0;
      }
      if (nonzero) cands.push_back(std::move(point));
      std::size_t i = 0;
      while (i < d) {
        ++k[i];
        if (k[i] < diag[i]) break;
        k[i] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  return detail::minimal_elements(cone, std::move(cands));
}

}  // namespace conicdiv
