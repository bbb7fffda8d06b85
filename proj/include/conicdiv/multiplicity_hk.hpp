#pragma once

// Multiplicities of the conic classes in the decomposition of R^{1/n},
// their quasi-polynomials, minimal generator counts and the Hilbert-Kunz
// function and multiplicity.
//
// Everything is characteristic free: the K-dimensions involved are counts
// of lattice points, so hk_function is defined for every n >= 1 and agrees
// with dim_K R/m^[q] at q = p^e.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conicdiv/conic_cells.hpp"
#include "conicdiv/cone.hpp"
#include "conicdiv/divisor_theory.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"
#include "conicdiv/polyhedra.hpp"

namespace conicdiv {

/// Multiplicity of each conic class in R^{1/n}; counts sum to n^d.
struct MultiplicityVector {
  std::uint64_t n = 1;
  std::map<ClassLabel, Integer> counts;

  Integer total() const {
    Integer t = 0;
    for (const auto& [l, c] : counts) t += c;
    return t;
  }
  Integer count(const ClassLabel& label) const {
    auto it = counts.find(label);
    return it == counts.end() ? Integer(0) : it->second;
  }
};

/// Buckets the points k/n, k in {0..n-1}^d, by the class of ceil(sigma(k/n)).
/// Since c -> -c permutes (1/n)Z^d/Z^d and I_c ≅ C(-c), this counts the
/// summands I_c in each isomorphism class. With a nonempty table every
/// class found must be one of its rows.
inline MultiplicityVector multiplicity_vector(const Cone& cone, const ClassGroup& group, const ConicTable& table,
                                              std::uint64_t n) {
  if (n < 1) throw InputError("n must be positive");
  const std::size_t d = cone.dim();
  MultiplicityVector mv;
  mv.n = n;
  const Integer nn = static_cast<unsigned long>(n);
  IntVector k(d, 0);
  IntVector u(cone.num_forms());
  for (;;) {
    const IntVector s = cone.sigma(k);
    for (std::size_t i = 0; i < s.size(); ++i) mpz_cdiv_q(u[i].get_mpz_t(), s[i].get_mpz_t(), nn.get_mpz_t());
    mv.counts[group.class_of(u)] += 1;
    std::size_t j = 0;
    while (j < d) {
      if (++k[j] < nn) break;
      k[j] = 0;
      ++j;
    }
    if (j == d) break;
  }
  if (!table.rows.empty())
    for (const auto& [label, c] : mv.counts)
      if (!table.find(label)) throw ContractViolation("class " + label.to_string() + " is not in the conic table");
  return mv;
}

/// q(n) = sum_k c_{n mod period}[k] n^k.
class QuasiPolynomial {
 public:
  QuasiPolynomial(std::size_t degree, std::vector<RatVector> coefficients)
      : degree_(degree), coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) throw InputError("quasi-polynomial needs a positive period");
    for (const auto& c : coefficients_)
      if (c.size() != degree + 1) throw InputError("coefficient vector has the wrong length");
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t period() const noexcept { return coefficients_.size(); }
  const std::vector<RatVector>& coefficients() const noexcept { return coefficients_; }

  /// Coefficient of n^k for residue class r.
  const Rational& coefficient(std::size_t residue, std::size_t k) const { return coefficients_.at(residue).at(k); }

  /// Coefficient of n^k if it is the same for every residue.
  std::optional<Rational> constant_coefficient(std::size_t k) const {
    for (const auto& c : coefficients_)
      if (c[k] != coefficients_[0][k]) return std::nullopt;
    return coefficients_[0][k];
  }

  Rational evaluate(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(period());
    const auto r = static_cast<std::size_t>(((n % p) + p) % p);
    Rational value = 0, power = 1;
    for (std::size_t k = 0; k <= degree_; ++k) {
      value += coefficients_[r][k] * power;
      power *= Rational(static_cast<long>(n));
    }
    return value;
  }

 private:
  std::size_t degree_;
  std::vector<RatVector> coefficients_;
};

/// Finds the smallest period p <= max_period for which interpolating each
/// residue class of n through its first degree+1 samples reproduces all of
/// `values` (values[i] = v(i+1)). The leading coefficient and, for degree
/// >= 1, the next one must come out constant; `expected_leading` pins the
/// former. Any failure throws ContractViolation.
inline QuasiPolynomial fit_quasi_polynomial(std::span<const Integer> values, std::size_t degree,
                                            std::size_t max_period,
                                            std::optional<Rational> expected_leading = std::nullopt) {
  if (max_period < 1) throw InputError("max_period must be positive");
  if (values.size() < 2 * max_period * (degree + 1))
    throw InputError("need at least 2 * max_period * (degree + 1) = " + std::to_string(2 * max_period * (degree + 1)) +
                     " samples, got " + std::to_string(values.size()));
  for (std::size_t p = 1; p <= max_period; ++p) {
    std::vector<RatVector> coeffs(p);
    bool ok = true;
    for (std::size_t r = 0; r < p && ok; ++r) {
      std::vector<std::size_t> ns;
      for (std::size_t n = (r == 0 ? p : r); n <= values.size(); n += p) ns.push_back(n);
      RatMatrix vand(degree + 1, degree + 1);
      RatVector rhs(degree + 1);
      for (std::size_t i = 0; i <= degree; ++i) {
        Rational pw = 1;
        for (std::size_t k = 0; k <= degree; ++k) {
          vand(i, k) = pw;
          pw *= static_cast<unsigned long>(ns[i]);
        }
        rhs[i] = values[ns[i] - 1];
      }
      coeffs[r] = *solve(std::move(vand), std::move(rhs));
      for (std::size_t i = degree + 1; i < ns.size() && ok; ++i) {
        Rational v = 0, pw = 1;
        for (std::size_t k = 0; k <= degree; ++k) {
          v += coeffs[r][k] * pw;
          pw *= static_cast<unsigned long>(ns[i]);
        }
        ok = v == Rational(values[ns[i] - 1]);
      }
    }
    if (!ok) continue;
    QuasiPolynomial q(degree, std::move(coeffs));
    const auto lead = q.constant_coefficient(degree);
    if (!lead) throw ContractViolation("leading coefficient varies with the residue class");
    if (expected_leading && *lead != *expected_leading)
      throw ContractViolation("leading coefficient " + to_fraction_string(*lead) + " differs from the expected " +
                              to_fraction_string(*expected_leading));
    if (degree >= 1 && !q.constant_coefficient(degree - 1))
      throw ContractViolation("second coefficient varies with the residue class");
    return q;
  }
  throw ContractViolation("no quasi-polynomial of period <= " + std::to_string(max_period) + " fits the samples");
}

/// lcm of the denominators of all cell-piece vertex coordinates, a valid
/// period for every cell's counting function.
inline Integer default_period_bound(const ConicTable& table) {
  Integer l = 1;
  for (const auto& row : table.rows)
    for (const auto& piece : row.pieces)
      for (const auto& v : piece.vertices())
        for (const auto& x : v) l = lcm(l, x.get_den());
  return l;
}

struct GeneratorSet {
  IntVector u;
  std::vector<IntVector> generators;
  std::size_t mu() const noexcept { return generators.size(); }
};

/// Minimal monomial generators of D(u) as an M-module.
///
/// D(u) = P + C with P the convex hull of the vertices of {sigma >= u}; a
/// minimal generator z = p + sum lambda_r r (p in P, r the rays of a
/// simplicial cone) has all lambda_r < 1, so sigma(z) <= max_v sigma(v) + S
/// with S from parallelepiped_sigma_bound. The box {u <= sigma <= that} is
/// enumerated and the sigma-minimal points kept.
inline GeneratorSet min_generators(const Cone& cone, std::span<const Integer> u) {
  const std::size_t s = cone.num_forms();
  const std::size_t d = cone.dim();
  if (u.size() != s) throw InputError("divisor vector length does not match the number of forms");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < s; ++i) {
    RatVector n(d);
    for (std::size_t j = 0; j < d; ++j) n[j] = -Rational(cone.support_forms()[i][j]);
    hs.push_back({std::move(n), Rational(-u[i])});
  }
  const auto verts = detail::basic_vertices(hs, d);
  if (verts.empty()) throw ContractViolation("divisorial polyhedron has no vertex");
  const IntVector par = parallelepiped_sigma_bound(cone);
  IntVector upper(s);
  for (std::size_t j = 0; j < s; ++j) {
    Integer m = ceil(cone.sigma(verts[0])[j]);
    for (const auto& v : verts) m = std::max(m, ceil(cone.sigma(v)[j]));
    upper[j] = m + par[j];
  }
  auto cands = lattice_points_in_sigma_box(cone, u, upper);
  GeneratorSet gs;
  gs.u.assign(u.begin(), u.end());
  gs.generators = detail::minimal_elements(cone, std::move(cands));
  return gs;
}

/// Minimal generator counts per conic class, computed from each row's
/// representative.
inline std::map<ClassLabel, std::size_t> generator_counts(const Cone& cone, const ConicTable& table) {
  std::map<ClassLabel, std::size_t> mu;
  for (const auto& row : table.rows) mu[row.label] = min_generators(cone, row.representative).mu();
  return mu;
}

inline Integer hk_function(const MultiplicityVector& mv, const std::map<ClassLabel, std::size_t>& mu) {
  Integer total = 0;
  for (const auto& [label, count] : mv.counts) {
    auto it = mu.find(label);
    if (it == mu.end()) throw ContractViolation("no generator count for class " + label.to_string());
    total += count * static_cast<unsigned long>(it->second);
  }
  return total;
}

/// sum_gamma mu(C_gamma) v_gamma(n).
inline Integer hk_function(const Cone& cone, const ClassGroup& group, const ConicTable& table, std::uint64_t n) {
  return hk_function(multiplicity_vector(cone, group, table, n), generator_counts(cone, table));
}

inline Rational hk_multiplicity(const ConicTable& table, const std::map<ClassLabel, std::size_t>& mu) {
  Rational e = 0;
  for (const auto& row : table.rows) e += row.volume * static_cast<unsigned long>(mu.at(row.label));
  return e;
}

/// e_HK = sum_gamma mu(C_gamma) vol(gamma).
inline Rational hk_multiplicity(const Cone& cone, const ConicTable& table) {
  return hk_multiplicity(table, generator_counts(cone, table));
}

/// Counts the lattice points of M outside the union of n*g + M over the
/// Hilbert basis, i.e. the length of R / m^[n] computed directly.
///
/// A point outside the union lies in a simplicial cone with all ray
/// coefficients < n (each primitive ray is in the Hilbert basis), so
/// sigma(z) <= n * parallelepiped_sigma_bound, and that box is enumerated.
inline Integer frobenius_colength_oracle(const Cone& cone, std::uint64_t n) {
  if (n < 1) throw InputError("n must be positive");
  const auto hb = hilbert_basis(cone);
  std::vector<IntVector> hb_sigma;
  for (const auto& g : hb) hb_sigma.push_back(cone.sigma(g));
  const IntVector par = parallelepiped_sigma_bound(cone);
  const Integer nn = static_cast<unsigned long>(n);
  IntVector lower(cone.num_forms(), 0), upper(cone.num_forms());
  for (std::size_t j = 0; j < upper.size(); ++j) upper[j] = nn * par[j];
  Integer count = 0;
  for (const auto& z : lattice_points_in_sigma_box(cone, lower, upper)) {
    const auto sz = cone.sigma(z);
    bool in_frobenius_power = false;
    for (const auto& sg : hb_sigma) {
      bool ge = true;
      for (std::size_t j = 0; j < sz.size() && ge; ++j) ge = sz[j] >= nn * sg[j];
      if (ge) {
        in_frobenius_power = true;
        break;
      }
    }
    if (in_frobenius_power) continue;
    for (std::size_t j = 0; j < sz.size(); ++j)
      if (par[j] > 0 && sz[j] >= nn * par[j]) throw ContractViolation("colength enumeration certificate failed");
    ++count;
  }
  return count;
}

/// Every d x d minor of the form matrix lies in {0, 1, -1}.
inline bool is_totally_unimodular(const Cone& cone) {
  const std::size_t d = cone.dim();
  const auto& forms = cone.support_forms();
  std::vector<std::size_t> pick;
  bool ok = true;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!ok) return;
    if (pick.size() == d) {
      IntMatrix m(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = forms[pick[i]][j];
      if (abs(determinant(std::move(m))) > 1) ok = false;
      return;
    }
    for (std::size_t i = start; i < forms.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return ok;
}

}  // namespace conicdiv
