#pragma once

// Divisorial ideals D(u) and the class group Cl(R) = Z^s / sigma(Z^d).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "conicdiv/cone.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"

namespace conicdiv {

/// The monomial ideal D(u) = K{x in Z^d : sigma(x) >= u}; u is stored rounded up.
struct DivisorialIdeal {
  IntVector u;

  static DivisorialIdeal from_rational(std::span<const Rational> u) {
    DivisorialIdeal ideal;
    for (const auto& x : u) ideal.u.push_back(ceil(x));
    return ideal;
  }

  /// The conic ideal C(y) = D(sigma(y)).
  static DivisorialIdeal conic(const Cone& cone, std::span<const Rational> y) {
    return from_rational(cone.sigma(y));
  }

  bool contains(const Cone& cone, std::span<const Integer> x) const {
    const auto s = cone.sigma(x);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] < u[i]) return false;
    return true;
  }
};

/// Coordinates of a divisor class: residues modulo the invariant factors,
/// then the free part.
struct ClassLabel {
  IntVector torsion;
  IntVector free;

  friend bool operator==(const ClassLabel& a, const ClassLabel& b) {
    return a.torsion == b.torsion && a.free == b.free;
  }
  friend bool operator<(const ClassLabel& a, const ClassLabel& b) {
    if (a.torsion != b.torsion) return a.torsion < b.torsion;
    return a.free < b.free;
  }

  bool is_zero() const {
    for (const auto& x : torsion)
      if (x != 0) return false;
    for (const auto& x : free)
      if (x != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + torsion[i].get_str();
    s += "|";
    for (std::size_t i = 0; i < free.size(); ++i) s += (i ? "," : "") + free[i].get_str();
    return s + ")";
  }
};

/// Cl(R) presented through the Smith form U * sigma * V = D of the s x d
/// form matrix. With y = U u, the coordinates y_i for D_ii > 1 carry the
/// torsion and y_d..y_{s-1} the free part.
///
/// Each cyclic torsion coordinate is rescaled by a unit so that the class
/// of the first prime divisor e_k with nonzero residue reads gcd(residue, D_ii).
class ClassGroup {
 public:
  explicit ClassGroup(const Cone& cone) : s_(cone.num_forms()), d_(cone.dim()) {
    const auto snf = smith_normal_form(cone.form_matrix());
    u_ = snf.U;
    uinv_ = unimodular_inverse(snf.U);
    const auto diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] == 0) throw ContractViolation("support forms are not injective on Z^d");
      if (diag[i] == 1) continue;
      torsion_rows_.push_back(i);
      factors_.push_back(diag[i]);
    }
    for (std::size_t t = 0; t < factors_.size(); ++t) {
      const Integer& n = factors_[t];
      Integer unit = 1;
      for (std::size_t k = 0; k < s_; ++k) {
        const Integer y = mod(u_(torsion_rows_[t], k), n);
        if (y == 0) continue;
        const Integer g = gcd(y, n);
        for (Integer w = 1; w < n; ++w)
          if (gcd(w, n) == 1 && mod(w * y, n) == g) {
            unit = w;
            break;
          }
        break;
      }
      Integer inv;
      mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), n.get_mpz_t());
      if (n == 1) inv = 1;
      units_.push_back(unit);
      unit_inverses_.push_back(inv);
    }
  }

  std::size_t num_forms() const noexcept { return s_; }
  std::size_t rank() const noexcept { return d_; }
  const IntVector& invariant_factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept { return s_ - d_; }

  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& f : factors_) p *= f;
    return p;
  }

  ClassLabel class_of(std::span<const Integer> u) const {
    if (u.size() != s_) throw InputError("divisor vector has length " + std::to_string(u.size()) + ", expected " +
                                         std::to_string(s_));
    ClassLabel label;
    for (std::size_t t = 0; t < factors_.size(); ++t) {
      Integer y = 0;
      for (std::size_t k = 0; k < s_; ++k) y += u_(torsion_rows_[t], k) * u[k];
      label.torsion.push_back(mod(y * units_[t], factors_[t]));
    }
    for (std::size_t i = d_; i < s_; ++i) {
      Integer y = 0;
      for (std::size_t k = 0; k < s_; ++k) y += u_(i, k) * u[k];
      label.free.push_back(std::move(y));
    }
    return label;
  }

  /// Some u in Z^s with class_of(u) == label.
  IntVector representative(const ClassLabel& label) const {
    check_label(label);
    IntVector y(s_, 0);
    for (std::size_t t = 0; t < factors_.size(); ++t)
      y[torsion_rows_[t]] = mod(label.torsion[t] * unit_inverses_[t], factors_[t]);
    for (std::size_t i = d_; i < s_; ++i) y[i] = label.free[i - d_];
    return uinv_ * y;
  }

  ClassLabel add(const ClassLabel& a, const ClassLabel& b) const {
    check_label(a);
    check_label(b);
    ClassLabel c;
    for (std::size_t t = 0; t < factors_.size(); ++t) c.torsion.push_back(mod(a.torsion[t] + b.torsion[t], factors_[t]));
    for (std::size_t i = 0; i < a.free.size(); ++i) c.free.push_back(a.free[i] + b.free[i]);
    return c;
  }

  ClassLabel negate(const ClassLabel& a) const {
    check_label(a);
    ClassLabel c;
    for (std::size_t t = 0; t < factors_.size(); ++t) c.torsion.push_back(mod(-a.torsion[t], factors_[t]));
    for (const auto& x : a.free) c.free.push_back(-x);
    return c;
  }

  ClassLabel zero() const {
    return {IntVector(factors_.size(), 0), IntVector(free_rank(), 0)};
  }

  /// Every torsion tuple, in lexicographic order.
  std::vector<IntVector> torsion_elements() const {
    std::vector<IntVector> out;
    IntVector t(factors_.size(), 0);
    for (;;) {
      out.push_back(t);
      std::size_t i = t.size();
      for (;;) {
        if (i == 0) return out;
        --i;
        ++t[i];
        if (t[i] < factors_[i]) break;
        t[i] = 0;
      }
    }
  }

 private:
  void check_label(const ClassLabel& l) const {
    if (l.torsion.size() != factors_.size() || l.free.size() != free_rank())
      throw InputError("class label does not belong to this group");
  }

  std::size_t s_;
  std::size_t d_;
  IntMatrix u_;
  IntMatrix uinv_;
  std::vector<std::size_t> torsion_rows_;
  IntVector factors_;
  IntVector units_;
  IntVector unit_inverses_;
};

inline ClassGroup class_group(const Cone& cone) { return ClassGroup(cone); }

inline ClassLabel class_of(const ClassGroup& group, std::span<const Integer> u) { return group.class_of(u); }

/// Finite order iff the free coordinates vanish.
inline bool is_torsion(const ClassGroup& group, const ClassLabel& label) {
  if (label.free.size() != group.free_rank()) throw InputError("class label does not belong to this group");
  for (const auto& x : label.free)
    if (x != 0) return false;
  return true;
}

/// Class of the canonical module: the interior ideal D(1,...,1).
inline ClassLabel canonical_class(const ClassGroup& group, const Cone& cone) {
  return group.class_of(IntVector(cone.num_forms(), 1));
}

}  // namespace conicdiv
