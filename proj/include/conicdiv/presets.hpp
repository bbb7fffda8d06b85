#pragma once

// Named monoids: orthants, the two-ray cone over (1,0),(1,3), Segre
// products of polynomial rings and Veronese subrings.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conicdiv/cone.hpp"
#include "conicdiv/errors.hpp"

namespace conicdiv {

inline Cone orthant(std::size_t d) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Cone::from_generators(std::move(gens), d);
}

/// Cone over (1,0) and (1,3); Cl = Z/3.
inline Cone two_ray_cone() { return Cone::from_generators({{1, 0}, {1, 3}}, 2); }

/// Segre product Z_+^{d_1} # ... # Z_+^{d_k} in coordinates
/// (a_{1,1..d_1-1}, ..., a_{k,1..d_k-1}, t), where t is the common degree and
/// the last exponent of factor i is t - sum_j a_{i,j}. The support forms are
/// the sum(d_i) exponent functionals.
struct SegreMonoid {
  Cone cone;
  std::vector<int> dims;
  std::vector<std::size_t> anchor_forms;  // index of a_{i,1} among the support forms
};

inline SegreMonoid segre_monoid(std::span<const int> dims) {
  if (dims.empty()) throw InputError("Segre product needs at least one factor");
  std::size_t d = 1;
  for (int di : dims) {
    if (di < 2) throw InputError("Segre factors need at least 2 variables");
    d += static_cast<std::size_t>(di - 1);
  }
  std::vector<IntVector> forms, anchors;
  std::size_t offset = 0;
  for (int di : dims) {
    IntVector last(d, 0);
    last[d - 1] = 1;
    for (int j = 0; j < di - 1; ++j) {
      IntVector e(d, 0);
      e[offset + j] = 1;
      last[offset + j] = -1;
      if (j == 0) anchors.push_back(e);
      forms.push_back(std::move(e));
    }
    forms.push_back(std::move(last));
    offset += static_cast<std::size_t>(di - 1);
  }
  SegreMonoid sm{Cone::from_support_forms(forms, d), {dims.begin(), dims.end()}, {}};
  for (const auto& a : anchors) {
    const auto& fs = sm.cone.support_forms();
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i] == a) sm.anchor_forms.push_back(i);
  }
  if (sm.anchor_forms.size() != dims.size()) throw ContractViolation("Segre anchor forms not found");
  return sm;
}

/// u in Z^s with D(u) ≅ R_1(-s_1) # ... # R_k(-s_k).
inline IntVector segre_divisor(const SegreMonoid& sm, std::span<const std::int64_t> shifts) {
  if (shifts.size() != sm.dims.size()) throw InputError("need one shift per Segre factor");
  IntVector u(sm.cone.num_forms(), 0);
  for (std::size_t i = 0; i < shifts.size(); ++i) u[sm.anchor_forms[i]] = static_cast<long>(shifts[i]);
  return u;
}

/// The c-th Veronese subring of K[x_1..x_d], in coordinates
/// (a_1..a_{d-1}, k) with a_d = c k - sum a_j.
inline Cone veronese(std::size_t d, long c) {
  if (d < 1) throw InputError("Veronese needs at least one variable");
  if (c < 1) throw InputError("Veronese step must be positive");
  std::vector<IntVector> forms;
  IntVector last(d, 0);
  last[d - 1] = c;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    IntVector e(d, 0);
    e[j] = 1;
    last[j] = -1;
    forms.push_back(std::move(e));
  }
  forms.push_back(std::move(last));
  return Cone::from_support_forms(std::move(forms), d);
}

}  // namespace conicdiv
