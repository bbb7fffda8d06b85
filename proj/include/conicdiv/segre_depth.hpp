#pragma once

// Cohen-Macaulayness and depth of Segre products M_1 # ... # M_n of graded
// maximal Cohen-Macaulay modules, each described by its dimension d_i,
// its initial degree b_i and the top degree h_i of its top local cohomology.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "conicdiv/errors.hpp"

namespace conicdiv {

struct GradedFactor {
  int dim = 2;
  std::int64_t b = 0;
  std::int64_t h = 0;

  /// R(-s) for a polynomial ring R in `dim` variables: b = s, h = s - dim.
  static GradedFactor polynomial_shift(int dim, std::int64_t shift) {
    check_dim(dim);
    return {dim, shift, shift - dim};
  }

  /// The module sum_k R_{kc+a} over the Veronese subring R^(c) of a
  /// polynomial ring in `dim` variables: b = ceil(-a/c), h = floor((-dim-a)/c).
  static GradedFactor veronese_shift(int dim, std::int64_t step, std::int64_t residue) {
    check_dim(dim);
    if (step < 1) throw InputError("Veronese step must be positive");
    return {dim, ceil_div(-residue, step), floor_div(-dim - residue, step)};
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

 private:
  static void check_dim(int dim) {
    if (dim < 2) throw InputError("factor dimension must be at least 2, got " + std::to_string(dim));
  }
};

namespace detail {

inline void check_factors(std::span<const GradedFactor> fs) {
  if (fs.empty()) throw InputError("need at least one factor");
  if (fs.size() > 30) throw InputError("too many factors for subset enumeration");
  for (const auto& f : fs)
    if (f.dim < 2) throw InputError("factor dimension must be at least 2");
}

// The local cohomology summand indexed by the nonempty proper subset `mask`
// is nonzero iff min_{i in I} h_i >= max_{j not in I} b_j.
inline bool subset_contributes(std::span<const GradedFactor> fs, std::uint32_t mask) {
  std::int64_t min_h = INT64_MAX, max_b = INT64_MIN;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (mask & (1u << i))
      min_h = std::min(min_h, fs[i].h);
    else
      max_b = std::max(max_b, fs[i].b);
  }
  return min_h >= max_b;
}

}  // namespace detail

/// CM iff min_{i in I} h_i < max_{j not in I} b_j for every nonempty proper I.
inline bool is_cm(std::span<const GradedFactor> factors) {
  detail::check_factors(factors);
  const std::uint32_t full = (1u << factors.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (detail::subset_contributes(factors, mask)) return false;
  return true;
}

/// Krull dimension of the Segre product: sum d_i - (n - 1).
inline int segre_dimension(std::span<const GradedFactor> factors) {
  int k = 0;
  for (const auto& f : factors) k += f.dim;
  return k - static_cast<int>(factors.size()) + 1;
}

/// Smallest index k = sum_{i in I} d_i - (|I| - 1) over the subsets I whose
/// local cohomology summand is nonzero (the full set always is).
inline int depth(std::span<const GradedFactor> factors) {
  detail::check_factors(factors);
  const std::uint32_t full = (1u << factors.size()) - 1;
  int best = segre_dimension(factors);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (!detail::subset_contributes(factors, mask)) continue;
    int k = 1;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (mask & (1u << i)) k += factors[i].dim - 1;
    best = std::min(best, k);
  }
  return best;
}

/// A 0-based ordering j_1..j_n in which every prefix Segre product is CM.
///
/// Sort by b; starting from the first element, each block runs up to the
/// first factor whose h drops below the b of the current block head, and is
/// rotated so that factor comes first.
inline std::vector<std::size_t> cm_permutation(std::span<const GradedFactor> factors) {
  if (!is_cm(factors)) throw InputError("cm_permutation needs a Cohen-Macaulay Segre product");
  const std::size_t n = factors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return factors[a].b < factors[b].b; });
  std::vector<std::size_t> perm{order[0]};
  std::size_t head = 0;  // position of u_v in `order`
  while (head + 1 < n) {
    std::size_t next = head + 1;
    while (next < n && factors[order[next]].h >= factors[order[head]].b) ++next;
    if (next == n) throw ContractViolation("no block end found although the product is CM");
    perm.push_back(order[next]);
    for (std::size_t i = head + 1; i < next; ++i) perm.push_back(order[i]);
    head = next;
  }
  std::vector<GradedFactor> prefix;
  for (auto j : perm) {
    prefix.push_back(factors[j]);
    if (!is_cm(prefix)) throw ContractViolation("cm_permutation produced a non-CM prefix");
  }
  return perm;
}

/// A point of a Segre class window: differences (s_2 - s_1, ..., s_n - s_1).
struct SegrePoint {
  std::vector<std::int64_t> differences;
  bool cm = false;
  int depth = 0;
};

inline std::vector<GradedFactor> segre_factors(std::span<const int> dims, std::span<const std::int64_t> shifts) {
  if (dims.size() != shifts.size()) throw InputError("dims and shifts must have the same length");
  std::vector<GradedFactor> fs;
  for (std::size_t i = 0; i < dims.size(); ++i) fs.push_back(GradedFactor::polynomial_shift(dims[i], shifts[i]));
  return fs;
}

/// Every difference vector in [lo, hi]^(n-1), with CM flag and depth,
/// ordered lexicographically by the last coordinate first.
inline std::vector<SegrePoint> segre_window(std::span<const int> dims, std::int64_t lo, std::int64_t hi) {
  if (dims.size() < 2) throw InputError("a Segre region needs at least two factors");
  if (lo > hi) throw InputError("empty window");
  const std::size_t m = dims.size() - 1;
  std::vector<SegrePoint> out;
  std::vector<std::int64_t> diff(m, lo);
  for (;;) {
    std::vector<std::int64_t> shifts{0};
    shifts.insert(shifts.end(), diff.begin(), diff.end());
    const auto fs = segre_factors(dims, shifts);
    out.push_back({diff, is_cm(fs), depth(fs)});
    std::size_t j = 0;
    while (j < m) {
      if (++diff[j] <= hi) break;
      diff[j] = lo;
      ++j;
    }
    if (j == m) break;
  }
  return out;
}

/// The CM classes of the window.
inline std::vector<std::vector<std::int64_t>> cm_region(std::span<const int> dims, std::int64_t lo, std::int64_t hi) {
  std::vector<std::vector<std::int64_t>> out;
  for (auto& p : segre_window(dims, lo, hi))
    if (p.cm) out.push_back(std::move(p.differences));
  return out;
}

/// CM classes m in [lo, hi] of R^(c) # S^(e) for polynomial rings R, S with
/// gcd(c, e) = 1, where the class of sum_k R_{kc+a} (x) S_{ke+b} is a*e - b*c.
inline std::vector<std::int64_t> veronese_segre_cm_set(int dim_r, int dim_s, std::int64_t c, std::int64_t e,
                                                       std::int64_t lo, std::int64_t hi) {
  if (c < 1 || e < 1) throw InputError("Veronese steps must be positive");
  if (std::gcd(c, e) != 1) throw InputError("Veronese steps must be coprime");
  std::vector<std::int64_t> out;
  for (std::int64_t m = lo; m <= hi; ++m) {
    for (std::int64_t a = 0; a < c; ++a) {
      const std::int64_t num = a * e - m;
      if (num % c != 0) continue;
      const std::int64_t b = num / c;
      const GradedFactor fs[] = {GradedFactor::veronese_shift(dim_r, c, a), GradedFactor::veronese_shift(dim_s, e, b)};
      if (is_cm(fs)) out.push_back(m);
      break;
    }
  }
  return out;
}

}  // namespace conicdiv
