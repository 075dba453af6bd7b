#pragma once

#include <utility>
#include <vector>

#include "ttg/spectrum.hpp"

// Type functions assign an extended natural to every subgroup of a fixed
// ambient group. A function is admissible when f(A') <= f(A'') + rk_p(A''/A')
// for every inclusion A' <= A'' with p-group quotient; the admissible
// functions are exactly the realizable ones, and their supports are the
// Thomason subsets classifying thick tensor-ideals.

namespace ttg {

class TypeFunction {
 public:
  // values[i] belongs to the i-th subgroup in the deterministic order.
  TypeFunction(FiniteAbelianGroup ambient, Natural prime, std::vector<Height> values)
      : ambient_(std::move(ambient)), prime_(prime), values_(std::move(values)) {
    require_prime(prime_);
    const std::size_t n = subgroups(ambient_).size();
    if (values_.size() != n)
      fail("E_INVALID_TYPEFN", "type function must assign exactly one value to each of the " +
                                   std::to_string(n) + " subgroups");
  }

  static TypeFunction constant(const FiniteAbelianGroup& ambient, Natural prime, Height v) {
    return TypeFunction(ambient, prime,
                        std::vector<Height>(subgroups(ambient).size(), v));
  }

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  Natural prime() const { return prime_; }
  const std::vector<Height>& values() const { return values_; }
  Height value(std::size_t subgroup_index) const { return values_.at(subgroup_index); }

  TypeFunction with_value(std::size_t subgroup_index, Height v) const {
    TypeFunction copy = *this;
    copy.values_.at(subgroup_index) = v;
    return copy;
  }

  friend bool operator==(const TypeFunction& a, const TypeFunction& b) {
    return a.ambient_ == b.ambient_ && a.prime_ == b.prime_ && a.values_ == b.values_;
  }
  friend bool operator!=(const TypeFunction& a, const TypeFunction& b) { return !(a == b); }

 private:
  FiniteAbelianGroup ambient_;
  Natural prime_;
  std::vector<Height> values_;
};

inline void require_same_space(const TypeFunction& f, const TypeFunction& g) {
  if (f.ambient() != g.ambient())
    fail("E_AMBIENT_MISMATCH", "type functions live over different ambient groups");
  if (f.prime() != g.prime())
    fail("E_PRIME_MISMATCH", "type functions live at different primes");
}

// Realizability criterion: f is admissible iff every inclusion with p-group
// quotient satisfies f(sub) <= f(sup) + rk_p(sup/sub).
inline bool is_admissible(const TypeFunction& f) {
  const auto pairs = detail::lattice_pairs(f.ambient(), f.prime());
  const std::size_t n = pairs.subs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int r = pairs.pair_rank(i, j);
      if (r < 0) continue;
      if (!(f.value(i) <= f.value(j) + static_cast<Natural>(r))) return false;
    }
  return true;
}

// Greatest admissible function <= f: relax each value to the minimum of
// f(sup) + rk over all supergroups with p-group quotient. A single pass
// suffices because quotient ranks satisfy the triangle inequality
// rk(C/A) <= rk(B/A) + rk(C/B) along chains A <= B <= C.
inline TypeFunction lower_completion(const TypeFunction& f) {
  const auto pairs = detail::lattice_pairs(f.ambient(), f.prime());
  const std::size_t n = pairs.subs.size();
  std::vector<Height> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Height best = f.value(i);  // the identity pair contributes f(i) + 0
    for (std::size_t j = 0; j < n; ++j) {
      const int r = pairs.pair_rank(i, j);
      if (r < 0) continue;
      best = min(best, f.value(j) + static_cast<Natural>(r));
    }
    out[i] = best;
  }
  return TypeFunction(f.ambient(), f.prime(), std::move(out));
}

// Least admissible function >= f: raise each value to the maximum of
// f(sub) - rk (clamped at 0, with infinity staying infinite) over all
// subgroups with p-group quotient.
inline TypeFunction upper_completion(const TypeFunction& f) {
  const auto pairs = detail::lattice_pairs(f.ambient(), f.prime());
  const std::size_t n = pairs.subs.size();
  std::vector<Height> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Height best = f.value(j);
    for (std::size_t i = 0; i < n; ++i) {
      const int r = pairs.pair_rank(i, j);
      if (r < 0) continue;
      best = max(best, f.value(i).minus_clamped(static_cast<Natural>(r)));
    }
    out[j] = best;
  }
  return TypeFunction(f.ambient(), f.prime(), std::move(out));
}

// The support of f: all points (A', n) with n in [1..cap] or infinite such
// that n > f(A') strictly (infinity is not greater than infinity).
inline std::vector<SpectrumPoint> support(const TypeFunction& f, Natural cap) {
  if (cap < 1) fail("E_INVALID_HEIGHT", "height cap must be at least 1");
  std::vector<SpectrumPoint> out;
  const auto subs = subgroups(f.ambient());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (Natural h = 1; h <= cap + 1; ++h) {
      const Height height = h <= cap ? Height(h) : Height::infinity();
      if (height > f.value(i)) out.emplace_back(subs[i], f.prime(), height);
    }
  }
  return out;
}

// Thick tensor-ideal membership through supports: X lies in the ideal
// generated by Y iff supp(X) is contained in supp(Y), which happens exactly
// when fY <= fX pointwise.
inline bool in_ideal_generated_by(const TypeFunction& fX, const TypeFunction& fY) {
  require_same_space(fX, fY);
  for (std::size_t i = 0; i < fX.values().size(); ++i)
    if (!(fY.value(i) <= fX.value(i))) return false;
  return true;
}

namespace detail {

inline void require_admissible(const TypeFunction& f, const char* op) {
  if (!is_admissible(f))
    fail("E_INADMISSIBLE", std::string(op) + " requires admissible type functions");
}

}  // namespace detail

// Ideal generated by the union of the two supports: the pointwise minimum.
inline TypeFunction ideal_join(const TypeFunction& f, const TypeFunction& g) {
  require_same_space(f, g);
  detail::require_admissible(f, "ideal_join");
  detail::require_admissible(g, "ideal_join");
  std::vector<Height> out(f.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = min(f.value(i), g.value(i));
  return TypeFunction(f.ambient(), f.prime(), std::move(out));
}

// Intersection of the two ideals: the pointwise maximum.
inline TypeFunction ideal_meet(const TypeFunction& f, const TypeFunction& g) {
  require_same_space(f, g);
  detail::require_admissible(f, "ideal_meet");
  detail::require_admissible(g, "ideal_meet");
  std::vector<Height> out(f.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = max(f.value(i), g.value(i));
  return TypeFunction(f.ambient(), f.prime(), std::move(out));
}

}  // namespace ttg
