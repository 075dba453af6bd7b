#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ttg/error.hpp"
#include "ttg/height.hpp"

// Finite abelian group arithmetic: canonical invariant-factor forms, element
// and subgroup computations, quotient structure, p-ranks. Subgroups are kept
// as explicit sorted element sets; the enumeration bound guards the cost.

namespace ttg {

inline bool is_prime(Natural p) {
  if (p < 2) return false;
  for (Natural d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(Natural p) {
  if (!is_prime(p)) fail("E_NOT_PRIME", std::to_string(p) + " is not a prime");
}

// Maximum group order accepted by subgroup enumeration. Overridable through
// the TTG_MAX_ORDER environment variable; defaults to 2048.
inline Natural enumeration_bound() {
  static const Natural bound = [] {
    if (const char* env = std::getenv("TTG_MAX_ORDER")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v >= 1) return static_cast<Natural>(v);
    }
    return static_cast<Natural>(2048);
  }();
  return bound;
}

// Element of a finite abelian group in invariant-factor coordinates:
// coordinate i runs modulo the i-th invariant factor. Ordering is
// lexicographic on the coordinate tuple.
struct GroupElement {
  std::vector<Natural> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
};

namespace detail {

inline std::map<Natural, unsigned> factorize(Natural n) {
  std::map<Natural, unsigned> out;
  for (Natural p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline Natural pow_natural(Natural base, unsigned exp) {
  Natural r = 1;
  while (exp--) r *= base;
  return r;
}

// Merge per-prime exponent multisets into an ascending invariant-factor
// chain d_1 | d_2 | ... | d_k: the largest exponents across primes combine
// into the top factor, the next-largest into the one below, and so on.
inline std::vector<Natural> assemble_invariant_factors(
    std::map<Natural, std::vector<unsigned>> primary) {
  std::size_t slots = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<unsigned>());
    slots = std::max(slots, exps.size());
  }
  std::vector<Natural> factors(slots, 1);
  for (const auto& [p, exps] : primary)
    for (std::size_t i = 0; i < exps.size(); ++i) factors[i] *= pow_natural(p, exps[i]);
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace detail

// Finite abelian group in canonical invariant-factor form: a chain of
// integers d_1 | d_2 | ... | d_k with every d_i >= 2. The trivial group is
// the empty chain and counts as a p-group for every prime.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  // Invariant factors of the direct product of the given cyclic groups.
  // Factors equal to 1 are dropped; entries below 1 are rejected.
  static FiniteAbelianGroup canonicalize(const std::vector<std::int64_t>& factors) {
    std::map<Natural, std::vector<unsigned>> primary;
    for (std::int64_t f : factors) {
      if (f <= 0)
        fail("E_INVALID_INPUT",
             "cyclic factor " + std::to_string(f) + " is not a positive integer");
      for (const auto& [p, e] : detail::factorize(static_cast<Natural>(f)))
        primary[p].push_back(e);
    }
    FiniteAbelianGroup g;
    g.factors_ = detail::assemble_invariant_factors(std::move(primary));
    return g;
  }

  const std::vector<Natural>& invariant_factors() const { return factors_; }
  std::size_t coordinate_count() const { return factors_.size(); }
  bool is_trivial() const { return factors_.empty(); }

  Natural order() const {
    Natural n = 1;
    for (Natural d : factors_) n *= d;
    return n;
  }

  // Number of invariant factors divisible by p.
  unsigned p_rank(Natural p) const {
    require_prime(p);
    unsigned r = 0;
    for (Natural d : factors_)
      if (d % p == 0) ++r;
    return r;
  }

  // True iff the order is a power of p; the trivial group qualifies.
  bool is_p_group(Natural p) const {
    require_prime(p);
    Natural n = order();
    while (n % p == 0) n /= p;
    return n == 1;
  }

  GroupElement zero() const { return GroupElement{std::vector<Natural>(factors_.size(), 0)}; }

  bool is_valid_element(const GroupElement& a) const {
    if (a.coords.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (a.coords[i] >= factors_[i]) return false;
    return true;
  }

  void require_element(const GroupElement& a) const {
    if (!is_valid_element(a))
      fail("E_INVALID_ELEMENT", "element has coordinates out of range for this group");
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
    return r;
  }

  GroupElement negate(const GroupElement& a) const {
    GroupElement r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.coords[i] = a.coords[i] == 0 ? 0 : factors_[i] - a.coords[i];
    return r;
  }

  GroupElement scale(const GroupElement& a, Natural k) const {
    GroupElement r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.coords[i] = (a.coords[i] % factors_[i]) * (k % factors_[i]) % factors_[i];
    return r;
  }

  Natural element_order(const GroupElement& a) const {
    Natural ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Natural ci = factors_[i] / std::gcd(factors_[i], a.coords[i]);
      ord = std::lcm(ord, ci);
    }
    return ord;
  }

  // All elements in lexicographic coordinate order.
  std::vector<GroupElement> all_elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order()));
    GroupElement cur = zero();
    while (true) {
      out.push_back(cur);
      std::size_t i = factors_.size();
      while (i > 0) {
        --i;
        if (++cur.coords[i] < factors_[i]) break;
        cur.coords[i] = 0;
        if (i == 0) return out;
      }
      if (factors_.empty()) return out;
    }
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator!=(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return !(a == b);
  }

 private:
  std::vector<Natural> factors_;
};

namespace detail {

// Isomorphism type of a finite abelian group given by a closed element set
// with ambient arithmetic: for every prime p and level j, count the elements
// of p-power order dividing p^j; the jumps of the log_p counts give the
// number of cyclic p-factors of each exponent.
inline FiniteAbelianGroup iso_type_of_elements(const FiniteAbelianGroup& ambient,
                                               const std::vector<GroupElement>& elems) {
  std::map<Natural, std::vector<unsigned>> primary;
  const Natural size = elems.size();
  for (const auto& [p, e_total] : factorize(size)) {
    std::vector<unsigned> count_ge;  // count_ge[j-1] = number of factors with exponent >= j
    unsigned prev_log = 0;
    for (unsigned j = 1; j <= e_total; ++j) {
      const Natural pj = pow_natural(p, j);
      Natural killed = 0;
      for (const auto& x : elems) {
        Natural ord = ambient.element_order(x);
        if (pj % ord == 0) ++killed;
      }
      unsigned log = 0;
      Natural acc = killed;
      while (acc % p == 0) {
        acc /= p;
        ++log;
      }
      if (acc != 1) fail("E_INTERNAL", "element count of a p-layer is not a p-power");
      count_ge.push_back(log - prev_log);
      prev_log = log;
    }
    std::vector<unsigned> exps;
    for (unsigned idx = 0; idx < count_ge[0]; ++idx) {
      unsigned e = 0;
      for (unsigned j = 0; j < count_ge.size(); ++j)
        if (count_ge[j] > idx) e = j + 1;
      exps.push_back(e);
    }
    primary[p] = std::move(exps);
  }
  FiniteAbelianGroup g;
  std::vector<std::int64_t> raw;
  for (Natural f : assemble_invariant_factors(std::move(primary)))
    raw.push_back(static_cast<std::int64_t>(f));
  return FiniteAbelianGroup::canonicalize(raw);
}

}  // namespace detail

// Subgroup of an ambient finite abelian group, stored as the full sorted
// element set together with the derived abstract isomorphism type.
class Subgroup {
 public:
  static Subgroup from_elements(const FiniteAbelianGroup& ambient,
                                std::vector<GroupElement> elems) {
    for (const auto& e : elems) ambient.require_element(e);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty() || elems.front() != ambient.zero())
      fail("E_INVALID_INPUT", "subgroup element set must contain the identity");
    for (const auto& a : elems)
      for (const auto& b : elems)
        if (!std::binary_search(elems.begin(), elems.end(), ambient.add(a, b)))
          fail("E_INVALID_INPUT", "element set is not closed under addition");
    return from_sorted_closed(ambient, std::move(elems));
  }

  // Internal factory: elements must already be sorted, deduplicated, and
  // closed under the ambient addition.
  static Subgroup from_sorted_closed(const FiniteAbelianGroup& ambient,
                                     std::vector<GroupElement> elems) {
    Subgroup s;
    s.ambient_ = ambient;
    s.iso_type_ = detail::iso_type_of_elements(ambient, elems);
    s.elements_ = std::move(elems);
    return s;
  }

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const FiniteAbelianGroup& iso_type() const { return iso_type_; }
  Natural order() const { return elements_.size(); }

  bool contains_element(const GroupElement& a) const {
    return std::binary_search(elements_.begin(), elements_.end(), a);
  }

  bool is_full() const { return order() == ambient_.order(); }
  bool is_trivial_subgroup() const { return order() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  Subgroup() = default;

  FiniteAbelianGroup ambient_;
  std::vector<GroupElement> elements_;
  FiniteAbelianGroup iso_type_;
};

// Deterministic subgroup order: ascending by order, ties broken by
// lexicographic comparison of the sorted element lists.
inline bool subgroup_order_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

inline void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  if (a.ambient() != b.ambient())
    fail("E_AMBIENT_MISMATCH", "subgroups live in different ambient groups");
}

// True iff K is contained in H (same ambient group required).
inline bool contains(const Subgroup& H, const Subgroup& K) {
  require_same_ambient(H, K);
  return std::includes(H.elements().begin(), H.elements().end(),
                       K.elements().begin(), K.elements().end());
}

inline Subgroup trivial_subgroup(const FiniteAbelianGroup& G) {
  return Subgroup::from_sorted_closed(G, {G.zero()});
}

inline Subgroup full_subgroup(const FiniteAbelianGroup& G) {
  return Subgroup::from_sorted_closed(G, G.all_elements());
}

// Smallest subgroup containing the given generators.
inline Subgroup subgroup_from_generators(const FiniteAbelianGroup& G,
                                         const std::vector<GroupElement>& gens) {
  for (const auto& g : gens) G.require_element(g);
  std::vector<GroupElement> span = {G.zero()};
  for (const auto& g : gens) {
    // span + <g>: the elementwise sum of a subgroup and a cyclic subgroup is
    // already closed, so no fixpoint iteration is needed.
    std::vector<GroupElement> next;
    const Natural ord = G.element_order(g);
    next.reserve(span.size() * ord);
    GroupElement mult = G.zero();
    for (Natural k = 0; k < ord; ++k) {
      for (const auto& s : span) next.push_back(G.add(s, mult));
      mult = G.add(mult, g);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  return Subgroup::from_sorted_closed(G, std::move(span));
}

// Invariant factors of the quotient H/K, computed from coset arithmetic:
// a coset is killed by q exactly when q times a representative lands in K.
inline FiniteAbelianGroup quotient_type(const Subgroup& H, const Subgroup& K) {
  require_same_ambient(H, K);
  if (!contains(H, K))
    fail("E_NOT_SUBGROUP", "quotient requires K to be a subgroup of H");
  const FiniteAbelianGroup& G = H.ambient();
  const Natural quotient_order = H.order() / K.order();
  if (quotient_order == 1) return FiniteAbelianGroup();

  // One representative per coset of K in H.
  std::vector<GroupElement> reps;
  std::set<GroupElement> seen;
  for (const auto& x : H.elements()) {
    if (seen.count(x)) continue;
    reps.push_back(x);
    for (const auto& k : K.elements()) seen.insert(G.add(x, k));
  }

  std::map<Natural, std::vector<unsigned>> primary;
  for (const auto& [p, e_total] : detail::factorize(quotient_order)) {
    std::vector<unsigned> count_ge;
    unsigned prev_log = 0;
    for (unsigned j = 1; j <= e_total; ++j) {
      const Natural pj = detail::pow_natural(p, j);
      Natural killed = 0;
      for (const auto& x : reps)
        if (K.contains_element(G.scale(x, pj))) ++killed;
      unsigned log = 0;
      Natural acc = killed;
      while (acc % p == 0) {
        acc /= p;
        ++log;
      }
      if (acc != 1) fail("E_INTERNAL", "coset count of a p-layer is not a p-power");
      count_ge.push_back(log - prev_log);
      prev_log = log;
    }
    std::vector<unsigned> exps;
    for (unsigned idx = 0; idx < count_ge[0]; ++idx) {
      unsigned e = 0;
      for (unsigned j = 0; j < count_ge.size(); ++j)
        if (count_ge[j] > idx) e = j + 1;
      exps.push_back(e);
    }
    primary[p] = std::move(exps);
  }
  std::vector<std::int64_t> raw;
  for (Natural f : detail::assemble_invariant_factors(std::move(primary)))
    raw.push_back(static_cast<std::int64_t>(f));
  return FiniteAbelianGroup::canonicalize(raw);
}

// True iff G is a p-group (order a power of p; the trivial group counts).
inline bool is_p_group(const FiniteAbelianGroup& G, Natural p) { return G.is_p_group(p); }

inline unsigned p_rank(const FiniteAbelianGroup& G, Natural p) { return G.p_rank(p); }

namespace detail {

inline std::vector<GroupElement> sum_sets(const FiniteAbelianGroup& G,
                                          const std::vector<GroupElement>& a,
                                          const std::vector<GroupElement>& b) {
  std::vector<GroupElement> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(G.add(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Element sets of all subgroups of the p-primary component of G, produced by
// closing the cyclic p-subgroups under pairwise joins (breadth-first with
// deduplication).
inline std::vector<std::vector<GroupElement>> primary_subgroup_sets(
    const FiniteAbelianGroup& G, Natural p) {
  // The p-primary component: in coordinate i it consists of the multiples of
  // d_i / p^{v_p(d_i)}.
  std::vector<GroupElement> component = {G.zero()};
  const auto& factors = G.invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Natural ppart = 1;
    Natural rest = factors[i];
    while (rest % p == 0) {
      rest /= p;
      ppart *= p;
    }
    if (ppart == 1) continue;
    std::vector<GroupElement> axis;
    for (Natural k = 0; k < ppart; ++k) {
      GroupElement e = G.zero();
      e.coords[i] = k * rest;
      axis.push_back(e);
    }
    component = sum_sets(G, component, axis);
  }

  std::set<std::vector<GroupElement>> cyclic;
  std::vector<std::pair<std::vector<GroupElement>, GroupElement>> cyclic_with_gen;
  for (const auto& x : component) {
    std::vector<GroupElement> cyc;
    GroupElement cur = G.zero();
    const Natural ord = G.element_order(x);
    for (Natural k = 0; k < ord; ++k) {
      cyc.push_back(cur);
      cur = G.add(cur, x);
    }
    std::sort(cyc.begin(), cyc.end());
    if (cyclic.insert(cyc).second) cyclic_with_gen.emplace_back(cyc, x);
  }

  std::set<std::vector<GroupElement>> found(cyclic.begin(), cyclic.end());
  std::vector<std::vector<GroupElement>> queue(found.begin(), found.end());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto current = queue[head];
    for (const auto& [cyc, gen] : cyclic_with_gen) {
      if (std::includes(current.begin(), current.end(), cyc.begin(), cyc.end())) continue;
      auto joined = sum_sets(G, current, cyc);
      if (found.insert(joined).second) queue.push_back(std::move(joined));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

// Every subgroup of G exactly once, ascending by order and then by
// lexicographic element lists. The enumeration decomposes G into primary
// components, closes cyclic subgroups under joins within each component, and
// takes products across primes.
inline std::vector<Subgroup> subgroups(const FiniteAbelianGroup& G) {
  const Natural bound = enumeration_bound();
  if (G.order() > bound)
    fail("E_CAPACITY", "group order " + std::to_string(G.order()) +
                           " exceeds the enumeration bound " + std::to_string(bound) +
                           " (override with TTG_MAX_ORDER)");

  std::vector<std::vector<GroupElement>> sets = {{G.zero()}};
  for (const auto& [p, e] : detail::factorize(G.order())) {
    const auto primary = detail::primary_subgroup_sets(G, p);
    std::vector<std::vector<GroupElement>> next;
    next.reserve(sets.size() * primary.size());
    for (const auto& a : sets)
      for (const auto& b : primary) next.push_back(detail::sum_sets(G, a, b));
    sets = std::move(next);
  }

  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::from_sorted_closed(G, std::move(s)));
  std::sort(out.begin(), out.end(), subgroup_order_less);
  return out;
}

// Index of s in the deterministic subgroup list.
inline std::size_t subgroup_index(const std::vector<Subgroup>& list, const Subgroup& s) {
  auto it = std::lower_bound(list.begin(), list.end(), s, subgroup_order_less);
  if (it == list.end() || !(*it == s))
    fail("E_INTERNAL", "subgroup not found in the deterministic list");
  return static_cast<std::size_t>(it - list.begin());
}

}  // namespace ttg
