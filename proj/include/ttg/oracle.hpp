#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ttg/family.hpp"
#include "ttg/typefn.hpp"

// Brute-force verifiers. These deliberately avoid the code paths of the
// operations they check: subgroup counting closes bitmasks over an addition
// table, quotient ranks come from kill counts instead of coset structure,
// and completions are found by enumerating and filtering whole candidate
// spaces. They are allowed to be exponential within their guards.

namespace ttg::oracle {

namespace detail {

// Mixed-radix encoding of group elements, most significant coordinate first,
// so integer order agrees with lexicographic tuple order.
inline std::vector<std::uint64_t> addition_table(const FiniteAbelianGroup& G) {
  const auto elems = G.all_elements();
  const std::size_t n = elems.size();
  std::vector<std::uint64_t> table(n * n);
  auto encode = [&](const GroupElement& e) {
    std::uint64_t code = 0;
    const auto& d = G.invariant_factors();
    for (std::size_t i = 0; i < d.size(); ++i) code = code * d[i] + e.coords[i];
    return code;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = encode(G.add(elems[i], elems[j]));
  return table;
}

inline std::uint64_t close_mask(std::uint64_t mask, std::size_t n,
                                const std::vector<std::uint64_t>& add) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i; j < n; ++j) {
        if (!(mask >> j & 1)) continue;
        const std::uint64_t s = add[i * n + j];
        if (!(mask >> s & 1)) {
          mask |= std::uint64_t{1} << s;
          grew = true;
        }
      }
    }
  }
  return mask;
}

// True iff every element of K also occurs in H, by plain linear scanning.
inline bool subset_of(const Subgroup& K, const Subgroup& H) {
  for (const auto& x : K.elements()) {
    bool found = false;
    for (const auto& y : H.elements())
      if (x == y) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool power_of(Natural n, Natural p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// p-rank of H/K recovered from a kill count: the elements x of H with
// p*x in K form a union of |K| * p^rank cosets.
inline unsigned quotient_rank_by_kill_count(const Subgroup& H, const Subgroup& K, Natural p) {
  const FiniteAbelianGroup& G = H.ambient();
  Natural killed = 0;
  for (const auto& x : H.elements())
    if (K.contains_element(G.scale(x, p))) ++killed;
  Natural ratio = killed / K.order();
  unsigned r = 0;
  while (ratio % p == 0) {
    ratio /= p;
    ++r;
  }
  if (ratio != 1) fail("E_INTERNAL", "kill count is not a p-power multiple of |K|");
  return r;
}

// Inclusion of prime ideals re-derived from scratch for cross-checking.
inline bool criterion(const Subgroup& Hsub, Height n, const Subgroup& Hsup, Height m,
                      Natural p) {
  if (!subset_of(Hsub, Hsup)) return false;
  if (!power_of(Hsup.order() / Hsub.order(), p)) return false;
  const unsigned r = quotient_rank_by_kill_count(Hsup, Hsub, p);
  if (n.is_infinite()) return true;
  if (m.is_infinite()) return false;
  return n.finite_value() >= m.finite_value() + r;
}

}  // namespace detail

inline Natural divisor_count(Natural n) {
  Natural count = 0;
  for (Natural d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    count += d * d == n ? 1 : 2;
  }
  return count;
}

// Gaussian binomial coefficient [n choose k]_p.
inline Natural gaussian_binomial(unsigned n, unsigned k, Natural p) {
  if (k > n) return 0;
  unsigned __int128 result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const Natural num = ttg::detail::pow_natural(p, n - i + 1) - 1;
    const Natural den = ttg::detail::pow_natural(p, i) - 1;
    result = result * num / den;
  }
  return static_cast<Natural>(result);
}

// Number of subgroups of (Z/p)^n: the sum of Gaussian binomials over k.
inline Natural gaussian_subgroup_count(unsigned n, Natural p) {
  Natural total = 0;
  for (unsigned k = 0; k <= n; ++k) total += gaussian_binomial(n, k, p);
  return total;
}

// Counts subgroups of G by closing element bitmasks of cyclic subgroups
// under pairwise joins over an explicit addition table. Guarded at |G| <= 64
// so that a subgroup fits in one machine word.
inline Natural exhaustive_subgroup_count(const FiniteAbelianGroup& G) {
  const Natural order = G.order();
  if (order > 64)
    fail("E_ORACLE_GUARD", "exhaustive subgroup counting requires |G| <= 64, got " +
                               std::to_string(order));
  const std::size_t n = static_cast<std::size_t>(order);
  const auto add = detail::addition_table(G);

  std::vector<std::uint64_t> found;
  auto insert = [&](std::uint64_t mask) {
    for (std::uint64_t m : found)
      if (m == mask) return false;
    found.push_back(mask);
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    insert(detail::close_mask(std::uint64_t{1} | (std::uint64_t{1} << i), n, add));
  for (std::size_t a = 0; a < found.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      insert(detail::close_mask(found[a] | found[b], n, add));
  return found.size();
}

namespace detail {

struct ConstraintSet {
  std::size_t count = 0;
  // constraints[i] lists (j, rank) for every pair with subs[min] <= subs[max]
  // and p-group quotient where both endpoints are at index <= i.
  struct Edge {
    std::size_t sub, sup;
    unsigned rank;
  };
  std::vector<std::vector<Edge>> by_max_index;
};

inline ConstraintSet constraints(const std::vector<Subgroup>& subs, Natural p) {
  ConstraintSet cs;
  cs.count = subs.size();
  cs.by_max_index.resize(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (!subset_of(subs[i], subs[j])) continue;
      if (!power_of(subs[j].order() / subs[i].order(), p)) continue;
      const unsigned r = quotient_rank_by_kill_count(subs[j], subs[i], p);
      cs.by_max_index[std::max(i, j)].push_back({i, j, r});
    }
  return cs;
}

inline bool satisfies(const std::vector<Height>& g, const ConstraintSet::Edge& e) {
  return g[e.sub] <= g[e.sup] + static_cast<Natural>(e.rank);
}

template <typename Visit>
inline void enumerate_admissible(const ConstraintSet& cs, const std::vector<Height>& domain_min,
                                 const std::vector<Height>& domain_max, Natural value_cap,
                                 std::vector<Height>& g, std::size_t pos, Visit&& visit) {
  if (pos == cs.count) {
    visit(g);
    return;
  }
  auto try_value = [&](Height v) {
    if (v < domain_min[pos] || domain_max[pos] < v) return;
    g[pos] = v;
    for (const auto& e : cs.by_max_index[pos])
      if (!satisfies(g, e)) return;
    enumerate_admissible(cs, domain_min, domain_max, value_cap, g, pos + 1, visit);
  };
  for (Natural v = 0; v <= value_cap; ++v) try_value(Height(v));
  try_value(Height::infinity());
}

}  // namespace detail

// Guard shared by the exhaustive completion searches: the raw candidate
// space (value_cap + 2)^{number of subgroups} may not exceed 10^7.
inline void require_completion_guard(std::size_t subgroup_count, Natural value_cap) {
  long double space = 1;
  for (std::size_t i = 0; i < subgroup_count; ++i) space *= static_cast<long double>(value_cap + 2);
  if (space > 1e7L)
    fail("E_ORACLE_GUARD", "candidate space of the exhaustive completion search exceeds 10^7");
}

// Pointwise maximum over all admissible g <= f with values in
// [0..value_cap] or infinity. Equals lower_completion(f) whenever the
// finite values of f are at most value_cap - rk_p(A). The search walks the
// full candidate space, skipping branches whose assigned prefix already
// violates a constraint.
inline TypeFunction exhaustive_lower_completion(const TypeFunction& f, Natural value_cap) {
  const auto subs = subgroups(f.ambient());
  require_completion_guard(subs.size(), value_cap);
  const auto cs = detail::constraints(subs, f.prime());

  std::vector<Height> lo(subs.size(), Height(0));
  std::vector<Height> best(subs.size(), Height(0));  // g == 0 is always admissible
  std::vector<Height> g(subs.size(), Height(0));
  detail::enumerate_admissible(cs, lo, f.values(), value_cap, g, 0,
                               [&](const std::vector<Height>& cand) {
                                 for (std::size_t i = 0; i < best.size(); ++i)
                                   best[i] = max(best[i], cand[i]);
                               });
  return TypeFunction(f.ambient(), f.prime(), std::move(best));
}

// Dual search: pointwise minimum over all admissible h >= f with values in
// [0..value_cap] or infinity. Equals upper_completion(f) whenever the finite
// values of f are at most value_cap.
inline TypeFunction exhaustive_upper_completion(const TypeFunction& f, Natural value_cap) {
  const auto subs = subgroups(f.ambient());
  require_completion_guard(subs.size(), value_cap);
  const auto cs = detail::constraints(subs, f.prime());

  std::vector<Height> hi(subs.size(), Height::infinity());
  std::vector<Height> best(subs.size(), Height::infinity());  // h == inf is admissible
  std::vector<Height> g(subs.size(), Height(0));
  detail::enumerate_admissible(cs, f.values(), hi, value_cap, g, 0,
                               [&](const std::vector<Height>& cand) {
                                 for (std::size_t i = 0; i < best.size(); ++i)
                                   best[i] = min(best[i], cand[i]);
                               });
  return TypeFunction(f.ambient(), f.prime(), std::move(best));
}

// Iterated relaxation until fixpoint; a slower second route to the greatest
// admissible minorant.
inline TypeFunction fixpoint_lower_completion(const TypeFunction& f) {
  const auto subs = subgroups(f.ambient());
  const auto cs = detail::constraints(subs, f.prime());
  std::vector<Height> g = f.values();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& edges : cs.by_max_index)
      for (const auto& e : edges) {
        const Height bound = g[e.sup] + static_cast<Natural>(e.rank);
        if (g[e.sub] > bound) {
          g[e.sub] = bound;
          changed = true;
        }
      }
  }
  return TypeFunction(f.ambient(), f.prime(), std::move(g));
}

inline TypeFunction fixpoint_upper_completion(const TypeFunction& f) {
  const auto subs = subgroups(f.ambient());
  const auto cs = detail::constraints(subs, f.prime());
  std::vector<Height> g = f.values();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& edges : cs.by_max_index)
      for (const auto& e : edges) {
        const Height bound = g[e.sub].minus_clamped(e.rank);
        if (g[e.sup] < bound) {
          g[e.sup] = bound;
          changed = true;
        }
      }
  }
  return TypeFunction(f.ambient(), f.prime(), std::move(g));
}

// Minimal i such that the ideal of (K, n+i) is contained in the ideal of
// (H, n), found by scanning i with a from-scratch evaluation of the
// inclusion criterion.
inline unsigned exhaustive_blueshift(const Subgroup& H, const Subgroup& K, Natural p,
                                     Natural n) {
  require_prime(p);
  require_same_ambient(H, K);
  if (n < 1) fail("E_INVALID_HEIGHT", "blue-shift scan requires a finite height n >= 1");
  if (!detail::subset_of(K, H))
    fail("E_NOT_SUBGROUP", "blue-shift requires K to be a subgroup of H");
  if (!detail::power_of(H.order() / K.order(), p))
    fail("E_NOT_PGROUP_QUOTIENT",
         "blue-shift is undefined: H/K is not a " + std::to_string(p) + "-group");
  Natural index_bound = 0;
  for (Natural q = H.order() / K.order(); q > 1; q /= p) ++index_bound;
  for (unsigned i = 0; i <= index_bound; ++i)
    if (detail::criterion(K, Height(n + i), H, Height(n), p)) return i;
  fail("E_INTERNAL", "no blue-shift index found below log_p(|H/K|)");
}

// One verification outcome, shaped for the JSON report of the CLI.
struct CheckResult {
  std::string check;
  std::string instance;
  bool pass = false;
  std::string detail;  // empty unless the check failed
};

struct Report {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Verifies the partial-order axioms of the inclusion relation over the
// truncated point set of (A, p, cap), cross-checks the implementation
// against an independent evaluation of the criterion, and tests that the
// supports of sampled admissible type functions are closed under
// specialization.
inline Report poset_axioms(const FiniteAbelianGroup& A, Natural p, Natural cap,
                           unsigned sampled_functions = 20, std::uint64_t seed = 0x5eed) {
  require_prime(p);
  if (cap < 1) fail("E_INVALID_HEIGHT", "height cap must be at least 1");
  const auto subs = subgroups(A);
  const std::size_t heights = static_cast<std::size_t>(cap) + 1;
  const std::size_t n = subs.size() * heights;
  if (n > 10000)
    fail("E_ORACLE_GUARD", "truncated point set exceeds 10^4 points");

  auto height_of = [&](std::size_t a) {
    const Natural h = a % heights + 1;
    return h <= cap ? Height(h) : Height::infinity();
  };
  auto sub_of = [&](std::size_t a) -> const Subgroup& { return subs[a / heights]; };

  std::vector<SpectrumPoint> points;
  points.reserve(n);
  for (std::size_t a = 0; a < n; ++a) points.emplace_back(sub_of(a), p, height_of(a));

  std::vector<char> impl(n * n, 0), indep(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      impl[a * n + b] = includes(points[a], points[b]);
      indep[a * n + b] = detail::criterion(sub_of(a), height_of(a), sub_of(b), height_of(b), p);
    }

  Report report;
  const std::string instance = "|A|=" + std::to_string(A.order()) + ", p=" + std::to_string(p) +
                               ", cap=" + std::to_string(cap);
  auto add = [&](const std::string& check, bool pass, const std::string& detail = "") {
    report.checks.push_back({check, instance, pass, pass ? "" : detail});
  };

  bool agree = true;
  for (std::size_t i = 0; i < n * n; ++i) agree = agree && impl[i] == indep[i];
  add("criterion_agreement", agree, "includes disagrees with the independent evaluation");

  bool reflexive = true;
  for (std::size_t a = 0; a < n; ++a) reflexive = reflexive && impl[a * n + a];
  add("reflexivity", reflexive, "some point does not include itself");

  bool antisymmetric = true;
  for (std::size_t a = 0; a < n && antisymmetric; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && impl[a * n + b] && impl[b * n + a]) {
        antisymmetric = false;
        break;
      }
  add("antisymmetry", antisymmetric, "two distinct points include each other");

  bool transitive = true;
  for (std::size_t a = 0; a < n && transitive; ++a)
    for (std::size_t b = 0; b < n && transitive; ++b) {
      if (!impl[a * n + b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (impl[b * n + c] && !impl[a * n + c]) {
          transitive = false;
          break;
        }
    }
  add("transitivity", transitive, "inclusion fails to compose");

  // Supports of admissible functions must be specialization-closed.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Natural> pick(0, cap + 1);
  bool closed = true;
  for (unsigned t = 0; t < sampled_functions && closed; ++t) {
    std::vector<Height> raw(subs.size());
    for (auto& v : raw) {
      const Natural r = pick(rng);
      v = r <= cap ? Height(r) : Height::infinity();
    }
    const TypeFunction f = lower_completion(TypeFunction(A, p, std::move(raw)));
    std::vector<char> in_support(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      in_support[a] = height_of(a) > f.value(a / heights);
    for (std::size_t b = 0; b < n && closed; ++b) {
      if (!in_support[b]) continue;
      for (std::size_t a = 0; a < n; ++a)
        if (impl[a * n + b] && !in_support[a]) {
          closed = false;
          break;
        }
    }
  }
  add("support_closure", closed, "support of an admissible function is not closed");

  return report;
}

}  // namespace ttg::oracle
