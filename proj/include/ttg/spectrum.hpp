#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ttg/abelian.hpp"
#include "ttg/height.hpp"

// Points of the p-local spectrum of compact genuine A-spectra and their
// specialization order. A point is a pair (subgroup, height) with height in
// [1, ..., infinity]; inclusion of the corresponding prime ideals is decided
// by a purely combinatorial criterion on subgroups, p-ranks, and heights.

namespace ttg {

class SpectrumPoint {
 public:
  SpectrumPoint(Subgroup subgroup, Natural prime, Height height)
      : subgroup_(std::move(subgroup)), prime_(prime), height_(height) {
    require_prime(prime_);
    if (height_.is_finite() && height_.finite_value() < 1)
      fail("E_INVALID_HEIGHT", "spectrum points are indexed by heights >= 1");
  }

  const Subgroup& subgroup() const { return subgroup_; }
  Natural prime() const { return prime_; }
  Height height() const { return height_; }

  friend bool operator==(const SpectrumPoint& a, const SpectrumPoint& b) {
    return a.prime_ == b.prime_ && a.height_ == b.height_ && a.subgroup_ == b.subgroup_;
  }
  friend bool operator!=(const SpectrumPoint& a, const SpectrumPoint& b) { return !(a == b); }

 private:
  Subgroup subgroup_;
  Natural prime_;
  Height height_;
};

// Decides whether the prime ideal of src = (A', n) is contained in the prime
// ideal of dst = (A'', m): true iff A' is a subgroup of A'', the quotient
// A''/A' is a p-group, and n >= m + rk_p(A''/A'). Comparisons follow the
// extended-natural convention, so an infinite n meets an infinite bound.
inline bool includes(const SpectrumPoint& src, const SpectrumPoint& dst) {
  if (src.subgroup().ambient() != dst.subgroup().ambient())
    fail("E_AMBIENT_MISMATCH", "points live over different ambient groups");
  if (src.prime() != dst.prime())
    fail("E_PRIME_MISMATCH", "points live at different primes");
  if (!contains(dst.subgroup(), src.subgroup())) return false;
  const FiniteAbelianGroup q = quotient_type(dst.subgroup(), src.subgroup());
  if (!q.is_p_group(src.prime())) return false;
  return src.height() >= dst.height() + q.p_rank(src.prime());
}

// All points q with height in [1..cap] or infinite such that the ideal of q
// is contained in the ideal of pt; this is the topological closure of {pt}
// within the truncated point set.
inline std::vector<SpectrumPoint> closure(const SpectrumPoint& pt, Natural cap) {
  if (cap < 1) fail("E_INVALID_HEIGHT", "height cap must be at least 1");
  std::vector<SpectrumPoint> out;
  for (const Subgroup& s : subgroups(pt.subgroup().ambient())) {
    for (Natural h = 1; h <= cap + 1; ++h) {
      const Height height = h <= cap ? Height(h) : Height::infinity();
      SpectrumPoint q(s, pt.prime(), height);
      if (includes(q, pt)) out.push_back(std::move(q));
    }
  }
  return out;
}

// The blue-shift number of the pair K <= H: equals rk_p(H/K), which is the
// minimal i such that the ideal of (K, n+i) is contained in the ideal of
// (H, n), independently of the finite height n. Requires H/K to be a
// p-group; the ambient group itself need not be one.
inline unsigned blueshift(const Subgroup& H, const Subgroup& K, Natural p) {
  require_prime(p);
  require_same_ambient(H, K);
  if (!contains(H, K))
    fail("E_NOT_SUBGROUP", "blue-shift requires K to be a subgroup of H");
  const FiniteAbelianGroup q = quotient_type(H, K);
  if (!q.is_p_group(p))
    fail("E_NOT_PGROUP_QUOTIENT",
         "blue-shift is undefined: H/K is not a " + std::to_string(p) + "-group");
  return q.p_rank(p);
}

namespace detail {

// Inclusion data for the subgroup lattice of A at p: for every ordered pair
// (i, j) with subs[i] contained in subs[j] and p-group quotient, the p-rank
// of the quotient; -1 marks pairs that carry no inclusion.
struct LatticePairs {
  std::vector<Subgroup> subs;
  std::vector<int> rank;  // row-major [sub * n + sup]

  int pair_rank(std::size_t sub, std::size_t sup) const {
    return rank[sub * subs.size() + sup];
  }
};

inline LatticePairs lattice_pairs(const FiniteAbelianGroup& A, Natural p) {
  LatticePairs out;
  out.subs = subgroups(A);
  const std::size_t n = out.subs.size();
  out.rank.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (out.subs[j].order() % out.subs[i].order() != 0) continue;
      if (!contains(out.subs[j], out.subs[i])) continue;
      const FiniteAbelianGroup q = quotient_type(out.subs[j], out.subs[i]);
      if (!q.is_p_group(p)) continue;
      out.rank[i * n + j] = static_cast<int>(q.p_rank(p));
    }
  }
  return out;
}

}  // namespace detail

// Truncated spectrum as a directed graph on the points with height in
// [1..cap] or infinity; edges are the cover relations of the inclusion
// order, pointing from the included ideal to the including one.
struct HasseDiagram {
  struct Node {
    std::size_t subgroup_index;
    Height height;
  };

  FiniteAbelianGroup group;
  Natural prime = 2;
  Natural cap = 1;
  std::vector<Subgroup> subgroup_list;
  std::vector<Node> nodes;                              // deterministic order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (src, dst) node indices
};

inline HasseDiagram hasse(const FiniteAbelianGroup& A, Natural p, Natural cap) {
  require_prime(p);
  if (cap < 1) fail("E_INVALID_HEIGHT", "height cap must be at least 1");
  HasseDiagram d;
  d.group = A;
  d.prime = p;
  d.cap = cap;

  auto pairs = detail::lattice_pairs(A, p);
  d.subgroup_list = pairs.subs;
  const std::size_t nsubs = d.subgroup_list.size();
  for (std::size_t i = 0; i < nsubs; ++i)
    for (Natural h = 1; h <= cap + 1; ++h)
      d.nodes.push_back({i, h <= cap ? Height(h) : Height::infinity()});

  const std::size_t n = d.nodes.size();
  std::vector<char> inc(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const int r = pairs.pair_rank(d.nodes[a].subgroup_index, d.nodes[b].subgroup_index);
      if (r < 0) continue;
      inc[a * n + b] = d.nodes[a].height >= d.nodes[b].height + static_cast<Natural>(r);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !inc[a * n + b]) continue;
      bool cover = true;
      for (std::size_t s = 0; s < n; ++s) {
        if (s == a || s == b) continue;
        if (inc[a * n + s] && inc[s * n + b]) {
          cover = false;
          break;
        }
      }
      if (cover) d.edges.emplace_back(a, b);
    }
  }
  return d;
}

}  // namespace ttg
