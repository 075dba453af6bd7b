#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ttg/abelian.hpp"

// Families of subgroups (sets closed under passage to subgroups), their
// p-coranks, the Tate height-drop formula, and the acyclicity threshold for
// geometric fixed points of finitely localized spheres.

namespace ttg {

class Family {
 public:
  // Smallest family containing the seed subgroups.
  static Family closure_of(const FiniteAbelianGroup& ambient,
                           const std::vector<Subgroup>& seed) {
    for (const auto& s : seed)
      if (s.ambient() != ambient)
        fail("E_AMBIENT_MISMATCH", "family seed subgroup lives in a different ambient group");
    auto all = subgroups(ambient);
    std::vector<Subgroup> members;
    for (const auto& cand : all) {
      for (const auto& s : seed) {
        if (contains(s, cand)) {
          members.push_back(cand);
          break;
        }
      }
    }
    return Family(ambient, std::move(members), all.size());
  }

  static Family empty(const FiniteAbelianGroup& ambient) {
    return Family(ambient, {}, subgroups(ambient).size());
  }

  // The family [<= H] of all subgroups of H.
  static Family below(const Subgroup& H) { return closure_of(H.ambient(), {H}); }

  // The family of all proper subgroups.
  static Family proper_subgroups(const FiniteAbelianGroup& ambient) {
    auto all = subgroups(ambient);
    const std::size_t total = all.size();
    std::vector<Subgroup> members;
    for (auto& s : all)
      if (!s.is_full()) members.push_back(std::move(s));
    return Family(ambient, std::move(members), total);
  }

  // The family of subgroups of p-rank at most m.
  static Family rank_at_most(const FiniteAbelianGroup& ambient, Natural p, unsigned m) {
    require_prime(p);
    auto all = subgroups(ambient);
    const std::size_t total = all.size();
    std::vector<Subgroup> members;
    for (auto& s : all)
      if (s.iso_type().p_rank(p) <= m) members.push_back(std::move(s));
    return Family(ambient, std::move(members), total);
  }

  // Builds a family from an explicit member list, which must already be
  // closed under passage to subgroups.
  static Family from_members(const FiniteAbelianGroup& ambient,
                             std::vector<Subgroup> members) {
    std::sort(members.begin(), members.end(), subgroup_order_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Family f = closure_of(ambient, members);
    if (f.members().size() != members.size())
      fail("E_INVALID_INPUT", "member set is not closed under passage to subgroups");
    return f;
  }

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  const std::vector<Subgroup>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool is_empty() const { return members_.empty(); }

  // True iff some subgroup of the ambient group is missing.
  bool is_proper() const { return members_.size() < total_subgroups_; }

  bool contains_subgroup(const Subgroup& s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s, subgroup_order_less);
    return it != members_.end() && *it == s;
  }

  // The antichain of inclusion-maximal members; the family is the union of
  // the cones [<= H] over these.
  const std::vector<Subgroup>& maximal_members() const { return maximal_; }

  friend bool operator==(const Family& a, const Family& b) {
    return a.ambient_ == b.ambient_ && a.members_ == b.members_;
  }
  friend bool operator!=(const Family& a, const Family& b) { return !(a == b); }

 private:
  Family(FiniteAbelianGroup ambient, std::vector<Subgroup> members, std::size_t total)
      : ambient_(std::move(ambient)), members_(std::move(members)), total_subgroups_(total) {
    std::sort(members_.begin(), members_.end(), subgroup_order_less);
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (const auto& m : members_) {
      bool maximal = true;
      for (const auto& other : members_) {
        if (other.order() > m.order() && contains(other, m)) {
          maximal = false;
          break;
        }
      }
      if (maximal) maximal_.push_back(m);
    }
  }

  FiniteAbelianGroup ambient_;
  std::vector<Subgroup> members_;
  std::vector<Subgroup> maximal_;
  std::size_t total_subgroups_ = 0;
};

// The p-corank of a proper family: the minimal p-rank of a subgroup outside
// the family. Undefined for the full family.
inline unsigned cork(const Family& F, Natural p) {
  require_prime(p);
  if (!F.is_proper())
    fail("E_NOT_PROPER_FAMILY", "the p-corank is only defined for proper families");
  std::optional<unsigned> best;
  for (const auto& s : subgroups(F.ambient())) {
    if (F.contains_subgroup(s)) continue;
    const unsigned r = s.iso_type().p_rank(p);
    if (!best || r < *best) best = r;
  }
  return *best;
}

// Result of the family-wise Tate construction on a height-n theory: either
// the whole spectrum vanishes or its chromatic height drops by the p-corank.
// Vanishing is a distinct outcome from height 0.
struct TateHeight {
  std::optional<Natural> height;  // empty means the spectrum vanishes

  bool vanishes() const { return !height.has_value(); }

  static TateHeight vanished() { return TateHeight{std::nullopt}; }
  static TateHeight of(Natural h) { return TateHeight{h}; }

  friend bool operator==(const TateHeight& a, const TateHeight& b) {
    return a.height == b.height;
  }
  friend bool operator!=(const TateHeight& a, const TateHeight& b) { return !(a == b); }
};

// Height of the F-geometric fixed points of a Borel-completed height-n
// theory over an abelian p-group: vanishes iff cork_p(F) >= n + 1, and
// otherwise drops to n - cork_p(F).
inline TateHeight tate_height(const Family& F, Natural n, Natural p) {
  require_prime(p);
  if (n < 1) fail("E_INVALID_HEIGHT", "the theory height n must be at least 1");
  if (!F.ambient().is_p_group(p))
    fail("E_NOT_PGROUP", "the height-drop formula requires an ambient abelian " +
                             std::to_string(p) + "-group");
  const unsigned c = cork(F, p);
  if (c >= n + 1) return TateHeight::vanished();
  return TateHeight::of(n - c);
}

// Acyclicity threshold for the A-geometric fixed points of the finite
// localization of the sphere away from height n: the acyclics are exactly
// the finite p-local spectra of type >= max(n - rk_p(A), 0), with threshold
// 0 meaning everything.
inline Natural kuhn_threshold(const FiniteAbelianGroup& A, Natural p, Natural n) {
  require_prime(p);
  if (n < 1) fail("E_INVALID_HEIGHT", "the localization height n must be at least 1");
  if (!A.is_p_group(p))
    fail("E_NOT_PGROUP",
         "the threshold formula requires an abelian " + std::to_string(p) + "-group");
  const unsigned r = A.p_rank(p);
  return n > r ? n - r : 0;
}

}  // namespace ttg
