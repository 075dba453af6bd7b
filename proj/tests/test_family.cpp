#include "ttg/family.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "test_util.hpp"

using namespace ttg;
using testutil::error_code_of;
using testutil::make_group;

namespace {

GroupElement elem(std::initializer_list<Natural> coords) {
  return GroupElement{std::vector<Natural>(coords)};
}

// All downward-closed subsets of the subgroup lattice, as bitmasks over the
// deterministic subgroup list. Ascending order indices form a linear
// extension, so a subgroup may join only once all its subgroups are in.
std::vector<std::uint32_t> all_downset_masks(const std::vector<Subgroup>& list) {
  std::vector<std::vector<std::size_t>> lower(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (contains(list[i], list[j])) lower[i].push_back(j);

  std::vector<std::uint32_t> out;
  auto walk = [&](auto&& self, std::uint32_t mask, std::size_t pos) -> void {
    if (pos == list.size()) {
      out.push_back(mask);
      return;
    }
    self(self, mask, pos + 1);  // exclude
    for (std::size_t j : lower[pos])
      if (!(mask >> j & 1)) return;
    self(self, mask | (std::uint32_t{1} << pos), pos + 1);  // include
  };
  walk(walk, 0, 0);
  return out;
}

Family family_from_mask(const FiniteAbelianGroup& G, const std::vector<Subgroup>& list,
                        std::uint32_t mask) {
  std::vector<Subgroup> members;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (mask >> i & 1) members.push_back(list[i]);
  return Family::from_members(G, std::move(members));
}

}  // namespace

TEST(FamilyClosure, BuildsTheConeBelowASubgroup) {
  const auto G = make_group({4, 2});
  const auto list = subgroups(G);
  for (const auto& H : list) {
    const auto F = Family::below(H);
    for (const auto& s : list)
      EXPECT_EQ(F.contains_subgroup(s), contains(H, s));
    ASSERT_EQ(F.maximal_members().size(), 1u);
    EXPECT_EQ(F.maximal_members()[0], H);
  }
}

TEST(FamilyClosure, EmptySeedGivesTheEmptyFamily) {
  const auto G = make_group({2, 2});
  const auto F = Family::closure_of(G, {});
  EXPECT_TRUE(F.is_empty());
  EXPECT_TRUE(F.is_proper());
}

TEST(FamilyClosure, TwoLinesInTheKleinGroup) {
  const auto G = make_group({2, 2});
  const auto a = subgroup_from_generators(G, {elem({1, 0})});
  const auto b = subgroup_from_generators(G, {elem({0, 1})});
  const auto F = Family::closure_of(G, {a, b});
  EXPECT_EQ(F.size(), 3u);  // trivial plus the two lines
  EXPECT_TRUE(F.contains_subgroup(trivial_subgroup(G)));
  EXPECT_TRUE(F.contains_subgroup(a));
  EXPECT_TRUE(F.contains_subgroup(b));
  EXPECT_EQ(F.maximal_members().size(), 2u);
}

TEST(FamilyClosure, RejectsForeignSubgroups) {
  const auto G = make_group({2, 2});
  const auto H = trivial_subgroup(make_group({4}));
  EXPECT_EQ(error_code_of([&] { Family::closure_of(G, {H}); }), "E_AMBIENT_MISMATCH");
}

TEST(Family, InvariantsHold) {
  const auto G = make_group({4, 2});
  const auto list = subgroups(G);
  for (std::uint32_t mask : all_downset_masks(list)) {
    const auto F = family_from_mask(G, list, mask);
    // closed downward
    for (const auto& m : F.members())
      for (const auto& s : list)
        if (contains(m, s)) EXPECT_TRUE(F.contains_subgroup(s));
    // nonempty families contain the trivial subgroup
    if (!F.is_empty()) EXPECT_TRUE(F.contains_subgroup(trivial_subgroup(G)));
    // reconstruction from the maximal antichain
    EXPECT_EQ(Family::closure_of(G, F.maximal_members()), F);
  }
}

TEST(Family, FromMembersValidatesClosure) {
  const auto G = make_group({4});
  const auto list = subgroups(G);  // trivial < Z/2 < Z/4
  EXPECT_EQ(error_code_of([&] { Family::from_members(G, {list[1]}); }), "E_INVALID_INPUT");
  EXPECT_EQ(Family::from_members(G, {list[0], list[1]}).size(), 2u);
}

TEST(Cork, MinimalRankOutsideTheFamily) {
  const auto G = make_group({2, 2});
  EXPECT_EQ(cork(Family::proper_subgroups(G), 2), 2u);
  EXPECT_EQ(cork(Family::rank_at_most(G, 2, 1), 2), 2u);
  EXPECT_EQ(cork(Family::below(trivial_subgroup(G)), 2), 1u);
  EXPECT_EQ(cork(Family::empty(G), 2), 0u);  // the trivial subgroup is missing
}

TEST(Cork, UndefinedForTheFullFamily) {
  const auto G = make_group({2, 2});
  const auto full = Family::closure_of(G, {full_subgroup(G)});
  EXPECT_FALSE(full.is_proper());
  EXPECT_EQ(error_code_of([&] { cork(full, 2); }), "E_NOT_PROPER_FAMILY");
}

TEST(Cork, AgreesWithBruteForceOnCones) {
  for (auto factors : std::vector<std::vector<std::int64_t>>{{2, 2}, {4, 2}, {8}, {2, 2, 2}}) {
    const auto G = FiniteAbelianGroup::canonicalize(factors);
    const auto list = subgroups(G);
    for (const auto& H : list) {
      if (H.is_full()) continue;
      unsigned expected = ~0u;
      for (const auto& s : list)
        if (!contains(H, s)) expected = std::min(expected, s.iso_type().p_rank(2));
      EXPECT_EQ(cork(Family::below(H), 2), expected);
    }
  }
}

TEST(Cork, MonotoneUnderFamilyInclusion) {
  for (auto factors : std::vector<std::vector<std::int64_t>>{{2, 2}, {4, 2}}) {
    const auto G = FiniteAbelianGroup::canonicalize(factors);
    const auto list = subgroups(G);
    const auto masks = all_downset_masks(list);
    std::vector<Family> families;
    std::vector<unsigned> corks;
    for (std::uint32_t m : masks) {
      const auto F = family_from_mask(G, list, m);
      if (!F.is_proper()) continue;
      families.push_back(F);
      corks.push_back(cork(F, 2));
    }
    for (std::size_t i = 0; i < families.size(); ++i)
      for (std::size_t j = 0; j < families.size(); ++j) {
        bool contained = true;
        for (const auto& m : families[i].members())
          if (!families[j].contains_subgroup(m)) {
            contained = false;
            break;
          }
        if (contained) EXPECT_LE(corks[i], corks[j]);
      }
  }
}

TEST(TateHeight, DropsByTheCorank) {
  const auto G = make_group({2, 2});
  EXPECT_EQ(tate_height(Family::proper_subgroups(G), 3, 2), TateHeight::of(1));
  EXPECT_TRUE(tate_height(Family::rank_at_most(G, 2, 1), 1, 2).vanishes());

  // the classical Tate construction drops exactly one height
  const auto C2 = make_group({2});
  const auto tate_family = Family::below(trivial_subgroup(C2));
  for (Natural n = 2; n <= 5; ++n)
    EXPECT_EQ(tate_height(tate_family, n, 2), TateHeight::of(n - 1));
  EXPECT_TRUE(tate_height(tate_family, 1, 2).vanishes());
}

TEST(TateHeight, ProperFamiliesRealizeEveryDrop) {
  for (auto factors : std::vector<std::vector<std::int64_t>>{{2, 2}, {4, 2}, {2, 2, 2}}) {
    const auto A = FiniteAbelianGroup::canonicalize(factors);
    const unsigned rank = A.p_rank(2);
    for (Natural n = rank + 1; n <= rank + 3; ++n)
      EXPECT_EQ(tate_height(Family::proper_subgroups(A), n, 2), TateHeight::of(n - rank));
    for (unsigned m = 0; m < rank; ++m) {
      const auto F = Family::rank_at_most(A, 2, m);
      EXPECT_EQ(cork(F, 2), m + 1);
      for (Natural n = m + 2; n <= m + 4; ++n)
        EXPECT_EQ(tate_height(F, n, 2), TateHeight::of(n - (m + 1)));
    }
  }
}

TEST(TateHeight, EnforcesPreconditions) {
  const auto G6 = make_group({6});
  EXPECT_EQ(error_code_of([&] { tate_height(Family::proper_subgroups(G6), 2, 2); }),
            "E_NOT_PGROUP");
  const auto G = make_group({2, 2});
  const auto full = Family::closure_of(G, {full_subgroup(G)});
  EXPECT_EQ(error_code_of([&] { tate_height(full, 2, 2); }), "E_NOT_PROPER_FAMILY");
  EXPECT_EQ(error_code_of([&] { tate_height(Family::proper_subgroups(G), 0, 2); }),
            "E_INVALID_HEIGHT");
}

TEST(KuhnThreshold, MatchesTheRankFormula) {
  EXPECT_EQ(kuhn_threshold(make_group({2}), 2, 1), 0u);
  EXPECT_EQ(kuhn_threshold(make_group({2, 2, 2}), 2, 2), 0u);
  EXPECT_EQ(kuhn_threshold(make_group({4, 2}), 2, 5), 3u);  // rank 2, not log_2(8) = 3
  EXPECT_EQ(error_code_of([] { kuhn_threshold(make_group({6}), 2, 1); }), "E_NOT_PGROUP");
}

TEST(KuhnThreshold, AgreesWithTheCorankOfProperSubgroups) {
  for (auto factors : std::vector<std::vector<std::int64_t>>{{2}, {4}, {2, 2}, {4, 2}, {8}}) {
    const auto A = FiniteAbelianGroup::canonicalize(factors);
    const unsigned c = cork(Family::proper_subgroups(A), 2);
    EXPECT_EQ(c, A.p_rank(2));
    for (Natural n = 1; n <= 6; ++n)
      EXPECT_EQ(kuhn_threshold(A, 2, n), n > c ? n - c : 0);
  }
}
