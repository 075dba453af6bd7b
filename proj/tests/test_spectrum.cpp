#include "ttg/spectrum.hpp"

#include <gtest/gtest.h>

#include <set>
#include <utility>
#include <vector>

#include "test_util.hpp"

using namespace ttg;
using testutil::error_code_of;
using testutil::make_group;

namespace {

GroupElement elem(std::initializer_list<Natural> coords) {
  return GroupElement{std::vector<Natural>(coords)};
}

std::vector<Height> height_grid(Natural up_to) {
  std::vector<Height> out;
  for (Natural h = 1; h <= up_to; ++h) out.emplace_back(h);
  out.push_back(Height::infinity());
  return out;
}

}  // namespace

TEST(HeightOrder, InfinityIsTopAndNotAboveItself) {
  const Height two(2), three(3), inf = Height::infinity();
  EXPECT_TRUE(two < three);
  EXPECT_TRUE(two < inf);
  EXPECT_FALSE(inf < inf);
  EXPECT_FALSE(inf > inf);  // the strict comparison at infinity is false
  EXPECT_TRUE(inf <= inf);
  EXPECT_TRUE(inf >= inf);
  EXPECT_TRUE(inf == inf);
  EXPECT_TRUE(three >= two + 1);
  EXPECT_FALSE(three >= two + 2);
}

TEST(HeightArithmetic, SaturatesAtInfinity) {
  const Height inf = Height::infinity();
  EXPECT_EQ(inf + 5, inf);
  EXPECT_EQ(Height(3) + 4, Height(7));
  EXPECT_EQ(inf.minus_clamped(2), inf);
  EXPECT_EQ(Height(3).minus_clamped(1), Height(2));
  EXPECT_EQ(Height(1).minus_clamped(4), Height(0));
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(Height(4).str(), "4");
  EXPECT_EQ(error_code_of([&] { inf.finite_value(); }), "E_INVALID_HEIGHT");
}

TEST(SpectrumPoint, RejectsHeightZeroAndBadPrimes) {
  const auto G = make_group({2});
  const auto triv = trivial_subgroup(G);
  EXPECT_EQ(error_code_of([&] { SpectrumPoint(triv, 2, Height(0)); }), "E_INVALID_HEIGHT");
  EXPECT_EQ(error_code_of([&] { SpectrumPoint(triv, 6, Height(1)); }), "E_NOT_PRIME");
  const SpectrumPoint a(triv, 2, Height(1));
  const SpectrumPoint b(triv, 2, Height::infinity());
  EXPECT_NE(a, b);
  EXPECT_EQ(a, SpectrumPoint(trivial_subgroup(G), 2, Height(1)));
}

TEST(Includes, DecidesTheInclusionCriterion) {
  {
    const auto G = make_group({2});
    const auto triv = trivial_subgroup(G);
    const auto full = full_subgroup(G);
    EXPECT_TRUE(includes({triv, 2, Height(2)}, {full, 2, Height(1)}));
    EXPECT_FALSE(includes({triv, 2, Height(1)}, {full, 2, Height(1)}));
  }
  {
    // No inclusions when the quotient is not a p-group.
    const auto G = make_group({6});
    const auto triv = trivial_subgroup(G);
    const auto z3 = subgroup_from_generators(G, {elem({2})});
    ASSERT_EQ(z3.order(), 3u);
    for (Height n : height_grid(4))
      for (Height m : height_grid(4))
        EXPECT_FALSE(includes({triv, 2, n}, {z3, 2, m}));
  }
  {
    const auto G = make_group({4});
    const auto triv = trivial_subgroup(G);
    const auto full = full_subgroup(G);
    EXPECT_FALSE(includes({triv, 2, Height(2)}, {full, 2, Height(2)}));
    EXPECT_TRUE(includes({triv, 2, Height(3)}, {full, 2, Height(2)}));
  }
  {
    // Reflexivity on a sample of points.
    const auto G = make_group({4, 2});
    for (const auto& s : subgroups(G))
      for (Height h : height_grid(3)) {
        const SpectrumPoint pt(s, 2, h);
        EXPECT_TRUE(includes(pt, pt));
      }
  }
}

TEST(Includes, RejectsMismatchedPoints) {
  const SpectrumPoint a(trivial_subgroup(make_group({2})), 2, Height(1));
  const SpectrumPoint b(trivial_subgroup(make_group({4})), 2, Height(1));
  const SpectrumPoint c(trivial_subgroup(make_group({2})), 3, Height(1));
  EXPECT_EQ(error_code_of([&] { includes(a, b); }), "E_AMBIENT_MISMATCH");
  EXPECT_EQ(error_code_of([&] { includes(a, c); }), "E_PRIME_MISMATCH");
}

TEST(Closure, MatchesHandComputedSets) {
  const auto G = make_group({2});
  const auto triv = trivial_subgroup(G);
  const auto full = full_subgroup(G);
  const Height inf = Height::infinity();

  {
    const auto got = closure({full, 2, Height(1)}, 2);
    const std::vector<SpectrumPoint> expected = {
        {triv, 2, Height(2)}, {triv, 2, inf},    {full, 2, Height(1)},
        {full, 2, Height(2)}, {full, 2, inf}};
    EXPECT_EQ(got, expected);
  }
  {
    const auto got = closure({triv, 2, inf}, 3);
    EXPECT_EQ(got, (std::vector<SpectrumPoint>{{triv, 2, inf}}));
  }
  {
    const auto got = closure({full, 2, inf}, 1);
    EXPECT_EQ(got, (std::vector<SpectrumPoint>{{triv, 2, inf}, {full, 2, inf}}));
  }
  EXPECT_EQ(error_code_of([&] { closure({full, 2, Height(1)}, 0); }), "E_INVALID_HEIGHT");
}

TEST(Blueshift, EqualsQuotientRank) {
  {
    const auto G = make_group({4});
    // rank 1, not log_2(4) = 2
    EXPECT_EQ(blueshift(full_subgroup(G), trivial_subgroup(G), 2), 1u);
  }
  {
    const auto G = make_group({2, 2});
    EXPECT_EQ(blueshift(full_subgroup(G), trivial_subgroup(G), 2), 2u);
    const auto H = subgroup_from_generators(G, {elem({1, 0})});
    EXPECT_EQ(blueshift(H, H, 2), 0u);
  }
}

TEST(Blueshift, RequiresAPGroupQuotient) {
  const auto G = make_group({6});
  EXPECT_EQ(error_code_of([&] { blueshift(full_subgroup(G), trivial_subgroup(G), 2); }),
            "E_NOT_PGROUP_QUOTIENT");
  const auto G2 = make_group({2, 2});
  const auto a = subgroup_from_generators(G2, {elem({1, 0})});
  const auto b = subgroup_from_generators(G2, {elem({0, 1})});
  EXPECT_EQ(error_code_of([&] { blueshift(a, b, 2); }), "E_NOT_SUBGROUP");
}

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

TEST(Hasse, ReproducesTheRank1Picture) {
  const auto d = hasse(make_group({2}), 2, 2);
  ASSERT_EQ(d.subgroup_list.size(), 2u);
  ASSERT_EQ(d.nodes.size(), 6u);

  auto node = [&](std::size_t sub, Height h) {
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
      if (d.nodes[i].subgroup_index == sub && d.nodes[i].height == h) return i;
    ADD_FAILURE() << "node not found";
    return std::size_t{0};
  };
  const Height inf = Height::infinity();
  const EdgeSet expected = {
      {node(0, Height(2)), node(0, Height(1))}, {node(0, Height(2)), node(1, Height(1))},
      {node(0, inf), node(0, Height(2))},       {node(0, inf), node(1, inf)},
      {node(1, Height(2)), node(1, Height(1))}, {node(1, inf), node(1, Height(2))}};
  EXPECT_EQ(EdgeSet(d.edges.begin(), d.edges.end()), expected);
}

TEST(Hasse, TrivialGroupGivesTheChromaticChain) {
  const auto d = hasse(make_group({}), 2, 4);
  ASSERT_EQ(d.nodes.size(), 5u);  // heights 1..4 and infinity
  EdgeSet expected;
  for (std::size_t h = 1; h < 5; ++h) expected.insert({h, h - 1});
  EXPECT_EQ(EdgeSet(d.edges.begin(), d.edges.end()), expected);
}

TEST(Hasse, MixedOrderGroupSplitsAlongPGroupQuotients) {
  const auto d = hasse(make_group({6}), 2, 1);
  // subgroup order: #0 trivial, #1 = Z/2, #2 = Z/3, #3 = Z/6
  ASSERT_EQ(d.subgroup_list.size(), 4u);
  EXPECT_EQ(d.subgroup_list[1].order(), 2u);
  EXPECT_EQ(d.subgroup_list[2].order(), 3u);
  const EdgeSet allowed = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {2, 3}};
  EXPECT_FALSE(d.edges.empty());
  for (const auto& [a, b] : d.edges) {
    const auto key = std::make_pair(d.nodes[a].subgroup_index, d.nodes[b].subgroup_index);
    EXPECT_TRUE(allowed.count(key))
        << "unexpected edge between subgroups " << key.first << " and " << key.second;
  }
}

TEST(Order, HeightDropBoundAtTheBottom) {
  // For a p-group ambient: (trivial, n) lies under (full, m) iff n >= m + rank.
  for (auto factors : std::vector<std::vector<std::int64_t>>{{2}, {4}, {2, 2}, {4, 2}, {8}}) {
    const auto A = FiniteAbelianGroup::canonicalize(factors);
    const unsigned rank = A.p_rank(2);
    const auto triv = trivial_subgroup(A);
    const auto full = full_subgroup(A);
    for (Height n : height_grid(6))
      for (Height m : height_grid(6))
        EXPECT_EQ(includes({triv, 2, n}, {full, 2, m}), n >= m + rank);
    // infinity glues: the bottom infinite point lies under the top one
    EXPECT_TRUE(includes({triv, 2, Height::infinity()}, {full, 2, Height::infinity()}));
  }
}

TEST(Order, QuotientInvariance) {
  // Inclusion between (A', n) and (A'', m) agrees with the inclusion between
  // (trivial, n) and (full, m) computed inside the abstract quotient A''/A'.
  for (auto factors : std::vector<std::vector<std::int64_t>>{{4, 2}, {2, 2, 2}, {12}}) {
    const auto A = FiniteAbelianGroup::canonicalize(factors);
    const auto list = subgroups(A);
    for (const auto& sub : list)
      for (const auto& sup : list) {
        if (!contains(sup, sub)) continue;
        const auto Q = quotient_type(sup, sub);
        const auto qtriv = trivial_subgroup(Q);
        const auto qfull = full_subgroup(Q);
        for (Height n : height_grid(4))
          for (Height m : height_grid(4))
            EXPECT_EQ(includes({sub, 2, n}, {sup, 2, m}),
                      includes({qtriv, 2, n}, {qfull, 2, m}));
      }
  }
}

TEST(Order, AmbientIndependence) {
  // Recomputing inside A'' (transported along an isomorphism onto its
  // abstract type) gives the same answer as computing inside A.
  const auto A = make_group({4, 2});
  const auto list = subgroups(A);
  for (const auto& sup : list) {
    const auto iso = testutil::iso_to_canonical(sup);
    const FiniteAbelianGroup C = sup.iso_type();
    for (const auto& sub : list) {
      if (!contains(sup, sub)) continue;
      std::vector<GroupElement> mapped;
      for (const auto& e : sub.elements()) mapped.push_back(iso.at(e));
      const auto sub_in_C = Subgroup::from_elements(C, mapped);
      for (Height n : height_grid(3))
        for (Height m : height_grid(3))
          EXPECT_EQ(includes({sub, 2, n}, {sup, 2, m}),
                    includes({sub_in_C, 2, n}, {full_subgroup(C), 2, m}));
    }
  }
}
