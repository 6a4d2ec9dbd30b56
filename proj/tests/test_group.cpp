#include "oracles.hpp"

#include <ccl/cone.hpp>
#include <ccl/errors.hpp>
#include <ccl/group.hpp>

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>
#include <numbers>

namespace ccl {
namespace {

struct Built {
  RootSystem rs;
  Group g;
};

const Built& built(const std::string& spec) {
  static std::map<std::string, Built> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) {
    BuildOptions o;
    o.enable_h4 = true;
    auto rs = build_root_system(GroupType::parse(spec), o);
    auto g = Group::enumerate(rs);
    it = cache.emplace(spec, Built{std::move(rs), std::move(g)}).first;
  }
  return it->second;
}

int find_matrix(const Group& g, const Matrix& m) {
  for (int w = 0; w < g.order(); ++w) {
    if ((g.element(w).matrix - m).cwiseAbs().maxCoeff() < 1e-9) return w;
  }
  return -1;
}

TEST(Enumerate, SmallOrders) {
  EXPECT_EQ(built("A1").g.order(), 2);
  const auto& a2 = built("A2").g;
  EXPECT_EQ(a2.order(), 6);
  EXPECT_EQ(a2.counts_by_fixed_dim(), (std::vector<long long>{2, 3, 1}));
}

TEST(Enumerate, DihedralCountsMatchExplicitDihedralGroup) {
  // Oracle: I2(m) consists of the m rotations by 2 pi j / m (identity fixes
  // R^2, the others fix only 0) and m line reflections (each fixes a line).
  // Compare the (det, trace) multiset of the enumerated matrices with the
  // explicit list.
  for (int m = 3; m <= 12; ++m) {
    const auto& b = built("I2(" + std::to_string(m) + ")");
    EXPECT_EQ(b.g.counts_by_fixed_dim(), (std::vector<long long>{m - 1, m, 1})) << m;
    std::multiset<std::pair<long long, long long>> expected, got;
    auto key = [](const Matrix& r) {
      return std::make_pair(std::llround(r.determinant()), std::llround(r.trace() * 1e6));
    };
    for (int j = 0; j < m; ++j) {
      expected.insert(key(testing::rotation2(2.0 * std::numbers::pi * j / m)));
      expected.insert(key(testing::line_reflection2(std::numbers::pi * j / m)));
    }
    for (const auto& e : b.g.elements()) got.insert(key(e.matrix));
    EXPECT_EQ(got, expected) << m;
  }
}

TEST(Enumerate, H3CountsFromSolomonExpansion) {
  // (1+t)(1+5t)(1+9t) = 1 + 15t + 59t^2 + 45t^3.
  EXPECT_EQ(built("H3").g.counts_by_fixed_dim(), (std::vector<long long>{45, 59, 15, 1}));
}

TEST(Enumerate, F4CountsFromSolomonExpansion) {
  // (1+t)(1+5t)(1+7t)(1+11t) = 1 + 24t + 190t^2 + 552t^3 + 385t^4.
  EXPECT_EQ(built("F4").g.counts_by_fixed_dim(), (std::vector<long long>{385, 552, 190, 24, 1}));
}

TEST(Enumerate, CapIsEnforced) {
  EnumerateOptions o;
  o.max_elements = 100;
  EXPECT_THROW(Group::enumerate(built("H3").rs, o), GroupTooLarge);
}

TEST(Enumerate, DeterministicOrder) {
  const auto& rs = built("B3").rs;
  const auto g1 = Group::enumerate(rs);
  const auto g2 = Group::enumerate(rs);
  ASSERT_EQ(g1.order(), g2.order());
  for (int i = 0; i < g1.order(); ++i) ASSERT_EQ(g1.element(i).perm, g2.element(i).perm);
  EXPECT_EQ(g1.element(0).word_length, 0);
  for (int i = 1; i < g1.order(); ++i) {
    ASSERT_GE(g1.element(i).word_length, g1.element(i - 1).word_length);
    if (g1.element(i).word_length == g1.element(i - 1).word_length) {
      ASSERT_LT(g1.element(i - 1).perm, g1.element(i).perm);
    }
  }
  for (int s : g1.simple_reflection_ids()) EXPECT_EQ(g1.element(s).word_length, 1);
}

TEST(Enumerate, FromPermutationsReproducesGroup) {
  const auto& b = built("D4");
  std::vector<Permutation> perms;
  std::vector<int> lengths;
  for (const auto& e : b.g.elements()) {
    perms.push_back(e.perm);
    lengths.push_back(e.word_length);
  }
  const Group g = Group::from_permutations(b.rs, perms, lengths);
  EXPECT_EQ(g.counts_by_fixed_dim(), b.g.counts_by_fixed_dim());
  EXPECT_EQ(g.simple_reflection_ids(), b.g.simple_reflection_ids());
}

TEST(FixedSpaceDim, Examples) {
  const auto& b = built("A2");
  EXPECT_EQ(fixed_space_dim(b.g.element(0)), 2);
  for (int s : b.g.simple_reflection_ids()) EXPECT_EQ(fixed_space_dim(b.g.element(s)), 1);
  const int cox = b.g.compose(b.g.simple_reflection_ids()[0], b.g.simple_reflection_ids()[1]);
  EXPECT_EQ(fixed_space_dim(b.g.element(cox)), 0);
  // Oracle: s1 s2 is a rotation by +-120 degrees.
  EXPECT_NEAR(b.g.element(cox).matrix.trace(), 2.0 * std::cos(2.0 * std::numbers::pi / 3), 1e-12);
}

TEST(SolomonCheck, Examples) {
  EXPECT_TRUE(solomon_check(built("A2").g, {1, 2}));
  EXPECT_TRUE(solomon_check(built("B2").g, {1, 3}));
  EXPECT_EQ(built("B2").g.counts_by_fixed_dim(), (std::vector<long long>{3, 4, 1}));
  EXPECT_FALSE(solomon_check(built("A2").g, {1, 3}));
  EXPECT_THROW(solomon_check(built("A2").g, {1, 2, 3}), InvalidArgument);
}

TEST(SolomonPolynomial, ExpandsProducts) {
  EXPECT_EQ(solomon_polynomial({1, 2}), (std::vector<long long>{1, 3, 2}));
  EXPECT_EQ(solomon_polynomial({1, 11, 19, 29}).back(), 1LL * 11 * 19 * 29);
}

TEST(ParabolicSubgroup, Examples) {
  const auto& b = built("A2");
  EXPECT_EQ(parabolic_subgroup(b.rs, b.g, {0, 1}), (ElementSet{0}));
  EXPECT_EQ(parabolic_subgroup(b.rs, b.g, {}).size(), 6u);
  // Oracle: of the six elements, only e and s2 fix w1 (brute force on matrices).
  const auto sub = parabolic_subgroup(b.rs, b.g, {0});
  EXPECT_EQ(sub, (ElementSet{0, b.g.simple_reflection_ids()[1]}));
  int fixing = 0;
  for (const auto& e : b.g.elements()) {
    fixing += (e.matrix * b.rs.fundamental_weights[0] - b.rs.fundamental_weights[0]).norm() < 1e-9;
  }
  EXPECT_EQ(fixing, 2);
}

TEST(RegularCount, Examples) {
  const auto& a2 = built("A2");
  EXPECT_EQ(regular_count(a2.g, {0}, 0), 1);
  EXPECT_EQ(regular_count(a2.g, parabolic_subgroup(a2.rs, a2.g, {0}), 1), 1);
  const auto& h3 = built("H3");
  EXPECT_EQ(regular_count(h3.g, parabolic_subgroup(h3.rs, h3.g, {}), 3), 45);
}

TEST(NormalizerOfSpan, Examples) {
  const auto& a2 = built("A2");
  EXPECT_EQ(normalizer_of_span(a2.g, Subspace::full(2)).size(), 6u);
  EXPECT_EQ(normalizer_of_span(a2.g, face_span(a2.rs, {0})).size(), 2u);
  EXPECT_EQ(find_matrix(a2.g, -Matrix::Identity(2, 2)), -1);

  const auto& b2 = built("B2");
  const auto n = normalizer_of_span(b2.g, face_span(b2.rs, {0}));
  EXPECT_EQ(n.size(), 4u);
  const int minus_one = find_matrix(b2.g, -Matrix::Identity(2, 2));
  ASSERT_GE(minus_one, 0);
  EXPECT_TRUE(std::binary_search(n.begin(), n.end(), minus_one));
}

TEST(SubspaceOrbits, Examples) {
  const auto& a2 = built("A2");
  EXPECT_EQ(subspace_orbits(a2.rs, a2.g, 2).size(), 1u);
  const auto a2k1 = subspace_orbits(a2.rs, a2.g, 1);
  ASSERT_EQ(a2k1.size(), 1u);
  EXPECT_EQ(a2k1[0], (std::vector<IndexSet>{{0}, {1}}));
  const auto& b2 = built("B2");
  const auto b2k1 = subspace_orbits(b2.rs, b2.g, 1);
  ASSERT_EQ(b2k1.size(), 2u);
  EXPECT_EQ(b2k1[0], (std::vector<IndexSet>{{0}}));
  EXPECT_EQ(b2k1[1], (std::vector<IndexSet>{{1}}));
  EXPECT_THROW(subspace_orbits(a2.rs, a2.g, 3), InvalidArgument);
}

TEST(IndexSubsets, Lexicographic) {
  EXPECT_EQ(index_subsets(3, 2), (std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(index_subsets(3, 0), (std::vector<IndexSet>{{}}));
  EXPECT_EQ(complement(4, {1, 3}), (IndexSet{0, 2}));
  EXPECT_EQ(format_index_set({0, 2}), "{1,3}");
}

class EveryGroup : public ::testing::TestWithParam<GroupType> {};

TEST_P(EveryGroup, OrderCountsAndClosure) {
  const auto& b = built(GetParam().name());
  const auto& g = b.g;
  const int n = b.rs.n;
  EXPECT_EQ(g.order(), GetParam().expected_order());
  long long prod = 1;
  for (int m : b.rs.exponents) prod *= m + 1;
  EXPECT_EQ(g.order(), prod);

  const auto& c = g.counts_by_fixed_dim();
  EXPECT_EQ(std::accumulate(c.begin(), c.end(), 0LL), g.order());
  EXPECT_EQ(c[n], 1);
  EXPECT_EQ(c[n - 1], b.rs.positive_root_count());
  EXPECT_TRUE(solomon_check(g, b.rs.exponents));

  auto check_pair = [&](int a, int bb) {
    const int ab = g.compose(a, bb);
    ASSERT_GE(ab, 0);
    ASSERT_LE((g.element(ab).matrix - g.element(a).matrix * g.element(bb).matrix).cwiseAbs().maxCoeff(),
              1e-9);
  };
  if (g.order() <= 200) {
    for (int a = 0; a < g.order(); ++a)
      for (int bb = 0; bb < g.order(); ++bb) check_pair(a, bb);
  } else {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10000; ++t) {
      check_pair(static_cast<int>(rng() % static_cast<std::uint64_t>(g.order())),
                 static_cast<int>(rng() % static_cast<std::uint64_t>(g.order())));
    }
  }
  for (int w = 0; w < g.order(); w += std::max<int>(1, static_cast<int>(g.order() / 500))) {
    ASSERT_EQ(g.compose(w, g.inverse(w)), 0);
    const auto& e = g.element(w);
    for (std::size_t r = 0; r < b.rs.all_roots.size(); ++r) {
      ASSERT_LE((e.matrix * b.rs.all_roots[r] - b.rs.all_roots[e.perm[r]]).lpNorm<Eigen::Infinity>(),
                1e-6);
    }
  }
}

TEST_P(EveryGroup, ChambersThroughAFaceAreTheParabolicTranslates) {
  const auto& b = built(GetParam().name());
  if (b.g.order() > 2000) GTEST_SKIP() << "covered by smaller groups";
  const SimplicialCone c = chamber(b.rs);
  const Vector c_interior = c.interior_point();
  for (int k = 0; k <= b.rs.n; ++k) {
    for (const auto& s : index_subsets(b.rs.n, k)) {
      const Vector x = k == 0 ? Vector(Vector::Zero(b.rs.n)) : face(c, s).interior_point();
      ElementSet containing;
      for (int w = 0; w < b.g.order(); ++w) {
        const Matrix& m = b.g.element(w).matrix;
        if (membership(c, m.transpose() * x) != Membership::Outside) containing.push_back(w);
      }
      ASSERT_EQ(containing, parabolic_subgroup(b.rs, b.g, s)) << format_index_set(s);
    }
  }
  // w -> wC is injective.
  std::set<std::vector<long long>> images;
  for (const auto& e : b.g.elements()) {
    const Vector y = e.matrix * c_interior;
    std::vector<long long> key;
    for (int i = 0; i < y.size(); ++i) key.push_back(std::llround(y(i) * 1e6));
    images.insert(key);
  }
  EXPECT_EQ(static_cast<long long>(images.size()), b.g.order());
}

INSTANTIATE_TEST_SUITE_P(Catalog, EveryGroup, ::testing::ValuesIn(supported_groups(true)),
                         [](const auto& info) {
                           std::string s = info.param.name();
                           std::erase_if(s, [](char c) { return c == '(' || c == ')'; });
                           return s;
                         });

}  // namespace
}  // namespace ccl
