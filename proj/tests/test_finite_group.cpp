#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace ggc;
using namespace ggc::test;

namespace {

void expect_group_axioms(const FiniteGroup &g) {
    const int n = g.order();
    for (int a = 0; a < n; ++a) {
        EXPECT_EQ(g.mul(0, a), a);
        EXPECT_EQ(g.mul(a, 0), a);
        EXPECT_EQ(g.mul(a, g.inv(a)), 0);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << g.name();
    }
}

} // namespace

TEST(FiniteGroup, StandardFamilies) {
    EXPECT_EQ(FiniteGroup::trivial().order(), 1);
    EXPECT_EQ(FiniteGroup::cyclic(6).order(), 6);
    EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8);
    EXPECT_FALSE(FiniteGroup::dihedral(4).is_abelian());
    EXPECT_EQ(FiniteGroup::quaternion().order(), 8);
    EXPECT_EQ(FiniteGroup::elementary_abelian(2, 3).order(), 8);
    EXPECT_TRUE(FiniteGroup::elementary_abelian(3, 2).is_abelian());
    for (const auto &g : gen::small_groups())
        expect_group_axioms(g);
}

TEST(FiniteGroup, SmallGroupsAreThirteen) { EXPECT_EQ(gen::small_groups().size(), 13u); }

TEST(FiniteGroup, TableValidation) {
    EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), InvalidInput);
    EXPECT_THROW(FiniteGroup::from_table({{1, 0}, {0, 1}}), InvalidInput);
    EXPECT_THROW(FiniteGroup::from_table({}), InvalidInput);
    // non-associative loop of order 5 with identity 0
    const std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    EXPECT_THROW(FiniteGroup::from_table(loop), InvalidInput);
    EXPECT_EQ(FiniteGroup::from_table({{0, 1}, {1, 0}}), FiniteGroup::cyclic(2));
}

TEST(FiniteGroup, HomomorphismCounts) {
    const auto z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4);
    // |Hom(Z/m, Z/n)| = gcd(m, n)
    EXPECT_EQ(all_homomorphisms(z4, z2).size(), 2u);
    EXPECT_EQ(all_homomorphisms(z2, z4).size(), 2u);
    EXPECT_EQ(all_homomorphisms(z3, z2).size(), 1u);
    EXPECT_EQ(all_homomorphisms(FiniteGroup::cyclic(6), FiniteGroup::cyclic(4)).size(), 2u);
    EXPECT_EQ(automorphisms(FiniteGroup::cyclic(5)).size(), 4u);
    EXPECT_EQ(automorphisms(FiniteGroup::elementary_abelian(2, 2)).size(), 6u);
    EXPECT_EQ(automorphisms(FiniteGroup::dihedral(4)).size(), 8u);
    EXPECT_EQ(automorphisms(FiniteGroup::quaternion()).size(), 24u);
    EXPECT_EQ(automorphisms(FiniteGroup::dihedral(3)).size(), 6u);
}

TEST(FiniteGroup, NormalSubgroups) {
    EXPECT_EQ(normal_subgroups(FiniteGroup::dihedral(4)).size(), 6u);
    EXPECT_EQ(normal_subgroups(FiniteGroup::quaternion()).size(), 6u);
    EXPECT_EQ(normal_subgroups(FiniteGroup::dihedral(3)).size(), 3u);
    EXPECT_EQ(normal_subgroups(FiniteGroup::cyclic(6)).size(), 4u);
}

TEST(FiniteGroup, QuotientOfCyclic) {
    const auto z4 = FiniteGroup::cyclic(4);
    const auto [q, proj] = quotient(z4, {0, 2});
    EXPECT_EQ(q.order(), 2);
    EXPECT_TRUE(is_surjective(proj, q));
    EXPECT_EQ(kernel_set(proj), (std::vector<Element>{0, 2}));
    EXPECT_THROW(quotient(FiniteGroup::dihedral(3), {0, 3}), PreconditionFailed);
}

TEST(FiniteGroup, SubgroupInclusion) {
    const auto d4 = FiniteGroup::dihedral(4);
    // rotation by a half turn generates the centre
    const auto center = d4.closure({4});
    EXPECT_EQ(center, (std::vector<Element>{0, 4}));
    EXPECT_TRUE(is_normal_subgroup(d4, center));
    const auto [h, inc] = subgroup(d4, center);
    EXPECT_EQ(h.order(), static_cast<int>(center.size()));
    EXPECT_TRUE(is_injective(inc));
    EXPECT_TRUE(is_homomorphism(inc, h, d4));
}

class FiniteGroupProperty : public ::testing::TestWithParam<int> {
  protected:
    Rng rng{static_cast<std::uint64_t>(GetParam()) + 2000};
};

TEST_P(FiniteGroupProperty, RandomHomsAreHomomorphisms) {
    const auto a = gen::random_group(rng, 8);
    const auto b = gen::random_group(rng, 8);
    const auto f = gen::random_hom(rng, a, b);
    EXPECT_TRUE(is_homomorphism(f, a, b));
    // first isomorphism theorem on orders
    EXPECT_EQ(static_cast<std::size_t>(a.order()), kernel_set(f).size() * image_set(f, b).size());
}

TEST_P(FiniteGroupProperty, QuotientOrderDividesByKernel) {
    const auto g = gen::random_group(rng, 8);
    const auto ns = normal_subgroups(g);
    const auto &n = rng.pick(ns);
    EXPECT_TRUE(is_normal_subgroup(g, n));
    const auto [q, proj] = quotient(g, n);
    EXPECT_EQ(q.order() * static_cast<int>(n.size()), g.order());
    EXPECT_TRUE(is_homomorphism(proj, g, q));
    EXPECT_EQ(kernel_set(proj), n);
}

TEST_P(FiniteGroupProperty, AutomorphismsFormAGroup) {
    const auto g = gen::random_group(rng, 8);
    const auto auts = automorphisms(g);
    std::set<std::vector<Element>> images;
    for (const auto &a : auts)
        images.insert(a.images);
    EXPECT_EQ(images.size(), auts.size());
    const auto &x = rng.pick(auts);
    const auto &y = rng.pick(auts);
    EXPECT_TRUE(images.count(x.after(y).images));
}

TEST_P(FiniteGroupProperty, DirectProductOrderAndAxioms) {
    const auto a = gen::random_group(rng, 4);
    const auto b = gen::random_group(rng, 4);
    const auto p = FiniteGroup::direct_product(a, b);
    EXPECT_EQ(p.order(), a.order() * b.order());
    expect_group_axioms(p);
}

INSTANTIATE_TEST_SUITE_P(Seeds, FiniteGroupProperty, ::testing::Range(0, 40));
