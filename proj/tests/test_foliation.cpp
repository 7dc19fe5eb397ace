#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace ggc;
using namespace ggc::test;

namespace {

VertexData finite_vertex(int order) { return {VertexKind::invariant, GroupHolonomy{true, order, 0}, std::nullopt}; }
VertexData infinite_vertex(int tdim) { return {VertexKind::invariant, GroupHolonomy{false, 1, tdim}, std::nullopt}; }
VertexData dicritical_vertex() { return {VertexKind::dicritical, std::nullopt, std::nullopt}; }

std::optional<LocalHolonomy> periodic(int order) { return LocalHolonomy{true, order}; }
std::optional<LocalHolonomy> nonperiodic() { return LocalHolonomy{false, 1}; }

EdgeData singular(std::optional<LocalHolonomy> tail, std::optional<LocalHolonomy> head,
                  std::optional<int> tdim = std::nullopt) {
    return {EdgeKind::singular, tdim, {tail, head}};
}

/// Spec on the path D1 - D2 - ... with decorations listed along the path.
FoliationSpec path_spec(std::vector<VertexData> vs, std::vector<EdgeData> es) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vs.size(); ++i)
        names.push_back("D" + std::to_string(i + 1));
    return {path_graph(names), std::move(vs), std::move(es)};
}

std::vector<int> witness_types(const ModuliReport &r) {
    std::vector<int> out;
    for (const auto &w : r.witnesses)
        out.push_back(w.type);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Validation

TEST(Validate, SingleFiniteVertex) {
    EXPECT_TRUE(validate(path_spec({finite_vertex(1)}, {})).empty());
}

TEST(Validate, NonPeriodicAtFiniteVertex) {
    const auto s = path_spec({finite_vertex(2), infinite_vertex(0)}, {singular(nonperiodic(), periodic(1), 0)});
    EXPECT_FALSE(validate(s).empty());
    EXPECT_THROW(cut_graph(s), InvalidInput);
}

TEST(Validate, OrderMustDivide) {
    const auto bad = path_spec({finite_vertex(4), finite_vertex(3)}, {singular(periodic(3), periodic(3))});
    const auto v = validate(bad);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("does not divide"), std::string::npos);
    EXPECT_TRUE(validate(path_spec({finite_vertex(6), finite_vertex(3)}, {singular(periodic(3), periodic(3))})).empty());
}

TEST(Validate, MissingAndMisplacedData) {
    EXPECT_FALSE(validate(path_spec({finite_vertex(1), finite_vertex(1)}, {singular(periodic(1), std::nullopt)})).empty());
    auto d = dicritical_vertex();
    d.holonomy = GroupHolonomy{};
    EXPECT_FALSE(validate(path_spec({d}, {})).empty());
    // tdim only on red edges
    EXPECT_FALSE(validate(path_spec({finite_vertex(1), finite_vertex(1)}, {singular(periodic(1), periodic(1), 1)})).empty());
    // a red edge needs both ends red
    EXPECT_FALSE(validate(path_spec({infinite_vertex(0), finite_vertex(1)}, {singular(nonperiodic(), periodic(1), 0)})).empty());
    // vertex tdim may not exceed edge tdim
    EXPECT_FALSE(validate(path_spec({infinite_vertex(1), infinite_vertex(0)}, {singular(nonperiodic(), nonperiodic(), 0)})).empty());
}

// ---------------------------------------------------------------------------
// Cut graph, red part, restrictions

TEST(CutGraph, NodalEdgeSplits) {
    auto s = path_spec({finite_vertex(1), finite_vertex(1), finite_vertex(1)},
                       {singular(periodic(1), periodic(1)), singular(periodic(1), periodic(1))});
    s.edges[1].kind = EdgeKind::nodal;
    const auto cut = cut_graph(s);
    ASSERT_EQ(cut.components.size(), 2u);
    EXPECT_EQ(cut.components[0].vertices, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(cut.components[1].vertices, (std::vector<std::size_t>{2}));
    EXPECT_EQ(cut.graph.edge_count(), 1u);
}

TEST(CutGraph, DicriticalCentreIsolatesLeaves) {
    const Graph star({"C", "L1", "L2", "L3"}, {{"C", "L1"}, {"C", "L2"}, {"C", "L3"}});
    FoliationSpec s{star, {}, {}};
    for (const auto &v : star.vertices())
        s.vertices.push_back(v == "C" ? dicritical_vertex() : finite_vertex(2));
    for (const auto &e : star.edges()) {
        // the centre sorts first, so side 0 is the dicritical end
        ASSERT_EQ(e.first, "C");
        s.edges.push_back(singular(std::nullopt, periodic(2)));
    }
    const auto cut = cut_graph(s);
    EXPECT_EQ(cut.components.size(), 3u);
    EXPECT_EQ(cut.graph.vertex_count(), 3u);
    EXPECT_EQ(cut.graph.edge_count(), 0u);
}

TEST(RedPart, InfiniteVerticesAndNonPeriodicEdges) {
    const auto s = path_spec({infinite_vertex(0), infinite_vertex(1), finite_vertex(2)},
                             {singular(nonperiodic(), periodic(3), 1), singular(periodic(2), periodic(2))});
    const auto red = red_subgraph(s);
    EXPECT_EQ(red.graph.vertices(), (std::vector<std::string>{"D1", "D2"}));
    ASSERT_EQ(red.graph.edge_count(), 1u);
    EXPECT_EQ(red.graph.edge(0).key(), "D1#D2");
    ASSERT_EQ(red.per_component.size(), 1u);
    EXPECT_EQ(red.per_component[0].edges, (std::vector<std::size_t>{0}));
}

TEST(Restrictions, Classification) {
    const auto s = path_spec({finite_vertex(5), finite_vertex(10)}, {singular(periodic(5), periodic(5))});
    const auto c = classify_restrictions(s);
    EXPECT_TRUE(c.at("D1|D1#D2"));
    EXPECT_FALSE(c.at("D2|D1#D2"));
    const auto red = path_spec({infinite_vertex(1), infinite_vertex(0)}, {singular(nonperiodic(), periodic(2), 1)});
    const auto cr = classify_restrictions(red);
    EXPECT_TRUE(cr.at("D1|D1#D2"));
    EXPECT_FALSE(cr.at("D2|D1#D2"));
}

// ---------------------------------------------------------------------------
// Finite type and moduli

TEST(FiniteType, SingleRedVertex) {
    const auto r = analyze(path_spec({infinite_vertex(1)}, {}), true);
    EXPECT_TRUE(r.finite_type);
    EXPECT_EQ(r.moduli_dim, 0u);
    EXPECT_EQ(r.characterization, Characterization::holds);
}

TEST(FiniteType, SingleActiveEdgeHasOneModulus) {
    const auto s = path_spec({infinite_vertex(0), infinite_vertex(0)}, {singular(nonperiodic(), nonperiodic(), 1)});
    const auto r = analyze(s, true);
    EXPECT_TRUE(r.finite_type);
    EXPECT_EQ(r.moduli_dim, 1u);
    EXPECT_EQ(r.basis_edges, (std::vector<std::string>{"D1#D2"}));
    EXPECT_EQ(r.pipelines, (std::array<std::size_t, 3>{1, 1, 1}));
}

TEST(FiniteType, FullySupportedHasNoModuli) {
    const auto s = path_spec({infinite_vertex(1), infinite_vertex(1)}, {singular(nonperiodic(), nonperiodic(), 1)});
    EXPECT_EQ(analyze(s).moduli_dim, 0u);
}

TEST(FiniteType, ActiveEdgeInsideLargerComponent) {
    const auto s = path_spec({infinite_vertex(1), infinite_vertex(1), infinite_vertex(0)},
                             {singular(nonperiodic(), nonperiodic(), 1), singular(nonperiodic(), nonperiodic(), 1)});
    const auto r = analyze(s);
    EXPECT_EQ(r.moduli_dim, 0u);
    EXPECT_TRUE(r.basis_edges.empty());
}

TEST(FiniteType, GreenRootCertificate) {
    const auto s = path_spec({finite_vertex(2), finite_vertex(4)}, {singular(periodic(2), periodic(4))});
    const auto ft = is_finite_type(s);
    EXPECT_TRUE(ft.finite);
    ASSERT_EQ(ft.certificates.size(), 1u);
    EXPECT_EQ(ft.certificates[0].vertex, "D1");
    EXPECT_EQ(entirely_green_check(s), (std::vector<std::size_t>{0}));
    EXPECT_EQ(analyze(s, true).characterization, Characterization::hypothesis_violated);
    EXPECT_THROW(characterization_crosscheck(s), PreconditionFailed);
}

TEST(FiniteType, GreenComponentWithoutRoot) {
    // both restrictions fail to generate, so no vertex reaches everything
    const auto s = path_spec({finite_vertex(4), finite_vertex(4)}, {singular(periodic(2), periodic(2))});
    EXPECT_FALSE(is_finite_type(s).finite);
    EXPECT_TRUE(is_finite_type(s).witnesses.empty());
}

TEST(Characterization, TypeOneGeodesic) {
    const auto s = path_spec({infinite_vertex(0), finite_vertex(2), finite_vertex(4)},
                             {singular(periodic(2), periodic(2)), singular(periodic(2), periodic(2))});
    const auto r = analyze(s, true);
    EXPECT_FALSE(r.finite_type);
    EXPECT_FALSE(r.moduli_dim.has_value());
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].type, 1);
    EXPECT_EQ(r.witnesses[0].elements, (std::vector<std::string>{"D1", "D1#D2", "D2", "D2#D3", "D3"}));
    EXPECT_EQ(r.characterization, Characterization::holds);
}

TEST(Characterization, TypeTwoGeodesic) {
    const auto s = path_spec({infinite_vertex(1), finite_vertex(4)}, {singular(periodic(2), periodic(2))});
    const auto r = analyze(s, true);
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].type, 2);
    EXPECT_EQ(r.characterization, Characterization::holds);
}

TEST(Characterization, TypeThreeGeodesic) {
    const auto s = path_spec({infinite_vertex(0), finite_vertex(2), infinite_vertex(1)},
                             {singular(periodic(2), periodic(2)), singular(periodic(2), periodic(3))});
    const auto r = analyze(s, true);
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].type, 3);
    EXPECT_EQ(r.witnesses[0].elements.front(), "D1");
    EXPECT_EQ(r.witnesses[0].elements.back(), "D3");
}

TEST(Characterization, TypeFourGeodesic) {
    const auto s = path_spec({infinite_vertex(0), infinite_vertex(1)}, {singular(periodic(2), periodic(2))});
    const auto r = analyze(s, true);
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].type, 4);
    EXPECT_EQ(r.characterization, Characterization::holds);
}

TEST(Moduli, TfRedShape) {
    const auto s = path_spec({infinite_vertex(1), infinite_vertex(0), finite_vertex(3)},
                             {singular(nonperiodic(), nonperiodic(), 1), singular(periodic(3), periodic(3))});
    const auto tf = build_tf_red(s);
    EXPECT_EQ(tf.base().vertex_count(), 2u);
    EXPECT_EQ(tf.vertex_group(0).dim, 1u);
    EXPECT_EQ(tf.vertex_group(1).dim, 0u);
    EXPECT_EQ(tf.edge_group(0).dim, 1u);
    EXPECT_TRUE(is_regular(tf));
    const auto md = moduli_pipelines(tf);
    EXPECT_EQ(md.dim(), 0u);
}

// ---------------------------------------------------------------------------
// Properties

class FoliationProperty : public ::testing::TestWithParam<int> {
  protected:
    Rng rng{static_cast<std::uint64_t>(GetParam()) + 7000};
};

TEST_P(FoliationProperty, GeneratedSpecsAreValid) {
    EXPECT_TRUE(validate(gen::random_spec(rng)).empty());
    EXPECT_TRUE(validate(gen::finite_type_spec(rng)).empty());
}

TEST_P(FoliationProperty, RelabelingPreservesInvariants) {
    const auto s = gen::random_spec(rng);
    const auto t = gen::relabel(rng, s);
    ASSERT_TRUE(validate(t).empty());
    const auto a = analyze(s), b = analyze(t);
    EXPECT_EQ(a.finite_type, b.finite_type);
    EXPECT_EQ(a.moduli_dim, b.moduli_dim);
    EXPECT_EQ(a.cut_components.size(), b.cut_components.size());
    EXPECT_EQ(a.red_subgraph.vertex_count(), b.red_subgraph.vertex_count());
    EXPECT_EQ(a.red_subgraph.edge_count(), b.red_subgraph.edge_count());
    EXPECT_EQ(a.basis_edges.size(), b.basis_edges.size());
    EXPECT_EQ(a.entirely_green.size(), b.entirely_green.size());
    EXPECT_EQ(a.witnesses.size(), b.witnesses.size());
}

TEST_P(FoliationProperty, FiniteTypeSpecsAreFinite) {
    const auto s = gen::finite_type_spec(rng);
    const auto r = analyze(s);
    EXPECT_TRUE(r.finite_type);
    EXPECT_TRUE(r.witnesses.empty());
    ASSERT_TRUE(r.moduli_dim.has_value());
    EXPECT_EQ(*r.moduli_dim, r.basis_edges.size());
    const auto md = moduli_pipelines(build_tf_red(s));
    EXPECT_EQ(md.pipelines[0], md.pipelines[1]);
    EXPECT_EQ(md.pipelines[1], md.pipelines[2]);
}

TEST_P(FoliationProperty, InjectedGeodesicBreaksFiniteness) {
    const int type = 1 + GetParam() % 4;
    std::optional<FoliationSpec> s;
    for (int attempt = 0; attempt < 200 && !s; ++attempt)
        s = gen::inject_geodesic(rng, type);
    ASSERT_TRUE(s.has_value());
    ASSERT_TRUE(validate(*s).empty());
    const auto r = analyze(*s, true);
    EXPECT_FALSE(r.finite_type);
    EXPECT_FALSE(r.moduli_dim.has_value());
    EXPECT_EQ(r.characterization, Characterization::holds);
    // every verdict of infinite dimension carries a typed witness
    EXPECT_TRUE(std::any_of(r.witnesses.begin(), r.witnesses.end(), [](const Witness &w) { return w.type > 0; }));
}

TEST_P(FoliationProperty, TypedWitnessImpliesInfinite) {
    const auto s = gen::random_spec(rng);
    const auto r = analyze(s);
    for (const auto &w : r.witnesses)
        if (w.type > 0) {
            EXPECT_FALSE(r.finite_type);
        }
    if (r.finite_type) {
        EXPECT_EQ(*r.moduli_dim, r.basis_edges.size());
    }
}

TEST_P(FoliationProperty, RedEdgesJoinRedVertices) {
    const auto s = gen::random_spec(rng);
    const auto red = red_subgraph(s);
    for (const auto &e : red.graph.edges()) {
        EXPECT_TRUE(red.graph.has_vertex(e.first));
        EXPECT_TRUE(red.graph.has_vertex(e.second));
    }
    EXPECT_TRUE(is_regular(build_tf_red(s)));
}

TEST_P(FoliationProperty, CrosscheckFailsOnlyWithUntypedWitness) {
    const auto s = gen::random_spec(rng);
    const auto r = analyze(s, true);
    ASSERT_TRUE(r.characterization.has_value());
    if (*r.characterization == Characterization::fails) {
        EXPECT_TRUE(std::any_of(r.witnesses.begin(), r.witnesses.end(), [](const Witness &w) { return w.type == 0; }))
            << "typed geodesics disagree with the verdict";
    }
    if (!r.entirely_green.empty()) {
        EXPECT_EQ(*r.characterization, Characterization::hypothesis_violated);
    }
}

TEST_P(FoliationProperty, UntypedWitnessShape) {
    // an untyped witness ends on a green-green edge neither of whose
    // restrictions is bijective
    const auto s = gen::random_spec(rng);
    const auto r = analyze(s);
    const auto iso = classify_restrictions(s);
    for (const auto &w : r.witnesses) {
        if (w.type != 0)
            continue;
        const auto n = w.elements.size();
        ASSERT_GE(n, 5u);
        const auto &inner = w.elements[n - 3], &key = w.elements[n - 2], &outer = w.elements[n - 1];
        EXPECT_FALSE(r.red_subgraph.has_vertex(inner));
        EXPECT_FALSE(r.red_subgraph.has_vertex(outer));
        EXPECT_FALSE(iso.at(inner + "|" + key));
        EXPECT_FALSE(iso.at(outer + "|" + key));
    }
}

TEST_P(FoliationProperty, WitnessTypesSurviveRelabeling) {
    const auto s = gen::random_spec(rng);
    EXPECT_EQ(witness_types(analyze(s)), witness_types(analyze(gen::relabel(rng, s))));
}

INSTANTIATE_TEST_SUITE_P(Seeds, FoliationProperty, ::testing::Range(0, 60));
