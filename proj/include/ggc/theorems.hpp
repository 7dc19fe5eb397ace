#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "group_graph.hpp"

namespace ggc {

// ---------------------------------------------------------------------------
// Pruning

struct RepulsivityReport {
    VertexSet subtree;
    /// (outer vertex v', edge e) where ρ_{v'}^e is required to be surjective and is not.
    std::vector<std::pair<std::size_t, std::size_t>> violations;
    bool repulsive() const { return violations.empty(); }
};

/// Checks surjectivity of ρ_{v'}^e for every edge <v, v'> with v ≺_r v'.
template <class C> RepulsivityReport check_repulsive(const GroupGraph<C> &g, const VertexSet &r) {
    const Graph &t = g.base();
    if (!is_tree(t))
        throw PreconditionFailed("check_repulsive: base graph is not a tree");
    if (!is_subtree(t, r))
        throw InvalidInput("check_repulsive: vertex set is not a subtree");
    RepulsivityReport rep{r, {}};
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        for (int s = 0; s < 2; ++s) {
            const auto v = t.endpoint(e, s), outer = t.endpoint(e, 1 - s);
            if (!precedes(t, r, t.vertex(v), t.vertex(outer)))
                continue;
            if (!C::is_surjective(g.restriction(e, 1 - s), g.vertex_group(outer), g.edge_group(e)))
                rep.violations.emplace_back(outer, e);
        }
    return rep;
}

/// Size of an H1 as reported by the verifiers: class count for finite
/// carriers, dimension for linear ones.
struct H1Size {
    std::size_t value = 0;
    bool is_dimension = false;
    friend bool operator==(const H1Size &, const H1Size &) = default;
};

struct PruningReport {
    RepulsivityReport repulsivity;
    H1Size whole;
    H1Size pruned;
    bool bijective = false;
};

namespace detail {

inline bool is_bijection(const std::vector<std::size_t> &map, std::size_t target_size) {
    if (map.size() != target_size)
        return false;
    std::vector<bool> hit(target_size, false);
    for (auto x : map) {
        if (x >= target_size || hit[x])
            return false;
        hit[x] = true;
    }
    return true;
}

inline bool is_injection(const std::vector<std::size_t> &map) {
    std::set<std::size_t> seen(map.begin(), map.end());
    return seen.size() == map.size();
}

template <class F> bool matrix_bijective(const Matrix<F> &m) { return m.rows() == m.cols() && m.rank() == m.rows(); }

/// H1 of `sub` mapped through the canonical morphism; returns (size source,
/// size target, bijective, injective, surjective).
struct MapFacts {
    H1Size source;
    H1Size target;
    bool injective = false;
    bool surjective = false;
};

inline MapFacts map_facts(const GroupGraphMorphism<FiniteCarrier> &m, std::size_t budget) {
    const auto hs = h1_finite_bruteforce(m.source, budget);
    const auto ht = h1_finite_bruteforce(m.target, budget);
    const auto map = h1_map_finite(m, hs, ht);
    std::set<std::size_t> img(map.begin(), map.end());
    return {{hs.count, false}, {ht.count, false}, is_injection(map), img.size() == ht.count};
}

template <class F> MapFacts map_facts(const GroupGraphMorphism<LinearCarrier<F>> &m, std::size_t) {
    const auto hs = h1_vector(m.source);
    const auto ht = h1_vector(m.target);
    const auto mat = h1_map_vector(m, hs, ht);
    const auto r = mat.rank();
    return {{hs.dim, true}, {ht.dim, true}, r == hs.dim, r == ht.dim};
}

} // namespace detail

/// H1(A, G) -> H1(R, r^*G) for a repulsive subtree r; checks it is a bijection.
template <class C>
PruningReport pruning_verify(const GroupGraph<C> &g, const VertexSet &r, std::size_t budget = kDefaultBudget,
                             bool require_repulsive = true) {
    PruningReport rep;
    rep.repulsivity = check_repulsive(g, r);
    if (require_repulsive && !rep.repulsivity.repulsive())
        throw PreconditionFailed("pruning_verify: subtree is not repulsive");
    const auto sub = induced_subgraph(g.base(), r);
    const auto pb = restrict_to(g, sub);
    const auto f = detail::map_facts(pb.canonical, budget);
    rep.whole = f.source;
    rep.pruned = f.target;
    rep.bijective = f.injective && f.surjective;
    return rep;
}

// ---------------------------------------------------------------------------
// Quotient by a normal sub-group-graph

/// 1 -> G' -> G -> G'' -> 1 over a tree, given by the two morphisms.
struct ExactSequence {
    GroupGraphMorphism<FiniteCarrier> inclusion;  // G' -> G
    GroupGraphMorphism<FiniteCarrier> projection; // G -> G''

    const GroupGraph<FiniteCarrier> &sub() const { return inclusion.source; }
    const GroupGraph<FiniteCarrier> &middle() const { return inclusion.target; }
    const GroupGraph<FiniteCarrier> &quotient() const { return projection.target; }
};

struct QuotientReport {
    /// Violated hypotheses, one line each. Empty when all hold.
    std::vector<std::string> violations;
    std::size_t middle_count = 0;
    std::size_t quotient_count = 0;
    bool bijective = false;
    std::size_t pairs_checked = 0;
    std::size_t lift_failures = 0;
    bool exhaustive = false;
    bool holds() const { return violations.empty() && bijective && lift_failures == 0 && exhaustive; }
};

/// Hypothesis check for quotient_iso_verify.
inline std::vector<std::string> exact_sequence_violations(const ExactSequence &seq) {
    std::vector<std::string> out;
    const auto &i = seq.inclusion;
    const auto &p = seq.projection;
    try {
        i.validate();
        p.validate();
    } catch (const InvalidInput &e) {
        out.push_back(e.what());
        return out;
    }
    if (!is_over_identity(i) || !is_over_identity(p) || !(i.target == p.source)) {
        out.push_back("morphisms must be over the identity and composable");
        return out;
    }
    const Graph &a = seq.middle().base();
    if (!is_tree(a))
        out.push_back("base graph is not a tree");
    auto check_star = [&](const std::string &where, const FiniteHom &inc, const FiniteHom &proj,
                          const FiniteGroup &mid, const FiniteGroup &quo) {
        if (!is_injective(inc))
            out.push_back("inclusion not injective at " + where);
        if (!is_surjective(proj, quo))
            out.push_back("projection not surjective at " + where);
        if (image_set(inc, mid) != kernel_set(proj))
            out.push_back("image of inclusion differs from kernel of projection at " + where);
    };
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        check_star(a.vertex(v), i.vertex_maps[v], p.vertex_maps[v], seq.middle().vertex_group(v),
                   seq.quotient().vertex_group(v));
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        check_star(a.edge(e).key(), i.edge_maps[e], p.edge_maps[e], seq.middle().edge_group(e),
                   seq.quotient().edge_group(e));
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        for (int s = 0; s < 2; ++s)
            if (!is_surjective(seq.sub().restriction(e, s), seq.sub().edge_group(e)))
                out.push_back("restriction of the subgroup-graph not surjective at " +
                              incidence_key(a.vertex(a.endpoint(e, s)), a.edge(e)));
    return out;
}

/// Given cocycles g, h of G and c'' with c'' ⋆ p(g) = p(h), builds k with
/// k ⋆ g = h by walking the tree away from its smallest vertex: each step
/// lifts c'' and corrects the lift by an element of G' so that the new edge
/// matches, using surjectivity of the restrictions of G'.
inline Cochain0<FiniteCarrier> lift_trivializer(const ExactSequence &seq, const Cocycle1<FiniteCarrier> &g,
                                                const Cocycle1<FiniteCarrier> &h,
                                                const Cochain0<FiniteCarrier> &c2) {
    const auto &mid = seq.middle();
    const auto &sub = seq.sub();
    const auto &inc = seq.inclusion;
    const auto &proj = seq.projection;
    const Graph &a = mid.base();
    const std::size_t n = a.vertex_count();

    auto preimage = [](const FiniteHom &f, int size, Element y) {
        for (int x = 0; x < size; ++x)
            if (f(x) == y)
                return x;
        throw InternalError("lift: element has no preimage");
    };

    std::vector<Element> lift(n), k(n), fsub(n);
    for (std::size_t v = 0; v < n; ++v)
        lift[v] = preimage(proj.vertex_maps[v], mid.vertex_group(v).order(), c2.values[v]);

    std::vector<bool> done(n, false);
    std::vector<std::size_t> queue{0};
    done[0] = true;
    k[0] = lift[0];
    fsub[0] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto v = queue[qi];
        for (auto e : a.incident(v)) {
            const auto w = a.other_end(e, v);
            if (done[w])
                continue;
            done[w] = true;
            queue.push_back(w);
            const int sv = a.side_of(e, v), sw = 1 - sv;
            const auto &ge = mid.edge_group(e);
            const auto &gw = mid.vertex_group(w);
            const auto &rv = mid.restriction(e, sv);
            const auto &rw = mid.restriction(e, sw);
            const auto &rsub_w = sub.restriction(e, sw);
            const auto &ie = inc.edge_maps[e];
            const auto &iw = inc.vertex_maps[w];
            const auto &iv = inc.vertex_maps[v];

            // defect of the plain lift on this edge, an element of G'_e
            const auto moved = ge.mul(ge.mul(ge.inv(rv(lift[v])), g.values[e][sv]), rw(lift[w]));
            const auto defect = ge.mul(ge.inv(moved), h.values[e][sv]);
            const auto d_sub = preimage(ie, sub.edge_group(e).order(), defect);
            const auto gp = preimage(rsub_w, sub.vertex_group(w).order(), d_sub);

            const auto x = ge.mul(ge.mul(ge.inv(rv(k[v])), g.values[e][sv]), rw(gw.mul(lift[w], iw(gp))));
            const auto twist = ge.mul(ge.mul(ge.inv(x), rv(iv(fsub[v]))), x);
            const auto twist_sub = preimage(ie, sub.edge_group(e).order(), twist);
            const auto gt = preimage(rsub_w, sub.vertex_group(w).order(), twist_sub);

            const auto &hw = sub.vertex_group(w);
            fsub[w] = hw.mul(gp, gt);
            k[w] = gw.mul(lift[w], iw(fsub[w]));
        }
    }
    return Cochain0<FiniteCarrier>{k};
}

/// Checks H1(p) is a bijection, then for pairs g, h of cocycles with
/// cohomologous images runs the constructive lift and verifies it. All
/// pairs are checked when there are at most `max_pairs` of them.
inline QuotientReport quotient_iso_verify(const ExactSequence &seq, std::size_t budget = kDefaultBudget,
                                          std::size_t max_pairs = 400000) {
    QuotientReport rep;
    rep.violations = exact_sequence_violations(seq);
    if (!rep.violations.empty())
        return rep;
    const auto hg = h1_finite_bruteforce(seq.middle(), budget);
    const auto hq = h1_finite_bruteforce(seq.quotient(), budget, true);
    rep.middle_count = hg.count;
    rep.quotient_count = hq.count;
    rep.bijective = detail::is_bijection(h1_map_finite(seq.projection, hg, hq), hq.count);

    // Bucket all cocycles of G by the class of their image.
    std::vector<std::vector<std::uint64_t>> bucket(hq.count);
    for (std::uint64_t idx = 0; idx < hg.cocycle_count(); ++idx)
        bucket[hq.class_index(push_cocycle(seq.projection, hg.cocycle_at(idx)))].push_back(idx);
    std::size_t pairs = 0;
    for (const auto &b : bucket)
        pairs += b.size() * b.size();
    rep.exhaustive = pairs <= max_pairs;
    const std::size_t step = rep.exhaustive ? 1 : (pairs / max_pairs + 1);
    std::size_t counter = 0;
    for (const auto &b : bucket)
        for (auto gi : b)
            for (auto hi : b) {
                if (counter++ % step != 0)
                    continue;
                const auto g = hg.cocycle_at(gi), h = hg.cocycle_at(hi);
                const auto c2 = hq.trivializer(push_cocycle(seq.projection, g), push_cocycle(seq.projection, h));
                ++rep.pairs_checked;
                if (!c2) {
                    ++rep.lift_failures;
                    continue;
                }
                const auto k = lift_trivializer(seq, g, h, *c2);
                if (!(coboundary_action(seq.middle(), k, g) == h))
                    ++rep.lift_failures;
            }
    return rep;
}

/// The exact sequence K -> G -> G/K for a normal restriction-stable K.
inline ExactSequence make_exact_sequence(const GroupGraph<FiniteCarrier> &g, const SubGroupGraph<FiniteCarrier> &k) {
    auto q = quotient(g, k);
    return {k, q.projection};
}

// ---------------------------------------------------------------------------
// Direct image

struct DirectImageReport {
    H1Size image_side;  // H1(A', phi_*G)
    H1Size source_side; // H1(A, G)
    bool injective = false;
    bool surjective = false;
    bool fibers_trivial = false;
    /// The image of H1(j) is the set of classes having a representative
    /// that is 1 on every collapsed edge.
    bool image_characterized = false;
    /// Injective always, surjective whenever the fibers have trivial H1.
    bool holds() const { return injective && image_characterized && (!fibers_trivial || surjective); }
};

namespace detail {

inline std::vector<std::size_t> collapsed_edges(const GraphMorphism &phi) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < phi.source().edge_count(); ++e)
        if (phi.edge_image(e).collapsed)
            out.push_back(e);
    return out;
}

template <class C> std::vector<GroupGraph<C>> fiber_graphs(const GraphMorphism &phi, const GroupGraph<C> &g) {
    std::vector<GroupGraph<C>> out;
    for (std::size_t t = 0; t < phi.target().vertex_count(); ++t) {
        const auto verts = vertex_names(phi.source(), phi.vertex_fiber(t));
        if (verts.empty())
            continue;
        out.push_back(restrict_to(g, subgraph(phi.source(), verts, phi.collapsed_fiber(t))).graph);
    }
    return out;
}

} // namespace detail

inline DirectImageReport direct_image_verify(const GraphMorphism &phi, const GroupGraph<FiniteCarrier> &g,
                                             std::size_t budget = kDefaultBudget) {
    const auto di = direct_image(phi, g, budget);
    const auto hs = h1_finite_bruteforce(di.graph, budget);
    const auto ht = h1_finite_bruteforce(g, budget);
    const auto map = h1_map_finite(di.canonical, hs, ht);
    DirectImageReport rep;
    rep.image_side = {hs.count, false};
    rep.source_side = {ht.count, false};
    rep.injective = detail::is_injection(map);
    const std::set<std::size_t> img(map.begin(), map.end());
    rep.surjective = img.size() == ht.count;
    rep.fibers_trivial = true;
    for (const auto &f : detail::fiber_graphs(phi, g))
        if (h1_finite_bruteforce(f, budget).count != 1)
            rep.fibers_trivial = false;
    const auto collapsed = detail::collapsed_edges(phi);
    std::set<std::size_t> reachable;
    for (std::uint64_t idx = 0; idx < ht.cocycle_count(); ++idx) {
        const auto z = ht.cocycle_at(idx);
        if (std::all_of(collapsed.begin(), collapsed.end(), [&](auto e) { return z.values[e][0] == 0; }))
            reachable.insert(ht.class_index(z));
    }
    rep.image_characterized = reachable == img;
    return rep;
}

template <class F>
DirectImageReport direct_image_verify(const GraphMorphism &phi, const GroupGraph<LinearCarrier<F>> &g,
                                      std::size_t budget = kDefaultBudget) {
    const auto di = direct_image(phi, g, budget);
    const auto hs = h1_vector(di.graph);
    const auto ht = h1_vector(g);
    const auto mat = h1_map_vector(di.canonical, hs, ht);
    DirectImageReport rep;
    rep.image_side = {hs.dim, true};
    rep.source_side = {ht.dim, true};
    const auto r = mat.rank();
    rep.injective = r == hs.dim;
    rep.surjective = r == ht.dim;
    rep.fibers_trivial = true;
    for (const auto &f : detail::fiber_graphs(phi, g))
        if (h1_vector(f).dim != 0)
            rep.fibers_trivial = false;
    // Span of the classes of cocycles vanishing on collapsed edges.
    std::vector<bool> collapsed(g.base().edge_count(), false);
    for (auto e : detail::collapsed_edges(phi))
        collapsed[e] = true;
    std::vector<std::vector<F>> cols;
    for (std::size_t e = 0; e < g.base().edge_count(); ++e) {
        if (collapsed[e])
            continue;
        for (std::size_t i = 0; i < g.edge_group(e).dim; ++i) {
            std::vector<F> unit(ht.coordinate_map.cols(), F(0));
            unit[ht.edge_offset[e] + i] = F(1);
            cols.push_back(ht.coordinate_map.apply(unit));
        }
    }
    const auto reach = Matrix<F>::from_columns(cols, ht.dim);
    const auto rr = reach.rank();
    rep.image_characterized = rr == r && reach.hstack(mat).rank() == r;
    return rep;
}

// ---------------------------------------------------------------------------
// Contraction of a supported subtree

template <class C> struct ContractionResult {
    Contraction contraction;
    DirectImage<C> image;
    bool regular = false;
};

/// (c_{sub})_*G for a regular G and a subtree whose edges all carry a
/// nontrivial group; the result is checked to be regular.
template <class C>
ContractionResult<C> contraction_regularity(const GroupGraph<C> &g, const VertexSet &sub,
                                            std::size_t budget = kDefaultBudget) {
    if (!is_regular(g))
        throw PreconditionFailed("contraction_regularity: group-graph is not regular");
    const Graph &t = g.base();
    const auto inner = induced_subgraph(t, sub);
    for (const auto &e : inner.edges())
        if (C::is_trivial(g.edge_group(t.edge_index(e.key()))))
            throw PreconditionFailed("contraction_regularity: edge " + e.key() + " is outside the support");
    ContractionResult<C> out{contract(t, sub), {}, false};
    out.image = direct_image(out.contraction.morphism, g, budget);
    out.regular = is_regular(out.image.graph);
    if (!out.regular)
        throw InternalError("contraction_regularity: direct image is not regular");
    return out;
}

// ---------------------------------------------------------------------------
// Active edges of a regular group-graph

struct ActiveStructure {
    /// Edges with nontrivial group and at least one endpoint with trivial group.
    std::vector<std::size_t> active_edges;
    /// For each active edge, the endpoint playing v_a (the other endpoint has trivial group).
    std::map<std::size_t, std::size_t> active_vertex;
    struct Piece {
        Support::Piece piece;
        bool active = false;
        bool single_edge = false;
        std::optional<std::size_t> chosen;
    };
    std::vector<Piece> components;
    /// Active edges minus the chosen edge of every active component that is
    /// not a single edge.
    std::vector<std::size_t> a_prime;

    std::size_t a() const { return active_edges.size(); }
    std::size_t p() const {
        return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                      [](const Piece &c) { return c.chosen.has_value(); }));
    }
};

/// `reverse_choices` picks the largest candidate instead of the smallest
/// wherever a choice is made, to test choice independence.
template <class C> ActiveStructure active_structure(const GroupGraph<C> &g, bool reverse_choices = false) {
    const Graph &a = g.base();
    ActiveStructure st;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        if (C::is_trivial(g.edge_group(e)))
            continue;
        const auto x = a.endpoint(e, 0), y = a.endpoint(e, 1);
        const bool tx = C::is_trivial(g.vertex_group(x)), ty = C::is_trivial(g.vertex_group(y));
        if (!tx && !ty)
            continue;
        st.active_edges.push_back(e);
        if (tx && ty)
            st.active_vertex[e] = reverse_choices ? y : x;
        else
            st.active_vertex[e] = tx ? y : x;
    }
    const auto sup = support(g);
    const std::set<std::size_t> active(st.active_edges.begin(), st.active_edges.end());
    for (const auto &piece : sup.pieces) {
        ActiveStructure::Piece c{piece, false, piece.single_edge(), std::nullopt};
        std::vector<std::size_t> here;
        for (auto e : piece.edges)
            if (active.count(e))
                here.push_back(e);
        c.active = !here.empty();
        if (c.active && !c.single_edge)
            c.chosen = reverse_choices ? here.back() : here.front();
        st.components.push_back(c);
    }
    std::set<std::size_t> chosen;
    for (const auto &c : st.components)
        if (c.chosen)
            chosen.insert(*c.chosen);
    for (auto e : st.active_edges)
        if (!chosen.count(e))
            st.a_prime.push_back(e);
    return st;
}

/// Rank of H1 of the multigraph obtained from the support by sending every
/// vertex with trivial group to one new vertex per connected component of
/// the base, and dropping edges with trivial group.
template <class C> std::size_t contracted_support_rank(const GroupGraph<C> &g) {
    const Graph &a = g.base();
    const auto comps = connected_components(a);
    std::vector<std::size_t> comp_of(a.vertex_count());
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (auto v : comps[i].vertices)
            comp_of[v] = i;
    // node ids: vertices keep their index, the collapsed vertex of component i is n + i
    const std::size_t n = a.vertex_count();
    auto node = [&](std::size_t v) { return C::is_trivial(g.vertex_group(v)) ? n + comp_of[v] : v; };
    std::set<std::size_t> nodes;
    for (std::size_t v = 0; v < n; ++v)
        nodes.insert(node(v));
    std::vector<std::size_t> parent(n + comps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t edges = 0;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        if (C::is_trivial(g.edge_group(e)))
            continue;
        ++edges;
        auto x = find(node(a.endpoint(e, 0))), y = find(node(a.endpoint(e, 1)));
        if (x != y)
            parent[std::max(x, y)] = std::min(x, y);
    }
    std::set<std::size_t> roots;
    for (auto x : nodes)
        roots.insert(find(x));
    return edges + roots.size() - nodes.size();
}

/// The cocycle δ((g_a)_{a ∈ A'}): g_{v_a, a} = g_a^{-1}, g_{v', a} = g_a, 1 elsewhere.
template <class C>
Cocycle1<C> delta_cocycle(const GroupGraph<C> &g, const ActiveStructure &st,
                          const std::vector<typename C::Value> &values) {
    auto z = trivial_cocycle(g);
    const Graph &a = g.base();
    for (std::size_t i = 0; i < st.a_prime.size(); ++i) {
        const auto e = st.a_prime[i];
        const int sa = a.side_of(e, st.active_vertex.at(e));
        z.values[e][sa] = C::inv(g.edge_group(e), values[i]);
        z.values[e][1 - sa] = values[i];
    }
    return z;
}

struct RegularH1Vector {
    ActiveStructure structure;
    std::size_t dim = 0;
    std::size_t contracted_rank = 0;
};

/// H1 of a regular vector-space graph over a tree from its active edges;
/// dim = sum of dim G_a over A'. With `crosscheck`, compares against the
/// linear algebra and checks the δ basis maps to a basis of H1.
template <class F>
RegularH1Vector regular_h1(const GroupGraph<LinearCarrier<F>> &g, bool crosscheck = true,
                           bool reverse_choices = false) {
    if (!is_tree(g.base()))
        throw PreconditionFailed("regular_h1: base graph is not a tree");
    if (!is_regular(g))
        throw PreconditionFailed("regular_h1: group-graph is not regular");
    RegularH1Vector out;
    out.structure = active_structure(g, reverse_choices);
    for (auto e : out.structure.a_prime)
        out.dim += g.edge_group(e).dim;
    out.contracted_rank = contracted_support_rank(g);
    if (crosscheck) {
        const auto lin = h1_vector(g);
        if (lin.dim != out.dim)
            throw InternalError("regular_h1: active-edge dimension " + std::to_string(out.dim) +
                                " differs from linear algebra " + std::to_string(lin.dim));
        std::vector<std::vector<F>> cols;
        std::vector<std::vector<F>> values;
        for (auto e : out.structure.a_prime)
            values.emplace_back(g.edge_group(e).dim, F(0));
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t k = 0; k < values[i].size(); ++k) {
                auto vals = values;
                vals[i][k] = F(1);
                cols.push_back(lin.coordinates(delta_cocycle(g, out.structure, vals)));
            }
        if (!detail::matrix_bijective(Matrix<F>::from_columns(cols, lin.dim)))
            throw InternalError("regular_h1: δ basis does not map to a basis of H1");
    }
    return out;
}

struct RegularH1Finite {
    ActiveStructure structure;
    std::size_t count = 1;
    std::size_t contracted_rank = 0;
};

/// Class count of a regular finite group-graph: product of |G_a| over A'.
/// With `crosscheck`, enumerates H1 and checks the δ images of all tuples
/// land in distinct classes covering everything.
inline RegularH1Finite regular_h1(const GroupGraph<FiniteCarrier> &g, bool crosscheck = true,
                                  bool reverse_choices = false, std::size_t budget = kDefaultBudget) {
    if (!is_tree(g.base()))
        throw PreconditionFailed("regular_h1: base graph is not a tree");
    if (!is_regular(g))
        throw PreconditionFailed("regular_h1: group-graph is not regular");
    RegularH1Finite out;
    out.structure = active_structure(g, reverse_choices);
    for (auto e : out.structure.a_prime)
        out.count *= static_cast<std::size_t>(g.edge_group(e).order());
    out.contracted_rank = contracted_support_rank(g);
    if (crosscheck) {
        const auto brute = h1_finite_bruteforce(g, budget);
        if (brute.count != out.count)
            throw InternalError("regular_h1: closed-form count " + std::to_string(out.count) +
                                " differs from enumeration " + std::to_string(brute.count));
        const auto &ap = out.structure.a_prime;
        std::vector<Element> tuple(ap.size(), 0);
        std::set<std::size_t> classes;
        while (true) {
            classes.insert(brute.class_index(delta_cocycle(g, out.structure, tuple)));
            std::size_t i = 0;
            while (i < tuple.size() && ++tuple[i] == g.edge_group(ap[i]).order())
                tuple[i++] = 0;
            if (i == tuple.size())
                break;
        }
        if (classes.size() != out.count)
            throw InternalError("regular_h1: δ is not injective on classes");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor product

struct TensorReport {
    std::size_t h1_dim = 0;
    std::size_t w = 0;
    std::size_t tensor_h1_dim = 0;
    /// The classes b_i ⊗ f_k form a basis of H1(A, T ⊗ W).
    bool basis_corresponds = false;
    bool holds() const { return tensor_h1_dim == h1_dim * w && basis_corresponds; }
};

template <class F> TensorReport tensor_h1_verify(const GroupGraph<LinearCarrier<F>> &t, std::size_t w) {
    using C = LinearCarrier<F>;
    const auto tw = tensor(t, w);
    const auto h = h1_vector(t);
    const auto hw = h1_vector(tw);
    TensorReport rep{h.dim, w, hw.dim, false};
    std::vector<std::vector<F>> cols;
    for (const auto &b : h.basis)
        for (std::size_t k = 0; k < w; ++k) {
            std::vector<typename C::Value> tails;
            for (std::size_t e = 0; e < t.base().edge_count(); ++e) {
                const auto &x = b.values[e][0];
                typename C::Value y(x.size() * w, F(0));
                for (std::size_t i = 0; i < x.size(); ++i)
                    y[i * w + k] = x[i];
                tails.push_back(y);
            }
            cols.push_back(hw.coordinates(cocycle_from_tails(tw, tails)));
        }
    rep.basis_corresponds = detail::matrix_bijective(Matrix<F>::from_columns(cols, hw.dim));
    return rep;
}

} // namespace ggc
