#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finite_group.hpp"
#include "foliation.hpp"
#include "graph.hpp"
#include "group_graph.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "theorems.hpp"

// Random instance families for the property tests, the selfcheck command
// and the acceptance binary. Every generator is a pure function of its Rng.
namespace ggc::gen {

// ---------------------------------------------------------------------------
// Graphs

inline std::vector<std::string> names(std::size_t n, const std::string &prefix = "v") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

/// Uniform-attachment random tree on n vertices with shuffled names.
inline Graph random_tree(Rng &rng, std::size_t n, const std::string &prefix = "v") {
    auto vs = names(n, prefix);
    rng.shuffle(vs);
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 1; i < n; ++i)
        edges.emplace_back(vs[i], vs[rng.index(i)]);
    return Graph(vs, edges);
}

/// Random connected graph: a tree plus `extra` chords.
inline Graph random_connected_graph(Rng &rng, std::size_t n, std::size_t extra) {
    const auto t = random_tree(rng, n);
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : t.edges())
        edges.emplace_back(e.first, e.second);
    for (std::size_t k = 0; k < extra && n > 2; ++k) {
        const auto a = t.vertex(rng.index(n)), b = t.vertex(rng.index(n));
        if (a != b && !std::count_if(edges.begin(), edges.end(), [&](const auto &p) {
                return Edge(p.first, p.second) == Edge(a, b);
            }))
            edges.emplace_back(a, b);
    }
    return Graph(t.vertices(), edges);
}

/// Random subtree with between 1 and `max_size` vertices.
inline VertexSet random_subtree(Rng &rng, const Graph &t, std::size_t max_size) {
    const auto target = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_size)));
    std::vector<std::size_t> in{rng.index(t.vertex_count())};
    std::set<std::size_t> seen(in.begin(), in.end());
    while (in.size() < target) {
        std::vector<std::size_t> frontier;
        for (auto v : in)
            for (auto e : t.incident(v))
                if (!seen.count(t.other_end(e, v)))
                    frontier.push_back(t.other_end(e, v));
        if (frontier.empty())
            break;
        const auto w = rng.pick(frontier);
        seen.insert(w);
        in.push_back(w);
    }
    return vertex_names(t, in);
}

// ---------------------------------------------------------------------------
// Finite groups

/// The nontrivial groups of order at most 8, one per isomorphism class.
inline const std::vector<FiniteGroup> &small_groups() {
    static const std::vector<FiniteGroup> pool = [] {
        const auto c2 = FiniteGroup::cyclic(2);
        return std::vector<FiniteGroup>{FiniteGroup::cyclic(2),
                                        FiniteGroup::cyclic(3),
                                        FiniteGroup::cyclic(4),
                                        FiniteGroup::direct_product(c2, c2),
                                        FiniteGroup::cyclic(5),
                                        FiniteGroup::cyclic(6),
                                        FiniteGroup::dihedral(3),
                                        FiniteGroup::cyclic(7),
                                        FiniteGroup::cyclic(8),
                                        FiniteGroup::direct_product(c2, FiniteGroup::cyclic(4)),
                                        FiniteGroup::elementary_abelian(2, 3),
                                        FiniteGroup::dihedral(4),
                                        FiniteGroup::quaternion()};
    }();
    return pool;
}

inline FiniteGroup random_group(Rng &rng, int max_order, bool allow_trivial = true) {
    std::vector<FiniteGroup> pool;
    if (allow_trivial)
        pool.push_back(FiniteGroup::trivial());
    for (const auto &g : small_groups())
        if (g.order() <= max_order)
            pool.push_back(g);
    return rng.pick(pool);
}

inline const std::vector<FiniteHom> &cached_homs(const FiniteGroup &src, const FiniteGroup &tgt) {
    static std::map<std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>, std::vector<FiniteHom>>
        cache;
    auto key = std::make_pair(src.table(), tgt.table());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, all_homomorphisms(src, tgt)).first;
    return it->second;
}

inline FiniteHom random_hom(Rng &rng, const FiniteGroup &src, const FiniteGroup &tgt) {
    return rng.pick(cached_homs(src, tgt));
}

inline FiniteHom random_automorphism(Rng &rng, const FiniteGroup &g) {
    std::vector<FiniteHom> autos;
    for (const auto &h : cached_homs(g, g))
        if (is_injective(h))
            autos.push_back(h);
    return rng.pick(autos);
}

inline std::vector<Element> image_of(const FiniteHom &f, const std::vector<Element> &xs) {
    std::set<Element> s;
    for (auto x : xs)
        s.insert(f(x));
    return {s.begin(), s.end()};
}

/// Arbitrary finite group-graph with random homomorphisms.
inline GroupGraph<FiniteCarrier> random_finite_group_graph(Rng &rng, const Graph &a, int max_order) {
    std::vector<FiniteGroup> vg, eg;
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        vg.push_back(random_group(rng, max_order));
    std::vector<std::array<FiniteHom, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        eg.push_back(random_group(rng, max_order));
        std::array<FiniteHom, 2> r;
        for (int s = 0; s < 2; ++s)
            r[s] = random_hom(rng, vg[a.endpoint(e, s)], eg.back());
        rest.push_back(r);
    }
    return GroupGraph<FiniteCarrier>(a, vg, eg, rest);
}

/// Regular finite group-graph: each edge is trivial, or carries a group
/// isomorphic to its nontrivial endpoints through random automorphisms.
/// Vertex groups come from a palette of one or two groups so that
/// neighbouring nontrivial groups often agree.
inline GroupGraph<FiniteCarrier> random_regular_finite(Rng &rng, const Graph &a, int max_order) {
    std::vector<FiniteGroup> palette{random_group(rng, max_order, false)};
    if (rng.chance(1, 2))
        palette.push_back(random_group(rng, max_order, false));
    std::vector<FiniteGroup> vg;
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        vg.push_back(rng.chance(2, 5) ? FiniteGroup::trivial() : rng.pick(palette));
    std::vector<FiniteGroup> eg;
    std::vector<std::array<FiniteHom, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const auto &gx = vg[a.endpoint(e, 0)], &gy = vg[a.endpoint(e, 1)];
        const bool tx = gx.order() == 1, ty = gy.order() == 1;
        FiniteGroup ge = FiniteGroup::trivial();
        if (tx && ty)
            ge = rng.chance(1, 2) ? FiniteGroup::trivial() : random_group(rng, max_order, false);
        else if (tx || ty)
            ge = rng.chance(1, 3) ? FiniteGroup::trivial() : (tx ? gy : gx);
        else if (gx == gy && rng.chance(2, 3))
            ge = gx;
        std::array<FiniteHom, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto &gv = vg[a.endpoint(e, s)];
            r[s] = (gv.order() > 1 && ge.order() > 1) ? random_automorphism(rng, ge) : FiniteHom::trivial(gv);
        }
        eg.push_back(ge);
        rest.push_back(r);
    }
    return GroupGraph<FiniteCarrier>(a, vg, eg, rest);
}

// ---------------------------------------------------------------------------
// Vector spaces

inline Rational small_rational(Rng &rng) { return Rational(rng.uniform(-2, 2)); }

inline Matrix<Rational> random_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = small_rational(rng);
    return m;
}

inline Matrix<Rational> random_invertible(Rng &rng, std::size_t n) {
    while (true) {
        auto m = random_matrix(rng, n, n);
        if (m.rank() == n)
            return m;
    }
}

/// Random matrix of full row rank (a surjection), requires rows <= cols.
inline Matrix<Rational> random_surjection(Rng &rng, std::size_t rows, std::size_t cols) {
    while (true) {
        auto m = random_matrix(rng, rows, cols);
        if (m.rank() == rows)
            return m;
    }
}

inline GroupGraph<RationalCarrier> random_vector_group_graph(Rng &rng, const Graph &a, std::size_t max_dim) {
    const auto md = static_cast<std::int64_t>(max_dim);
    std::vector<VectorSpace> vg, eg;
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        vg.push_back({static_cast<std::size_t>(rng.uniform(0, md))});
    std::vector<std::array<Matrix<Rational>, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        eg.push_back({static_cast<std::size_t>(rng.uniform(0, md))});
        std::array<Matrix<Rational>, 2> r;
        for (int s = 0; s < 2; ++s)
            r[s] = random_matrix(rng, eg.back().dim, vg[a.endpoint(e, s)].dim);
        rest.push_back(r);
    }
    return GroupGraph<RationalCarrier>(a, vg, eg, rest);
}

/// Regular vector-space graph with dims in 0..max_dim.
inline GroupGraph<RationalCarrier> random_regular_vector(Rng &rng, const Graph &a, std::size_t max_dim) {
    const auto md = static_cast<std::int64_t>(max_dim);
    std::vector<VectorSpace> vg, eg;
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        vg.push_back({rng.chance(1, 3) ? 0 : static_cast<std::size_t>(rng.uniform(1, md))});
    std::vector<std::array<Matrix<Rational>, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const auto dx = vg[a.endpoint(e, 0)].dim, dy = vg[a.endpoint(e, 1)].dim;
        std::size_t de = 0;
        if (dx == 0 && dy == 0)
            de = static_cast<std::size_t>(rng.uniform(0, md));
        else if (dx == 0 || dy == 0)
            de = rng.chance(1, 3) ? 0 : std::max(dx, dy);
        else if (dx == dy && rng.chance(2, 3))
            de = dx;
        eg.push_back({de});
        std::array<Matrix<Rational>, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto dv = vg[a.endpoint(e, s)].dim;
            r[s] = (dv > 0 && de > 0) ? random_invertible(rng, de) : Matrix<Rational>::zero(de, dv);
        }
        rest.push_back(r);
    }
    return GroupGraph<RationalCarrier>(a, vg, eg, rest);
}

// ---------------------------------------------------------------------------
// Pruning

struct PruningInstance {
    GroupGraph<FiniteCarrier> finite;
    GroupGraph<RationalCarrier> vector;
    bool is_vector = false;
    VertexSet subtree;
};

/// Group-graph on a random tree for which `subtree` is repulsive: every
/// restriction from a vertex farther from the subtree is surjective.
inline PruningInstance random_repulsive(Rng &rng, std::size_t max_vertices, bool vector) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_vertices)));
    const auto t = random_tree(rng, n);
    const auto r = random_subtree(rng, t, n);
    PruningInstance out;
    out.subtree = r;
    out.is_vector = vector;
    // dist to the subtree decides which endpoint is outer
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<std::size_t> queue;
    for (const auto &v : r) {
        dist[t.vertex_index(v)] = 0;
        queue.push_back(t.vertex_index(v));
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (auto e : t.incident(queue[qi])) {
            const auto w = t.other_end(e, queue[qi]);
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[queue[qi]] + 1;
                queue.push_back(w);
            }
        }
    auto outer_side = [&](std::size_t e) {
        const auto x = t.endpoint(e, 0), y = t.endpoint(e, 1);
        if (dist[x] == dist[y])
            return -1;
        return dist[x] > dist[y] ? 0 : 1;
    };
    if (vector) {
        std::vector<VectorSpace> vg, eg;
        for (std::size_t v = 0; v < n; ++v)
            vg.push_back({static_cast<std::size_t>(rng.uniform(0, 2))});
        std::vector<std::array<Matrix<Rational>, 2>> rest;
        for (std::size_t e = 0; e < t.edge_count(); ++e) {
            const int os = outer_side(e);
            const std::size_t cap = os < 0 ? 2 : vg[t.endpoint(e, os)].dim;
            eg.push_back({static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cap)))});
            std::array<Matrix<Rational>, 2> m;
            for (int s = 0; s < 2; ++s) {
                const auto dv = vg[t.endpoint(e, s)].dim;
                m[s] = s == os ? random_surjection(rng, eg.back().dim, dv) : random_matrix(rng, eg.back().dim, dv);
            }
            rest.push_back(m);
        }
        out.vector = GroupGraph<RationalCarrier>(t, vg, eg, rest);
        return out;
    }
    std::vector<FiniteGroup> vg, eg;
    for (std::size_t v = 0; v < n; ++v)
        vg.push_back(random_group(rng, 6));
    std::vector<std::array<FiniteHom, 2>> rest;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const int os = outer_side(e);
        std::array<FiniteHom, 2> h;
        if (os < 0) {
            eg.push_back(random_group(rng, 6));
            for (int s = 0; s < 2; ++s)
                h[s] = random_hom(rng, vg[t.endpoint(e, s)], eg.back());
        } else {
            // quotients of the outer group are the possible edge groups
            const auto &outer = vg[t.endpoint(e, os)];
            const auto normals = normal_subgroups(outer);
            const auto [q, proj] = quotient(outer, rng.pick(normals));
            eg.push_back(q);
            h[os] = proj;
            h[1 - os] = random_hom(rng, vg[t.endpoint(e, 1 - os)], q);
        }
        rest.push_back(h);
    }
    out.finite = GroupGraph<FiniteCarrier>(t, vg, eg, rest);
    return out;
}

/// Non-repulsive control: a finite group-graph on the subtree extended by
/// vertices with trivial groups whose edges carry a nontrivial group that no
/// vertex can move, so H1 strictly grows under extension.
inline PruningInstance nonrepulsive_control(Rng &rng, std::size_t max_vertices) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(std::max<std::size_t>(2, max_vertices))));
    const auto t = random_tree(rng, n);
    auto r = random_subtree(rng, t, n - 1);
    std::vector<FiniteGroup> vg, eg;
    for (std::size_t v = 0; v < n; ++v)
        vg.push_back(r.count(t.vertex(v)) ? random_group(rng, 4) : FiniteGroup::trivial());
    std::vector<std::array<FiniteHom, 2>> rest;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const bool inside = r.count(t.edge(e).first) && r.count(t.edge(e).second);
        std::array<FiniteHom, 2> h;
        if (inside) {
            eg.push_back(random_group(rng, 4));
            for (int s = 0; s < 2; ++s)
                h[s] = random_hom(rng, vg[t.endpoint(e, s)], eg.back());
        } else {
            eg.push_back(FiniteGroup::cyclic(static_cast<int>(rng.uniform(2, 3))));
            for (int s = 0; s < 2; ++s)
                h[s] = FiniteHom::trivial(vg[t.endpoint(e, s)]);
        }
        rest.push_back(h);
    }
    return {GroupGraph<FiniteCarrier>(t, vg, eg, rest), {}, false, r};
}

// ---------------------------------------------------------------------------
// Exact sequences

/// Random G over a tree with a normal, restriction-stable K whose own
/// restrictions are surjective.
inline ExactSequence random_exact_sequence(Rng &rng, std::size_t max_vertices, int max_order = 8) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(max_vertices)));
    const auto t = random_tree(rng, n);
    std::vector<FiniteGroup> vg;
    std::vector<std::vector<Element>> vk;
    for (std::size_t v = 0; v < n; ++v) {
        vg.push_back(random_group(rng, max_order));
        vk.push_back(rng.pick(normal_subgroups(vg.back())));
    }
    std::vector<FiniteGroup> eg;
    std::vector<std::vector<Element>> ek;
    std::vector<std::array<FiniteHom, 2>> rest;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const std::size_t ends[2] = {t.endpoint(e, 0), t.endpoint(e, 1)};
        std::optional<std::pair<FiniteGroup, std::array<FiniteHom, 2>>> found;
        std::vector<Element> kept;
        for (int attempt = 0; attempt < 12 && !found; ++attempt) {
            const int first = static_cast<int>(rng.index(2));
            // edge group: a copy of one endpoint's group or a random small one
            const FiniteGroup ge = rng.chance(2, 3) ? vg[ends[first]] : random_group(rng, max_order);
            const auto hx = random_hom(rng, vg[ends[first]], ge);
            const auto k = image_of(hx, vk[ends[first]]);
            if (!is_normal_subgroup(ge, k))
                continue;
            std::vector<FiniteHom> matches;
            for (const auto &h : cached_homs(vg[ends[1 - first]], ge))
                if (image_of(h, vk[ends[1 - first]]) == k)
                    matches.push_back(h);
            if (matches.empty())
                continue;
            std::array<FiniteHom, 2> hs;
            hs[first] = hx;
            hs[1 - first] = rng.pick(matches);
            found = std::make_pair(ge, hs);
            kept = k;
        }
        if (!found) {
            found = std::make_pair(FiniteGroup::trivial(), std::array<FiniteHom, 2>{FiniteHom::trivial(vg[ends[0]]),
                                                                                  FiniteHom::trivial(vg[ends[1]])});
            kept = {0};
        }
        eg.push_back(found->first);
        ek.push_back(kept);
        rest.push_back(found->second);
    }
    const GroupGraph<FiniteCarrier> g(t, vg, eg, rest);
    std::vector<FiniteGroup> kvg, keg;
    std::vector<FiniteHom> kvi, kei;
    for (std::size_t v = 0; v < n; ++v) {
        auto [s, inc] = subgroup(vg[v], vk[v]);
        kvg.push_back(s);
        kvi.push_back(inc);
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [s, inc] = subgroup(eg[e], ek[e]);
        keg.push_back(s);
        kei.push_back(inc);
    }
    return make_exact_sequence(g, make_sub(g, kvg, keg, kvi, kei));
}

/// Like random_exact_sequence but with one restriction of K made
/// non-surjective, for negative controls.
inline ExactSequence nonsurjective_exact_sequence(Rng &rng) {
    // path a - b with K = G at a, trivial at b, and K_e = G_e nontrivial
    const Graph t({"a", "b"}, {{"a", "b"}});
    const auto ga = random_group(rng, 4, false);
    const GroupGraph<FiniteCarrier> g(t, {ga, FiniteGroup::trivial()}, {ga},
                                      {{FiniteHom::identity(ga), FiniteHom::trivial(FiniteGroup::trivial())}});
    std::vector<Element> all(ga.order());
    std::iota(all.begin(), all.end(), 0);
    auto [ka, ia] = subgroup(ga, all);
    auto [kb, ib] = subgroup(FiniteGroup::trivial(), {0});
    auto [ke, ie] = subgroup(ga, all);
    return make_exact_sequence(g, make_sub(g, {ka, kb}, {ke}, {ia, ib}, {ie}));
}

// ---------------------------------------------------------------------------
// Direct images

struct DirectImageInstance {
    GraphMorphism phi;
    GroupGraph<FiniteCarrier> graph;
};

/// A random group-graph on a tree and a composite of one or two subtree
/// contractions.
inline DirectImageInstance random_direct_image(Rng &rng, std::size_t max_vertices, int max_order = 4) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_vertices)));
    const auto t = random_tree(rng, n);
    const auto g = random_finite_group_graph(rng, t, max_order);
    auto c = contract(t, random_subtree(rng, t, std::min<std::size_t>(n, 3)));
    GraphMorphism phi = c.morphism;
    if (c.tree.vertex_count() > 1 && rng.chance(1, 2)) {
        const auto c2 = contract(c.tree, random_subtree(rng, c.tree, 2));
        phi = c2.morphism.after(phi);
    }
    return {phi, g};
}

// ---------------------------------------------------------------------------
// Foliation specs

struct SpecOptions {
    std::size_t max_vertices = 12;
    /// Percent chances.
    int dicritical = 8;
    int nodal = 8;
    int regular = 6;
    /// Allow cut components without red part (made finite through a green root).
    bool allow_green_components = true;
};

namespace detail {

inline int random_order(Rng &rng) { return static_cast<int>(rng.uniform(1, 6)); }

inline int random_divisor(Rng &rng, int n) {
    std::vector<int> ds;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0)
            ds.push_back(d);
    return rng.pick(ds);
}

/// Periodic local holonomy compatible with vertex v (divides a finite order).
inline LocalHolonomy periodic_at(Rng &rng, const FoliationSpec &s, std::size_t v) {
    const auto &h = *s.vertices[v].holonomy;
    return {true, h.finite ? random_divisor(rng, h.order) : random_order(rng)};
}

} // namespace detail

/// Valid spec of finite type. Each cut component gets a connected red core
/// (or, when allowed, a green root) and every edge pointing away from it
/// satisfies the generation condition at its outer end.
inline FoliationSpec finite_type_spec(Rng &rng, const SpecOptions &opt = {}) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(opt.max_vertices)));
    FoliationSpec s;
    s.tree = random_tree(rng, n, "D");
    const Graph &t = s.tree;
    s.vertices.resize(n);
    s.edges.resize(t.edge_count());
    for (std::size_t v = 0; v < n; ++v)
        s.vertices[v].kind = rng.chance(opt.dicritical, 100) ? VertexKind::dicritical : VertexKind::invariant;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto roll = rng.uniform(0, 99);
        s.edges[e].kind = roll < opt.nodal                 ? EdgeKind::nodal
                          : roll < opt.nodal + opt.regular ? EdgeKind::regular
                                                           : EdgeKind::singular;
    }
    // components of the cut graph from kinds alone
    std::vector<std::size_t> cut_edges;
    VertexSet inv;
    for (std::size_t v = 0; v < n; ++v)
        if (s.vertices[v].kind == VertexKind::invariant)
            inv.insert(t.vertex(v));
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        if (ggc::detail::edge_in_cut(s, e))
            cut_edges.push_back(e);
    const auto cut = subgraph(t, inv, cut_edges);
    std::vector<bool> red(n, false), red_edge(t.edge_count(), false);
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<std::size_t> queue;
    for (const auto &c : connected_components(cut)) {
        const auto comp = subgraph(cut, vertex_names(cut, c.vertices), c.edges);
        const bool green_root = opt.allow_green_components && rng.chance(1, 5);
        const auto core = green_root ? VertexSet{comp.vertex(rng.index(comp.vertex_count()))}
                                     : random_subtree(rng, comp, comp.vertex_count());
        for (const auto &name : core) {
            const auto v = t.vertex_index(name);
            red[v] = !green_root;
            dist[v] = 0;
            queue.push_back(v);
        }
        if (!green_root)
            for (const auto &e : comp.edges())
                if (core.count(e.first) && core.count(e.second))
                    red_edge[t.edge_index(e.key())] = true;
    }
    std::set<std::size_t> cut_set(cut_edges.begin(), cut_edges.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (auto e : t.incident(queue[qi])) {
            if (!cut_set.count(e))
                continue;
            const auto w = t.other_end(e, queue[qi]);
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[queue[qi]] + 1;
                queue.push_back(w);
            }
        }
    for (std::size_t v = 0; v < n; ++v) {
        if (s.vertices[v].kind != VertexKind::invariant)
            continue;
        GroupHolonomy h;
        if (red[v]) {
            h.finite = false;
            h.tdim = static_cast<int>(rng.uniform(0, 1));
        } else {
            h.order = detail::random_order(rng);
        }
        s.vertices[v].holonomy = h;
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto &d = s.edges[e];
        if (d.kind == EdgeKind::regular)
            continue;
        if (red_edge[e]) {
            int tmax = 0;
            for (int side = 0; side < 2; ++side)
                tmax = std::max(tmax, s.vertices[t.endpoint(e, side)].holonomy->tdim);
            d.tdim = static_cast<int>(rng.uniform(tmax, 1));
            const int np = static_cast<int>(rng.index(3));
            for (int side = 0; side < 2; ++side)
                d.holonomy[side] = (np == 2 || np == side) ? LocalHolonomy{false, 1}
                                                           : detail::periodic_at(rng, s, t.endpoint(e, side));
            continue;
        }
        for (int side = 0; side < 2; ++side) {
            const auto v = t.endpoint(e, side);
            if (s.vertices[v].kind != VertexKind::invariant)
                continue;
            d.holonomy[side] = detail::periodic_at(rng, s, v);
        }
        if (d.kind == EdgeKind::singular && cut_set.count(e)) {
            auto x = t.endpoint(e, 0), y = t.endpoint(e, 1);
            if (dist[x] > dist[y])
                std::swap(x, y);
            // y is the outer end: its holonomy group is generated by this edge
            d.holonomy[t.side_of(e, y)] = LocalHolonomy{true, s.vertices[y].holonomy->order};
        }
    }
    return s;
}

/// Like finite_type_spec without green-rooted components, then one
/// geodesic of the given type (1 to 4) is injected. Returns nothing when the
/// random tree has no room for that type.
inline std::optional<FoliationSpec> inject_geodesic(Rng &rng, int type, SpecOptions opt = {}) {
    opt.allow_green_components = false;
    auto s = finite_type_spec(rng, opt);
    const Graph &t = s.tree;
    const auto cut = cut_graph(s);
    const auto red = red_subgraph(s, cut);
    struct Candidate {
        std::size_t edge, inner, outer, depth;
    };
    std::vector<Candidate> cands;
    for (std::size_t ci = 0; ci < cut.components.size(); ++ci) {
        const auto &c = cut.components[ci];
        const auto reach = ggc::detail::reach_from(s, c, red.per_component[ci].vertices);
        const std::set<std::size_t> inside(red.per_component[ci].edges.begin(), red.per_component[ci].edges.end());
        for (auto e : c.edges) {
            if (inside.count(e))
                continue;
            auto x = t.endpoint(e, 0), y = t.endpoint(e, 1);
            if (reach.dist[x] > reach.dist[y])
                std::swap(x, y);
            cands.push_back({e, x, y, reach.dist[y]});
        }
    }
    std::vector<Candidate> ok;
    for (const auto &c : cands) {
        const bool inner_red = ggc::detail::vertex_red(s, c.inner);
        if ((type == 4 || type == 2) && inner_red)
            ok.push_back(c);
        if ((type == 3 || type == 1) && c.depth >= 2)
            ok.push_back(c);
    }
    if (ok.empty())
        return std::nullopt;
    const auto c = rng.pick(ok);
    auto &outer = s.vertices[c.outer];
    const int side_in = t.side_of(c.edge, c.inner);
    if (type == 4 || type == 3) {
        outer.holonomy = GroupHolonomy{false, 1, static_cast<int>(rng.uniform(0, 1))};
    } else {
        if (type == 1) {
            // make the inner restriction bijective
            s.edges[c.edge].holonomy[side_in] = LocalHolonomy{true, s.vertices[c.inner].holonomy->order};
        }
        // double the outer group so the edge no longer generates it
        outer.holonomy->order *= 2;
    }
    return s;
}

/// Arbitrary valid spec: random kinds, colors and orders with no structure
/// imposed beyond validity.
inline FoliationSpec random_spec(Rng &rng, const SpecOptions &opt = {}) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(opt.max_vertices)));
    FoliationSpec s;
    s.tree = random_tree(rng, n, "D");
    const Graph &t = s.tree;
    s.vertices.resize(n);
    s.edges.resize(t.edge_count());
    for (std::size_t v = 0; v < n; ++v) {
        auto &d = s.vertices[v];
        d.kind = rng.chance(opt.dicritical, 100) ? VertexKind::dicritical : VertexKind::invariant;
        if (d.kind == VertexKind::dicritical)
            continue;
        if (rng.chance(2, 5))
            d.holonomy = GroupHolonomy{false, 1, static_cast<int>(rng.uniform(0, 1))};
        else
            d.holonomy = GroupHolonomy{true, detail::random_order(rng), 0};
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto &d = s.edges[e];
        const auto roll = rng.uniform(0, 99);
        d.kind = roll < opt.nodal                 ? EdgeKind::nodal
                 : roll < opt.nodal + opt.regular ? EdgeKind::regular
                                                  : EdgeKind::singular;
        if (d.kind == EdgeKind::regular)
            continue;
        const bool both_red =
            ggc::detail::vertex_red(s, t.endpoint(e, 0)) && ggc::detail::vertex_red(s, t.endpoint(e, 1));
        const bool make_red = d.kind == EdgeKind::singular && both_red && rng.chance(1, 2);
        for (int side = 0; side < 2; ++side) {
            const auto v = t.endpoint(e, side);
            if (s.vertices[v].kind != VertexKind::invariant)
                continue;
            d.holonomy[side] = detail::periodic_at(rng, s, v);
            // bias towards the generating order at green ends
            if (s.vertices[v].holonomy->finite && rng.chance(1, 2))
                d.holonomy[side]->order = s.vertices[v].holonomy->order;
        }
        if (make_red) {
            d.holonomy[rng.index(2)] = LocalHolonomy{false, 1};
            int tmax = 0;
            for (int side = 0; side < 2; ++side)
                tmax = std::max(tmax, s.vertices[t.endpoint(e, side)].holonomy->tdim);
            d.tdim = static_cast<int>(rng.uniform(tmax, 1));
        }
    }
    return s;
}

/// Same spec with vertex ids replaced through a random bijection onto
/// fresh ids.
inline FoliationSpec relabel(Rng &rng, const FoliationSpec &s) {
    const Graph &t = s.tree;
    auto fresh = names(t.vertex_count(), "X");
    rng.shuffle(fresh);
    std::map<std::string, std::string> ren;
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        ren[t.vertex(v)] = fresh[v];
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : t.edges())
        edges.emplace_back(ren[e.first], ren[e.second]);
    FoliationSpec out;
    out.tree = Graph(fresh, edges);
    out.vertices.resize(t.vertex_count());
    out.edges.resize(t.edge_count());
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        out.vertices[out.tree.vertex_index(ren[t.vertex(v)])] = s.vertices[v];
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto &old = t.edge(e);
        const auto ne = out.tree.edge_index(ren[old.first], ren[old.second]);
        auto d = s.edges[e];
        if (out.tree.edge(ne).first != ren[old.first])
            std::swap(d.holonomy[0], d.holonomy[1]);
        out.edges[ne] = d;
    }
    return out;
}

} // namespace ggc::gen
