#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "carrier.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace ggc {

/// A group (or vector space) on every vertex and edge of a graph, with a
/// restriction hom from each vertex to each incident edge.
template <class C> class GroupGraph {
  public:
    using Carrier = C;
    using Object = typename C::Object;
    using Hom = typename C::Hom;

    GroupGraph() = default;

    /// `restrictions[e][side]` maps the group of endpoint `side` of edge e
    /// (0 = tail, 1 = head) into the group of e.
    GroupGraph(Graph base, std::vector<Object> vertex_groups, std::vector<Object> edge_groups,
               std::vector<std::array<Hom, 2>> restrictions)
        : base_(std::move(base)), vertex_groups_(std::move(vertex_groups)), edge_groups_(std::move(edge_groups)),
          restrictions_(std::move(restrictions)) {
        if (vertex_groups_.size() != base_.vertex_count() || edge_groups_.size() != base_.edge_count() ||
            restrictions_.size() != base_.edge_count())
            throw InvalidInput("group-graph: every vertex, edge and incidence needs an assignment");
        for (std::size_t e = 0; e < base_.edge_count(); ++e)
            for (int s = 0; s < 2; ++s)
                if (!C::valid(restrictions_[e][s], vertex_groups_[base_.endpoint(e, s)], edge_groups_[e]))
                    throw InvalidInput("group-graph: restriction " +
                                       incidence_key(base_.vertex(base_.endpoint(e, s)), base_.edge(e)) +
                                       " is not a homomorphism between the assigned groups");
    }

    /// The same object everywhere with identity restrictions.
    static GroupGraph constant(const Graph &g, const Object &obj) {
        std::vector<std::array<Hom, 2>> rest(g.edge_count(), {C::identity(obj), C::identity(obj)});
        return GroupGraph(g, std::vector<Object>(g.vertex_count(), obj), std::vector<Object>(g.edge_count(), obj),
                          rest);
    }

    const Graph &base() const { return base_; }
    const Object &vertex_group(std::size_t v) const { return vertex_groups_.at(v); }
    const Object &edge_group(std::size_t e) const { return edge_groups_.at(e); }
    const std::vector<Object> &vertex_groups() const { return vertex_groups_; }
    const std::vector<Object> &edge_groups() const { return edge_groups_; }
    const Hom &restriction(std::size_t e, int side) const { return restrictions_.at(e)[side]; }
    /// Restriction from vertex index v into incident edge e.
    const Hom &restriction_from(std::size_t v, std::size_t e) const { return restriction(e, base_.side_of(e, v)); }

    friend bool operator==(const GroupGraph &a, const GroupGraph &b) {
        if (!(a.base_ == b.base_) || !(a.vertex_groups_ == b.vertex_groups_) || !(a.edge_groups_ == b.edge_groups_))
            return false;
        for (std::size_t e = 0; e < a.restrictions_.size(); ++e)
            for (int s = 0; s < 2; ++s)
                if (!C::equal(a.restrictions_[e][s], b.restrictions_[e][s]))
                    return false;
        return true;
    }

  private:
    Graph base_;
    std::vector<Object> vertex_groups_;
    std::vector<Object> edge_groups_;
    std::vector<std::array<Hom, 2>> restrictions_;
};

/// A morphism G -> G' of group-graphs over a graph morphism phi : A' -> A,
/// G over A and G' over A'. For each vertex or edge x of A' it gives a hom
/// G_{phi(x)} -> G'_x, where phi(x) may be a vertex when phi collapses x.
template <class C> struct GroupGraphMorphism {
    using Object = typename C::Object;
    using Hom = typename C::Hom;

    GraphMorphism over;
    GroupGraph<C> source;
    GroupGraph<C> target;
    std::vector<Hom> vertex_maps;
    std::vector<Hom> edge_maps;

    /// Group of G sitting at phi(e') for an edge e' of A'.
    const Object &source_at_edge(std::size_t e) const {
        const auto &im = over.edge_image(e);
        return im.collapsed ? source.vertex_group(im.index) : source.edge_group(im.index);
    }
    /// Restriction of G from phi(v') into phi(e'), identity when e' collapses.
    Hom source_restriction(std::size_t e, int side) const {
        const auto &im = over.edge_image(e);
        const auto v = over.vertex_image(over.source().endpoint(e, side));
        if (im.collapsed)
            return C::identity(source.vertex_group(v));
        return source.restriction_from(v, im.index);
    }

    /// Throws InvalidInput unless shapes match and every square commutes.
    void validate() const {
        const Graph &a2 = over.source();
        if (!(source.base() == over.target()) || !(target.base() == a2))
            throw InvalidInput("group-graph morphism: base graphs do not match the graph morphism");
        if (vertex_maps.size() != a2.vertex_count() || edge_maps.size() != a2.edge_count())
            throw InvalidInput("group-graph morphism: a map is missing");
        for (std::size_t v = 0; v < a2.vertex_count(); ++v)
            if (!C::valid(vertex_maps[v], source.vertex_group(over.vertex_image(v)), target.vertex_group(v)))
                throw InvalidInput("group-graph morphism: bad map at vertex " + a2.vertex(v));
        for (std::size_t e = 0; e < a2.edge_count(); ++e) {
            if (!C::valid(edge_maps[e], source_at_edge(e), target.edge_group(e)))
                throw InvalidInput("group-graph morphism: bad map at edge " + a2.edge(e).key());
            for (int s = 0; s < 2; ++s) {
                const auto v = a2.endpoint(e, s);
                const auto lhs = C::compose(target.restriction(e, s), vertex_maps[v]);
                const auto rhs = C::compose(edge_maps[e], source_restriction(e, s));
                if (!C::equal(lhs, rhs))
                    throw InvalidInput("group-graph morphism: square does not commute at " +
                                       incidence_key(a2.vertex(v), a2.edge(e)));
            }
        }
    }

    /// this ∘ first, where first : G0 -> source and this : source -> target.
    GroupGraphMorphism after(const GroupGraphMorphism &first) const {
        GroupGraphMorphism out;
        out.over = first.over.after(over);
        out.source = first.source;
        out.target = target;
        const Graph &a2 = over.source();
        for (std::size_t v = 0; v < a2.vertex_count(); ++v)
            out.vertex_maps.push_back(C::compose(vertex_maps[v], first.vertex_maps[over.vertex_image(v)]));
        for (std::size_t e = 0; e < a2.edge_count(); ++e) {
            const auto &im = over.edge_image(e);
            if (im.collapsed) {
                out.edge_maps.push_back(C::compose(edge_maps[e], first.vertex_maps[im.index]));
            } else {
                out.edge_maps.push_back(C::compose(edge_maps[e], first.edge_maps[im.index]));
            }
        }
        out.validate();
        return out;
    }

    static GroupGraphMorphism identity(const GroupGraph<C> &g) {
        GroupGraphMorphism m;
        m.over = GraphMorphism::identity(g.base());
        m.source = g;
        m.target = g;
        for (const auto &o : g.vertex_groups())
            m.vertex_maps.push_back(C::identity(o));
        for (const auto &o : g.edge_groups())
            m.edge_maps.push_back(C::identity(o));
        return m;
    }
};

template <class C> struct Pullback {
    GroupGraph<C> graph;
    GroupGraphMorphism<C> canonical;
};

/// phi^*G for phi : A' -> A and G over A, with the canonical morphism
/// G -> phi^*G given by identities.
template <class C> Pullback<C> pullback(const GraphMorphism &phi, const GroupGraph<C> &g) {
    if (!(phi.target() == g.base()))
        throw InvalidInput("pullback: group-graph is not over the target of the graph morphism");
    const Graph &a2 = phi.source();
    std::vector<typename C::Object> vg, eg;
    std::vector<std::array<typename C::Hom, 2>> rest;
    for (std::size_t v = 0; v < a2.vertex_count(); ++v)
        vg.push_back(g.vertex_group(phi.vertex_image(v)));
    for (std::size_t e = 0; e < a2.edge_count(); ++e) {
        const auto &im = phi.edge_image(e);
        if (im.collapsed) {
            const auto &obj = g.vertex_group(im.index);
            eg.push_back(obj);
            rest.push_back({C::identity(obj), C::identity(obj)});
        } else {
            eg.push_back(g.edge_group(im.index));
            rest.push_back({g.restriction_from(phi.vertex_image(a2.endpoint(e, 0)), im.index),
                            g.restriction_from(phi.vertex_image(a2.endpoint(e, 1)), im.index)});
        }
    }
    Pullback<C> out{GroupGraph<C>(a2, vg, eg, rest), {}};
    out.canonical.over = phi;
    out.canonical.source = g;
    out.canonical.target = out.graph;
    for (const auto &o : vg)
        out.canonical.vertex_maps.push_back(C::identity(o));
    for (const auto &o : eg)
        out.canonical.edge_maps.push_back(C::identity(o));
    return out;
}

/// Restriction of G to a subgraph of its base (pullback along the inclusion).
template <class C> Pullback<C> restrict_to(const GroupGraph<C> &g, const Graph &sub) {
    return pullback(GraphMorphism::inclusion(sub, g.base()), g);
}

template <class C> struct DirectImage {
    GroupGraph<C> graph;
    /// The canonical morphism phi_*G -> G over phi.
    GroupGraphMorphism<C> canonical;
};

/// phi_*G for phi : A -> A' and G over A. A vertex of A' carries the
/// compatible families on its fiber; an edge carries the product of the
/// edge groups over it (trivial when nothing maps there).
template <class C>
DirectImage<C> direct_image(const GraphMorphism &phi, const GroupGraph<C> &g, std::size_t budget = kDefaultBudget) {
    using Object = typename C::Object;
    using Hom = typename C::Hom;
    if (!(phi.source() == g.base()))
        throw InvalidInput("direct_image: group-graph is not over the source of the graph morphism");
    const Graph &a = phi.source();
    const Graph &a2 = phi.target();

    std::vector<Object> vg;
    // proj[v] : (phi_*G)_{phi(v)} -> G_v
    std::vector<Hom> vertex_proj(a.vertex_count());
    for (std::size_t t = 0; t < a2.vertex_count(); ++t) {
        const auto fiber = phi.vertex_fiber(t);
        std::map<std::size_t, std::size_t> slot;
        std::vector<Object> factors;
        for (auto v : fiber) {
            slot.emplace(v, factors.size());
            factors.push_back(g.vertex_group(v));
        }
        std::vector<Constraint<Object, Hom>> cons;
        for (auto e : phi.collapsed_fiber(t)) {
            const auto x = a.endpoint(e, 0), y = a.endpoint(e, 1);
            cons.push_back({slot.at(x), g.restriction(e, 0), slot.at(y), g.restriction(e, 1), g.edge_group(e)});
        }
        auto fam = C::compatible_families(factors, cons, budget);
        for (std::size_t i = 0; i < fiber.size(); ++i)
            vertex_proj[fiber[i]] = fam.projections[i];
        vg.push_back(fam.object);
    }

    std::vector<Object> eg;
    std::vector<std::array<Hom, 2>> rest;
    std::vector<Hom> edge_proj(a.edge_count());
    for (std::size_t t = 0; t < a2.edge_count(); ++t) {
        const auto fiber = phi.edge_fiber(t);
        std::vector<Object> factors;
        for (auto e : fiber)
            factors.push_back(g.edge_group(e));
        auto prod = C::product(factors, budget);
        for (std::size_t i = 0; i < fiber.size(); ++i)
            edge_proj[fiber[i]] = prod.projections[i];
        std::array<Hom, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto w = a2.endpoint(t, s);
            std::vector<Hom> parts;
            for (auto e : fiber) {
                const auto x = phi.vertex_image(a.endpoint(e, 0)) == w ? a.endpoint(e, 0) : a.endpoint(e, 1);
                parts.push_back(C::compose(g.restriction_from(x, e), vertex_proj[x]));
            }
            r[s] = C::into_product(prod, parts, vg[w]);
        }
        eg.push_back(prod.object);
        rest.push_back(std::move(r));
    }

    DirectImage<C> out{GroupGraph<C>(a2, vg, eg, rest), {}};
    auto &j = out.canonical;
    j.over = phi;
    j.source = out.graph;
    j.target = g;
    j.vertex_maps = vertex_proj;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const auto &im = phi.edge_image(e);
        if (im.collapsed)
            j.edge_maps.push_back(C::compose(g.restriction(e, 0), vertex_proj[a.endpoint(e, 0)]));
        else
            j.edge_maps.push_back(edge_proj[e]);
    }
    j.validate();
    return out;
}

/// Sub-group-graph given by an injective morphism over the identity.
template <class C> using SubGroupGraph = GroupGraphMorphism<C>;

template <class C> bool is_over_identity(const GroupGraphMorphism<C> &m) {
    return m.over == GraphMorphism::identity(m.over.source());
}

template <class C> struct QuotientResult {
    GroupGraph<C> graph;
    /// Projection G -> G/K over the identity.
    GroupGraphMorphism<C> projection;
};

/// G/K for a normal, restriction-stable sub-group-graph K -> G.
template <class C> QuotientResult<C> quotient(const GroupGraph<C> &g, const SubGroupGraph<C> &k) {
    using Object = typename C::Object;
    using Hom = typename C::Hom;
    if (!is_over_identity(k) || !(k.target == g))
        throw PreconditionFailed("quotient: sub-group-graph must map into G over the identity");
    const Graph &a = g.base();
    std::vector<Object> vg, eg;
    std::vector<Hom> vp, ep;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        if (!C::is_injective(k.vertex_maps[v], k.source.vertex_group(v), g.vertex_group(v)))
            throw PreconditionFailed("quotient: inclusion is not injective at " + a.vertex(v));
        auto [q, p] = C::quotient(g.vertex_group(v), {k.source.vertex_group(v), k.vertex_maps[v]});
        vg.push_back(q);
        vp.push_back(p);
    }
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        if (!C::is_injective(k.edge_maps[e], k.source.edge_group(e), g.edge_group(e)))
            throw PreconditionFailed("quotient: inclusion is not injective at " + a.edge(e).key());
        auto [q, p] = C::quotient(g.edge_group(e), {k.source.edge_group(e), k.edge_maps[e]});
        eg.push_back(q);
        ep.push_back(p);
    }
    std::vector<std::array<Hom, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        std::array<Hom, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto v = a.endpoint(e, s);
            try {
                r[s] = C::factor(C::compose(ep[e], g.restriction(e, s)), vp[v], vg[v]);
            } catch (const PreconditionFailed &) {
                throw PreconditionFailed("quotient: sub-group-graph is not restriction-stable at " +
                                         incidence_key(a.vertex(v), a.edge(e)));
            }
        }
        rest.push_back(std::move(r));
    }
    QuotientResult<C> out{GroupGraph<C>(a, vg, eg, rest), {}};
    out.projection.over = GraphMorphism::identity(a);
    out.projection.source = g;
    out.projection.target = out.graph;
    out.projection.vertex_maps = vp;
    out.projection.edge_maps = ep;
    out.projection.validate();
    return out;
}

/// Sub-group-graph from per-star subobjects; restrictions are obtained by
/// factoring the ambient ones, which fails unless they are stable.
template <class C>
SubGroupGraph<C> make_sub(const GroupGraph<C> &ambient, const std::vector<typename C::Object> &vg,
                          const std::vector<typename C::Object> &eg, const std::vector<typename C::Hom> &vi,
                          const std::vector<typename C::Hom> &ei) {
    const Graph &a = ambient.base();
    std::vector<std::array<typename C::Hom, 2>> rest;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        std::array<typename C::Hom, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto v = a.endpoint(e, s);
            try {
                r[s] = C::lift_through(C::compose(ambient.restriction(e, s), vi[v]), ei[e], ambient.edge_group(e));
            } catch (const PreconditionFailed &) {
                throw PreconditionFailed("sub-group-graph is not restriction-stable at " +
                                         incidence_key(a.vertex(v), a.edge(e)));
            }
        }
        rest.push_back(std::move(r));
    }
    SubGroupGraph<C> out;
    out.over = GraphMorphism::identity(a);
    out.source = GroupGraph<C>(a, vg, eg, rest);
    out.target = ambient;
    out.vertex_maps = vi;
    out.edge_maps = ei;
    out.validate();
    return out;
}

/// Kernel of m, as a sub-group-graph of phi^*G (which is G when m lies over
/// the identity).
template <class C> SubGroupGraph<C> kernel(const GroupGraphMorphism<C> &m) {
    using Object = typename C::Object;
    using Hom = typename C::Hom;
    auto pb = pullback(m.over, m.source).graph;
    const Graph &a = pb.base();
    std::vector<Object> vg, eg;
    std::vector<Hom> vi, ei;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        auto s = C::kernel(m.vertex_maps[v], pb.vertex_group(v), m.target.vertex_group(v));
        vg.push_back(s.object);
        vi.push_back(s.inclusion);
    }
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        auto s = C::kernel(m.edge_maps[e], pb.edge_group(e), m.target.edge_group(e));
        eg.push_back(s.object);
        ei.push_back(s.inclusion);
    }
    return make_sub(pb, vg, eg, vi, ei);
}

/// Image of m, as a sub-group-graph of the target.
template <class C> SubGroupGraph<C> image(const GroupGraphMorphism<C> &m) {
    using Object = typename C::Object;
    using Hom = typename C::Hom;
    const GroupGraph<C> &t = m.target;
    const Graph &a = t.base();
    std::vector<Object> vg, eg;
    std::vector<Hom> vi, ei;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        auto s = C::image(m.vertex_maps[v], m.source.vertex_group(m.over.vertex_image(v)), t.vertex_group(v));
        vg.push_back(s.object);
        vi.push_back(s.inclusion);
    }
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        auto s = C::image(m.edge_maps[e], m.source_at_edge(e), t.edge_group(e));
        eg.push_back(s.object);
        ei.push_back(s.inclusion);
    }
    return make_sub(t, vg, eg, vi, ei);
}

/// T ⊗ W for dim W = w: dimensions multiply, restrictions become ρ ⊗ id_W.
/// Coordinate (t, k) of T_x ⊗ W has index t * w + k.
template <class F> GroupGraph<LinearCarrier<F>> tensor(const GroupGraph<LinearCarrier<F>> &t, std::size_t w) {
    using M = Matrix<F>;
    const Graph &a = t.base();
    std::vector<VectorSpace> vg, eg;
    std::vector<std::array<M, 2>> rest;
    for (const auto &o : t.vertex_groups())
        vg.push_back({o.dim * w});
    for (const auto &o : t.edge_groups())
        eg.push_back({o.dim * w});
    const M id = M::identity(w);
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        rest.push_back({t.restriction(e, 0).kron(id), t.restriction(e, 1).kron(id)});
    return GroupGraph<LinearCarrier<F>>(a, vg, eg, rest);
}

/// The stars carrying a nontrivial group, and their path-connected pieces.
struct Support {
    std::vector<bool> vertices;
    std::vector<bool> edges;
    struct Piece {
        std::vector<std::size_t> vertices;
        std::vector<std::size_t> edges;
        bool single_edge() const { return vertices.empty() && edges.size() == 1; }
    };
    /// Ordered by smallest vertex index, pieces without a vertex after those
    /// with one, by smallest edge index.
    std::vector<Piece> pieces;

    bool empty() const {
        return std::find(vertices.begin(), vertices.end(), true) == vertices.end() &&
               std::find(edges.begin(), edges.end(), true) == edges.end();
    }
};

template <class C> Support support(const GroupGraph<C> &g) {
    const Graph &a = g.base();
    Support s;
    const std::size_t nv = a.vertex_count(), ne = a.edge_count();
    s.vertices.resize(nv);
    s.edges.resize(ne);
    for (std::size_t v = 0; v < nv; ++v)
        s.vertices[v] = !C::is_trivial(g.vertex_group(v));
    for (std::size_t e = 0; e < ne; ++e)
        s.edges[e] = !C::is_trivial(g.edge_group(e));
    // union-find over vertices [0, nv) and edges [nv, nv + ne)
    std::vector<std::size_t> parent(nv + ne);
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < ne; ++e) {
        if (!s.edges[e])
            continue;
        for (int side = 0; side < 2; ++side) {
            const auto v = a.endpoint(e, side);
            if (s.vertices[v]) {
                auto x = find(v), y = find(nv + e);
                if (x != y)
                    parent[std::max(x, y)] = std::min(x, y);
            }
        }
    }
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < nv + ne; ++i) {
        const bool in = i < nv ? s.vertices[i] : s.edges[i - nv];
        if (!in)
            continue;
        auto [it, fresh] = slot.emplace(find(i), s.pieces.size());
        if (fresh)
            s.pieces.emplace_back();
        if (i < nv)
            s.pieces[it->second].vertices.push_back(i);
        else
            s.pieces[it->second].edges.push_back(i - nv);
    }
    return s;
}

struct RegularityReport {
    bool regular = true;
    /// (vertex index, edge index) where the restriction should be an isomorphism and is not.
    std::vector<std::pair<std::size_t, std::size_t>> violations;
};

template <class C> RegularityReport regularity(const GroupGraph<C> &g) {
    const Graph &a = g.base();
    RegularityReport r;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        if (C::is_trivial(g.edge_group(e)))
            continue;
        for (int s = 0; s < 2; ++s) {
            const auto v = a.endpoint(e, s);
            if (C::is_trivial(g.vertex_group(v)))
                continue;
            if (!C::is_iso(g.restriction(e, s), g.vertex_group(v), g.edge_group(e))) {
                r.regular = false;
                r.violations.emplace_back(v, e);
            }
        }
    }
    return r;
}

template <class C> bool is_regular(const GroupGraph<C> &g) { return regularity(g).regular; }

/// Drop every edge whose group is trivial; returns G restricted to what is left.
template <class C> Pullback<C> remove_offsupport_edges(const GroupGraph<C> &g) {
    const Graph &a = g.base();
    std::vector<std::size_t> keep;
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        if (!C::is_trivial(g.edge_group(e)))
            keep.push_back(e);
    const Graph sub = subgraph(a, VertexSet(a.vertices().begin(), a.vertices().end()), keep);
    return restrict_to(g, sub);
}

} // namespace ggc
