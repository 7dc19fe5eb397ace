#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "group_graph.hpp"
#include "theorems.hpp"

namespace ggc {

enum class VertexKind { invariant, dicritical };
enum class EdgeKind { singular, nodal, regular };

/// Holonomy group of an invariant component: finite of some order, or
/// infinite with a transverse-symmetry stalk of dimension 0 or 1.
struct GroupHolonomy {
    bool finite = true;
    int order = 1;
    int tdim = 0;
    friend bool operator==(const GroupHolonomy &, const GroupHolonomy &) = default;
};

/// Local holonomy at one end of an edge: periodic of some order or not.
struct LocalHolonomy {
    bool periodic = true;
    int order = 1;
    friend bool operator==(const LocalHolonomy &, const LocalHolonomy &) = default;
};

struct VertexData {
    VertexKind kind = VertexKind::invariant;
    std::optional<GroupHolonomy> holonomy;
    /// Carried through to reports, never interpreted.
    std::optional<std::string> cs_index;
    friend bool operator==(const VertexData &, const VertexData &) = default;
};

struct EdgeData {
    EdgeKind kind = EdgeKind::singular;
    std::optional<int> tdim;
    /// Indexed by side: 0 for the edge's first endpoint, 1 for the second.
    std::array<std::optional<LocalHolonomy>, 2> holonomy;
    friend bool operator==(const EdgeData &, const EdgeData &) = default;
};

/// Decorated dual tree. `vertices` and `edges` are indexed like `tree`.
struct FoliationSpec {
    Graph tree;
    std::vector<VertexData> vertices;
    std::vector<EdgeData> edges;
    friend bool operator==(const FoliationSpec &, const FoliationSpec &) = default;
};

inline const char *to_string(VertexKind k) { return k == VertexKind::invariant ? "invariant" : "dicritical"; }
inline const char *to_string(EdgeKind k) {
    switch (k) {
    case EdgeKind::singular:
        return "singular";
    case EdgeKind::nodal:
        return "nodal";
    default:
        return "regular";
    }
}

namespace detail {

inline bool vertex_red(const FoliationSpec &s, std::size_t v) {
    const auto &d = s.vertices[v];
    return d.kind == VertexKind::invariant && d.holonomy && !d.holonomy->finite;
}

inline bool edge_in_cut(const FoliationSpec &s, std::size_t e) {
    if (s.edges[e].kind != EdgeKind::singular)
        return false;
    for (int side = 0; side < 2; ++side)
        if (s.vertices[s.tree.endpoint(e, side)].kind != VertexKind::invariant)
            return false;
    return true;
}

inline bool edge_red(const FoliationSpec &s, std::size_t e) {
    if (!edge_in_cut(s, e))
        return false;
    for (const auto &h : s.edges[e].holonomy)
        if (h && !h->periodic)
            return true;
    return false;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Validation

inline std::vector<std::string> validate(const FoliationSpec &s) {
    std::vector<std::string> out;
    const Graph &t = s.tree;
    if (!is_tree(t))
        out.push_back("tree: graph is not a nonempty tree");
    if (s.vertices.size() != t.vertex_count() || s.edges.size() != t.edge_count()) {
        out.push_back("decorations do not match the tree");
        return out;
    }
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const auto &d = s.vertices[v];
        const auto &name = t.vertex(v);
        if (d.kind == VertexKind::dicritical) {
            if (d.holonomy)
                out.push_back(name + ": dicritical vertex carries holonomy data");
            continue;
        }
        if (!d.holonomy) {
            out.push_back(name + ": invariant vertex lacks holonomy data");
            continue;
        }
        if (d.holonomy->finite && d.holonomy->order < 1)
            out.push_back(name + ": holonomy order must be positive");
        if (!d.holonomy->finite && d.holonomy->tdim != 0 && d.holonomy->tdim != 1)
            out.push_back(name + ": tdim must be 0 or 1");
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto &d = s.edges[e];
        const auto key = t.edge(e).key();
        for (int side = 0; side < 2; ++side) {
            const auto v = t.endpoint(e, side);
            const auto &vd = s.vertices[v];
            const auto &h = d.holonomy[side];
            const auto inc = incidence_key(t.vertex(v), t.edge(e));
            if (d.kind == EdgeKind::regular && h) {
                out.push_back(inc + ": regular edge carries holonomy data");
                continue;
            }
            if (vd.kind == VertexKind::dicritical) {
                if (h)
                    out.push_back(inc + ": holonomy at a dicritical vertex");
                continue;
            }
            if (!h) {
                if (d.kind == EdgeKind::singular)
                    out.push_back(inc + ": missing local holonomy");
                continue;
            }
            if (h->periodic && h->order < 1)
                out.push_back(inc + ": periodic order must be positive");
            if (!vd.holonomy)
                continue;
            if (!h->periodic && vd.holonomy->finite)
                out.push_back(inc + ": non-periodic holonomy in a finite holonomy group");
            if (h->periodic && h->order >= 1 && vd.holonomy->finite && vd.holonomy->order >= 1 &&
                vd.holonomy->order % h->order != 0)
                out.push_back(inc + ": order " + std::to_string(h->order) + " does not divide " +
                              std::to_string(vd.holonomy->order));
        }
        bool nonperiodic = false;
        for (const auto &h : d.holonomy)
            nonperiodic = nonperiodic || (h && !h->periodic);
        const bool red = nonperiodic && d.kind == EdgeKind::singular;
        if (nonperiodic && d.kind != EdgeKind::singular && d.kind != EdgeKind::nodal)
            out.push_back(key + ": non-periodic holonomy on a " + std::string(to_string(d.kind)) + " edge");
        if (red) {
            for (int side = 0; side < 2; ++side)
                if (!detail::vertex_red(s, t.endpoint(e, side)))
                    out.push_back(key + ": red edge has endpoint " + t.vertex(t.endpoint(e, side)) +
                                  " without infinite holonomy group");
            if (!d.tdim)
                out.push_back(key + ": red edge lacks tdim");
            else if (*d.tdim != 0 && *d.tdim != 1)
                out.push_back(key + ": tdim must be 0 or 1");
            else
                for (int side = 0; side < 2; ++side) {
                    const auto v = t.endpoint(e, side);
                    if (detail::vertex_red(s, v) && s.vertices[v].holonomy->tdim > *d.tdim)
                        out.push_back(incidence_key(t.vertex(v), t.edge(e)) +
                                      ": vertex tdim exceeds edge tdim on a red incidence");
                }
        } else if (d.tdim) {
            out.push_back(key + ": tdim given on an edge that is not red");
        }
    }
    return out;
}

inline void require_valid(const FoliationSpec &s) {
    const auto v = validate(s);
    if (!v.empty())
        throw InvalidInput("invalid foliation spec: " + v.front());
}

// ---------------------------------------------------------------------------
// Cut graph and red part

struct CutGraph {
    Graph graph;
    /// Components in tree indices, ordered by smallest vertex id.
    std::vector<Component> components;
};

inline CutGraph cut_graph(const FoliationSpec &s) {
    require_valid(s);
    const Graph &t = s.tree;
    VertexSet keep;
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        if (s.vertices[v].kind == VertexKind::invariant)
            keep.insert(t.vertex(v));
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        if (detail::edge_in_cut(s, e))
            edges.push_back(e);
    CutGraph out{subgraph(t, keep, edges), {}};
    for (const auto &c : connected_components(out.graph)) {
        Component mapped;
        for (auto v : c.vertices)
            mapped.vertices.push_back(t.vertex_index(out.graph.vertex(v)));
        for (auto e : c.edges)
            mapped.edges.push_back(t.edge_index(out.graph.edge(e).key()));
        std::sort(mapped.vertices.begin(), mapped.vertices.end());
        std::sort(mapped.edges.begin(), mapped.edges.end());
        out.components.push_back(mapped);
    }
    return out;
}

struct RedPart {
    Graph graph;
    /// Red vertices and edges of each cut component, in tree indices.
    std::vector<Component> per_component;
};

inline RedPart red_subgraph(const FoliationSpec &s, const CutGraph &cut) {
    const Graph &t = s.tree;
    RedPart out;
    VertexSet verts;
    std::vector<std::size_t> edges;
    for (const auto &c : cut.components) {
        Component r;
        for (auto v : c.vertices)
            if (detail::vertex_red(s, v)) {
                r.vertices.push_back(v);
                verts.insert(t.vertex(v));
            }
        for (auto e : c.edges)
            if (detail::edge_red(s, e)) {
                r.edges.push_back(e);
                edges.push_back(e);
            }
        out.per_component.push_back(r);
    }
    std::sort(edges.begin(), edges.end());
    out.graph = subgraph(t, verts, edges);
    return out;
}

inline RedPart red_subgraph(const FoliationSpec &s) { return red_subgraph(s, cut_graph(s)); }

/// Whether the restriction of the transverse-symmetry graph from vertex v
/// to edge e is an isomorphism. Only meaningful on cut edges.
inline bool restriction_is_iso(const FoliationSpec &s, std::size_t v, std::size_t e) {
    const int side = s.tree.side_of(e, v);
    const bool red_v = detail::vertex_red(s, v), red_e = detail::edge_red(s, e);
    if (!red_v && !red_e)
        return s.vertices[v].holonomy->order == s.edges[e].holonomy[side]->order;
    if (red_v && red_e)
        return s.vertices[v].holonomy->tdim == *s.edges[e].tdim;
    return false;
}

/// Incidence key -> iso flag for every incidence of a cut edge.
inline std::map<std::string, bool> classify_restrictions(const FoliationSpec &s) {
    require_valid(s);
    std::map<std::string, bool> out;
    const Graph &t = s.tree;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        if (!detail::edge_in_cut(s, e))
            continue;
        for (int side = 0; side < 2; ++side) {
            const auto v = t.endpoint(e, side);
            out[incidence_key(t.vertex(v), t.edge(e))] = restriction_is_iso(s, v, e);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite type

/// A geodesic certifying infinite dimension: types 1 to 4 follow the
/// classification of forbidden geodesics; type 0 marks an outward edge
/// failing the generation condition that no typed geodesic explains.
struct Witness {
    std::size_t component = 0;
    int type = 0;
    std::vector<std::string> elements;
    friend bool operator==(const Witness &, const Witness &) = default;
};

struct Certificate {
    std::size_t component = 0;
    std::string vertex;
    friend bool operator==(const Certificate &, const Certificate &) = default;
};

struct FiniteTypeResult {
    bool finite = true;
    std::vector<Witness> witnesses;
    std::vector<Certificate> certificates;
};

namespace detail {

/// BFS inside one cut component from a set of sources; returns distance and
/// the edge leading back towards the sources (SIZE_MAX at sources).
struct Reach {
    std::vector<std::size_t> dist;
    std::vector<std::size_t> via;
};

inline Reach reach_from(const FoliationSpec &s, const Component &c, const std::vector<std::size_t> &sources) {
    const Graph &t = s.tree;
    Reach r{std::vector<std::size_t>(t.vertex_count(), SIZE_MAX), std::vector<std::size_t>(t.vertex_count(), SIZE_MAX)};
    const std::set<std::size_t> allowed(c.edges.begin(), c.edges.end());
    std::vector<std::size_t> queue;
    for (auto v : sources) {
        r.dist[v] = 0;
        queue.push_back(v);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto u = queue[qi];
        for (auto e : t.incident(u)) {
            if (!allowed.count(e))
                continue;
            const auto w = t.other_end(e, u);
            if (r.dist[w] != SIZE_MAX)
                continue;
            r.dist[w] = r.dist[u] + 1;
            r.via[w] = e;
            queue.push_back(w);
        }
    }
    return r;
}

/// Path from the sources to `v`, as a geodesic starting at a source.
inline Geodesic path_back(const FoliationSpec &s, const Reach &r, std::size_t v) {
    Geodesic g;
    g.vertices.push_back(v);
    while (r.via[v] != SIZE_MAX) {
        g.edges.push_back(r.via[v]);
        v = s.tree.other_end(r.via[v], v);
        g.vertices.push_back(v);
    }
    std::reverse(g.vertices.begin(), g.vertices.end());
    std::reverse(g.edges.begin(), g.edges.end());
    return g;
}

/// Outward edges <inner, outer> (inner closer to the sources) where the
/// holonomy group at `outer` is not generated by the edge holonomy.
struct OutwardFailure {
    std::size_t edge;
    std::size_t inner;
    std::size_t outer;
};

inline std::vector<OutwardFailure> outward_failures(const FoliationSpec &s, const Component &c, const Reach &r,
                                                    const std::set<std::size_t> &inside_edges) {
    std::vector<OutwardFailure> out;
    for (auto e : c.edges) {
        if (inside_edges.count(e))
            continue;
        auto x = s.tree.endpoint(e, 0), y = s.tree.endpoint(e, 1);
        if (r.dist[x] > r.dist[y])
            std::swap(x, y);
        if (!restriction_is_iso(s, y, e))
            out.push_back({e, x, y});
    }
    return out;
}

} // namespace detail

/// Type of a geodesic v0, e0, ..., vm inside a cut component, 0 if untyped.
inline int geodesic_type(const FoliationSpec &s, const Geodesic &g) {
    const auto m = g.length();
    if (m == 0 || !detail::vertex_red(s, g.vertices[0]))
        return 0;
    for (std::size_t i = 1; i < m; ++i)
        if (detail::vertex_red(s, g.vertices[i]))
            return 0;
    const auto last = g.vertices[m];
    const auto last_edge = g.edges[m - 1];
    if (m == 1) {
        if (detail::edge_red(s, last_edge))
            return 0;
        if (detail::vertex_red(s, last))
            return 4;
        return restriction_is_iso(s, last, last_edge) ? 0 : 2;
    }
    if (detail::vertex_red(s, last))
        return 3;
    if (restriction_is_iso(s, g.vertices[m - 1], last_edge) && !restriction_is_iso(s, last, last_edge))
        return 1;
    return 0;
}

inline FiniteTypeResult is_finite_type(const FoliationSpec &s, const CutGraph &cut, const RedPart &red) {
    const Graph &t = s.tree;
    FiniteTypeResult out;
    for (std::size_t ci = 0; ci < cut.components.size(); ++ci) {
        const auto &c = cut.components[ci];
        const auto &r = red.per_component[ci];
        if (!r.vertices.empty()) {
            const auto comps = connected_components(subgraph(t, vertex_names(t, r.vertices), r.edges));
            if (comps.size() > 1) {
                out.finite = false;
                // closest pair of red vertices in different red pieces
                std::vector<std::size_t> piece(t.vertex_count(), SIZE_MAX);
                const auto rg = subgraph(t, vertex_names(t, r.vertices), r.edges);
                for (std::size_t k = 0; k < comps.size(); ++k)
                    for (auto v : comps[k].vertices)
                        piece[t.vertex_index(rg.vertex(v))] = k;
                std::optional<Geodesic> best;
                for (auto a : r.vertices) {
                    const auto reach = detail::reach_from(s, c, {a});
                    for (auto b : r.vertices) {
                        if (piece[a] == piece[b] || b <= a)
                            continue;
                        if (!best || reach.dist[b] < best->length())
                            best = detail::path_back(s, reach, b);
                    }
                }
                out.witnesses.push_back({ci, geodesic_type(s, *best), best->elements(t)});
                continue;
            }
            const auto reach = detail::reach_from(s, c, r.vertices);
            const std::set<std::size_t> inside(r.edges.begin(), r.edges.end());
            for (const auto &f : detail::outward_failures(s, c, reach, inside)) {
                out.finite = false;
                auto g = detail::path_back(s, reach, f.inner);
                g.edges.push_back(f.edge);
                g.vertices.push_back(f.outer);
                out.witnesses.push_back({ci, geodesic_type(s, g), g.elements(t)});
            }
            continue;
        }
        // no red part: look for a vertex from which every outward edge passes
        bool found = false;
        for (auto v : c.vertices) {
            const auto reach = detail::reach_from(s, c, {v});
            if (detail::outward_failures(s, c, reach, {}).empty()) {
                out.certificates.push_back({ci, t.vertex(v)});
                found = true;
                break;
            }
        }
        if (!found)
            out.finite = false;
    }
    return out;
}

inline FiniteTypeResult is_finite_type(const FoliationSpec &s) {
    const auto cut = cut_graph(s);
    return is_finite_type(s, cut, red_subgraph(s, cut));
}

/// Cut components with no red vertex and no red edge.
inline std::vector<std::size_t> entirely_green_check(const FoliationSpec &, const CutGraph &cut,
                                                     const RedPart &red) {
    std::vector<std::size_t> out;
    for (std::size_t ci = 0; ci < cut.components.size(); ++ci)
        if (red.per_component[ci].vertices.empty() && red.per_component[ci].edges.empty())
            out.push_back(ci);
    return out;
}

inline std::vector<std::size_t> entirely_green_check(const FoliationSpec &s) {
    const auto cut = cut_graph(s);
    return entirely_green_check(s, cut, red_subgraph(s, cut));
}

struct CrosscheckResult {
    bool finite = false;
    std::size_t typed_geodesics = 0;
    std::optional<Witness> first;
    bool holds() const { return finite == (typed_geodesics == 0); }
};

/// Exhaustive scan of all geodesics of every cut component for typed ones,
/// compared against the finite-type verdict.
inline CrosscheckResult characterization_crosscheck(const FoliationSpec &s) {
    const auto cut = cut_graph(s);
    const auto red = red_subgraph(s, cut);
    if (!entirely_green_check(s, cut, red).empty())
        throw PreconditionFailed("characterization_crosscheck: a cut component is entirely green");
    CrosscheckResult out;
    out.finite = is_finite_type(s, cut, red).finite;
    const Graph &t = s.tree;
    for (std::size_t ci = 0; ci < cut.components.size(); ++ci) {
        const auto &c = cut.components[ci];
        for (auto a : c.vertices) {
            const auto reach = detail::reach_from(s, c, {a});
            for (auto b : c.vertices) {
                if (a == b)
                    continue;
                const auto g = detail::path_back(s, reach, b);
                const int type = geodesic_type(s, g);
                if (type == 0)
                    continue;
                ++out.typed_geodesics;
                if (!out.first)
                    out.first = Witness{ci, type, g.elements(t)};
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transverse symmetries on the red part and the moduli dimension

inline GroupGraph<RationalCarrier> build_tf_red(const FoliationSpec &s, const RedPart &red) {
    const Graph &t = s.tree;
    const Graph &r = red.graph;
    std::vector<VectorSpace> vs, es;
    for (const auto &v : r.vertices())
        vs.push_back({static_cast<std::size_t>(s.vertices[t.vertex_index(v)].holonomy->tdim)});
    std::vector<std::array<Matrix<Rational>, 2>> maps;
    for (const auto &e : r.edges()) {
        const auto te = t.edge_index(e.key());
        const VectorSpace ed{static_cast<std::size_t>(*s.edges[te].tdim)};
        es.push_back(ed);
        std::array<Matrix<Rational>, 2> m;
        for (int side = 0; side < 2; ++side) {
            const auto tv = t.vertex_index(side == 0 ? e.first : e.second);
            const VectorSpace vd{static_cast<std::size_t>(s.vertices[tv].holonomy->tdim)};
            m[side] = restriction_is_iso(s, tv, te) ? Matrix<Rational>::identity(ed.dim)
                                                    : Matrix<Rational>::zero(ed.dim, vd.dim);
        }
        maps.push_back(m);
    }
    GroupGraph<RationalCarrier> out(r, vs, es, maps);
    if (!is_regular(out))
        throw InternalError("build_tf_red: transverse-symmetry graph is not regular");
    return out;
}

inline GroupGraph<RationalCarrier> build_tf_red(const FoliationSpec &s) { return build_tf_red(s, red_subgraph(s)); }

struct ModuliDimension {
    /// Active-edge count, cochain rank, contracted homology rank.
    std::array<std::size_t, 3> pipelines{};
    /// Moduli coordinates as edge keys, ascending.
    std::vector<std::string> basis_edges;
    std::size_t dim() const { return pipelines[0]; }
};

/// dim H1 of the red transverse-symmetry graph, three ways.
inline ModuliDimension moduli_pipelines(const GroupGraph<RationalCarrier> &tf) {
    ModuliDimension out;
    const Graph &r = tf.base();
    std::size_t active = 0;
    for (const auto &c : connected_components(r)) {
        const auto sub = subgraph(r, vertex_names(r, c.vertices), c.edges);
        const auto piece = restrict_to(tf, sub).graph;
        const auto h = regular_h1(piece, false);
        active += h.dim;
        for (auto e : h.structure.a_prime)
            out.basis_edges.push_back(sub.edge(e).key());
    }
    std::sort(out.basis_edges.begin(), out.basis_edges.end());
    out.pipelines = {active, h1_vector(tf).dim, contracted_support_rank(tf)};
    if (out.pipelines[0] != out.pipelines[1] || out.pipelines[1] != out.pipelines[2])
        throw InternalError("moduli_dimension: pipelines disagree (" + std::to_string(out.pipelines[0]) + ", " +
                            std::to_string(out.pipelines[1]) + ", " + std::to_string(out.pipelines[2]) + ")");
    return out;
}

enum class Characterization { holds, fails, hypothesis_violated };

inline const char *to_string(Characterization c) {
    switch (c) {
    case Characterization::holds:
        return "holds";
    case Characterization::fails:
        return "fails";
    default:
        return "hypothesis-violated";
    }
}

struct ModuliReport {
    std::vector<Graph> cut_components;
    Graph red_subgraph;
    /// Red part of each cut component, same order as cut_components.
    std::vector<Graph> red_components;
    bool finite_type = true;
    std::optional<Characterization> characterization;
    std::vector<std::size_t> entirely_green;
    std::vector<Witness> witnesses;
    std::vector<Certificate> certificates;
    GroupGraph<RationalCarrier> tf_red;
    /// Empty when infinite.
    std::optional<std::size_t> moduli_dim;
    std::optional<std::array<std::size_t, 3>> pipelines;
    std::vector<std::string> basis_edges;
    std::map<std::string, std::string> cs_index;
    friend bool operator==(const ModuliReport &, const ModuliReport &) = default;
};

/// Full analysis of a valid spec. With `crosscheck`, also runs the
/// exhaustive geodesic scan.
inline ModuliReport analyze(const FoliationSpec &s, bool crosscheck = false) {
    const auto cut = cut_graph(s);
    const auto red = red_subgraph(s, cut);
    const Graph &t = s.tree;
    ModuliReport rep;
    for (const auto &c : cut.components)
        rep.cut_components.push_back(subgraph(t, vertex_names(t, c.vertices), c.edges));
    rep.red_subgraph = red.graph;
    for (const auto &c : red.per_component)
        rep.red_components.push_back(subgraph(t, vertex_names(t, c.vertices), c.edges));
    const auto ft = is_finite_type(s, cut, red);
    rep.finite_type = ft.finite;
    rep.witnesses = ft.witnesses;
    rep.certificates = ft.certificates;
    rep.entirely_green = entirely_green_check(s, cut, red);
    if (crosscheck) {
        if (!rep.entirely_green.empty())
            rep.characterization = Characterization::hypothesis_violated;
        else
            rep.characterization = characterization_crosscheck(s).holds() ? Characterization::holds
                                                                          : Characterization::fails;
    }
    rep.tf_red = build_tf_red(s, red);
    if (rep.finite_type) {
        const auto md = moduli_pipelines(rep.tf_red);
        rep.moduli_dim = md.dim();
        rep.pipelines = md.pipelines;
        rep.basis_edges = md.basis_edges;
    }
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        if (s.vertices[v].cs_index)
            rep.cs_index[t.vertex(v)] = *s.vertices[v].cs_index;
    return rep;
}

inline ModuliReport moduli_dimension(const FoliationSpec &s) { return analyze(s, false); }

} // namespace ggc
