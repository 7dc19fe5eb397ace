#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ggc {

using VertexSet = std::set<std::string>;

/// Unordered pair of distinct vertices, stored sorted. `first` is the tail
/// used wherever an orientation has to be fixed.
struct Edge {
    std::string first;
    std::string second;

    Edge() = default;
    Edge(std::string a, std::string b) : first(std::move(a)), second(std::move(b)) {
        if (second < first)
            std::swap(first, second);
    }

    std::string key() const { return first + "#" + second; }
    bool contains(const std::string &v) const { return v == first || v == second; }
    const std::string &other(const std::string &v) const { return v == first ? second : first; }

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

inline std::string edge_key(const std::string &a, const std::string &b) { return Edge(a, b).key(); }

/// Incidence key "v|x#y" naming the oriented pair (v, e).
inline std::string incidence_key(const std::string &v, const Edge &e) { return v + "|" + e.key(); }

/// Finite simple undirected graph with string vertex ids.
///
/// Vertices and edges are kept sorted, so indices are deterministic and the
/// smallest index is always the lexicographically smallest id.
class Graph {
  public:
    Graph() = default;

    Graph(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>> &edges) {
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const auto &v = vertices[i];
            if (v.empty())
                throw InvalidInput("graph: empty vertex id");
            if (v.find_first_of("#|") != std::string::npos)
                throw InvalidInput("graph: vertex id '" + v + "' contains a reserved character ('#' or '|')");
            if (i > 0 && vertices[i - 1] == v)
                throw InvalidInput("graph: duplicate vertex '" + v + "'");
        }
        vertices_ = std::move(vertices);
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            vindex_.emplace(vertices_[i], i);

        for (const auto &[a, b] : edges) {
            if (!vindex_.count(a) || !vindex_.count(b))
                throw InvalidInput("graph: edge {" + a + "," + b + "} has an endpoint outside the vertex set");
            if (a == b)
                throw InvalidInput("graph: self-loop at '" + a + "'");
            edges_.emplace_back(a, b);
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i - 1] == edges_[i])
                throw InvalidInput("graph: duplicate edge " + edges_[i].key());
        for (std::size_t i = 0; i < edges_.size(); ++i)
            eindex_.emplace(edges_[i].key(), i);

        incident_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            incident_[vindex_.at(edges_[i].first)].push_back(i);
            incident_[vindex_.at(edges_[i].second)].push_back(i);
        }
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string> &vertices() const { return vertices_; }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::string &vertex(std::size_t i) const { return vertices_.at(i); }
    const Edge &edge(std::size_t i) const { return edges_.at(i); }

    bool has_vertex(const std::string &v) const { return vindex_.count(v) > 0; }
    bool has_edge(const std::string &a, const std::string &b) const { return eindex_.count(edge_key(a, b)) > 0; }

    std::size_t vertex_index(const std::string &v) const {
        auto it = vindex_.find(v);
        if (it == vindex_.end())
            throw InvalidInput("graph: unknown vertex '" + v + "'");
        return it->second;
    }
    std::optional<std::size_t> find_edge(const std::string &a, const std::string &b) const {
        auto it = eindex_.find(edge_key(a, b));
        if (it == eindex_.end())
            return std::nullopt;
        return it->second;
    }
    std::size_t edge_index(const std::string &a, const std::string &b) const {
        auto e = find_edge(a, b);
        if (!e)
            throw InvalidInput("graph: unknown edge " + edge_key(a, b));
        return *e;
    }
    std::size_t edge_index(const std::string &key) const {
        auto it = eindex_.find(key);
        if (it == eindex_.end())
            throw InvalidInput("graph: unknown edge " + key);
        return it->second;
    }

    /// Edge indices incident to vertex index v, ascending.
    const std::vector<std::size_t> &incident(std::size_t v) const { return incident_.at(v); }

    /// Vertex index of endpoint `side` (0 = tail, 1 = head) of edge e.
    std::size_t endpoint(std::size_t e, int side) const {
        return vindex_.at(side == 0 ? edges_.at(e).first : edges_.at(e).second);
    }
    /// Which side of edge e vertex index v sits on.
    int side_of(std::size_t e, std::size_t v) const {
        if (endpoint(e, 0) == v)
            return 0;
        if (endpoint(e, 1) == v)
            return 1;
        throw InvalidInput("graph: vertex '" + vertex(v) + "' not on edge " + edges_.at(e).key());
    }
    std::size_t other_end(std::size_t e, std::size_t v) const { return endpoint(e, 1 - side_of(e, v)); }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

  private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> vindex_;
    std::map<std::string, std::size_t> eindex_;
    std::vector<std::vector<std::size_t>> incident_;
};

/// A set of vertices together with the edges between them that are kept.
struct Component {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
};

/// Connected components, each listing ascending vertex and edge indices,
/// ordered by smallest vertex id.
inline std::vector<Component> connected_components(const Graph &g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto a = find(g.endpoint(e, 0)), b = find(g.endpoint(e, 1));
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::size_t> slot;
    std::vector<Component> out;
    for (std::size_t v = 0; v < n; ++v) {
        auto r = find(v);
        auto [it, fresh] = slot.emplace(r, out.size());
        if (fresh)
            out.emplace_back();
        out[it->second].vertices.push_back(v);
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out[slot.at(find(g.endpoint(e, 0)))].edges.push_back(e);
    return out;
}

inline bool is_connected(const Graph &g) { return connected_components(g).size() <= 1; }

inline bool is_tree(const Graph &g) {
    return g.vertex_count() >= 1 && g.edge_count() + 1 == g.vertex_count() && is_connected(g);
}

/// Rank of H_1: |E| - |V| + #components.
inline std::size_t first_homology_rank(const Graph &g) {
    return g.edge_count() + connected_components(g).size() - g.vertex_count();
}

/// Subgraph induced on `keep` (all edges of g with both ends kept).
inline Graph induced_subgraph(const Graph &g, const VertexSet &keep) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : g.edges())
        if (keep.count(e.first) && keep.count(e.second))
            edges.emplace_back(e.first, e.second);
    for (const auto &v : keep)
        if (!g.has_vertex(v))
            throw InvalidInput("induced_subgraph: unknown vertex '" + v + "'");
    return Graph({keep.begin(), keep.end()}, edges);
}

/// Subgraph with the given vertices and the given edges (each edge's
/// endpoints must be among the vertices).
inline Graph subgraph(const Graph &g, const VertexSet &vertices, const std::vector<std::size_t> &edge_indices) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto e : edge_indices)
        edges.emplace_back(g.edge(e).first, g.edge(e).second);
    for (const auto &v : vertices)
        if (!g.has_vertex(v))
            throw InvalidInput("subgraph: unknown vertex '" + v + "'");
    return Graph({vertices.begin(), vertices.end()}, edges);
}

inline VertexSet vertex_names(const Graph &g, const std::vector<std::size_t> &idx) {
    VertexSet out;
    for (auto i : idx)
        out.insert(g.vertex(i));
    return out;
}

/// True when `r` is a nonempty vertex set of tree t inducing a connected subgraph.
inline bool is_subtree(const Graph &t, const VertexSet &r) {
    if (r.empty())
        return false;
    for (const auto &v : r)
        if (!t.has_vertex(v))
            return false;
    return is_connected(induced_subgraph(t, r));
}

/// Alternating vertex/edge path; `vertices.size() == edges.size() + 1`.
struct Geodesic {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    /// Element names in order: v0, e0, v1, e1, ...
    std::vector<std::string> elements(const Graph &g) const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            out.push_back(g.vertex(vertices[i]));
            if (i < edges.size())
                out.push_back(g.edge(edges[i]).key());
        }
        return out;
    }
    std::size_t length() const { return edges.size(); }
    friend bool operator==(const Geodesic &, const Geodesic &) = default;
};

/// The unique path between two vertices of a tree.
inline Geodesic tree_path(const Graph &t, std::size_t from, std::size_t to) {
    if (!is_tree(t))
        throw InvalidInput("tree_path: graph is not a tree");
    std::vector<std::size_t> via(t.vertex_count(), SIZE_MAX);
    std::vector<bool> seen(t.vertex_count(), false);
    std::vector<std::size_t> queue{to};
    seen[to] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto u = queue[qi];
        for (auto e : t.incident(u)) {
            auto w = t.other_end(e, u);
            if (!seen[w]) {
                seen[w] = true;
                via[w] = e;
                queue.push_back(w);
            }
        }
    }
    Geodesic out;
    std::size_t cur = from;
    out.vertices.push_back(cur);
    while (cur != to) {
        auto e = via[cur];
        out.edges.push_back(e);
        cur = t.other_end(e, cur);
        out.vertices.push_back(cur);
    }
    return out;
}

/// Shortest path from v into r: last vertex in r, all earlier ones outside.
inline Geodesic geodesic_to_subtree(const Graph &t, const VertexSet &r, const std::string &v) {
    if (!is_tree(t))
        throw InvalidInput("geodesic_to_subtree: graph is not a tree");
    if (!is_subtree(t, r))
        throw InvalidInput("geodesic_to_subtree: target set is not a subtree");
    const auto start = t.vertex_index(v);
    std::vector<std::size_t> via(t.vertex_count(), SIZE_MAX);
    std::vector<bool> seen(t.vertex_count(), false);
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    std::size_t hit = SIZE_MAX;
    for (std::size_t qi = 0; qi < queue.size() && hit == SIZE_MAX; ++qi) {
        auto u = queue[qi];
        if (r.count(t.vertex(u))) {
            hit = u;
            break;
        }
        for (auto e : t.incident(u)) {
            auto w = t.other_end(e, u);
            if (!seen[w]) {
                seen[w] = true;
                via[w] = e;
                queue.push_back(w);
            }
        }
    }
    Geodesic rev;
    for (std::size_t cur = hit;;) {
        rev.vertices.push_back(cur);
        if (cur == start)
            break;
        rev.edges.push_back(via[cur]);
        cur = t.other_end(via[cur], cur);
    }
    std::reverse(rev.vertices.begin(), rev.vertices.end());
    std::reverse(rev.edges.begin(), rev.edges.end());
    return rev;
}

/// The order v <=_r w: every element of the geodesic from v lies on the
/// geodesic from w.
inline bool precedes(const Graph &t, const VertexSet &r, const std::string &v, const std::string &w) {
    const auto lv = geodesic_to_subtree(t, r, v);
    const auto lw = geodesic_to_subtree(t, r, w);
    const std::set<std::size_t> wv(lw.vertices.begin(), lw.vertices.end());
    const std::set<std::size_t> we(lw.edges.begin(), lw.edges.end());
    return std::all_of(lv.vertices.begin(), lv.vertices.end(), [&](auto x) { return wv.count(x) > 0; }) &&
           std::all_of(lv.edges.begin(), lv.edges.end(), [&](auto x) { return we.count(x) > 0; });
}

/// Image of a source edge: an edge of the target, or a vertex it collapses to.
struct EdgeImage {
    bool collapsed = false;
    std::size_t index = 0;
    friend bool operator==(const EdgeImage &, const EdgeImage &) = default;
};

/// Graph morphism determined by its vertex map. Each source edge goes to the
/// target edge joining the images of its ends, or collapses when they coincide.
class GraphMorphism {
  public:
    GraphMorphism() = default;

    GraphMorphism(Graph source, Graph target, const std::map<std::string, std::string> &vertex_map)
        : source_(std::move(source)), target_(std::move(target)) {
        vmap_.resize(source_.vertex_count());
        for (std::size_t i = 0; i < source_.vertex_count(); ++i) {
            auto it = vertex_map.find(source_.vertex(i));
            if (it == vertex_map.end())
                throw InvalidInput("graph morphism: vertex '" + source_.vertex(i) + "' has no image");
            vmap_[i] = target_.vertex_index(it->second);
        }
        if (vertex_map.size() != source_.vertex_count())
            throw InvalidInput("graph morphism: vertex map mentions vertices outside the source");
        finish();
    }

    GraphMorphism(Graph source, Graph target, std::vector<std::size_t> vmap)
        : source_(std::move(source)), target_(std::move(target)), vmap_(std::move(vmap)) {
        if (vmap_.size() != source_.vertex_count())
            throw InvalidInput("graph morphism: vertex map has wrong size");
        for (auto x : vmap_)
            if (x >= target_.vertex_count())
                throw InvalidInput("graph morphism: vertex image out of range");
        finish();
    }

    static GraphMorphism identity(const Graph &g) {
        std::vector<std::size_t> id(g.vertex_count());
        std::iota(id.begin(), id.end(), 0);
        return GraphMorphism(g, g, id);
    }

    /// Inclusion of a subgraph (vertex ids shared with the ambient graph).
    static GraphMorphism inclusion(const Graph &sub, const Graph &ambient) {
        std::vector<std::size_t> vm;
        for (const auto &v : sub.vertices())
            vm.push_back(ambient.vertex_index(v));
        return GraphMorphism(sub, ambient, vm);
    }

    const Graph &source() const { return source_; }
    const Graph &target() const { return target_; }
    std::size_t vertex_image(std::size_t v) const { return vmap_.at(v); }
    const std::vector<std::size_t> &vertex_images() const { return vmap_; }
    const EdgeImage &edge_image(std::size_t e) const { return emap_.at(e); }

    /// Source vertices mapped to target vertex t, ascending.
    std::vector<std::size_t> vertex_fiber(std::size_t t) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vmap_.size(); ++v)
            if (vmap_[v] == t)
                out.push_back(v);
        return out;
    }
    /// Source edges collapsed onto target vertex t.
    std::vector<std::size_t> collapsed_fiber(std::size_t t) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < emap_.size(); ++e)
            if (emap_[e].collapsed && emap_[e].index == t)
                out.push_back(e);
        return out;
    }
    /// Source edges mapped onto target edge t.
    std::vector<std::size_t> edge_fiber(std::size_t t) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < emap_.size(); ++e)
            if (!emap_[e].collapsed && emap_[e].index == t)
                out.push_back(e);
        return out;
    }

    /// this ∘ first : first.source() -> this->target().
    GraphMorphism after(const GraphMorphism &first) const {
        if (!(first.target() == source_))
            throw InvalidInput("graph morphism composition: target/source mismatch");
        std::vector<std::size_t> vm(first.source().vertex_count());
        for (std::size_t v = 0; v < vm.size(); ++v)
            vm[v] = vmap_[first.vertex_image(v)];
        return GraphMorphism(first.source(), target_, vm);
    }

    friend bool operator==(const GraphMorphism &a, const GraphMorphism &b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.vmap_ == b.vmap_;
    }

  private:
    void finish() {
        emap_.resize(source_.edge_count());
        for (std::size_t e = 0; e < source_.edge_count(); ++e) {
            auto a = vmap_[source_.endpoint(e, 0)], b = vmap_[source_.endpoint(e, 1)];
            if (a == b) {
                emap_[e] = {true, a};
            } else {
                auto te = target_.find_edge(target_.vertex(a), target_.vertex(b));
                if (!te)
                    throw InvalidInput("graph morphism: edge " + source_.edge(e).key() + " maps to non-edge {" +
                                       target_.vertex(a) + "," + target_.vertex(b) + "}");
                emap_[e] = {false, *te};
            }
        }
    }

    Graph source_;
    Graph target_;
    std::vector<std::size_t> vmap_;
    std::vector<EdgeImage> emap_;
};

struct Contraction {
    Graph tree;
    GraphMorphism morphism;
    std::string fresh_vertex;
};

/// Name of the vertex a set collapses to: its atomic ids (split on '+')
/// sorted and rejoined, so nested contractions name the same vertex as a
/// single one.
inline std::string contraction_name(const VertexSet &sub) {
    if (sub.size() == 1)
        return *sub.begin();
    std::vector<std::string> atoms;
    for (const auto &v : sub) {
        std::size_t pos = 0;
        while (true) {
            auto next = v.find('+', pos);
            atoms.push_back(v.substr(pos, next - pos));
            if (next == std::string::npos)
                break;
            pos = next + 1;
        }
    }
    std::sort(atoms.begin(), atoms.end());
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        out += (i ? "+" : "") + atoms[i];
    return out;
}

/// Contract the subtree `sub` of tree t to one fresh vertex.
inline Contraction contract(const Graph &t, const VertexSet &sub) {
    if (!is_tree(t))
        throw InvalidInput("contract: graph is not a tree");
    if (!is_subtree(t, sub))
        throw InvalidInput("contract: vertex set is not a nonempty subtree");
    const std::string fresh = contraction_name(sub);
    if (t.has_vertex(fresh) && !sub.count(fresh))
        throw InvalidInput("contract: fresh vertex name '" + fresh + "' collides with an existing vertex");

    auto image = [&](const std::string &v) { return sub.count(v) ? fresh : v; };
    std::vector<std::string> verts;
    for (const auto &v : t.vertices())
        if (!sub.count(v))
            verts.push_back(v);
    verts.push_back(fresh);
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : t.edges())
        if (!(sub.count(e.first) && sub.count(e.second)))
            edges.emplace_back(image(e.first), image(e.second));
    Graph out(verts, edges);
    std::map<std::string, std::string> vm;
    for (const auto &v : t.vertices())
        vm.emplace(v, image(v));
    return {out, GraphMorphism(t, out, vm), fresh};
}

} // namespace ggc
