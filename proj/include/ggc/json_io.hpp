#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cohomology.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "foliation.hpp"
#include "graph.hpp"
#include "group_graph.hpp"
#include "linalg.hpp"
#include "theorems.hpp"

namespace ggc::io {

using json = nlohmann::json;

inline constexpr int kDefaultMaxOrder = 24;

struct ParseOptions {
    /// Largest finite group accepted from input.
    int max_order = kDefaultMaxOrder;
};

namespace detail {

inline const json &field(const json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::string as_string(const json &j, const std::string &where) {
    if (!j.is_string())
        throw InvalidInput(where + ": expected a string");
    return j.get<std::string>();
}

inline long long as_int(const json &j, const std::string &where) {
    if (!j.is_number_integer())
        throw InvalidInput(where + ": expected an integer");
    return j.get<long long>();
}

inline bool as_bool(const json &j, const std::string &where) {
    if (!j.is_boolean())
        throw InvalidInput(where + ": expected a boolean");
    return j.get<bool>();
}

inline std::size_t as_size(const json &j, const std::string &where) {
    const auto v = as_int(j, where);
    if (v < 0)
        throw InvalidInput(where + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Graph

inline json to_json(const Graph &g) {
    json edges = json::array();
    for (const auto &e : g.edges())
        edges.push_back({e.first, e.second});
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const json &j) {
    const auto &vs = detail::field(j, "vertices", "graph");
    const auto &es = detail::field(j, "edges", "graph");
    if (!vs.is_array() || !es.is_array())
        throw InvalidInput("graph: vertices and edges must be arrays");
    std::vector<std::string> vertices;
    for (const auto &v : vs)
        vertices.push_back(detail::as_string(v, "graph vertex"));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : es) {
        if (!e.is_array() || e.size() != 2)
            throw InvalidInput("graph: each edge must be a pair of vertex ids");
        edges.emplace_back(detail::as_string(e[0], "graph edge"), detail::as_string(e[1], "graph edge"));
    }
    return Graph(vertices, edges);
}

// ---------------------------------------------------------------------------
// Groups, vector spaces, homs

inline json to_json(const FiniteGroup &g) {
    json out = {{"order", g.order()}, {"table", g.table()}};
    if (!g.name().empty())
        out["name"] = g.name();
    return out;
}

inline FiniteGroup group_from_json(const json &j, const ParseOptions &opt = {}) {
    if (!j.is_object())
        throw InvalidInput("group: expected an object");
    FiniteGroup g;
    if (j.contains("cyclic"))
        g = FiniteGroup::cyclic(static_cast<int>(detail::as_int(j.at("cyclic"), "cyclic group")));
    else if (j.contains("dihedral"))
        g = FiniteGroup::dihedral(static_cast<int>(detail::as_int(j.at("dihedral"), "dihedral group")));
    else if (j.contains("quaternion"))
        g = FiniteGroup::quaternion();
    else if (j.contains("product")) {
        const auto &fs = j.at("product");
        if (!fs.is_array())
            throw InvalidInput("product group: expected an array of factors");
        g = FiniteGroup::trivial();
        for (const auto &f : fs) {
            g = FiniteGroup::direct_product(g, group_from_json(f, opt));
            if (g.order() > opt.max_order)
                break;
        }
    } else {
        const auto order = detail::as_int(detail::field(j, "order", "group"), "group order");
        if (order < 1 || order > opt.max_order)
            throw InvalidInput("group: order " + std::to_string(order) + " outside 1.." +
                               std::to_string(opt.max_order));
        const auto &t = detail::field(j, "table", "group");
        if (!t.is_array())
            throw InvalidInput("group: table must be an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto &row : t) {
            if (!row.is_array())
                throw InvalidInput("group: table must be an array of rows");
            std::vector<int> r;
            for (const auto &x : row)
                r.push_back(static_cast<int>(detail::as_int(x, "group table entry")));
            table.push_back(r);
        }
        if (static_cast<long long>(table.size()) != order)
            throw InvalidInput("group: table size does not match order");
        g = FiniteGroup::from_table(table, j.contains("name") ? detail::as_string(j.at("name"), "group name") : "");
    }
    if (g.order() > opt.max_order)
        throw InvalidInput("group: order " + std::to_string(g.order()) + " exceeds the limit " +
                           std::to_string(opt.max_order));
    return g;
}

inline json to_json(const FiniteHom &f) { return {{"images", f.images}}; }

inline FiniteHom finite_hom_from_json(const json &j) {
    const auto &im = detail::field(j, "images", "hom");
    if (!im.is_array())
        throw InvalidInput("hom: images must be an array");
    FiniteHom f;
    for (const auto &x : im)
        f.images.push_back(static_cast<Element>(detail::as_int(x, "hom image")));
    return f;
}

inline json to_json(const VectorSpace &v) { return {{"dim", v.dim}}; }

inline VectorSpace space_from_json(const json &j) {
    return {detail::as_size(detail::field(j, "dim", "vector space"), "dimension")};
}

inline json to_json(const Rational &q) {
    if (denominator(q) == 1 && numerator(q) <= std::numeric_limits<long long>::max() &&
        numerator(q) >= std::numeric_limits<long long>::min())
        return static_cast<long long>(numerator(q));
    return to_string(q);
}

inline Rational rational_from_json(const json &j) {
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw InvalidInput("expected an integer or a \"p/q\" string");
}

inline json to_json(const Matrix<Rational> &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(to_json(m(i, k)));
        rows.push_back(row);
    }
    return {{"matrix", rows}};
}

/// The shape comes from the spaces the matrix maps between, since an
/// empty row list does not record a column count.
inline Matrix<Rational> matrix_from_json(const json &j, std::size_t rows, std::size_t cols) {
    const auto &m = detail::field(j, "matrix", "linear map");
    if (!m.is_array() || m.size() != rows)
        throw InvalidInput("linear map: expected " + std::to_string(rows) + " rows");
    Matrix<Rational> out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!m[i].is_array() || m[i].size() != cols)
            throw InvalidInput("linear map: expected " + std::to_string(cols) + " columns");
        for (std::size_t k = 0; k < cols; ++k)
            out(i, k) = rational_from_json(m[i][k]);
    }
    return out;
}

inline json to_json(const std::vector<Rational> &v) {
    json out = json::array();
    for (const auto &x : v)
        out.push_back(to_json(x));
    return out;
}

// ---------------------------------------------------------------------------
// Group-graphs

template <class C> json to_json(const GroupGraph<C> &g) {
    const Graph &a = g.base();
    json vs = json::object(), es = json::object(), rs = json::object();
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        vs[a.vertex(v)] = to_json(g.vertex_group(v));
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        es[a.edge(e).key()] = to_json(g.edge_group(e));
        for (int s = 0; s < 2; ++s)
            rs[incidence_key(a.vertex(a.endpoint(e, s)), a.edge(e))] = to_json(g.restriction(e, s));
    }
    return {{"base", to_json(a)}, {"carrier", C::kind}, {"vertices", vs}, {"edges", es}, {"restrictions", rs}};
}

using AnyGroupGraph = std::variant<GroupGraph<FiniteCarrier>, GroupGraph<RationalCarrier>>;

namespace detail {

template <class C, class ObjFn, class HomFn>
GroupGraph<C> group_graph_from_json(const json &j, ObjFn obj, HomFn hom) {
    const auto base = graph_from_json(field(j, "base", "group-graph"));
    const auto &vs = field(j, "vertices", "group-graph");
    const auto &es = field(j, "edges", "group-graph");
    const auto &rs = field(j, "restrictions", "group-graph");
    if (!vs.is_object() || !es.is_object() || !rs.is_object())
        throw InvalidInput("group-graph: vertices, edges and restrictions must be objects");
    if (vs.size() != base.vertex_count() || es.size() != base.edge_count() || rs.size() != 2 * base.edge_count())
        throw InvalidInput("group-graph: assignments do not match the base graph");
    std::vector<typename C::Object> vg, eg;
    for (const auto &v : base.vertices())
        vg.push_back(obj(field(vs, v.c_str(), "group-graph vertices")));
    std::vector<std::array<typename C::Hom, 2>> rest;
    for (std::size_t e = 0; e < base.edge_count(); ++e) {
        const auto key = base.edge(e).key();
        eg.push_back(obj(field(es, key.c_str(), "group-graph edges")));
        std::array<typename C::Hom, 2> r;
        for (int s = 0; s < 2; ++s) {
            const auto inc = incidence_key(base.vertex(base.endpoint(e, s)), base.edge(e));
            r[s] = hom(field(rs, inc.c_str(), "group-graph restrictions"), vg[base.endpoint(e, s)], eg.back());
        }
        rest.push_back(r);
    }
    return GroupGraph<C>(base, vg, eg, rest);
}

} // namespace detail

inline GroupGraph<FiniteCarrier> finite_group_graph_from_json(const json &j, const ParseOptions &opt = {}) {
    return detail::group_graph_from_json<FiniteCarrier>(
        j, [&](const json &x) { return group_from_json(x, opt); },
        [](const json &x, const FiniteGroup &, const FiniteGroup &) { return finite_hom_from_json(x); });
}

inline GroupGraph<RationalCarrier> vector_group_graph_from_json(const json &j) {
    return detail::group_graph_from_json<RationalCarrier>(
        j, [](const json &x) { return space_from_json(x); },
        [](const json &x, const VectorSpace &src, const VectorSpace &tgt) {
            return matrix_from_json(x, tgt.dim, src.dim);
        });
}

inline AnyGroupGraph group_graph_from_json(const json &j, const ParseOptions &opt = {}) {
    const auto carrier = detail::as_string(detail::field(j, "carrier", "group-graph"), "carrier");
    if (carrier == "finite")
        return finite_group_graph_from_json(j, opt);
    if (carrier == "vector")
        return vector_group_graph_from_json(j);
    throw InvalidInput("group-graph: unknown carrier '" + carrier + "'");
}

// ---------------------------------------------------------------------------
// Cocycles

inline json value_to_json(const Element &x) { return x; }
inline json value_to_json(const std::vector<Rational> &x) { return to_json(x); }

template <class C> json to_json(const GroupGraph<C> &g, const Cocycle1<C> &z) {
    const Graph &a = g.base();
    json out = json::object();
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        for (int s = 0; s < 2; ++s)
            out[incidence_key(a.vertex(a.endpoint(e, s)), a.edge(e))] = value_to_json(z.values[e][s]);
    return out;
}

inline Cocycle1<FiniteCarrier> cocycle_from_json(const GroupGraph<FiniteCarrier> &g, const json &j) {
    const Graph &a = g.base();
    Cocycle1<FiniteCarrier> z;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        std::array<Element, 2> pair{};
        for (int s = 0; s < 2; ++s) {
            const auto inc = incidence_key(a.vertex(a.endpoint(e, s)), a.edge(e));
            pair[s] = static_cast<Element>(detail::as_int(detail::field(j, inc.c_str(), "cocycle"), inc));
        }
        z.values.push_back(pair);
    }
    if (!is_cocycle(g, z))
        throw InvalidInput("cocycle: values do not form a cocycle");
    return z;
}

inline Cocycle1<RationalCarrier> cocycle_from_json(const GroupGraph<RationalCarrier> &g, const json &j) {
    const Graph &a = g.base();
    Cocycle1<RationalCarrier> z;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        std::array<std::vector<Rational>, 2> pair;
        for (int s = 0; s < 2; ++s) {
            const auto inc = incidence_key(a.vertex(a.endpoint(e, s)), a.edge(e));
            const auto &arr = detail::field(j, inc.c_str(), "cocycle");
            if (!arr.is_array())
                throw InvalidInput(inc + ": expected an array");
            for (const auto &x : arr)
                pair[s].push_back(rational_from_json(x));
        }
        z.values.push_back(pair);
    }
    if (!is_cocycle(g, z))
        throw InvalidInput("cocycle: values do not form a cocycle");
    return z;
}

// ---------------------------------------------------------------------------
// Cohomology results

struct ActiveSummary {
    std::vector<std::string> active_edges;
    /// Edge key -> the endpoint on the nontrivial side.
    std::map<std::string, std::string> active_vertex;
    std::vector<std::string> chosen;
    std::vector<std::string> basis_edges;
    std::size_t a = 0;
    std::size_t p = 0;
    friend bool operator==(const ActiveSummary &, const ActiveSummary &) = default;
};

struct CohomologyResult {
    std::string carrier;
    std::string mode;
    /// Order of H0 (finite) or its dimension (vector).
    std::size_t h0 = 0;
    /// Class count (finite) or dimension (vector).
    std::size_t h1 = 0;
    std::vector<std::uint64_t> class_sizes;
    /// Class representatives (finite) or basis cocycles (vector).
    std::vector<json> cocycles;
    std::optional<ActiveSummary> active;
    friend bool operator==(const CohomologyResult &, const CohomologyResult &) = default;
};

template <class C> ActiveSummary summarize(const GroupGraph<C> &g, const ActiveStructure &st) {
    const Graph &a = g.base();
    ActiveSummary out;
    for (auto e : st.active_edges) {
        out.active_edges.push_back(a.edge(e).key());
        out.active_vertex[a.edge(e).key()] = a.vertex(st.active_vertex.at(e));
    }
    for (const auto &c : st.components)
        if (c.chosen)
            out.chosen.push_back(a.edge(*c.chosen).key());
    for (auto e : st.a_prime)
        out.basis_edges.push_back(a.edge(e).key());
    out.a = st.a();
    out.p = st.p();
    return out;
}

inline json to_json(const ActiveSummary &s) {
    return {{"active_edges", s.active_edges}, {"active_vertex", s.active_vertex}, {"chosen", s.chosen},
            {"basis_edges", s.basis_edges},   {"a", s.a},                         {"p", s.p}};
}

inline ActiveSummary active_summary_from_json(const json &j) {
    ActiveSummary s;
    try {
        s.active_edges = j.at("active_edges").get<std::vector<std::string>>();
        s.active_vertex = j.at("active_vertex").get<std::map<std::string, std::string>>();
        s.chosen = j.at("chosen").get<std::vector<std::string>>();
        s.basis_edges = j.at("basis_edges").get<std::vector<std::string>>();
        s.a = j.at("a").get<std::size_t>();
        s.p = j.at("p").get<std::size_t>();
    } catch (const json::exception &e) {
        throw InvalidInput(std::string("active structure: ") + e.what());
    }
    return s;
}

inline json to_json(const CohomologyResult &r) {
    const bool finite = r.carrier == "finite";
    json h1 = {{finite ? "count" : "dim", r.h1}};
    h1[finite ? "representatives" : "basis"] = r.cocycles;
    if (finite)
        h1["class_sizes"] = r.class_sizes;
    json out = {{"carrier", r.carrier},
                {"mode", r.mode},
                {"h0", {{finite ? "order" : "dim", r.h0}}},
                {"h1", h1}};
    if (r.active)
        out["active_structure"] = to_json(*r.active);
    return out;
}

inline CohomologyResult cohomology_result_from_json(const json &j) {
    CohomologyResult r;
    r.carrier = detail::as_string(detail::field(j, "carrier", "cohomology"), "carrier");
    r.mode = detail::as_string(detail::field(j, "mode", "cohomology"), "mode");
    const bool finite = r.carrier == "finite";
    const auto &h0 = detail::field(j, "h0", "cohomology");
    const auto &h1 = detail::field(j, "h1", "cohomology");
    r.h0 = detail::as_size(detail::field(h0, finite ? "order" : "dim", "h0"), "h0");
    r.h1 = detail::as_size(detail::field(h1, finite ? "count" : "dim", "h1"), "h1");
    for (const auto &z : detail::field(h1, finite ? "representatives" : "basis", "h1"))
        r.cocycles.push_back(z);
    if (finite)
        for (const auto &x : detail::field(h1, "class_sizes", "h1"))
            r.class_sizes.push_back(static_cast<std::uint64_t>(detail::as_size(x, "class size")));
    if (j.contains("active_structure"))
        r.active = active_summary_from_json(j.at("active_structure"));
    return r;
}

// ---------------------------------------------------------------------------
// Foliation specs

inline json to_json(const FoliationSpec &s) {
    const Graph &t = s.tree;
    json vs = json::object(), es = json::object();
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const auto &d = s.vertices[v];
        json x = {{"kind", to_string(d.kind)}};
        if (d.holonomy) {
            if (d.holonomy->finite)
                x["holonomy"] = {{"finite", true}, {"order", d.holonomy->order}};
            else
                x["holonomy"] = {{"finite", false}, {"tdim", d.holonomy->tdim}};
        }
        if (d.cs_index)
            x["cs_index"] = *d.cs_index;
        vs[t.vertex(v)] = x;
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto &d = s.edges[e];
        json x = {{"kind", to_string(d.kind)}};
        if (d.tdim)
            x["tdim"] = *d.tdim;
        json h = json::object();
        for (int side = 0; side < 2; ++side) {
            const auto &lh = d.holonomy[side];
            if (!lh)
                continue;
            const auto &name = t.vertex(t.endpoint(e, side));
            if (lh->periodic)
                h[name] = {{"periodic", true}, {"order", lh->order}};
            else
                h[name] = {{"periodic", false}};
        }
        if (!h.empty())
            x["holonomy"] = h;
        es[t.edge(e).key()] = x;
    }
    return {{"tree", to_json(t)}, {"vertices", vs}, {"edges", es}};
}

inline FoliationSpec foliation_from_json(const json &j) {
    FoliationSpec s;
    s.tree = graph_from_json(detail::field(j, "tree", "foliation"));
    const Graph &t = s.tree;
    const auto &vs = detail::field(j, "vertices", "foliation");
    const auto &es = j.contains("edges") ? j.at("edges") : json::object();
    if (!vs.is_object() || !es.is_object())
        throw InvalidInput("foliation: vertices and edges must be objects");
    for (const auto &[name, _] : vs.items())
        if (!t.has_vertex(name))
            throw InvalidInput("foliation: decoration for unknown vertex '" + name + "'");
    for (const auto &[key, _] : es.items())
        if (key.find('#') == std::string::npos ||
            !t.has_edge(key.substr(0, key.find('#')), key.substr(key.find('#') + 1)))
            throw InvalidInput("foliation: decoration for unknown edge '" + key + "'");
    for (const auto &name : t.vertices()) {
        const auto &x = detail::field(vs, name.c_str(), "foliation vertices");
        VertexData d;
        const auto kind = detail::as_string(detail::field(x, "kind", name), name + " kind");
        if (kind == "invariant")
            d.kind = VertexKind::invariant;
        else if (kind == "dicritical")
            d.kind = VertexKind::dicritical;
        else
            throw InvalidInput(name + ": unknown vertex kind '" + kind + "'");
        if (x.contains("holonomy")) {
            const auto &h = x.at("holonomy");
            GroupHolonomy gh;
            gh.finite = detail::as_bool(detail::field(h, "finite", name + " holonomy"), name + " holonomy");
            if (gh.finite)
                gh.order = static_cast<int>(detail::as_int(detail::field(h, "order", name + " holonomy"), name));
            else
                gh.tdim = static_cast<int>(detail::as_int(detail::field(h, "tdim", name + " holonomy"), name));
            d.holonomy = gh;
        }
        if (x.contains("cs_index"))
            d.cs_index = detail::as_string(x.at("cs_index"), name + " cs_index");
        s.vertices.push_back(d);
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto key = t.edge(e).key();
        EdgeData d;
        if (!es.contains(key)) {
            d.kind = EdgeKind::singular;
            s.edges.push_back(d);
            continue;
        }
        const auto &x = es.at(key);
        const auto kind = detail::as_string(detail::field(x, "kind", key), key + " kind");
        if (kind == "singular")
            d.kind = EdgeKind::singular;
        else if (kind == "nodal")
            d.kind = EdgeKind::nodal;
        else if (kind == "regular")
            d.kind = EdgeKind::regular;
        else
            throw InvalidInput(key + ": unknown edge kind '" + kind + "'");
        if (x.contains("tdim"))
            d.tdim = static_cast<int>(detail::as_int(x.at("tdim"), key + " tdim"));
        if (x.contains("holonomy")) {
            const auto &h = x.at("holonomy");
            if (!h.is_object())
                throw InvalidInput(key + ": holonomy must be an object keyed by endpoint");
            for (const auto &[who, val] : h.items()) {
                if (!t.edge(e).contains(who))
                    throw InvalidInput(key + ": holonomy for '" + who + "' which is not an endpoint");
                LocalHolonomy lh;
                lh.periodic = detail::as_bool(detail::field(val, "periodic", key), key + " periodic");
                if (lh.periodic)
                    lh.order = static_cast<int>(detail::as_int(detail::field(val, "order", key), key + " order"));
                d.holonomy[who == t.edge(e).first ? 0 : 1] = lh;
            }
        }
        s.edges.push_back(d);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Moduli reports

inline json to_json(const ModuliReport &r) {
    json out;
    out["cut_components"] = json::array();
    for (const auto &g : r.cut_components)
        out["cut_components"].push_back(to_json(g));
    out["red_subgraph"] = to_json(r.red_subgraph);
    out["red_components"] = json::array();
    for (const auto &g : r.red_components)
        out["red_components"].push_back(to_json(g));
    out["finite_type"] = r.finite_type ? "finite" : "not-finite";
    if (r.characterization)
        out["characterization"] = to_string(*r.characterization);
    out["entirely_green"] = r.entirely_green;
    out["witnesses"] = json::array();
    for (const auto &w : r.witnesses)
        out["witnesses"].push_back({{"component", w.component}, {"type", w.type}, {"elements", w.elements}});
    out["certificates"] = json::array();
    for (const auto &c : r.certificates)
        out["certificates"].push_back({{"component", c.component}, {"vertex", c.vertex}});
    out["tf_red"] = to_json(r.tf_red);
    if (r.moduli_dim)
        out["moduli_dim"] = *r.moduli_dim;
    else
        out["moduli_dim"] = "infinite";
    if (r.pipelines)
        out["pipelines"] = {{"active_edges", (*r.pipelines)[0]},
                            {"cochain_rank", (*r.pipelines)[1]},
                            {"contracted_rank", (*r.pipelines)[2]}};
    out["basis_edges"] = r.basis_edges;
    out["cs_index"] = r.cs_index;
    return out;
}

inline ModuliReport moduli_report_from_json(const json &j) {
    ModuliReport r;
    try {
        for (const auto &g : j.at("cut_components"))
            r.cut_components.push_back(graph_from_json(g));
        r.red_subgraph = graph_from_json(j.at("red_subgraph"));
        for (const auto &g : j.at("red_components"))
            r.red_components.push_back(graph_from_json(g));
        const auto ft = j.at("finite_type").get<std::string>();
        if (ft != "finite" && ft != "not-finite")
            throw InvalidInput("report: unknown finite_type '" + ft + "'");
        r.finite_type = ft == "finite";
        if (j.contains("characterization")) {
            const auto c = j.at("characterization").get<std::string>();
            if (c == "holds")
                r.characterization = Characterization::holds;
            else if (c == "fails")
                r.characterization = Characterization::fails;
            else if (c == "hypothesis-violated")
                r.characterization = Characterization::hypothesis_violated;
            else
                throw InvalidInput("report: unknown characterization '" + c + "'");
        }
        r.entirely_green = j.at("entirely_green").get<std::vector<std::size_t>>();
        for (const auto &w : j.at("witnesses"))
            r.witnesses.push_back({w.at("component").get<std::size_t>(), w.at("type").get<int>(),
                                   w.at("elements").get<std::vector<std::string>>()});
        for (const auto &c : j.at("certificates"))
            r.certificates.push_back({c.at("component").get<std::size_t>(), c.at("vertex").get<std::string>()});
        r.tf_red = vector_group_graph_from_json(j.at("tf_red"));
        const auto &md = j.at("moduli_dim");
        if (md.is_string()) {
            if (md.get<std::string>() != "infinite")
                throw InvalidInput("report: moduli_dim must be an integer or \"infinite\"");
        } else {
            r.moduli_dim = md.get<std::size_t>();
        }
        if (j.contains("pipelines")) {
            const auto &p = j.at("pipelines");
            r.pipelines = std::array<std::size_t, 3>{p.at("active_edges").get<std::size_t>(),
                                                     p.at("cochain_rank").get<std::size_t>(),
                                                     p.at("contracted_rank").get<std::size_t>()};
        }
        r.basis_edges = j.at("basis_edges").get<std::vector<std::string>>();
        r.cs_index = j.at("cs_index").get<std::map<std::string, std::string>>();
    } catch (const json::exception &e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    return r;
}

} // namespace ggc::io
