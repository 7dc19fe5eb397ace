#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "error.hpp"
#include "group_graph.hpp"

namespace ggc {

/// One group element per vertex.
template <class C> struct Cochain0 {
    std::vector<typename C::Value> values;
    friend bool operator==(const Cochain0 &, const Cochain0 &) = default;
};

/// One element of G_e per oriented incidence (v, e); `values[e][side]` is
/// the entry at endpoint `side` of e.
template <class C> struct Cocycle1 {
    std::vector<std::array<typename C::Value, 2>> values;
    friend bool operator==(const Cocycle1 &, const Cocycle1 &) = default;
};

template <class C> Cochain0<C> identity_cochain(const GroupGraph<C> &g) {
    Cochain0<C> c;
    for (const auto &o : g.vertex_groups())
        c.values.push_back(C::one(o));
    return c;
}

/// Componentwise product a·b.
template <class C> Cochain0<C> cochain_product(const GroupGraph<C> &g, const Cochain0<C> &a, const Cochain0<C> &b) {
    Cochain0<C> c;
    for (std::size_t v = 0; v < a.values.size(); ++v)
        c.values.push_back(C::mul(g.vertex_group(v), a.values[v], b.values[v]));
    return c;
}

template <class C> Cochain0<C> cochain_inverse(const GroupGraph<C> &g, const Cochain0<C> &a) {
    Cochain0<C> c;
    for (std::size_t v = 0; v < a.values.size(); ++v)
        c.values.push_back(C::inv(g.vertex_group(v), a.values[v]));
    return c;
}

/// The cocycle with the given tail entries; head entries are their inverses.
template <class C>
Cocycle1<C> cocycle_from_tails(const GroupGraph<C> &g, const std::vector<typename C::Value> &tails) {
    Cocycle1<C> z;
    for (std::size_t e = 0; e < tails.size(); ++e)
        z.values.push_back({tails[e], C::inv(g.edge_group(e), tails[e])});
    return z;
}

template <class C> Cocycle1<C> trivial_cocycle(const GroupGraph<C> &g) {
    std::vector<typename C::Value> tails;
    for (const auto &o : g.edge_groups())
        tails.push_back(C::one(o));
    return cocycle_from_tails(g, tails);
}

/// True when shapes match and g_{v,e} g_{v',e} = 1 on every edge.
template <class C> bool is_cocycle(const GroupGraph<C> &g, const Cocycle1<C> &z) {
    if (z.values.size() != g.base().edge_count())
        return false;
    for (std::size_t e = 0; e < z.values.size(); ++e) {
        const auto &o = g.edge_group(e);
        if (!C::valid_value(o, z.values[e][0]) || !C::valid_value(o, z.values[e][1]))
            return false;
        if (C::mul(o, z.values[e][0], z.values[e][1]) != C::one(o))
            return false;
    }
    return true;
}

template <class C> bool is_cochain(const GroupGraph<C> &g, const Cochain0<C> &c) {
    if (c.values.size() != g.base().vertex_count())
        return false;
    for (std::size_t v = 0; v < c.values.size(); ++v)
        if (!C::valid_value(g.vertex_group(v), c.values[v]))
            return false;
    return true;
}

/// (c ⋆ z)_{v,e} = ρ_v(c_v)^{-1} z_{v,e} ρ_{v'}(c_{v'}) with v' the other end of e.
/// A right action: c' ⋆ (c ⋆ z) = (c·c') ⋆ z.
template <class C> Cocycle1<C> coboundary_action(const GroupGraph<C> &g, const Cochain0<C> &c, const Cocycle1<C> &z) {
    if (!is_cochain(g, c) || !is_cocycle(g, z))
        throw InvalidInput("coboundary_action: cochain or cocycle does not fit the group-graph");
    const Graph &a = g.base();
    Cocycle1<C> out;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        const auto &o = g.edge_group(e);
        std::array<typename C::Value, 2> vals;
        for (int s = 0; s < 2; ++s) {
            const auto here = C::apply(g.restriction(e, s), c.values[a.endpoint(e, s)]);
            const auto there = C::apply(g.restriction(e, 1 - s), c.values[a.endpoint(e, 1 - s)]);
            vals[s] = C::mul(o, C::mul(o, C::inv(o, here), z.values[e][s]), there);
        }
        out.values.push_back(vals);
    }
    if (!is_cocycle(g, out))
        throw InternalError("coboundary_action produced a non-antisymmetric family");
    return out;
}

/// The cocycle induced on the target of m: entry at (v', e') is
/// m_{e'}(z_{phi(v'), phi(e')}), or 1 when e' collapses.
template <class C> Cocycle1<C> push_cocycle(const GroupGraphMorphism<C> &m, const Cocycle1<C> &z) {
    const Graph &a2 = m.over.source();
    const Graph &a = m.over.target();
    Cocycle1<C> out;
    for (std::size_t e = 0; e < a2.edge_count(); ++e) {
        const auto &im = m.over.edge_image(e);
        std::array<typename C::Value, 2> vals;
        for (int s = 0; s < 2; ++s) {
            if (im.collapsed) {
                vals[s] = C::one(m.target.edge_group(e));
            } else {
                const auto v = m.over.vertex_image(a2.endpoint(e, s));
                vals[s] = C::apply(m.edge_maps[e], z.values[im.index][a.side_of(im.index, v)]);
            }
        }
        out.values.push_back(vals);
    }
    return out;
}

template <class C> Cochain0<C> push_cochain(const GroupGraphMorphism<C> &m, const Cochain0<C> &c) {
    Cochain0<C> out;
    for (std::size_t v = 0; v < m.over.source().vertex_count(); ++v)
        out.values.push_back(C::apply(m.vertex_maps[v], c.values[m.over.vertex_image(v)]));
    return out;
}

/// H0: compatible vertex families, as an object with projections to each G_v.
template <class C> typename C::Families h0(const GroupGraph<C> &g, std::size_t budget = kDefaultBudget) {
    const Graph &a = g.base();
    std::vector<Constraint<typename C::Object, typename C::Hom>> cons;
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        cons.push_back({a.endpoint(e, 0), g.restriction(e, 0), a.endpoint(e, 1), g.restriction(e, 1), g.edge_group(e)});
    return C::compatible_families(g.vertex_groups(), cons, budget);
}

// ---------------------------------------------------------------------------
// Linear carrier

/// H1 of a vector-space graph as the cokernel of the coboundary
/// C0 -> prod_e G_e (tail coordinates), with a basis of unit cocycles.
template <class F> struct H1Vector {
    using C = LinearCarrier<F>;

    std::size_t dim = 0;
    std::vector<Cocycle1<C>> basis;
    /// Coboundary matrix, rows indexed by tail coordinates.
    Matrix<F> coboundary;
    /// dim x (total edge dimension): coordinates in `basis` of a tail vector.
    Matrix<F> coordinate_map;
    std::vector<std::size_t> edge_offset;
    std::vector<std::size_t> vertex_offset;

    std::vector<F> tail_vector(const Cocycle1<C> &z) const {
        std::vector<F> out;
        for (const auto &pair : z.values)
            out.insert(out.end(), pair[0].begin(), pair[0].end());
        return out;
    }
    std::vector<F> coordinates(const Cocycle1<C> &z) const { return coordinate_map.apply(tail_vector(z)); }
    bool cohomologous(const Cocycle1<C> &a, const Cocycle1<C> &b) const { return coordinates(a) == coordinates(b); }
};

template <class F> H1Vector<F> h1_vector(const GroupGraph<LinearCarrier<F>> &g) {
    using C = LinearCarrier<F>;
    const Graph &a = g.base();
    H1Vector<F> out;
    std::size_t n1 = 0, n0 = 0;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        out.edge_offset.push_back(n1);
        n1 += g.edge_group(e).dim;
    }
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        out.vertex_offset.push_back(n0);
        n0 += g.vertex_group(v).dim;
    }
    Matrix<F> d(n1, n0);
    for (std::size_t e = 0; e < a.edge_count(); ++e)
        for (int s = 0; s < 2; ++s) {
            const auto v = a.endpoint(e, s);
            const auto &r = g.restriction(e, s);
            const F sign = s == 0 ? F(-1) : F(1);
            for (std::size_t i = 0; i < r.rows(); ++i)
                for (std::size_t j = 0; j < r.cols(); ++j)
                    d(out.edge_offset[e] + i, out.vertex_offset[v] + j) += sign * r(i, j);
        }
    out.coboundary = d;

    Matrix<F> reduced = d;
    const auto pivots = reduced.rref();
    std::vector<std::vector<F>> image_cols;
    for (auto p : pivots)
        image_cols.push_back(d.column(p));
    const Matrix<F> image_basis = Matrix<F>::from_columns(image_cols, n1);
    const auto units = complement_units(image_basis);
    out.dim = units.size();

    Matrix<F> u(n1, units.size());
    for (std::size_t k = 0; k < units.size(); ++k)
        u(units[k], k) = F(1);
    auto inv = image_basis.hstack(u).inverse();
    if (!inv)
        throw InternalError("h1_vector: image basis and complement do not span");
    out.coordinate_map = Matrix<F>(units.size(), n1);
    for (std::size_t k = 0; k < units.size(); ++k)
        for (std::size_t j = 0; j < n1; ++j)
            out.coordinate_map(k, j) = (*inv)(pivots.size() + k, j);

    for (auto unit : units) {
        std::vector<typename C::Value> tails;
        for (std::size_t e = 0; e < a.edge_count(); ++e) {
            typename C::Value val(g.edge_group(e).dim, F(0));
            if (unit >= out.edge_offset[e] && unit < out.edge_offset[e] + val.size())
                val[unit - out.edge_offset[e]] = F(1);
            tails.push_back(val);
        }
        out.basis.push_back(cocycle_from_tails(g, tails));
    }
    return out;
}

/// Matrix of H1(m) in the chosen bases.
template <class F>
Matrix<F> h1_map_vector(const GroupGraphMorphism<LinearCarrier<F>> &m, const H1Vector<F> &source,
                        const H1Vector<F> &target) {
    std::vector<std::vector<F>> cols;
    for (const auto &b : source.basis)
        cols.push_back(target.coordinates(push_cocycle(m, b)));
    return Matrix<F>::from_columns(cols, target.dim);
}

// ---------------------------------------------------------------------------
// Finite carrier: exhaustive orbit enumeration

/// H1 of a finite group-graph by enumerating Z1 and its orbits.
///
/// Cocycles are indexed in mixed radix by their tail entries, first edge
/// most significant. Each class is represented by its smallest index, so the
/// class of the trivial cocycle (index 0) comes first.
struct H1Finite {
    using C = FiniteCarrier;

    std::size_t count = 0;
    std::vector<Cocycle1<C>> representatives;
    /// Number of cocycles in each class.
    std::vector<std::uint64_t> class_sizes;
    double cocycle_space = 1;
    double cochain_space = 1;

    std::uint64_t index_of(const Cocycle1<C> &z) const {
        std::uint64_t idx = 0;
        for (std::size_t e = 0; e < radix_.size(); ++e)
            idx = idx * radix_[e] + static_cast<std::uint64_t>(z.values[e][0]);
        return idx;
    }
    Cocycle1<C> cocycle_at(std::uint64_t idx) const {
        std::vector<Element> tails(radix_.size());
        for (std::size_t e = radix_.size(); e-- > 0;) {
            tails[e] = static_cast<Element>(idx % radix_[e]);
            idx /= radix_[e];
        }
        return cocycle_from_tails(graph_, tails);
    }
    std::size_t class_index(const Cocycle1<C> &z) const {
        if (!is_cocycle(graph_, z))
            throw InvalidInput("class_index: not a cocycle of this group-graph");
        return class_of_.at(index_of(z));
    }
    std::uint64_t cocycle_count() const { return class_of_.size(); }

    /// A cochain c with c ⋆ from == to, when both lie in one class. Requires
    /// the enumeration to have been run with path tracking.
    std::optional<Cochain0<C>> trivializer(const Cocycle1<C> &from, const Cocycle1<C> &to) const {
        if (parent_.empty())
            throw PreconditionFailed("trivializer: enumeration ran without path tracking");
        if (class_index(from) != class_index(to))
            return std::nullopt;
        const auto c1 = path_from_rep(index_of(from));
        const auto c2 = path_from_rep(index_of(to));
        return cochain_product(graph_, cochain_inverse(graph_, c1), c2);
    }

    const GroupGraph<C> &graph() const { return graph_; }

  private:
    friend H1Finite h1_finite_bruteforce(const GroupGraph<FiniteCarrier> &, std::size_t, bool);

    struct Step {
        std::uint32_t parent;
        std::uint16_t vertex;
        std::uint16_t generator;
    };

    /// c with c ⋆ rep == cocycle_at(idx).
    Cochain0<C> path_from_rep(std::uint64_t idx) const {
        std::vector<Step> steps;
        while (parent_[idx].parent != idx) {
            steps.push_back(parent_[idx]);
            idx = parent_[idx].parent;
        }
        auto c = identity_cochain(graph_);
        // the walk rep -> ... -> idx applies s_1 first; the right action
        // composes as c = s_1 · s_2 · ... · s_k
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            const auto &grp = graph_.vertex_group(it->vertex);
            c.values[it->vertex] = grp.mul(c.values[it->vertex], grp.generators()[it->generator]);
        }
        return c;
    }

    GroupGraph<C> graph_;
    std::vector<std::uint64_t> radix_;
    std::vector<std::uint32_t> class_of_;
    std::vector<Step> parent_;
};

inline H1Finite h1_finite_bruteforce(const GroupGraph<FiniteCarrier> &g, std::size_t budget = kDefaultBudget,
                                     bool track_paths = false) {
    const Graph &a = g.base();
    H1Finite out;
    out.graph_ = g;
    for (const auto &o : g.edge_groups())
        out.cocycle_space *= o.order();
    for (const auto &o : g.vertex_groups())
        out.cochain_space *= o.order();
    if (out.cocycle_space > static_cast<double>(budget) || out.cochain_space > static_cast<double>(budget))
        throw BudgetExceeded("H1 enumeration exceeds budget: |Z1| = " + std::to_string(out.cocycle_space) +
                                 ", |C0| = " + std::to_string(out.cochain_space),
                             out.cocycle_space, out.cochain_space);
    const auto total = static_cast<std::uint64_t>(out.cocycle_space);
    std::vector<std::uint64_t> stride(a.edge_count());
    {
        std::uint64_t s = 1;
        for (std::size_t e = a.edge_count(); e-- > 0;) {
            stride[e] = s;
            s *= static_cast<std::uint64_t>(g.edge_group(e).order());
        }
    }
    for (const auto &o : g.edge_groups())
        out.radix_.push_back(static_cast<std::uint64_t>(o.order()));

    // Each generator s at vertex v changes the tail entry of every edge at v:
    // on the tail side it is left-multiplied by ρ(s)^{-1}, on the head side
    // right-multiplied by ρ(s).
    struct Move {
        std::size_t edge;
        bool tail;
        Element factor;
    };
    struct Gen {
        std::uint16_t vertex;
        std::uint16_t index;
        std::vector<Move> moves;
    };
    std::vector<Gen> gens;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        const auto &gv = g.vertex_group(v).generators();
        for (std::size_t k = 0; k < gv.size(); ++k) {
            Gen gen{static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(k), {}};
            for (auto e : a.incident(v)) {
                const int side = a.side_of(e, v);
                const auto img = g.restriction(e, side)(gv[k]);
                if (img == 0)
                    continue;
                gen.moves.push_back({e, side == 0, side == 0 ? g.edge_group(e).inv(img) : img});
            }
            if (!gen.moves.empty())
                gens.push_back(std::move(gen));
        }
    }

    constexpr std::uint32_t unset = UINT32_MAX;
    out.class_of_.assign(total, unset);
    if (track_paths)
        out.parent_.resize(total);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t start = 0; start < total; ++start) {
        if (out.class_of_[start] != unset)
            continue;
        const auto cls = static_cast<std::uint32_t>(out.count++);
        out.class_of_[start] = cls;
        if (track_paths)
            out.parent_[start] = {static_cast<std::uint32_t>(start), 0, 0};
        queue.assign(1, start);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const auto cur = queue[qi];
            for (const auto &gen : gens) {
                std::uint64_t next = cur;
                for (const auto &mv : gen.moves) {
                    const auto &ge = g.edge_group(mv.edge);
                    const auto digit = static_cast<Element>((cur / stride[mv.edge]) % out.radix_[mv.edge]);
                    const auto nd = mv.tail ? ge.mul(mv.factor, digit) : ge.mul(digit, mv.factor);
                    next = next - static_cast<std::uint64_t>(digit) * stride[mv.edge] +
                           static_cast<std::uint64_t>(nd) * stride[mv.edge];
                }
                if (out.class_of_[next] == unset) {
                    out.class_of_[next] = cls;
                    if (track_paths)
                        out.parent_[next] = {static_cast<std::uint32_t>(cur), gen.vertex, gen.index};
                    queue.push_back(next);
                }
            }
        }
        out.representatives.push_back(out.cocycle_at(start));
        out.class_sizes.push_back(queue.size());
    }
    return out;
}

/// H1(m) on classes: entry i is the target class of source class i.
inline std::vector<std::size_t> h1_map_finite(const GroupGraphMorphism<FiniteCarrier> &m, const H1Finite &source,
                                              const H1Finite &target) {
    std::vector<std::size_t> out;
    for (const auto &rep : source.representatives)
        out.push_back(target.class_index(push_cocycle(m, rep)));
    return out;
}

} // namespace ggc
