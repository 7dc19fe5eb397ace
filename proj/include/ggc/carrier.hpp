#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "finite_group.hpp"
#include "linalg.hpp"

namespace ggc {

/// One equation of a compatible family: f(x[a]) == g(x[b]) in `target`.
template <class Obj, class Hom> struct Constraint {
    std::size_t a;
    Hom f;
    std::size_t b;
    Hom g;
    Obj target;
};

/// Small finite groups given by Cayley tables.
struct FiniteCarrier {
    using Object = FiniteGroup;
    using Hom = FiniteHom;
    using Value = Element;
    static constexpr const char *kind = "finite";

    struct Product {
        Object object;
        std::vector<Hom> projections;
        std::vector<Object> factors;
    };
    struct Sub {
        Object object;
        Hom inclusion;
    };
    struct Families {
        Object object;
        std::vector<Hom> projections;
    };

    static Object trivial() { return FiniteGroup::trivial(); }
    static bool is_trivial(const Object &g) { return g.is_trivial(); }
    static std::size_t size(const Object &g) { return static_cast<std::size_t>(g.order()); }

    static Hom identity(const Object &g) { return FiniteHom::identity(g); }
    static Hom zero(const Object &src, const Object &) { return FiniteHom::trivial(src); }
    static Hom compose(const Hom &second, const Hom &first) { return second.after(first); }
    static bool equal(const Hom &a, const Hom &b) { return a == b; }
    static bool valid(const Hom &h, const Object &src, const Object &tgt) { return is_homomorphism(h, src, tgt); }
    static bool is_iso(const Hom &h, const Object &src, const Object &tgt) { return is_isomorphism(h, src, tgt); }
    static bool is_surjective(const Hom &h, const Object &, const Object &tgt) { return ggc::is_surjective(h, tgt); }
    static bool is_injective(const Hom &h, const Object &, const Object &) { return ggc::is_injective(h); }

    static Value apply(const Hom &h, const Value &x) { return h(x); }
    static Value one(const Object &) { return 0; }
    static Value mul(const Object &g, const Value &a, const Value &b) { return g.mul(a, b); }
    static Value inv(const Object &g, const Value &a) { return g.inv(a); }
    static bool valid_value(const Object &g, const Value &a) { return a >= 0 && a < g.order(); }

    static Product product(const std::vector<Object> &factors, std::size_t budget = kDefaultBudget) {
        double total = 1;
        for (const auto &f : factors)
            total *= f.order();
        if (total * total > static_cast<double>(budget))
            throw BudgetExceeded("product group table too large", total, total);
        Object acc = trivial();
        for (const auto &f : factors)
            acc = FiniteGroup::direct_product(acc, f);
        Product out{acc, {}, factors};
        int stride = acc.order();
        for (const auto &f : factors) {
            stride /= f.order();
            Hom p;
            p.images.resize(acc.order());
            for (int x = 0; x < acc.order(); ++x)
                p.images[x] = (x / stride) % f.order();
            out.projections.push_back(std::move(p));
        }
        return out;
    }

    /// The hom s -> product whose components are `parts`.
    static Hom into_product(const Product &prod, const std::vector<Hom> &parts, const Object &src) {
        Hom h;
        h.images.resize(src.order());
        for (int s = 0; s < src.order(); ++s) {
            int code = 0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                code = code * prod.factors[i].order() + parts[i](s);
            }
            h.images[s] = code;
        }
        return h;
    }

    /// Tuples (x_i) in the product of `factors` satisfying every constraint,
    /// as a group with coordinate projections. Tuples are ordered
    /// lexicographically, so the identity tuple is element 0.
    static Families compatible_families(const std::vector<Object> &factors,
                                        const std::vector<Constraint<Object, Hom>> &constraints,
                                        std::size_t budget = kDefaultBudget) {
        const std::size_t n = factors.size();
        std::vector<std::vector<const Constraint<Object, Hom> *>> due(n);
        for (const auto &c : constraints)
            due[std::max(c.a, c.b)].push_back(&c);
        std::vector<std::vector<Element>> tuples;
        std::vector<Element> cur(n, 0);
        std::size_t visited = 0;
        auto dfs = [&](auto &&self, std::size_t i) -> void {
            if (++visited > budget)
                throw BudgetExceeded("compatible family enumeration exceeds budget", static_cast<double>(visited),
                                     static_cast<double>(visited));
            if (i == n) {
                tuples.push_back(cur);
                return;
            }
            for (int x = 0; x < factors[i].order(); ++x) {
                cur[i] = x;
                bool ok = true;
                for (const auto *c : due[i])
                    if (c->f(cur[c->a]) != c->g(cur[c->b])) {
                        ok = false;
                        break;
                    }
                if (ok)
                    self(self, i + 1);
            }
        };
        dfs(dfs, 0);
        const double m = static_cast<double>(tuples.size());
        if (m * m > static_cast<double>(budget))
            throw BudgetExceeded("group of compatible families too large", m, m);
        std::map<std::vector<Element>, int> pos;
        for (std::size_t i = 0; i < tuples.size(); ++i)
            pos.emplace(tuples[i], static_cast<int>(i));
        std::vector<std::vector<int>> table(tuples.size(), std::vector<int>(tuples.size()));
        std::vector<Element> prod(n);
        for (std::size_t a = 0; a < tuples.size(); ++a)
            for (std::size_t b = 0; b < tuples.size(); ++b) {
                for (std::size_t i = 0; i < n; ++i)
                    prod[i] = factors[i].mul(tuples[a][i], tuples[b][i]);
                table[a][b] = pos.at(prod);
            }
        Families out{make_group_unchecked(std::move(table), {}), {}};
        for (std::size_t i = 0; i < n; ++i) {
            Hom p;
            for (const auto &t : tuples)
                p.images.push_back(t[i]);
            out.projections.push_back(std::move(p));
        }
        return out;
    }

    static Sub kernel(const Hom &h, const Object &src, const Object &) {
        auto [k, incl] = subgroup(src, kernel_set(h));
        return {k, incl};
    }
    static Sub image(const Hom &h, const Object &, const Object &tgt) {
        auto [k, incl] = subgroup(tgt, image_set(h, tgt));
        return {k, incl};
    }
    /// The subgroup of `g` generated by the given elements.
    static Sub generated(const Object &g, const std::vector<Value> &elements) {
        auto [k, incl] = subgroup(g, g.closure(elements));
        return {k, incl};
    }

    /// f : x -> y factored through the injective `incl` : s -> y.
    static Hom lift_through(const Hom &f, const Hom &incl, const Object &y) {
        std::vector<int> back(y.order(), -1);
        for (int s = 0; s < static_cast<int>(incl.images.size()); ++s)
            back[incl(s)] = s;
        Hom h;
        for (auto fx : f.images) {
            if (back[fx] < 0)
                throw PreconditionFailed("lift_through: image not contained in the subgroup");
            h.images.push_back(back[fx]);
        }
        return h;
    }

    static std::pair<Object, Hom> quotient(const Object &g, const Sub &n) {
        return ggc::quotient(g, n.inclusion.images);
    }

    /// The hom q -> y with result ∘ proj == f.
    static Hom factor(const Hom &f, const Hom &proj, const Object &q) {
        Hom h{std::vector<Element>(q.order(), -1)};
        for (int x = 0; x < static_cast<int>(proj.images.size()); ++x) {
            auto &slot = h.images[proj(x)];
            if (slot < 0)
                slot = f(x);
            else if (slot != f(x))
                throw PreconditionFailed("factor: hom is not constant on fibers of the projection");
        }
        return h;
    }
};

/// Finite-dimensional vector space over F, identified with F^dim.
struct VectorSpace {
    std::size_t dim = 0;
    friend bool operator==(const VectorSpace &, const VectorSpace &) = default;
};

template <class F> struct LinearCarrier {
    using Field = F;
    using Object = VectorSpace;
    using Hom = Matrix<F>;
    using Value = std::vector<F>;
    static constexpr const char *kind = "vector";

    struct Product {
        Object object;
        std::vector<Hom> projections;
        std::vector<Object> factors;
    };
    struct Sub {
        Object object;
        Hom inclusion;
    };
    struct Families {
        Object object;
        std::vector<Hom> projections;
    };

    static Object trivial() { return {0}; }
    static bool is_trivial(const Object &v) { return v.dim == 0; }
    static std::size_t dimension(const Object &v) { return v.dim; }

    static Hom identity(const Object &v) { return Hom::identity(v.dim); }
    static Hom zero(const Object &src, const Object &tgt) { return Hom::zero(tgt.dim, src.dim); }
    static Hom compose(const Hom &second, const Hom &first) { return second * first; }
    static bool equal(const Hom &a, const Hom &b) { return a == b; }
    static bool valid(const Hom &h, const Object &src, const Object &tgt) {
        return h.rows() == tgt.dim && h.cols() == src.dim;
    }
    static bool is_iso(const Hom &h, const Object &src, const Object &tgt) {
        return src.dim == tgt.dim && h.rank() == src.dim;
    }
    static bool is_surjective(const Hom &h, const Object &, const Object &tgt) { return h.rank() == tgt.dim; }
    static bool is_injective(const Hom &h, const Object &src, const Object &) { return h.rank() == src.dim; }

    static Value apply(const Hom &h, const Value &x) { return h.apply(x); }
    static Value one(const Object &v) { return Value(v.dim, F(0)); }
    static Value mul(const Object &, const Value &a, const Value &b) {
        Value c = a;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += b[i];
        return c;
    }
    static Value inv(const Object &, const Value &a) {
        Value c = a;
        for (auto &x : c)
            x = F(0) - x;
        return c;
    }
    static bool valid_value(const Object &v, const Value &a) { return a.size() == v.dim; }

    static Product product(const std::vector<Object> &factors, std::size_t = kDefaultBudget) {
        std::size_t total = 0;
        for (const auto &f : factors)
            total += f.dim;
        Product out{{total}, {}, factors};
        std::size_t off = 0;
        for (const auto &f : factors) {
            Hom p(f.dim, total);
            for (std::size_t i = 0; i < f.dim; ++i)
                p(i, off + i) = F(1);
            off += f.dim;
            out.projections.push_back(std::move(p));
        }
        return out;
    }

    static Hom into_product(const Product &prod, const std::vector<Hom> &parts, const Object &src) {
        Hom h(0, src.dim);
        for (const auto &p : parts)
            h = h.vstack(p);
        if (h.rows() != prod.object.dim)
            throw InvalidInput("into_product: component shapes do not match the product");
        return h;
    }

    static Families compatible_families(const std::vector<Object> &factors,
                                        const std::vector<Constraint<Object, Hom>> &constraints,
                                        std::size_t = kDefaultBudget) {
        auto prod = product(factors);
        Hom eqs(0, prod.object.dim);
        for (const auto &c : constraints)
            eqs = eqs.vstack(c.f * prod.projections[c.a] - c.g * prod.projections[c.b]);
        Hom basis = eqs.kernel_basis();
        Families out{{basis.cols()}, {}};
        for (const auto &p : prod.projections)
            out.projections.push_back(p * basis);
        return out;
    }

    static Sub kernel(const Hom &h, const Object &, const Object &) {
        Hom k = h.kernel_basis();
        return {{k.cols()}, k};
    }
    static Sub image(const Hom &h, const Object &, const Object &tgt) {
        Hom m = h;
        auto pivots = m.rref();
        std::vector<std::vector<F>> cols;
        for (auto p : pivots)
            cols.push_back(h.column(p));
        return {{cols.size()}, Hom::from_columns(cols, tgt.dim)};
    }
    static Sub generated(const Object &v, const std::vector<Value> &elements) {
        Hom m = Hom::from_columns(elements, v.dim);
        return image(m, {m.cols()}, v);
    }

    static Hom lift_through(const Hom &f, const Hom &incl, const Object &) {
        auto x = incl.solve(f);
        if (!x)
            throw PreconditionFailed("lift_through: image not contained in the subspace");
        return *x;
    }

    static std::pair<Object, Hom> quotient(const Object &v, const Sub &n) {
        const auto extra = complement_units(n.inclusion);
        Hom units(v.dim, extra.size());
        for (std::size_t j = 0; j < extra.size(); ++j)
            units(extra[j], j) = F(1);
        auto inv = n.inclusion.hstack(units).inverse();
        if (!inv)
            throw PreconditionFailed("quotient: inclusion is not injective");
        Hom proj(extra.size(), v.dim);
        for (std::size_t i = 0; i < extra.size(); ++i)
            for (std::size_t j = 0; j < v.dim; ++j)
                proj(i, j) = (*inv)(n.object.dim + i, j);
        return {{extra.size()}, proj};
    }

    static Hom factor(const Hom &f, const Hom &proj, const Object &q) {
        auto section = proj.solve(Hom::identity(q.dim));
        if (!section)
            throw PreconditionFailed("factor: projection is not surjective");
        Hom h = f * *section;
        if (h * proj != f)
            throw PreconditionFailed("factor: hom does not vanish on the kernel of the projection");
        return h;
    }
};

using RationalCarrier = LinearCarrier<Rational>;

} // namespace ggc
