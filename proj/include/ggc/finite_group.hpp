#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ggc {

using Element = int;

/// Finite group given by its Cayley table on 0..order-1, identity 0.
///
/// Copies share the table.
class FiniteGroup {
  public:
    /// The trivial group.
    FiniteGroup() : FiniteGroup(make({{0}}, "1")) {}

    /// Validates closure, identity at 0, latin-square rows/columns and
    /// associativity.
    static FiniteGroup from_table(const std::vector<std::vector<int>> &table, std::string name = {}) {
        const std::size_t n = table.size();
        if (n == 0)
            throw InvalidInput("group table is empty");
        for (const auto &row : table)
            if (row.size() != n)
                throw InvalidInput("group table is not square");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table[a][b] < 0 || static_cast<std::size_t>(table[a][b]) >= n)
                    throw InvalidInput("group table entry out of range");
        for (std::size_t a = 0; a < n; ++a)
            if (table[0][a] != static_cast<int>(a) || table[a][0] != static_cast<int>(a))
                throw InvalidInput("group table: element 0 is not the identity");
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<bool> row(n, false), col(n, false);
            for (std::size_t b = 0; b < n; ++b) {
                row[table[a][b]] = true;
                col[table[b][a]] = true;
            }
            if (std::find(row.begin(), row.end(), false) != row.end() ||
                std::find(col.begin(), col.end(), false) != col.end())
                throw InvalidInput("group table: some element has no inverse");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw InvalidInput("group table is not associative");
        return make(table, std::move(name));
    }

    static FiniteGroup trivial() { return FiniteGroup(); }

    static FiniteGroup cyclic(int n) {
        if (n < 1)
            throw InvalidInput("cyclic group order must be positive");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t[a][b] = (a + b) % n;
        return make(t, "Z" + std::to_string(n));
    }

    /// Symmetries of the n-gon, order 2n. Element r^k s^f has index 2k + f.
    static FiniteGroup dihedral(int n) {
        if (n < 1)
            throw InvalidInput("dihedral group parameter must be positive");
        const int order = 2 * n;
        std::vector<std::vector<int>> t(order, std::vector<int>(order));
        for (int x = 0; x < order; ++x)
            for (int y = 0; y < order; ++y) {
                int k1 = x / 2, f1 = x % 2, k2 = y / 2, f2 = y % 2;
                // r^k1 s^f1 r^k2 s^f2 = r^(k1 + (-1)^f1 k2) s^(f1+f2)
                int k = ((k1 + (f1 ? -k2 : k2)) % n + n) % n;
                t[x][y] = 2 * k + ((f1 + f2) % 2);
            }
        return make(t, "D" + std::to_string(order));
    }

    /// Quaternion group Q8: indices 0..7 are 1,-1,i,-i,j,-j,k,-k.
    static FiniteGroup quaternion() {
        // unit u in {1,i,j,k} times sign
        static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        std::vector<std::vector<int>> t(8, std::vector<int>(8));
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y) {
                int ux = x / 2, sx = x % 2, uy = y / 2, sy = y % 2;
                int u = unit_mul[ux][uy];
                int s = (sx + sy + sign_mul[ux][uy]) % 2;
                t[x][y] = 2 * u + s;
            }
        return make(t, "Q8");
    }

    /// Elements (a, b) indexed a * |b| + b.
    static FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b) {
        const int na = a.order(), nb = b.order();
        std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
        for (int x = 0; x < na * nb; ++x)
            for (int y = 0; y < na * nb; ++y)
                t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        std::string name = a.name() + "x" + b.name();
        if (a.order() == 1)
            name = b.name();
        else if (b.order() == 1)
            name = a.name();
        return make(t, name);
    }

    /// (Z/p)^d, coordinates in base p, first coordinate most significant.
    static FiniteGroup elementary_abelian(int p, int d) {
        FiniteGroup g;
        for (int i = 0; i < d; ++i)
            g = direct_product(g, cyclic(p));
        return g;
    }

    int order() const { return static_cast<int>(data_->table.size()); }
    bool is_trivial() const { return order() == 1; }
    const std::string &name() const { return data_->name; }
    Element identity() const { return 0; }
    Element mul(Element a, Element b) const { return data_->table[a][b]; }
    Element inv(Element a) const { return data_->inverse[a]; }
    const std::vector<std::vector<int>> &table() const { return data_->table; }

    bool is_abelian() const {
        for (int a = 0; a < order(); ++a)
            for (int b = 0; b < a; ++b)
                if (mul(a, b) != mul(b, a))
                    return false;
        return true;
    }

    /// Sorted elements of the subgroup generated by `gens`.
    std::vector<Element> closure(const std::vector<Element> &gens) const {
        std::vector<bool> in(order(), false);
        std::vector<Element> out{0};
        in[0] = true;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (auto g : gens) {
                auto x = mul(out[i], g);
                if (!in[x]) {
                    in[x] = true;
                    out.push_back(x);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Generating set picked greedily in index order.
    const std::vector<Element> &generators() const { return data_->generators; }

    friend bool operator==(const FiniteGroup &a, const FiniteGroup &b) {
        return a.data_ == b.data_ || a.data_->table == b.data_->table;
    }

  private:
    struct Data {
        std::vector<std::vector<int>> table;
        std::vector<int> inverse;
        std::vector<Element> generators;
        std::string name;
    };

    explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    static FiniteGroup make(std::vector<std::vector<int>> table, std::string name) {
        auto d = std::make_shared<Data>();
        const int n = static_cast<int>(table.size());
        d->inverse.assign(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (table[a][b] == 0)
                    d->inverse[a] = b;
        d->table = std::move(table);
        d->name = std::move(name);
        FiniteGroup g{std::shared_ptr<const Data>(d)};
        std::vector<bool> covered(n, false);
        covered[0] = true;
        for (int x = 1; x < n; ++x) {
            if (covered[x])
                continue;
            d->generators.push_back(x);
            for (auto y : g.closure(d->generators))
                covered[y] = true;
        }
        return g;
    }

    friend FiniteGroup make_group_unchecked(std::vector<std::vector<int>>, std::string);

    std::shared_ptr<const Data> data_;
};

/// Build from a table already known to be a group table with identity 0.
inline FiniteGroup make_group_unchecked(std::vector<std::vector<int>> table, std::string name) {
    return FiniteGroup::make(std::move(table), std::move(name));
}

/// Homomorphism given by the image of every element.
struct FiniteHom {
    std::vector<Element> images;

    Element operator()(Element x) const { return images.at(x); }
    friend bool operator==(const FiniteHom &, const FiniteHom &) = default;

    static FiniteHom identity(const FiniteGroup &g) {
        FiniteHom h;
        h.images.resize(g.order());
        std::iota(h.images.begin(), h.images.end(), 0);
        return h;
    }
    static FiniteHom trivial(const FiniteGroup &from) { return FiniteHom{std::vector<Element>(from.order(), 0)}; }

    /// (this ∘ first)
    FiniteHom after(const FiniteHom &first) const {
        FiniteHom h;
        h.images.reserve(first.images.size());
        for (auto x : first.images)
            h.images.push_back(images.at(x));
        return h;
    }
};

inline bool is_homomorphism(const FiniteHom &f, const FiniteGroup &src, const FiniteGroup &tgt) {
    if (static_cast<int>(f.images.size()) != src.order())
        return false;
    for (auto y : f.images)
        if (y < 0 || y >= tgt.order())
            return false;
    for (int a = 0; a < src.order(); ++a)
        for (int b = 0; b < src.order(); ++b)
            if (f(src.mul(a, b)) != tgt.mul(f(a), f(b)))
                return false;
    return true;
}

inline std::vector<Element> image_set(const FiniteHom &f, const FiniteGroup &tgt) {
    std::vector<bool> in(tgt.order(), false);
    for (auto y : f.images)
        in[y] = true;
    std::vector<Element> out;
    for (int y = 0; y < tgt.order(); ++y)
        if (in[y])
            out.push_back(y);
    return out;
}

inline std::vector<Element> kernel_set(const FiniteHom &f) {
    std::vector<Element> out;
    for (int x = 0; x < static_cast<int>(f.images.size()); ++x)
        if (f.images[x] == 0)
            out.push_back(x);
    return out;
}

inline bool is_surjective(const FiniteHom &f, const FiniteGroup &tgt) {
    return static_cast<int>(image_set(f, tgt).size()) == tgt.order();
}
inline bool is_injective(const FiniteHom &f) { return kernel_set(f).size() == 1; }
inline bool is_isomorphism(const FiniteHom &f, const FiniteGroup &src, const FiniteGroup &tgt) {
    return src.order() == tgt.order() && is_injective(f);
}

inline bool is_subgroup(const FiniteGroup &g, const std::vector<Element> &s) {
    std::vector<bool> in(g.order(), false);
    for (auto x : s) {
        if (x < 0 || x >= g.order())
            return false;
        in[x] = true;
    }
    if (s.empty() || !in[0])
        return false;
    for (auto a : s)
        for (auto b : s)
            if (!in[g.mul(a, g.inv(b))])
                return false;
    return true;
}

inline bool is_normal_subgroup(const FiniteGroup &g, const std::vector<Element> &s) {
    if (!is_subgroup(g, s))
        return false;
    std::vector<bool> in(g.order(), false);
    for (auto x : s)
        in[x] = true;
    for (int c = 0; c < g.order(); ++c)
        for (auto x : s)
            if (!in[g.mul(g.mul(c, x), g.inv(c))])
                return false;
    return true;
}

/// Group on the given (sorted) subset, index i standing for elements[i],
/// with its inclusion into g.
inline std::pair<FiniteGroup, FiniteHom> subgroup(const FiniteGroup &g, std::vector<Element> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!is_subgroup(g, elements))
        throw PreconditionFailed("subgroup: subset is not a subgroup");
    std::vector<int> pos(g.order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
        pos[elements[i]] = static_cast<int>(i);
    const std::size_t n = elements.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = pos[g.mul(elements[a], elements[b])];
    return {make_group_unchecked(std::move(t), {}), FiniteHom{elements}};
}

/// g / n with cosets indexed by their smallest element, and the projection.
inline std::pair<FiniteGroup, FiniteHom> quotient(const FiniteGroup &g, const std::vector<Element> &normal) {
    if (!is_normal_subgroup(g, normal))
        throw PreconditionFailed("quotient: subset is not a normal subgroup");
    std::vector<int> coset(g.order(), -1);
    std::vector<Element> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (coset[x] >= 0)
            continue;
        const int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (auto k : normal)
            coset[g.mul(x, k)] = c;
    }
    const std::size_t m = reps.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            t[a][b] = coset[g.mul(reps[a], reps[b])];
    return {make_group_unchecked(std::move(t), {}), FiniteHom{coset}};
}

/// Every homomorphism src -> tgt, in lexicographic order of generator images.
inline std::vector<FiniteHom> all_homomorphisms(const FiniteGroup &src, const FiniteGroup &tgt) {
    const auto &gens = src.generators();
    std::vector<FiniteHom> out;
    std::vector<Element> choice(gens.size(), 0);
    while (true) {
        // Extend along a breadth-first spanning of src by right multiplication.
        std::vector<int> img(src.order(), -1);
        img[0] = 0;
        std::vector<Element> queue{0};
        bool ok = true;
        for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
            const auto x = queue[qi];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const auto y = src.mul(x, gens[k]);
                const auto fy = tgt.mul(img[x], choice[k]);
                if (img[y] < 0) {
                    img[y] = fy;
                    queue.push_back(y);
                } else if (img[y] != fy) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            FiniteHom h{std::vector<Element>(img.begin(), img.end())};
            if (is_homomorphism(h, src, tgt))
                out.push_back(std::move(h));
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == tgt.order())
            choice[k++] = 0;
        if (k == choice.size())
            break;
    }
    return out;
}

inline std::vector<FiniteHom> automorphisms(const FiniteGroup &g) {
    std::vector<FiniteHom> out;
    for (auto &h : all_homomorphisms(g, g))
        if (is_injective(h))
            out.push_back(std::move(h));
    return out;
}

/// All normal subgroups, each as a sorted element list, smallest first.
inline std::vector<std::vector<Element>> normal_subgroups(const FiniteGroup &g) {
    std::vector<std::vector<Element>> found;
    // Subgroups generated by at most two elements, plus the whole group: for
    // the groups of order <= 8 used by the generators this is all of them.
    for (int a = 0; a < g.order(); ++a)
        for (int b = a; b < g.order(); ++b) {
            auto s = g.closure({a, b});
            if (is_normal_subgroup(g, s) && std::find(found.begin(), found.end(), s) == found.end())
                found.push_back(std::move(s));
        }
    std::vector<Element> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    if (std::find(found.begin(), found.end(), all) == found.end())
        found.push_back(all);
    std::sort(found.begin(), found.end(), [](const auto &x, const auto &y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return found;
}

} // namespace ggc
