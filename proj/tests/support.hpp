#pragma once

// Small builders shared by the test suites.

#include <string>
#include <utility>
#include <vector>

#include <ggc/generators.hpp>
#include <ggc/ggc.hpp>

namespace ggc::test {

using VG = GroupGraph<RationalCarrier>;
using FG = GroupGraph<FiniteCarrier>;
using Q = Rational;
using M = Matrix<Rational>;

inline Graph path_graph(const std::vector<std::string> &vs) {
    std::vector<std::pair<std::string, std::string>> es;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        es.emplace_back(vs[i], vs[i + 1]);
    return Graph(vs, es);
}

inline Graph segment() { return path_graph({"a", "b"}); }

/// 1x1 or 0-dim scalar restriction: `s` times the identity when both dims
/// are 1, the zero map otherwise.
inline M scalar(std::size_t from, std::size_t to, long s) {
    if (from == 1 && to == 1)
        return M::from_rows({{Q(s)}});
    return M::zero(to, from);
}

/// Vector group-graph on a path with the given vertex and edge dims (each 0
/// or 1) and scalar restrictions, listed per edge as (tail, head).
inline VG vector_path(const std::vector<std::size_t> &vdims, const std::vector<std::size_t> &edims,
                      const std::vector<std::pair<long, long>> &scalars) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vdims.size(); ++i)
        names.push_back("p" + std::to_string(i));
    const auto g = path_graph(names);
    std::vector<VectorSpace> vg, eg;
    for (auto d : vdims)
        vg.push_back({d});
    for (auto d : edims)
        eg.push_back({d});
    std::vector<std::array<M, 2>> rest;
    for (std::size_t e = 0; e < edims.size(); ++e)
        rest.push_back({scalar(vdims[e], edims[e], scalars[e].first), scalar(vdims[e + 1], edims[e], scalars[e].second)});
    return VG(g, vg, eg, rest);
}

/// Finite group-graph on a segment a-b.
inline FG finite_segment(const FiniteGroup &ga, const FiniteGroup &ge, const FiniteGroup &gb, const FiniteHom &ra,
                         const FiniteHom &rb) {
    return FG(segment(), {ga, gb}, {ge}, {{ra, rb}});
}

} // namespace ggc::test
