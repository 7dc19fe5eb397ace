#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "foliation.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "rng.hpp"
#include "theorems.hpp"

namespace ggc::selfcheck {

using json = nlohmann::json;

/// What one generated instance produced.
struct Outcome {
    bool ok = true;
    std::string detail;
    /// Enough to replay the instance by hand.
    json instance;
};

struct Family {
    std::string name;
    /// Negative controls are expected to fail the verifier's conclusion;
    /// `ok` then means the failure was detected.
    bool negative_control = false;
    std::function<Outcome(Rng &, std::size_t budget)> run;
};

struct FamilyResult {
    std::string name;
    bool negative_control = false;
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t budget_exceeded = 0;
};

struct Failure {
    std::string family;
    std::size_t index = 0;
    std::string detail;
    json instance;
};

struct Report {
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::size_t budget = 0;
    std::vector<FamilyResult> families;
    std::optional<Failure> failure;
    std::optional<std::string> budget_message;

    bool all_passed() const { return !failure && !budget_message; }
};

namespace detail {

inline Outcome expect(bool ok, std::string detail, json instance) { return {ok, std::move(detail), std::move(instance)}; }

inline std::vector<Family> families() {
    std::vector<Family> out;
    out.push_back({"regular-vector", false, [](Rng &rng, std::size_t) {
                       const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 10)));
                       const auto g = gen::random_regular_vector(rng, t, 2);
                       const auto a = regular_h1(g, true, false);
                       const auto b = regular_h1(g, true, true);
                       const auto lin = h1_vector(g).dim;
                       return expect(a.dim == lin && b.dim == lin &&
                                         a.structure.a() - a.structure.p() == a.contracted_rank,
                                     "active-edge dim " + std::to_string(a.dim) + " vs " + std::to_string(lin),
                                     io::to_json(g));
                   }});
    out.push_back({"regular-finite", false, [](Rng &rng, std::size_t budget) {
                       const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
                       const auto g = gen::random_regular_finite(rng, t, 8);
                       const auto a = regular_h1(g, true, false, budget);
                       const auto b = regular_h1(g, true, true, budget);
                       const auto brute = h1_finite_bruteforce(g, budget).count;
                       return expect(a.count == brute && b.count == brute,
                                     "closed form " + std::to_string(a.count) + " vs " + std::to_string(brute),
                                     io::to_json(g));
                   }});
    out.push_back({"pruning", false, [](Rng &rng, std::size_t budget) {
                       const bool vec = rng.chance(1, 2);
                       const auto inst = gen::random_repulsive(rng, 7, vec);
                       const json j = {{"graph", vec ? io::to_json(inst.vector) : io::to_json(inst.finite)},
                                       {"subtree", inst.subtree}};
                       const auto rep = vec ? pruning_verify(inst.vector, inst.subtree, budget)
                                            : pruning_verify(inst.finite, inst.subtree, budget);
                       return expect(rep.bijective && rep.whole == rep.pruned,
                                     "H1 " + std::to_string(rep.whole.value) + " vs pruned " +
                                         std::to_string(rep.pruned.value),
                                     j);
                   }});
    out.push_back({"quotient", false, [](Rng &rng, std::size_t budget) {
                       const auto seq = gen::random_exact_sequence(rng, 4);
                       const auto rep = quotient_iso_verify(seq, budget);
                       const json j = {{"graph", io::to_json(seq.middle())}, {"sub", io::to_json(seq.sub())}};
                       return expect(rep.holds(),
                                     "bijective " + std::to_string(rep.bijective) + ", lift failures " +
                                         std::to_string(rep.lift_failures) + ", violations " +
                                         std::to_string(rep.violations.size()),
                                     j);
                   }});
    out.push_back({"direct-image", false, [](Rng &rng, std::size_t budget) {
                       const auto inst = gen::random_direct_image(rng, 5);
                       json vmap = json::object();
                       for (std::size_t v = 0; v < inst.phi.source().vertex_count(); ++v)
                           vmap[inst.phi.source().vertex(v)] = inst.phi.target().vertex(inst.phi.vertex_image(v));
                       const json j = {{"graph", io::to_json(inst.graph)}, {"vertex_map", vmap}};
                       const auto rep = direct_image_verify(inst.phi, inst.graph, budget);
                       return expect(rep.holds(),
                                     "injective " + std::to_string(rep.injective) + ", surjective " +
                                         std::to_string(rep.surjective) + ", fibers trivial " +
                                         std::to_string(rep.fibers_trivial) + ", image " +
                                         std::to_string(rep.image_characterized),
                                     j);
                   }});
    out.push_back({"tensor", false, [](Rng &rng, std::size_t) {
                       const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
                       const auto a = gen::random_connected_graph(rng, n, static_cast<std::size_t>(rng.uniform(0, 2)));
                       const auto t = gen::random_vector_group_graph(rng, a, 2);
                       const auto w = static_cast<std::size_t>(rng.uniform(0, 3));
                       const auto rep = tensor_h1_verify(t, w);
                       return expect(rep.holds(),
                                     std::to_string(rep.tensor_h1_dim) + " vs " + std::to_string(rep.h1_dim) + " x " +
                                         std::to_string(w),
                                     {{"graph", io::to_json(t)}, {"w", w}});
                   }});
    out.push_back({"moduli", false, [](Rng &rng, std::size_t) {
                       const auto s = gen::finite_type_spec(rng);
                       const auto r = analyze(s);
                       const bool ok = r.finite_type && r.pipelines && r.moduli_dim &&
                                       *r.moduli_dim == r.basis_edges.size();
                       return expect(ok, "finite-type spec not reproduced", io::to_json(s));
                   }});
    out.push_back({"characterization", false, [](Rng &rng, std::size_t) {
                       const bool inject = rng.chance(1, 2);
                       const int type = static_cast<int>(rng.uniform(1, 4));
                       std::optional<FoliationSpec> s;
                       if (inject)
                           for (int tries = 0; tries < 50 && !s; ++tries)
                               s = gen::inject_geodesic(rng, type);
                       const bool want_finite = !s;
                       if (!s) {
                           gen::SpecOptions opt;
                           opt.allow_green_components = false;
                           s = gen::finite_type_spec(rng, opt);
                       }
                       const auto r = analyze(*s, true);
                       bool typed = false;
                       for (const auto &w : r.witnesses)
                           typed = typed || w.type != 0;
                       const bool ok = r.characterization == Characterization::holds &&
                                       r.finite_type == want_finite && (r.finite_type || typed);
                       return expect(ok, "verdict does not match construction", io::to_json(*s));
                   }});
    out.push_back({"pruning-nonrepulsive", true, [](Rng &rng, std::size_t budget) {
                       const auto inst = gen::nonrepulsive_control(rng, 6);
                       const auto rep = pruning_verify(inst.finite, inst.subtree, budget, false);
                       return expect(!rep.repulsivity.repulsive() && !rep.bijective,
                                     "non-repulsive control went undetected",
                                     {{"graph", io::to_json(inst.finite)}, {"subtree", inst.subtree}});
                   }});
    out.push_back({"quotient-nonsurjective", true, [](Rng &rng, std::size_t budget) {
                       const auto seq = gen::nonsurjective_exact_sequence(rng);
                       const auto rep = quotient_iso_verify(seq, budget);
                       return expect(!rep.violations.empty() && !rep.holds(), "missing surjectivity went undetected",
                                     {{"graph", io::to_json(seq.middle())}, {"sub", io::to_json(seq.sub())}});
                   }});
    out.push_back({"regular-nonregular", true, [](Rng &rng, std::size_t) {
                       auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(2, 6)));
                       auto g = gen::random_vector_group_graph(rng, t, 2);
                       while (is_regular(g))
                           g = gen::random_vector_group_graph(rng, t, 2);
                       try {
                           regular_h1(g);
                       } catch (const PreconditionFailed &) {
                           return expect(true, "", {});
                       }
                       return expect(false, "irregular group-graph accepted", io::to_json(g));
                   }});
    return out;
}

} // namespace detail

inline std::vector<std::string> family_names() {
    std::vector<std::string> out;
    for (const auto &f : detail::families())
        out.push_back(f.name);
    return out;
}

/// Runs `count` instances of every family. Instance i of family k draws from
/// Rng::derive(seed, k, i), so any failure replays from (seed, family, index).
/// Stops at the first verifier failure.
inline Report run(std::uint64_t seed, std::size_t count, std::size_t budget) {
    Report rep{seed, count, budget, {}, std::nullopt, std::nullopt};
    const auto fams = detail::families();
    for (std::size_t k = 0; k < fams.size() && !rep.failure; ++k) {
        const auto &f = fams[k];
        FamilyResult fr{f.name, f.negative_control, 0, 0, 0, 0};
        for (std::size_t i = 0; i < count; ++i) {
            auto rng = Rng::derive(seed, k, i);
            ++fr.instances;
            try {
                const auto o = f.run(rng, budget);
                if (o.ok) {
                    ++fr.passed;
                } else {
                    ++fr.failed;
                    rep.failure = Failure{f.name, i, o.detail, o.instance};
                    break;
                }
            } catch (const BudgetExceeded &e) {
                ++fr.budget_exceeded;
                if (!rep.budget_message)
                    rep.budget_message = f.name + "[" + std::to_string(i) + "]: " + e.what();
            } catch (const std::exception &e) {
                ++fr.failed;
                rep.failure = Failure{f.name, i, e.what(), json()};
                break;
            }
        }
        rep.families.push_back(fr);
    }
    return rep;
}

inline json to_json(const Report &r) {
    json fams = json::array();
    for (const auto &f : r.families)
        fams.push_back({{"name", f.name},
                        {"negative_control", f.negative_control},
                        {"instances", f.instances},
                        {f.negative_control ? "expected_fail" : "passed", f.passed},
                        {"failed", f.failed},
                        {"budget_exceeded", f.budget_exceeded}});
    json out = {{"seed", r.seed}, {"count", r.count}, {"budget", r.budget}, {"families", fams}};
    out["status"] = r.failure ? "fail" : r.budget_message ? "budget-exceeded" : "pass";
    if (r.failure)
        out["failure"] = {{"family", r.failure->family},
                          {"index", r.failure->index},
                          {"detail", r.failure->detail},
                          {"instance", r.failure->instance}};
    if (r.budget_message)
        out["budget_message"] = *r.budget_message;
    return out;
}

inline std::string summary(const Report &r) {
    std::string out;
    for (const auto &f : r.families) {
        out += f.name + ": " + std::to_string(f.passed) + "/" + std::to_string(f.instances) +
               (f.negative_control ? " expected-fail" : " pass");
        if (f.budget_exceeded)
            out += ", " + std::to_string(f.budget_exceeded) + " over budget";
        if (f.failed)
            out += ", " + std::to_string(f.failed) + " FAILED";
        out += "\n";
    }
    if (r.failure)
        out += "failure in " + r.failure->family + "[" + std::to_string(r.failure->index) + "]: " +
               r.failure->detail + "\n";
    if (r.budget_message)
        out += "budget exceeded: " + *r.budget_message + "\n";
    return out;
}

} // namespace ggc::selfcheck
