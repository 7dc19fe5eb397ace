// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// All instances are seeded; comparisons are exact (rationals or counts).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>

#include <ggc/generators.hpp>
#include <ggc/ggc.hpp>

using namespace ggc;

namespace {

constexpr std::uint64_t kSeed = 20260415;

struct Verdict {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    double limit_s;
    std::function<Verdict()> body;
};

Rng instance_rng(int criterion, std::size_t i) { return Rng::derive(kSeed, static_cast<std::uint64_t>(criterion), i); }

std::string fail_at(std::size_t i, const std::string &what) { return "instance " + std::to_string(i) + ": " + what; }

Verdict check_regular_vs_linear() {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = instance_rng(1, i);
        const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 10)));
        const auto g = gen::random_regular_vector(rng, t, 2);
        const auto reg = regular_h1(g, false);
        const auto lin = h1_vector(g).dim;
        if (reg.dim != lin)
            return {false, fail_at(i, "active-edge dim " + std::to_string(reg.dim) + ", linear algebra " +
                                          std::to_string(lin))};
        nonzero += lin != 0;
    }
    return {true, "200/200 equal, " + std::to_string(nonzero) + " with nonzero H1"};
}

Verdict check_bruteforce_vs_closed_form() {
    std::size_t nontrivial = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = instance_rng(2, i);
        const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
        const auto g = gen::random_regular_finite(rng, t, 8);
        const auto st = active_structure(g);
        std::uint64_t product = 1;
        for (auto e : st.a_prime)
            product *= static_cast<std::uint64_t>(g.edge_group(e).order());
        const auto brute = h1_finite_bruteforce(g).count;
        if (brute != product)
            return {false, fail_at(i, "orbit count " + std::to_string(brute) + ", product over A' " +
                                          std::to_string(product))};
        nontrivial += brute > 1;
    }
    return {true, "100/100 equal, " + std::to_string(nontrivial) + " with more than one class"};
}

Verdict check_pruning() {
    std::size_t vec = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = instance_rng(3, i);
        const bool is_vec = i % 2 == 1;
        const auto inst = gen::random_repulsive(rng, 7, is_vec);
        const auto rep = is_vec ? pruning_verify(inst.vector, inst.subtree) : pruning_verify(inst.finite, inst.subtree);
        if (!rep.repulsivity.repulsive())
            return {false, fail_at(i, "generated subtree is not repulsive")};
        if (!(rep.whole == rep.pruned) || !rep.bijective)
            return {false, fail_at(i, "H1 " + std::to_string(rep.whole.value) + " vs pruned " +
                                          std::to_string(rep.pruned.value))};
        vec += is_vec;
    }
    std::size_t differing = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        auto rng = instance_rng(3, 1000 + i);
        const auto inst = gen::nonrepulsive_control(rng, 6);
        const auto rep = pruning_verify(inst.finite, inst.subtree, kDefaultBudget, false);
        if (rep.repulsivity.repulsive())
            return {false, "negative control " + std::to_string(i) + " is repulsive"};
        differing += !rep.bijective;
    }
    return {true, "200/200 equal (" + std::to_string(vec) + " vector), 20 non-repulsive controls, " +
                      std::to_string(differing) + " of them with restriction not bijective"};
}

Verdict check_quotient() {
    std::size_t pairs = 0, nontrivial = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        auto rng = instance_rng(4, i);
        const auto seq = gen::random_exact_sequence(rng, 5);
        const auto rep = quotient_iso_verify(seq);
        if (!rep.violations.empty())
            return {false, fail_at(i, "hypothesis violated: " + rep.violations.front())};
        if (!rep.exhaustive)
            return {false, fail_at(i, "cohomologous pairs not checked exhaustively")};
        if (!rep.bijective || rep.lift_failures)
            return {false, fail_at(i, "bijective " + std::to_string(rep.bijective) + ", lift failures " +
                                          std::to_string(rep.lift_failures))};
        pairs += rep.pairs_checked;
        nontrivial += rep.middle_count > 1;
    }
    return {true, "50/50 bijective, " + std::to_string(pairs) + " cohomologous pairs lifted, " +
                      std::to_string(nontrivial) + " with nontrivial H1"};
}

Verdict check_direct_image() {
    std::size_t surj_cases = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = instance_rng(5, i);
        const auto inst = gen::random_direct_image(rng, 5);
        const auto rep = direct_image_verify(inst.phi, inst.graph);
        if (!rep.injective)
            return {false, fail_at(i, "H1(j) not injective")};
        if (rep.fibers_trivial && !rep.surjective)
            return {false, fail_at(i, "fibers have trivial H1 but H1(j) is not surjective")};
        if (!rep.image_characterized)
            return {false, fail_at(i, "image differs from the classes trivial on collapsed edges")};
        surj_cases += rep.fibers_trivial;
    }
    return {true, "100/100 injective with image characterized, " + std::to_string(surj_cases) +
                      " with trivial fibers all surjective"};
}

Verdict check_tensor() {
    for (std::size_t i = 0; i < 50; ++i) {
        auto rng = instance_rng(6, i);
        const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
        const auto a = gen::random_connected_graph(rng, n, static_cast<std::size_t>(rng.uniform(0, 2)));
        const auto t = gen::random_vector_group_graph(rng, a, 2);
        for (std::size_t w = 0; w <= 3; ++w) {
            const auto rep = tensor_h1_verify(t, w);
            if (rep.tensor_h1_dim != rep.h1_dim * w)
                return {false, fail_at(i, "W = " + std::to_string(w) + ": " + std::to_string(rep.tensor_h1_dim) +
                                              " vs " + std::to_string(rep.h1_dim) + " x " + std::to_string(w))};
        }
    }
    return {true, "200/200 (50 x dim W 0..3) multiplicative"};
}

Verdict check_moduli_triple() {
    std::size_t sampled = 0, positive = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = instance_rng(7, i);
        std::optional<FoliationSpec> s;
        // Odd indices: unconstrained specs, kept only when finite.
        if (i % 2 == 1)
            for (int tries = 0; tries < 200 && !s; ++tries) {
                auto c = gen::random_spec(rng);
                if (is_finite_type(c).finite)
                    s = std::move(c);
            }
        if (s)
            ++sampled;
        else
            s = gen::finite_type_spec(rng);
        if (!is_finite_type(*s).finite)
            return {false, fail_at(i, "constructed spec is not of finite type")};
        const auto md = moduli_pipelines(build_tf_red(*s));
        const auto &p = md.pipelines;
        if (p[0] != p[1] || p[1] != p[2])
            return {false, fail_at(i, "pipelines " + std::to_string(p[0]) + "/" + std::to_string(p[1]) + "/" +
                                          std::to_string(p[2]))};
        positive += p[0] > 0;
    }
    return {true, "200/200 agree (" + std::to_string(sampled) + " rejection-sampled), " + std::to_string(positive) +
                      " with positive dimension"};
}

Verdict check_characterization() {
    int by_type[5] = {0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = instance_rng(8, i);
        const bool inject = i % 2 == 1;
        FoliationSpec s;
        int type = 0;
        if (inject) {
            std::optional<FoliationSpec> got;
            for (int tries = 0; tries < 200 && !got; ++tries) {
                type = static_cast<int>(rng.uniform(1, 4));
                got = gen::inject_geodesic(rng, type);
            }
            if (!got)
                return {false, fail_at(i, "could not inject a geodesic")};
            s = *got;
            ++by_type[type];
        } else {
            gen::SpecOptions opt;
            opt.allow_green_components = false;
            s = gen::finite_type_spec(rng, opt);
        }
        const auto r = analyze(s, true);
        if (!r.entirely_green.empty())
            return {false, fail_at(i, "spec has an entirely green component")};
        if (r.finite_type == inject)
            return {false, fail_at(i, std::string("verdict ") + (r.finite_type ? "finite" : "not-finite") +
                                          " contradicts construction")};
        if (r.characterization != Characterization::holds)
            return {false, fail_at(i, "geodesic scan disagrees with the verdict")};
        if (!r.finite_type) {
            bool typed = false;
            for (const auto &w : r.witnesses)
                typed = typed || (w.type >= 1 && w.type <= 4);
            if (!typed)
                return {false, fail_at(i, "not-finite verdict without a typed witness")};
        }
    }
    return {true, "100/100 match (50 finite; injected types 1-4: " + std::to_string(by_type[1]) + "/" +
                      std::to_string(by_type[2]) + "/" + std::to_string(by_type[3]) + "/" +
                      std::to_string(by_type[4]) + ")"};
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict check_fixtures() {
    const std::string dir = GGC_FIXTURE_DIR;
    for (const std::string name : {"type4_two_red", "single_active_edge"}) {
        const auto spec = io::foliation_from_json(nlohmann::json::parse(slurp(dir + "/" + name + ".spec.json")));
        const auto got = io::to_json(analyze(spec)).dump(2) + "\n";
        if (got != slurp(dir + "/" + name + ".report.json"))
            return {false, name + ": report differs from committed fixture"};
    }
    return {true, "2/2 reports byte-identical"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, 30, check_regular_vs_linear}, {2, 60, check_bruteforce_vs_closed_form}, {3, 60, check_pruning},
        {4, 120, check_quotient},         {5, 60, check_direct_image},              {6, 10, check_tensor},
        {7, 30, check_moduli_triple},     {8, 30, check_characterization},          {9, 10, check_fixtures},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s) {
            v.ok = false;
            v.detail += " [over time limit]";
        }
        failures += !v.ok;
        std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)\n", v.ok ? "PASS" : "FAIL", c.id, v.detail.c_str(),
                    secs, c.limit_s);
    }
    return failures ? 1 : 0;
}
