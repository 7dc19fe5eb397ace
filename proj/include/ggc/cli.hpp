#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "cohomology.hpp"
#include "error.hpp"
#include "foliation.hpp"
#include "json_io.hpp"
#include "selfcheck.hpp"
#include "theorems.hpp"

namespace ggc::cli {

/// Process exit codes.
enum Exit : int {
    ok = 0,
    io_error = 1,
    validation_failed = 2,
    hypothesis_violated = 3,
    budget_exceeded = 4,
    selfcheck_failed = 5,
};

using json = nlohmann::json;

namespace detail {

inline json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::runtime_error("cannot parse '" + path + "': " + e.what());
    }
}

/// Writes to `path`, or to `out` when the path is empty.
inline void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

inline std::string join(const std::vector<std::string> &xs, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

inline std::string report_summary(const ModuliReport &r) {
    std::ostringstream s;
    s << "cut components: " << r.cut_components.size() << "\n";
    s << "red vertices: " << r.red_subgraph.vertex_count() << ", red edges: " << r.red_subgraph.edge_count() << "\n";
    s << "finite type: " << (r.finite_type ? "finite" : "not-finite") << "\n";
    if (r.characterization)
        s << "characterization: " << to_string(*r.characterization) << "\n";
    for (const auto &w : r.witnesses)
        s << "witness (component " << w.component << ", type " << w.type << "): " << join(w.elements, " ") << "\n";
    for (const auto &c : r.certificates)
        s << "certificate (component " << c.component << "): " << c.vertex << "\n";
    s << "moduli dim: " << (r.moduli_dim ? std::to_string(*r.moduli_dim) : "infinite") << "\n";
    if (!r.basis_edges.empty())
        s << "basis edges: " << join(r.basis_edges, " ") << "\n";
    return s.str();
}

inline std::string cohomology_summary(const io::CohomologyResult &r) {
    std::ostringstream s;
    const bool finite = r.carrier == "finite";
    s << "carrier: " << r.carrier << ", mode: " << r.mode << "\n";
    s << "H0 " << (finite ? "order: " : "dim: ") << r.h0 << "\n";
    s << "H1 " << (finite ? "classes: " : "dim: ") << r.h1 << "\n";
    if (r.active)
        s << "active edges: " << r.active->a << ", active components: " << r.active->p
          << ", basis edges: " << join(r.active->basis_edges, " ") << "\n";
    return s.str();
}

inline io::CohomologyResult cohomology_finite(const GroupGraph<FiniteCarrier> &g, const std::string &mode,
                                              std::size_t budget) {
    io::CohomologyResult r;
    r.carrier = "finite";
    r.mode = mode;
    r.h0 = static_cast<std::size_t>(h0(g, budget).object.order());
    if (mode == "regular") {
        const auto reg = regular_h1(g, true, false, budget);
        r.h1 = reg.count;
        r.active = io::summarize(g, reg.structure);
        const auto &ap = reg.structure.a_prime;
        std::vector<Element> tuple(ap.size(), 0);
        const auto brute = h1_finite_bruteforce(g, budget);
        std::vector<std::pair<std::size_t, json>> reps;
        while (true) {
            const auto z = delta_cocycle(g, reg.structure, tuple);
            reps.emplace_back(brute.class_index(z), io::to_json(g, z));
            std::size_t i = 0;
            while (i < tuple.size() && ++tuple[i] == g.edge_group(ap[i]).order())
                tuple[i++] = 0;
            if (i == tuple.size())
                break;
        }
        std::sort(reps.begin(), reps.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        for (const auto &[cls, z] : reps) {
            r.cocycles.push_back(z);
            r.class_sizes.push_back(brute.class_sizes[cls]);
        }
        return r;
    }
    const auto h = h1_finite_bruteforce(g, budget);
    r.h1 = h.count;
    r.class_sizes = h.class_sizes;
    for (const auto &z : h.representatives)
        r.cocycles.push_back(io::to_json(g, z));
    return r;
}

inline io::CohomologyResult cohomology_vector(const GroupGraph<RationalCarrier> &g, const std::string &mode,
                                              std::size_t budget) {
    io::CohomologyResult r;
    r.carrier = "vector";
    r.mode = mode;
    r.h0 = h0(g, budget).object.dim;
    if (mode == "regular") {
        const auto reg = regular_h1(g, true, false);
        r.h1 = reg.dim;
        r.active = io::summarize(g, reg.structure);
        std::vector<std::vector<Rational>> values;
        for (auto e : reg.structure.a_prime)
            values.emplace_back(g.edge_group(e).dim, Rational(0));
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t k = 0; k < values[i].size(); ++k) {
                auto vals = values;
                vals[i][k] = Rational(1);
                r.cocycles.push_back(io::to_json(g, delta_cocycle(g, reg.structure, vals)));
            }
        return r;
    }
    const auto h = h1_vector(g);
    r.h1 = h.dim;
    for (const auto &z : h.basis)
        r.cocycles.push_back(io::to_json(g, z));
    return r;
}

} // namespace detail

/// Entry point of the command-line tool; returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Group-graph cohomology and finite-type analysis of decorated dual trees"};
    app.require_subcommand(1);

    std::string input, output, mode = "auto";
    bool summary = false, crosscheck = false;
    std::uint64_t seed = 0;
    std::size_t count = 10, budget = kDefaultBudget;
    int max_order = io::kDefaultMaxOrder;

    auto add_format = [&](CLI::App *sub) {
        auto *fmt = sub->add_option_group("format");
        fmt->add_flag("--json", "JSON output (default)");
        fmt->add_flag("--summary", summary, "human-readable summary instead of JSON");
        fmt->require_option(0, 1);
        sub->add_option("--output", output, "write the result to this file");
    };

    auto *analyze_cmd = app.add_subcommand("analyze", "finite-type verdict and moduli dimension of a foliation spec");
    analyze_cmd->add_option("--input", input, "FoliationSpec JSON")->required();
    analyze_cmd->add_flag("--crosscheck", crosscheck, "also run the exhaustive geodesic characterization check");
    add_format(analyze_cmd);

    auto *coh_cmd = app.add_subcommand("cohomology", "H0 and H1 of a group-graph");
    coh_cmd->add_option("--input", input, "GroupGraph JSON")->required();
    coh_cmd->add_option("--mode", mode, "auto, vector, bruteforce or regular")
        ->check(CLI::IsMember({"auto", "vector", "bruteforce", "regular"}));
    coh_cmd->add_option("--budget", budget, "largest cocycle or cochain space to enumerate");
    coh_cmd->add_option("--max-order", max_order, "largest finite group accepted from input");
    add_format(coh_cmd);

    auto *self_cmd = app.add_subcommand("selfcheck", "run every verifier on generated instances");
    self_cmd->add_option("--seed", seed, "seed for all instance families");
    self_cmd->add_option("--count", count, "instances per family");
    self_cmd->add_option("--budget", budget, "largest cocycle or cochain space to enumerate");
    add_format(self_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::io_error;
    }

    try {
        if (*analyze_cmd) {
            const auto spec = io::foliation_from_json(detail::read_json(input));
            const auto violations = validate(spec);
            if (!violations.empty()) {
                for (const auto &v : violations)
                    err << "violation: " << v << "\n";
                detail::emit(summary ? detail::join(violations, "\n") + "\n"
                                     : json{{"valid", false}, {"violations", violations}}.dump(2) + "\n",
                             output, out);
                return Exit::validation_failed;
            }
            const auto rep = analyze(spec, crosscheck);
            detail::emit(summary ? detail::report_summary(rep) : io::to_json(rep).dump(2) + "\n", output, out);
            if (rep.characterization && *rep.characterization != Characterization::holds) {
                err << "characterization: " << to_string(*rep.characterization) << "\n";
                return Exit::hypothesis_violated;
            }
            return Exit::ok;
        }
        if (*coh_cmd) {
            io::ParseOptions opt;
            opt.max_order = max_order;
            const auto any = io::group_graph_from_json(detail::read_json(input), opt);
            io::CohomologyResult res;
            if (const auto *fg = std::get_if<GroupGraph<FiniteCarrier>>(&any)) {
                if (mode == "vector")
                    throw InvalidInput("mode 'vector' needs a vector-space carrier");
                res = detail::cohomology_finite(*fg, mode == "auto" ? "bruteforce" : mode, budget);
            } else {
                const auto &vg = std::get<GroupGraph<RationalCarrier>>(any);
                if (mode == "bruteforce")
                    throw InvalidInput("mode 'bruteforce' needs a finite carrier");
                res = detail::cohomology_vector(vg, mode == "auto" ? "vector" : mode, budget);
            }
            detail::emit(summary ? detail::cohomology_summary(res) : io::to_json(res).dump(2) + "\n", output, out);
            return Exit::ok;
        }
        const auto rep = selfcheck::run(seed, count, budget);
        detail::emit(summary ? selfcheck::summary(rep) : selfcheck::to_json(rep).dump(2) + "\n", output, out);
        if (rep.failure) {
            err << "selfcheck failure in " << rep.failure->family << "[" << rep.failure->index
                << "]: " << rep.failure->detail << "\n";
            return Exit::selfcheck_failed;
        }
        if (rep.budget_message) {
            err << "budget exceeded: " << *rep.budget_message << "\n";
            return Exit::budget_exceeded;
        }
        return Exit::ok;
    } catch (const BudgetExceeded &e) {
        err << "budget exceeded: " << e.what() << " (cocycle space " << e.cocycle_space() << ", cochain space "
            << e.cochain_space() << ")\n";
        return Exit::budget_exceeded;
    } catch (const PreconditionFailed &e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return Exit::hypothesis_violated;
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << "\n";
        return Exit::io_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return Exit::io_error;
    }
}

} // namespace ggc::cli
