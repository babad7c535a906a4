#pragma once

// Job runners behind the command-line tool. Each returns a report that
// serialises to JSON deterministically.

#include "confspace/chain_complex.hpp"
#include "confspace/closed_forms.hpp"
#include "confspace/graph.hpp"
#include "confspace/graph_library.hpp"
#include "confspace/homology.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace confspace {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a of the canonical graph text, as 16 hex digits.
inline std::string fingerprint(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_text(g)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

enum class MethodChoice { automatic, snf, reduce };

struct ComputeOptions {
    Arithmetic arithmetic = Arithmetic::automatic;
    bool rank_only = false;
    MethodChoice method = MethodChoice::automatic;
    int max_dim = -1;
    std::uint64_t budget = 5'000'000;
    /// Above this many cells the automatic method switches to coreduction.
    std::uint64_t explicit_limit = 400'000;
};

struct Run {
    int particles = 0;
    Flavor flavor = Flavor::unordered;
    std::size_t subdivided_vertices = 0;
    std::size_t subdivided_edges = 0;
    std::vector<std::uint64_t> cell_counts;
    HomologyResult homology;
    std::int64_t euler_characteristic = 0;
    std::string method;
};

/// Subdivides as needed, checks the budget, and computes homology.
inline Run compute(const Graph& g, int n, Flavor flavor, const ComputeOptions& opt) {
    Graph sub = n >= 1 ? subdivide_for(g, n) : g;
    std::uint64_t cells = ConfigurationSpace::count_cells(sub, n, flavor);
    if (cells > opt.budget)
        throw BudgetExceeded("n=" + std::to_string(n) + " needs " + std::to_string(cells) +
                             " cells, above the budget of " + std::to_string(opt.budget));
    auto space = std::make_shared<const ConfigurationSpace>(sub, n, flavor);
    Run r;
    r.particles = n;
    r.flavor = flavor;
    r.subdivided_vertices = sub.vertex_count();
    r.subdivided_edges = sub.edge_count();
    r.cell_counts = space->cell_counts();
    r.euler_characteristic = euler_characteristic(*space);
    HomologyOptions ho;
    ho.arithmetic = opt.arithmetic;
    ho.rank_only = opt.rank_only;
    ho.max_dim = opt.max_dim;
    bool reduce = opt.method == MethodChoice::reduce ||
                  (opt.method == MethodChoice::automatic && cells > opt.explicit_limit);
    ho.method = reduce ? Method::reduce : Method::snf;
    r.method = reduce ? "reduce" : "snf";
    r.homology = homology(space, ho);
    return r;
}

struct Check {
    int particles = 0;
    int order = 0;
    std::string formula;
    std::int64_t formula_value = 0;
    std::int64_t computed_value = 0;
    bool conjecture_conditional = false;
    std::string note;

    std::string verdict() const {
        if (formula_value != computed_value)
            return "mismatch";
        return conjecture_conditional ? "conjecture-conditional-match" : "match";
    }
};

struct FormulaValue {
    std::string formula;
    std::int64_t value = 0;
    bool conjecture_conditional = false;
};

struct JobReport {
    std::string command;
    std::string graph_fingerprint;
    std::optional<int> particles;
    std::optional<Flavor> flavor;
    std::vector<Run> runs;
    std::vector<FormulaValue> formulas;
    std::vector<Check> checks;
    double wall_time_seconds = 0;

    bool has_mismatch() const {
        for (const auto& c : checks)
            if (c.verdict() == "mismatch")
                return true;
        return false;
    }
    int exit_code() const { return has_mismatch() ? 2 : 0; }
};

inline Json to_json(const Run& r) {
    Json j;
    j["particles"] = r.particles;
    j["flavor"] = to_string(r.flavor);
    j["subdivided_vertices"] = r.subdivided_vertices;
    j["subdivided_edges"] = r.subdivided_edges;
    j["method"] = r.method;
    j["cell_counts"] = r.cell_counts;
    j["betti"] = r.homology.betti;
    if (r.homology.torsion_known)
        j["torsion"] = r.homology.torsion;
    else
        j["torsion"] = nullptr;
    j["euler_characteristic"] = r.euler_characteristic;
    return j;
}

/// Wall time is left out unless asked for, so that equal inputs give
/// byte-identical output.
inline Json to_json(const JobReport& rep, bool include_time = false) {
    Json j;
    j["command"] = rep.command;
    j["graph_fingerprint"] = rep.graph_fingerprint.empty() ? Json(nullptr) : Json(rep.graph_fingerprint);
    j["particles"] = rep.particles ? Json(*rep.particles) : Json(nullptr);
    j["flavor"] = rep.flavor ? Json(to_string(*rep.flavor)) : Json(nullptr);
    if (rep.runs.size() == 1) {
        const Json r = to_json(rep.runs[0]);
        for (const char* key : {"subdivided_vertices", "subdivided_edges", "method", "cell_counts", "betti", "torsion",
                                "euler_characteristic"})
            j[key] = r[key];
    } else {
        j["runs"] = Json::array();
        for (const auto& r : rep.runs)
            j["runs"].push_back(to_json(r));
    }
    if (!rep.formulas.empty()) {
        j["formulas"] = Json::array();
        for (const auto& f : rep.formulas)
            j["formulas"].push_back({{"formula", f.formula},
                                     {"value", f.value},
                                     {"conjecture_conditional", f.conjecture_conditional}});
    }
    if (!rep.checks.empty()) {
        j["checks"] = Json::array();
        for (const auto& c : rep.checks)
            j["checks"].push_back({{"particles", c.particles},
                                   {"order", c.order},
                                   {"formula", c.formula},
                                   {"formula_value", c.formula_value},
                                   {"computed_value", c.computed_value},
                                   {"verdict", c.verdict()},
                                   {"conjecture_conditional", c.conjecture_conditional},
                                   {"note", c.note}});
    }
    if (include_time)
        j["wall_time_seconds"] = rep.wall_time_seconds;
    return j;
}

inline std::string format_group(const std::vector<std::int64_t>& torsion, std::int64_t betti) {
    std::string s;
    if (betti > 0)
        s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
    for (auto t : torsion)
        s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
    return s.empty() ? "0" : s;
}

/// Human-readable summary.
inline std::string to_text(const JobReport& rep) {
    std::string out;
    for (const auto& r : rep.runs) {
        out += "n=" + std::to_string(r.particles) + " " + to_string(r.flavor) + ", " +
               std::to_string(r.subdivided_vertices) + " vertices, cells";
        for (auto c : r.cell_counts)
            out += " " + std::to_string(c);
        out += ", chi=" + std::to_string(r.euler_characteristic) + "\n";
        for (std::size_t k = 0; k < r.homology.betti.size(); ++k)
            out += "  H_" + std::to_string(k) + " = " +
                   (r.homology.torsion_known ? format_group(r.homology.torsion[k], r.homology.betti[k])
                                             : "Q^" + std::to_string(r.homology.betti[k]) + " (rank only)") +
                   "\n";
    }
    for (const auto& f : rep.formulas)
        out += f.formula + " = " + std::to_string(f.value) + (f.conjecture_conditional ? " (conjecture-conditional)" : "") +
               "\n";
    for (const auto& c : rep.checks)
        out += "n=" + std::to_string(c.particles) + " m=" + std::to_string(c.order) + " " + c.formula + ": formula " +
               std::to_string(c.formula_value) + ", computed " + std::to_string(c.computed_value) + " -> " +
               c.verdict() + (c.note.empty() ? "" : " [" + c.note + "]") + "\n";
    return out;
}

namespace detail {
class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};
} // namespace detail

// --- homology -------------------------------------------------------------

inline JobReport cmd_homology(const Graph& g, int n, Flavor flavor, const ComputeOptions& opt) {
    detail::Stopwatch clock;
    JobReport rep;
    rep.command = "homology";
    rep.graph_fingerprint = fingerprint(g);
    rep.particles = n;
    rep.flavor = flavor;
    rep.runs.push_back(compute(g, n, flavor, opt));
    rep.wall_time_seconds = clock.seconds();
    return rep;
}

// --- formula --------------------------------------------------------------

struct FormulaJob {
    std::string variant;
    std::vector<std::int64_t> stars;
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> m;
    bool ordered = false;
    std::vector<ComponentBetti> components;
    std::vector<std::int64_t> b1_seq_1;
    std::vector<std::int64_t> b1_seq_2;
    std::vector<std::int64_t> b2;
};

inline JobReport cmd_formula(const FormulaJob& job) {
    detail::Stopwatch clock;
    JobReport rep;
    rep.command = "formula";
    auto need_n = [&]() {
        if (!job.n)
            throw InvalidInput("variant '" + job.variant + "' needs a particle count");
        return *job.n;
    };
    auto need_m = [&](std::int64_t fallback) { return job.m.value_or(fallback); };
    auto need_stars = [&](std::size_t count) {
        if (job.stars.size() < count)
            throw InvalidInput("variant '" + job.variant + "' needs " + std::to_string(count) + " star degree(s)");
    };
    rep.particles = job.n ? std::optional<int>(static_cast<int>(*job.n)) : std::nullopt;
    rep.flavor = job.ordered ? Flavor::ordered : Flavor::unordered;
    FormulaValue f;
    if (job.variant == "star") {
        need_stars(1);
        if (job.stars.size() != 1)
            throw InvalidInput("variant 'star' takes exactly one hub degree");
        f.formula = job.ordered ? "beta1_star_ordered" : "beta1_star";
        f.value = job.ordered ? beta1_star_ordered(job.stars[0], need_n()) : beta1_star(job.stars[0], need_n());
    } else if (job.variant == "tree-pair") {
        need_stars(2);
        if (job.stars.size() != 2)
            throw InvalidInput("variant 'tree-pair' takes exactly two hub degrees");
        f.formula = "beta2_tree_pair";
        f.value = beta2_tree_pair(job.stars[0], job.stars[1], need_n());
    } else if (job.variant == "tree-recursive") {
        need_stars(1);
        f.formula = "betam_tree_recursive";
        f.value = betam_tree_recursive(job.stars, need_n(), need_m(static_cast<std::int64_t>(job.stars.size())));
    } else if (job.variant == "tree-closed") {
        need_stars(1);
        f.formula = "betam_tree_closed";
        f.value = betam_tree_closed(job.stars, need_n(), need_m(static_cast<std::int64_t>(job.stars.size())));
    } else if (job.variant == "tree-general") {
        need_stars(1);
        if (!job.m)
            throw InvalidInput("variant 'tree-general' needs the homology order");
        f.formula = "betam_tree_general";
        f.value = betam_tree_general(job.stars, need_n(), *job.m);
    } else if (job.variant == "two-particle") {
        if (job.components.size() < 2)
            throw InvalidInput("variant 'two-particle' needs at least two components");
        if (job.components.size() == 2) {
            const auto& a = job.components[0];
            const auto& b = job.components[1];
            f.formula = job.ordered ? "beta2_two_particle_ordered" : "beta2_two_particle";
            f.value = job.ordered ? beta2_two_particle_ordered(a.b2, b.b2, a.b1, b.b1, a.mu, b.mu)
                                  : beta2_two_particle(a.b2, b.b2, a.b1, b.b1, a.mu, b.mu);
        } else {
            f.formula = job.ordered ? "beta2_two_particle_multi_ordered" : "beta2_two_particle_multi";
            f.value = beta2_two_particle_multi(job.components, job.ordered);
        }
    } else if (job.variant == "single-edge") {
        std::int64_t n = need_n();
        if (job.b1_seq_1.empty() || job.b1_seq_2.empty())
            throw InvalidInput("variant 'single-edge' needs both Betti sequences");
        if (job.b2.size() != 2)
            throw InvalidInput("variant 'single-edge' needs beta_2 of both components");
        ConditionalValue v = beta2_single_edge(job.b1_seq_1, job.b1_seq_2, job.b2[0], job.b2[1], n);
        f.formula = "beta2_single_edge";
        f.value = v.value;
        f.conjecture_conditional = v.conjecture_conditional;
    } else {
        throw InvalidInput("unknown formula variant '" + job.variant + "'");
    }
    rep.formulas.push_back(f);
    rep.wall_time_seconds = clock.seconds();
    return rep;
}

// --- verify ---------------------------------------------------------------

struct VerifyJob {
    Graph graph;
    std::vector<int> particles;
    /// Homology orders to check; empty selects them from the graph type.
    std::vector<int> orders;
    Flavor flavor = Flavor::unordered;
    ComputeOptions options;
    /// Cut vertex used by the one-connected checks; first in file order if unset.
    std::optional<std::string> cut_vertex;
};

namespace detail {

inline std::optional<Vertex> valence_two_join(const Graph& g) {
    for (Vertex v : cut_vertices(g))
        if (g.degree(v) == 2 && split_at_cut_vertex(g, v).components.size() == 2)
            return v;
    return std::nullopt;
}

} // namespace detail

inline JobReport cmd_verify(const VerifyJob& job) {
    detail::Stopwatch clock;
    const Graph& g = job.graph;
    JobReport rep;
    rep.command = "verify";
    rep.graph_fingerprint = fingerprint(g);
    rep.flavor = job.flavor;
    if (job.particles.size() == 1)
        rep.particles = job.particles[0];
    const bool tree = is_tree(g);
    const bool ordered = job.flavor == Flavor::ordered;

    std::optional<Vertex> cut;
    if (!tree) {
        if (job.cut_vertex) {
            cut = g.find_or_throw(*job.cut_vertex);
        } else if (auto cvs = cut_vertices(g); !cvs.empty()) {
            cut = cvs.front();
        }
    }
    const std::optional<Vertex> join = tree ? std::nullopt : detail::valence_two_join(g);

    for (int n : job.particles) {
        std::vector<int> orders = job.orders;
        if (orders.empty()) {
            if (tree)
                for (int m = 1; m <= static_cast<int>(essential_vertices(g).size()); ++m)
                    orders.push_back(m);
            else
                orders.push_back(2);
        }
        ComputeOptions opt = job.options;
        opt.max_dim = *std::max_element(orders.begin(), orders.end());
        Run run;
        try {
            run = compute(g, n, job.flavor, opt);
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded(std::string(e.what()) + " (verify n=" + std::to_string(n) + ")");
        }
        auto component_run = [&](const Graph& comp, int k, int max_dim, Flavor fl) {
            ComputeOptions o = job.options;
            o.max_dim = max_dim;
            try {
                return compute(comp, k, fl, o);
            } catch (const BudgetExceeded& e) {
                throw BudgetExceeded(std::string(e.what()) + " (verify component, n=" + std::to_string(n) + ")");
            }
        };

        for (int m : orders) {
            Check c;
            c.particles = n;
            c.order = m;
            c.computed_value = run.homology.betti_at(m);
            if (tree) {
                TreeShape shape = tree_shape(g);
                if (ordered) {
                    if (shape.stars.size() != 1 || m != 1)
                        continue;
                    c.formula = "beta1_star_ordered";
                    c.formula_value = beta1_star_ordered(static_cast<std::int64_t>(shape.stars[0].degree), n);
                } else {
                    c.formula = m == 1 ? "sum_of_beta1_star" : "betam_tree_general";
                    c.formula_value = betam_tree_general(shape, n, m);
                }
                rep.checks.push_back(c);
                continue;
            }
            if (m != 2)
                continue;
            if (n == 2 && cut) {
                OneConnectedSplit split = split_at_cut_vertex(g, *cut);
                std::vector<ComponentBetti> comps;
                for (std::size_t i = 0; i < split.components.size(); ++i) {
                    Run cr = component_run(split.components[i], 2, 2, job.flavor);
                    comps.push_back({cr.homology.betti_at(2), first_betti(split.components[i]), split.mu(i)});
                }
                Check mc = c;
                mc.formula = comps.size() == 2 ? (ordered ? "beta2_two_particle_ordered" : "beta2_two_particle")
                                               : (ordered ? "beta2_two_particle_multi_ordered"
                                                          : "beta2_two_particle_multi");
                mc.formula_value = beta2_two_particle_multi(comps, ordered);
                mc.note = "cut vertex " + g.name(*cut);
                rep.checks.push_back(mc);
            }
            if (join && !ordered) {
                OneConnectedSplit split = split_at_cut_vertex(g, *join);
                std::vector<std::vector<std::int64_t>> seqs(2);
                std::vector<std::int64_t> b2(2);
                for (std::size_t i = 0; i < 2; ++i) {
                    for (int k = 0; k <= n; ++k)
                        seqs[i].push_back(k == 0 ? 0 : component_run(split.components[i], k, 1, Flavor::unordered).homology.betti_at(1));
                    b2[i] = component_run(split.components[i], n, 2, Flavor::unordered).homology.betti_at(2);
                }
                ConditionalValue v = beta2_single_edge(seqs[0], seqs[1], b2[0], b2[1], n);
                Check sc = c;
                sc.formula = "beta2_single_edge";
                sc.formula_value = v.value;
                sc.conjecture_conditional = v.conjecture_conditional;
                sc.note = "valence-two cut vertex " + g.name(*join);
                rep.checks.push_back(sc);
            }
        }
        rep.runs.push_back(std::move(run));
    }
    rep.wall_time_seconds = clock.seconds();
    return rep;
}

// --- dump -------------------------------------------------------------------

inline Json dump_complex(const ChainComplex& cx) {
    Json j;
    const ConfigurationSpace* s = cx.space();
    if (s) {
        j["particles"] = s->particles();
        j["flavor"] = to_string(s->flavor());
    }
    j["dimensions"] = Json::array();
    for (int k = 0; k <= cx.top_dimension(); ++k) {
        Json d;
        d["dimension"] = k;
        d["cells"] = Json::array();
        if (s)
            for (std::size_t i = 0; i < cx.cell_count(k); ++i)
                d["cells"].push_back(s->describe(cx.cell(k, i)));
        else
            d["cell_count"] = cx.cell_count(k);
        d["boundary"] = Json::array();
        if (k >= 1)
            for (const auto& t : cx.boundary_ref(k).triplets())
                d["boundary"].push_back({t.row, t.col, t.value});
        j["dimensions"].push_back(std::move(d));
    }
    return j;
}

inline Json dump_chain(const Chain& c) {
    Json j;
    j["dimension"] = c.dimension;
    j["terms"] = Json::array();
    for (auto [i, v] : c.terms)
        j["terms"].push_back({i, v});
    return j;
}

inline Json cmd_dump(const Graph& g, int n, Flavor flavor, std::uint64_t budget) {
    Graph sub = n >= 1 ? subdivide_for(g, n) : g;
    std::uint64_t cells = ConfigurationSpace::count_cells(sub, n, flavor);
    if (cells > budget)
        throw BudgetExceeded("n=" + std::to_string(n) + " needs " + std::to_string(cells) +
                             " cells, above the budget of " + std::to_string(budget));
    Json j;
    j["command"] = "dump-complex";
    j["graph_fingerprint"] = fingerprint(g);
    Json body = dump_complex(build_complex(sub, n, flavor));
    for (auto it = body.begin(); it != body.end(); ++it)
        j[it.key()] = it.value();
    return j;
}

} // namespace confspace
