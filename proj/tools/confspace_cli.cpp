// confspace: homology of discrete configuration spaces of graphs.

#include "confspace/jobs.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace confspace;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitBudget = 3;

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        long long v = std::stoll(item, &used);
        if (used != item.size())
            throw InvalidInput("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

/// "4", "2,3,5" or "2..4".
std::vector<int> parse_range(const std::string& text) {
    std::vector<int> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (hi < lo)
            throw InvalidInput("empty range '" + text + "'");
        for (int v = lo; v <= hi; ++v)
            out.push_back(v);
        return out;
    }
    for (auto v : parse_list(text))
        out.push_back(static_cast<int>(v));
    if (out.empty())
        throw InvalidInput("empty range");
    return out;
}

/// "b2:b1:mu;b2:b1:mu" ('/' also separates components)
std::vector<ComponentBetti> parse_components(std::string text) {
    std::replace(text.begin(), text.end(), '/', ';');
    std::vector<ComponentBetti> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ';');) {
        std::replace(item.begin(), item.end(), ':', ',');
        auto v = parse_list(item);
        if (v.size() != 3)
            throw InvalidInput("component must be b2:b1:mu");
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

struct GraphSource {
    std::string file;
    std::string stars;

    Graph load() const {
        if (!file.empty() && !stars.empty())
            throw InvalidInput("give either --graph or --stars, not both");
        if (!stars.empty()) {
            std::vector<std::size_t> degrees;
            for (auto d : parse_list(stars)) {
                if (d < 1)
                    throw InvalidInput("hub degrees must be positive");
                degrees.push_back(static_cast<std::size_t>(d));
            }
            return degrees.size() == 1 ? graphs::star(degrees[0]) : graphs::caterpillar(degrees);
        }
        if (file.empty())
            throw InvalidInput("a graph is required (--graph or --stars)");
        std::ifstream in(file);
        if (!in)
            throw InvalidInput("cannot read graph file '" + file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_graph(buf.str());
    }
};

struct Common {
    bool ordered = false;
    bool bigint = false;
    bool rank_only = false;
    bool timing = false;
    std::string method = "auto";
    std::string json_out;
    std::uint64_t budget = 5'000'000;
    int max_dim = -1;

    ComputeOptions options() const {
        ComputeOptions o;
        o.arithmetic = bigint ? Arithmetic::bigint : Arithmetic::automatic;
        o.rank_only = rank_only;
        o.budget = budget;
        o.max_dim = max_dim;
        if (method == "snf")
            o.method = MethodChoice::snf;
        else if (method == "reduce")
            o.method = MethodChoice::reduce;
        else if (method != "auto")
            throw InvalidInput("method must be auto, snf or reduce");
        return o;
    }
    Flavor flavor() const { return ordered ? Flavor::ordered : Flavor::unordered; }
};

void add_compute_flags(CLI::App* cmd, Common& c, bool with_max_dim) {
    cmd->add_flag("--ordered", c.ordered, "distinguishable particles");
    cmd->add_flag("--bigint", c.bigint, "arbitrary-precision arithmetic from the start");
    cmd->add_flag("--rank-only", c.rank_only, "Betti numbers only, no torsion");
    cmd->add_option("--method", c.method, "auto, snf or reduce")->capture_default_str();
    cmd->add_option("--budget", c.budget, "maximum number of cells")->capture_default_str();
    cmd->add_option("--json", c.json_out, "write JSON report to a file ('-' for stdout)");
    cmd->add_flag("--timing", c.timing, "include wall time in the report");
    if (with_max_dim)
        cmd->add_option("--max-dim", c.max_dim, "highest homology dimension");
}

void add_graph_flags(CLI::App* cmd, GraphSource& g) {
    cmd->add_option("--graph", g.file, "graph file");
    cmd->add_option("--stars", g.stars, "hub degrees of a star or caterpillar tree, e.g. 3,3");
}

int emit(const Json& j, const std::string& text, const Common& c) {
    if (c.json_out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
        if (!c.json_out.empty()) {
            std::ofstream out(c.json_out);
            if (!out)
                throw InvalidInput("cannot write '" + c.json_out + "'");
            out << j.dump(2) << "\n";
        }
    }
    return 0;
}

int emit_report(const JobReport& rep, const Common& c) {
    if (c.timing)
        std::cerr << "wall time " << rep.wall_time_seconds << " s\n";
    emit(to_json(rep, c.timing), to_text(rep), c);
    return rep.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homology of discrete configuration spaces of particles on graphs"};
    app.require_subcommand(1);

    GraphSource hg;
    Common hc;
    int hn = 0;
    auto* hom = app.add_subcommand("homology", "integer homology of D_n or its ordered version");
    add_graph_flags(hom, hg);
    hom->add_option("--particles,-n", hn, "particle count")->required();
    add_compute_flags(hom, hc, true);

    FormulaJob fj;
    Common fc;
    std::string f_stars, f_components, f_seq1, f_seq2, f_b2;
    std::int64_t f_n = -1, f_m = -1;
    auto* form = app.add_subcommand("formula", "evaluate a closed-form Betti number");
    form->add_option("--variant", fj.variant,
                     "star, tree-pair, tree-recursive, tree-closed, tree-general, two-particle, single-edge")
        ->required();
    form->add_option("--stars", f_stars, "hub degrees");
    form->add_option("--particles,-n", f_n, "particle count");
    form->add_option("--order,-m", f_m, "homology order");
    form->add_flag("--ordered", fj.ordered, "distinguishable particles");
    form->add_option("--components", f_components, "per component b2:b1:mu, separated by ';' or '/'");
    form->add_option("--b1-seq-1", f_seq1, "beta_1^(k) of the first component for k = 0..n");
    form->add_option("--b1-seq-2", f_seq2, "beta_1^(k) of the second component for k = 0..n");
    form->add_option("--b2", f_b2, "beta_2 at n of both components, e.g. 0,0");
    form->add_option("--json", fc.json_out, "write JSON report to a file ('-' for stdout)");

    GraphSource vg;
    Common vc;
    std::string v_particles, v_orders, v_cut;
    auto* ver = app.add_subcommand("verify", "compare closed forms with computed homology");
    add_graph_flags(ver, vg);
    ver->add_option("--particles,-n", v_particles, "particle counts, e.g. 4..5")->required();
    ver->add_option("--order,-m", v_orders, "homology orders, e.g. 2 or 1..3");
    ver->add_option("--cut-vertex", v_cut, "cut vertex for the one-connected checks");
    add_compute_flags(ver, vc, false);

    GraphSource dg;
    Common dc;
    int dn = 0;
    auto* dump = app.add_subcommand("dump-complex", "write cells and boundary matrices as JSON");
    add_graph_flags(dump, dg);
    dump->add_option("--particles,-n", dn, "particle count")->required();
    dump->add_flag("--ordered", dc.ordered, "distinguishable particles");
    dump->add_option("--budget", dc.budget, "maximum number of cells")->capture_default_str();
    dump->add_option("--json", dc.json_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*hom) {
            if (hn < 0)
                throw InvalidInput("particle count must be nonnegative");
            return emit_report(cmd_homology(hg.load(), hn, hc.flavor(), hc.options()), hc);
        }
        if (*form) {
            fj.stars = parse_list(f_stars);
            if (f_n >= 0)
                fj.n = f_n;
            if (f_m >= 0)
                fj.m = f_m;
            if (!f_components.empty())
                fj.components = parse_components(f_components);
            fj.b1_seq_1 = parse_list(f_seq1);
            fj.b1_seq_2 = parse_list(f_seq2);
            fj.b2 = parse_list(f_b2);
            return emit_report(cmd_formula(fj), fc);
        }
        if (*ver) {
            VerifyJob job;
            job.graph = vg.load();
            job.particles = parse_range(v_particles);
            if (!v_orders.empty())
                job.orders = parse_range(v_orders);
            job.flavor = vc.flavor();
            job.options = vc.options();
            if (!v_cut.empty())
                job.cut_vertex = v_cut;
            return emit_report(cmd_verify(job), vc);
        }
        if (*dump) {
            Json j = cmd_dump(dg.load(), dn, dc.flavor(), dc.budget);
            if (dc.json_out.empty() || dc.json_out == "-") {
                std::cout << j.dump(2) << "\n";
            } else {
                std::ofstream out(dc.json_out);
                if (!out)
                    throw InvalidInput("cannot write '" + dc.json_out + "'");
                out << j.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
