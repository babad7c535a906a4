// Randomised properties over small graphs from a seeded generator.

#include "confspace/chain_complex.hpp"
#include "confspace/graph_library.hpp"
#include "confspace/homology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace confspace;

namespace {

constexpr std::uint64_t kMaxCells = 60'000;

/// Random connected simple graph: a random tree on `v` vertices plus `extra`
/// random non-edges.
Graph random_graph(std::mt19937_64& rng, std::size_t v, std::size_t extra) {
    Graph g;
    for (std::size_t i = 0; i < v; ++i)
        g.add_vertex("g" + std::to_string(i));
    for (std::size_t i = 1; i < v; ++i)
        g.add_edge(static_cast<Vertex>(rng() % i), static_cast<Vertex>(i));
    for (std::size_t tries = 0; extra > 0 && tries < 100; ++tries) {
        Vertex a = rng() % v, b = rng() % v;
        if (a == b || g.has_edge(a, b))
            continue;
        g.add_edge(a, b);
        --extra;
    }
    return g;
}

Graph random_tree(std::mt19937_64& rng, std::size_t v) { return random_graph(rng, v, 0); }

/// Same graph with vertices renamed, inserted in a shuffled order, and a
/// different root.
Graph shuffled_copy(const Graph& g, std::mt19937_64& rng) {
    std::vector<Vertex> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    Graph h;
    for (Vertex i = 0; i < g.vertex_count(); ++i)
        h.add_vertex("r" + std::to_string(perm[i]));
    for (const auto& e : edges) {
        if (rng() % 2)
            h.add_edge(h.find_or_throw("r" + std::to_string(perm[e.u])), h.find_or_throw("r" + std::to_string(perm[e.v])));
        else
            h.add_edge(h.find_or_throw("r" + std::to_string(perm[e.v])), h.find_or_throw("r" + std::to_string(perm[e.u])));
    }
    h.set_root(static_cast<Vertex>(rng() % h.vertex_count()));
    return h;
}

struct Sample {
    Graph graph;
    int n;
};

std::vector<Sample> samples(std::uint64_t seed, std::size_t count, bool trees_only = false) {
    std::mt19937_64 rng(seed);
    std::vector<Sample> out;
    while (out.size() < count) {
        std::size_t v = 3 + rng() % 5;
        Graph g = trees_only ? random_tree(rng, v) : random_graph(rng, v, rng() % 3);
        int n = 2 + static_cast<int>(rng() % 2);
        Graph sub = subdivide_for(g, n);
        if (ConfigurationSpace::count_cells(sub, n, Flavor::unordered) > kMaxCells)
            continue;
        out.push_back({g, n});
    }
    return out;
}

HomologyResult hom(const Graph& g, int n, Flavor f = Flavor::unordered, HomologyOptions opt = {}) {
    return homology(build_complex(g, n, f), opt);
}

std::int64_t fact(int n) {
    std::int64_t f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

/// Drops trailing zero groups, which only reflect the top cell dimension.
HomologyResult trimmed(HomologyResult h) {
    while (!h.betti.empty() && h.betti.back() == 0 && (h.torsion.empty() || h.torsion.back().empty())) {
        h.betti.pop_back();
        if (!h.torsion.empty())
            h.torsion.pop_back();
    }
    return h;
}

} // namespace

TEST(Properties, BoundarySquaresToZero) {
    for (const auto& [g, n] : samples(1, 75))
        for (auto f : {Flavor::unordered, Flavor::ordered}) {
            Graph sub = subdivide_for(g, n);
            if (ConfigurationSpace::count_cells(sub, n, f) > kMaxCells)
                continue;
            EXPECT_TRUE(boundary_squares_to_zero(build_complex(sub, n, f))) << to_text(g);
        }
}

TEST(Properties, OrderedEulerIsFactorialMultiple) {
    for (const auto& [g, n] : samples(2, 75)) {
        Graph sub = subdivide_for(g, n);
        ConfigurationSpace u(sub, n, Flavor::unordered);
        ConfigurationSpace o(sub, n, Flavor::ordered);
        EXPECT_EQ(euler_characteristic(o), fact(n) * euler_characteristic(u)) << to_text(g);
    }
}

TEST(Properties, EulerIsAlternatingBettiSum) {
    for (const auto& [g, n] : samples(3, 60)) {
        ChainComplex cx = build_complex(subdivide_for(g, n), n, Flavor::unordered);
        auto h = homology(cx);
        std::int64_t alt = 0;
        for (std::size_t k = 0; k < h.betti.size(); ++k)
            alt += k % 2 == 0 ? h.betti[k] : -h.betti[k];
        EXPECT_EQ(alt, euler_characteristic(cx)) << to_text(g);
        for (int k = 0; k <= cx.top_dimension(); ++k)
            EXPECT_LE(h.betti_at(k), static_cast<std::int64_t>(cx.cell_count(k)));
        EXPECT_EQ(h.betti_at(0), 1);
    }
}

TEST(Properties, SubdivisionInvariance) {
    for (const auto& [g, n] : samples(4, 45)) {
        Graph sub = subdivide_for(g, n);
        Graph finer = subdivide(sub, 2);
        if (ConfigurationSpace::count_cells(finer, n, Flavor::unordered) > 4 * kMaxCells)
            continue;
        HomologyOptions red;
        red.method = Method::reduce;
        EXPECT_EQ(trimmed(hom(sub, n)), trimmed(hom(finer, n, Flavor::unordered, red))) << to_text(g);
    }
}

TEST(Properties, RelabellingInvariance) {
    std::mt19937_64 rng(99);
    for (const auto& [g, n] : samples(5, 45)) {
        Graph h = shuffled_copy(g, rng);
        EXPECT_EQ(hom(subdivide_for(g, n), n), hom(subdivide_for(h, n), n)) << to_text(g);
        if (n == 2) {
            EXPECT_EQ(hom(subdivide_for(g, n), n, Flavor::ordered), hom(subdivide_for(h, n), n, Flavor::ordered));
        }
    }
}

TEST(Properties, RoutesAgree) {
    for (const auto& [g, n] : samples(6, 60))
        for (auto f : {Flavor::unordered, Flavor::ordered}) {
            Graph sub = subdivide_for(g, n);
            if (ConfigurationSpace::count_cells(sub, n, f) > kMaxCells)
                continue;
            auto space = std::make_shared<const ConfigurationSpace>(sub, n, f);
            ChainComplex cx = build_complex(space);
            auto snf = homology(cx);
            HomologyOptions red;
            red.method = Method::reduce;
            EXPECT_EQ(homology(cx, red), snf) << to_text(g);
            EXPECT_EQ(homology(space, red), snf) << to_text(g);
            HomologyOptions ro;
            ro.rank_only = true;
            EXPECT_EQ(homology(cx, ro).betti, snf.betti);
        }
}

TEST(Properties, TreesAreTorsionFree) {
    for (const auto& [g, n] : samples(7, 60, true)) {
        auto h = hom(subdivide_for(g, n), n);
        EXPECT_TRUE(h.torsion_free()) << to_text(g);
        EXPECT_EQ(h.betti_at(0), 1);
    }
}

TEST(Properties, OneParticleIsTheGraph) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        Graph g = random_graph(rng, 3 + rng() % 6, rng() % 4);
        auto h = hom(subdivide_for(g, 1), 1);
        EXPECT_EQ(h.betti, (std::vector<std::int64_t>{1, first_betti(g)}));
    }
}
