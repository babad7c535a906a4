#include "confspace/cycles.hpp"
#include "confspace/graph_library.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace confspace;

namespace {

Graph load(const std::string& name) {
    std::ifstream in(std::string(CONFSPACE_TEST_DATA) + "/" + name + ".graph");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

Vertex V(const ConfigurationSpace& s, const std::string& name) { return s.graph().find_or_throw(name); }

std::vector<Chain> place(const ConfigurationSpace& s, const std::vector<CellChain>& cs) {
    std::vector<Chain> out;
    for (const auto& c : cs)
        out.push_back(to_chain(s, c));
    return out;
}

CellChain sum(const CellChain& a, const CellChain& b) {
    CellChain out = a;
    for (const auto& [c, v] : b.terms)
        out.add(c, v);
    return out;
}

/// First Y-subgraph at each hub, arms in embedding order.
CellChain first_y(const ConfigurationSpace& s, const std::string& hub) {
    Vertex h = V(s, hub);
    auto ns = s.graph().neighbors(h);
    return y_cycle(s, h, {ns[0], ns[1], ns[2]});
}

} // namespace

TEST(OCycle, TriangleMatchesHandChain) {
    ConfigurationSpace s(graphs::cycle(3), 1, Flavor::unordered);
    auto c = o_cycle(s, {{V(s, "v1"), V(s, "v2")}, {V(s, "v2"), V(s, "v3")}, {V(s, "v3"), V(s, "v1")}});
    CellChain expected{1, 1, Flavor::unordered, {}};
    expected.add({s.edge_entity("v1", "v2")}, 1);
    expected.add({s.edge_entity("v2", "v3")}, 1);
    expected.add({s.edge_entity("v1", "v3")}, -1);
    EXPECT_EQ(c, expected);
    EXPECT_TRUE(boundary(s, c).empty());
}

TEST(OCycle, EdgeOrderDoesNotMatter) {
    ConfigurationSpace s(graphs::cycle(3), 1, Flavor::unordered);
    auto a = o_cycle(s, {{V(s, "v1"), V(s, "v2")}, {V(s, "v2"), V(s, "v3")}, {V(s, "v3"), V(s, "v1")}});
    auto b = o_cycle(s, {{V(s, "v3"), V(s, "v1")}, {V(s, "v3"), V(s, "v2")}, {V(s, "v2"), V(s, "v1")}});
    EXPECT_EQ(a, b);
}

TEST(OCycle, FiveCycleWithSpectator) {
    Graph g = graphs::cycle(5);
    g.add_edge("v1", "w");
    for (auto f : {Flavor::unordered, Flavor::ordered}) {
        ConfigurationSpace s(g, 2, f);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (int i = 1; i <= 5; ++i)
            edges.push_back({V(s, "v" + std::to_string(i)), V(s, "v" + std::to_string(i % 5 + 1))});
        auto c = o_cycle(s, edges, {V(s, "w")});
        EXPECT_EQ(c.size(), 5u);
        EXPECT_TRUE(boundary(s, c).empty());
        EXPECT_TRUE(boundary(s, to_chain(s, c)).empty());
    }
}

TEST(OCycle, Errors) {
    Graph g = graphs::cycle(5);
    g.add_edge("v1", "w");
    ConfigurationSpace s(g, 2, Flavor::unordered);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i <= 5; ++i)
        edges.push_back({V(s, "v" + std::to_string(i)), V(s, "v" + std::to_string(i % 5 + 1))});
    EXPECT_THROW(o_cycle(s, edges, {V(s, "v3")}), InvalidInput);
    auto open = edges;
    open.pop_back();
    EXPECT_THROW(o_cycle(s, open, {V(s, "w")}), InvalidInput);
    EXPECT_THROW(o_cycle(s, {{V(s, "v1"), V(s, "v2")}, {V(s, "v2"), V(s, "v3")}, {V(s, "v3"), V(s, "v1")}}),
                 InvalidInput);
    EXPECT_THROW(o_cycle(s, {{V(s, "v1"), V(s, "v2")}, {V(s, "v2"), V(s, "v1")}}), InvalidInput);
}

TEST(YCycle, YGraphMatchesHandChain) {
    ConfigurationSpace s(graphs::y_graph(), 2, Flavor::unordered);
    auto c = y_cycle(s, V(s, "2"), {V(s, "1"), V(s, "3"), V(s, "4")});
    CellChain expected{1, 2, Flavor::unordered, {}};
    expected.add({s.edge_entity("2", "3"), s.vertex_entity("1")}, 1);
    expected.add({s.edge_entity("1", "2"), s.vertex_entity("3")}, 1);
    expected.add({s.edge_entity("2", "4"), s.vertex_entity("3")}, 1);
    expected.add({s.edge_entity("2", "3"), s.vertex_entity("4")}, -1);
    expected.add({s.edge_entity("1", "2"), s.vertex_entity("4")}, -1);
    expected.add({s.edge_entity("2", "4"), s.vertex_entity("1")}, -1);
    EXPECT_EQ(c, expected);
    EXPECT_TRUE(boundary(s, c).empty());
}

TEST(YCycle, ArmOrderDoesNotMatter) {
    ConfigurationSpace s(graphs::y_graph(), 2, Flavor::unordered);
    EXPECT_EQ(y_cycle(s, V(s, "2"), {V(s, "4"), V(s, "1"), V(s, "3")}),
              y_cycle(s, V(s, "2"), {V(s, "1"), V(s, "3"), V(s, "4")}));
}

TEST(YCycle, OrderedDoubleLapGeneratesFirstHomology) {
    ConfigurationSpace s(graphs::y_graph(), 2, Flavor::ordered);
    auto c = y_cycle(s, V(s, "2"), {V(s, "1"), V(s, "3"), V(s, "4")});
    EXPECT_EQ(c.size(), 12u);
    EXPECT_TRUE(boundary(s, c).empty());
    ChainComplex cx = build_complex(std::make_shared<const ConfigurationSpace>(s));
    EXPECT_TRUE(spans_homology(cx, {to_chain(s, c)}, 1));
}

TEST(YCycle, InLargerTreeWithSpectator) {
    Graph g = subdivide_for(graphs::star(4), 3);
    ConfigurationSpace s(g, 3, Flavor::unordered);
    Vertex h = V(s, "h");
    auto ns = g.neighbors(h);
    auto c = y_cycle(s, h, {ns[0], ns[1], ns[2]}, {V(s, "a4")});
    EXPECT_EQ(c.size(), 6u);
    EXPECT_EQ(c.particles, 3);
    EXPECT_TRUE(boundary(s, to_chain(s, c)).empty());
}

TEST(YCycle, Errors) {
    Graph g = subdivide_for(graphs::star(3), 3);
    ConfigurationSpace s(g, 3, Flavor::unordered);
    Vertex h = V(s, "h");
    auto ns = g.neighbors(h);
    EXPECT_THROW(y_cycle(s, ns[0], {h, V(s, "a1"), V(s, "a2")}), InvalidInput);
    EXPECT_THROW(y_cycle(s, h, {ns[0], ns[1], V(s, "a3")}), InvalidInput);
    EXPECT_THROW(y_cycle(s, h, {ns[0], ns[1], ns[1]}), InvalidInput);
    EXPECT_THROW(y_cycle(s, h, {ns[0], ns[1], ns[2]}, {ns[0]}), InvalidInput);
}

TEST(Tensor, TwoTrianglesGiveNineCellTorus) {
    Graph g = graphs::disjoint_union(graphs::cycle(3), graphs::cycle(3));
    ConfigurationSpace s(g, 2, Flavor::unordered);
    auto tri = [&](const std::string& p) {
        return o_cycle(s, {{V(s, p + "v1"), V(s, p + "v2")}, {V(s, p + "v2"), V(s, p + "v3")},
                           {V(s, p + "v3"), V(s, p + "v1")}});
    };
    auto t = tensor_product(s, tri("L."), tri("R."));
    EXPECT_EQ(t.dimension, 2);
    EXPECT_EQ(t.size(), 9u);
    EXPECT_TRUE(boundary(s, t).empty());
    ChainComplex cx = build_complex(std::make_shared<const ConfigurationSpace>(s));
    Chain placed = to_chain(s, t);
    EXPECT_TRUE(is_cycle(cx, placed));
    EXPECT_EQ(span_rank(cx, {placed}, 2), 1);
}

TEST(Tensor, DoubleYGivesThirtySixCellCycle) {
    Graph g = subdivide_for(load("double_y"), 4);
    auto space = std::make_shared<const ConfigurationSpace>(g, 4, Flavor::unordered);
    const ConfigurationSpace& s = *space;
    auto t = tensor_product(s, first_y(s, "h1"), first_y(s, "h2"));
    EXPECT_EQ(t.size(), 36u);
    ChainComplex cx = build_complex(space);
    Chain placed = to_chain(s, t);
    EXPECT_TRUE(is_cycle(cx, placed));
    EXPECT_TRUE(spans_homology(cx, {placed}, 2));
}

TEST(Tensor, BilinearAndAntisymmetricInEdges) {
    Graph g = graphs::disjoint_union(graphs::cycle(3), graphs::cycle(4));
    ConfigurationSpace s(g, 2, Flavor::unordered);
    auto a = o_cycle(s, {{V(s, "L.v1"), V(s, "L.v2")}, {V(s, "L.v2"), V(s, "L.v3")}, {V(s, "L.v3"), V(s, "L.v1")}});
    std::vector<std::pair<Vertex, Vertex>> sq;
    for (int i = 1; i <= 4; ++i)
        sq.push_back({V(s, "R.v" + std::to_string(i)), V(s, "R.v" + std::to_string(i % 4 + 1))});
    auto b = o_cycle(s, sq);
    CellChain b2 = sum(b, b.scaled(2));
    EXPECT_EQ(tensor_product(s, a, b2), tensor_product(s, a, b).scaled(3));
    EXPECT_EQ(tensor_product(s, a.scaled(-1), b), tensor_product(s, a, b).scaled(-1));
    EXPECT_EQ(tensor_product(s, b, a), tensor_product(s, a, b).scaled(-1));
    EXPECT_TRUE(boundary(s, tensor_product(s, b, a)).empty());
}

TEST(Tensor, PointFactorAddsSpectator) {
    Graph g = graphs::cycle(5);
    g.add_edge("v1", "w");
    ConfigurationSpace s(g, 2, Flavor::unordered);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i <= 5; ++i)
        edges.push_back({V(s, "v" + std::to_string(i)), V(s, "v" + std::to_string(i % 5 + 1))});
    EXPECT_EQ(tensor_product(s, o_cycle(s, edges), point_chain(s, {V(s, "w")})), o_cycle(s, edges, {V(s, "w")}));
}

TEST(Tensor, Errors) {
    ConfigurationSpace s(graphs::y_graph(), 2, Flavor::unordered);
    EXPECT_THROW(tensor_product(s, point_chain(s, {V(s, "1")}), point_chain(s, {V(s, "1")})), InvalidInput);
    ConfigurationSpace o(graphs::y_graph(), 2, Flavor::ordered);
    EXPECT_THROW(tensor_product(o, point_chain(o, {V(o, "1")}), point_chain(o, {V(o, "3")})), InvalidInput);
    EXPECT_THROW(to_chain(s, point_chain(s, {V(s, "1")})), InvalidInput);
}

TEST(CellChainBoundary, AgreesWithSpace) {
    Graph g = subdivide_for(load("theta_loop"), 3);
    ConfigurationSpace s(g, 3, Flavor::unordered);
    for (std::uint64_t i = 0; i < s.cell_count(2); i += 7) {
        Chain c{2, {}};
        c.add(static_cast<std::size_t>(i), 1);
        EXPECT_EQ(to_chain(s, boundary(s, to_cell_chain(s, c))), boundary(s, c));
    }
}

TEST(Basis, DoubleYSpans) {
    Graph g = subdivide_for(load("double_y"), 4);
    auto space = std::make_shared<const ConfigurationSpace>(g, 4, Flavor::unordered);
    auto basis = tree_overcomplete_basis(*space, 2);
    ASSERT_FALSE(basis.empty());
    ChainComplex cx = build_complex(space);
    auto chains = place(*space, basis);
    for (const auto& c : chains)
        EXPECT_TRUE(is_cycle(cx, c));
    EXPECT_TRUE(spans_homology(cx, chains, 2));
    EXPECT_TRUE(spans_homology(*space, chains, 2));
    EXPECT_EQ(span_rank_by_matrix(cx, chains, 2), 1);
}

TEST(Basis, DoubleYFiveParticles) {
    Graph g = subdivide_for(load("double_y"), 5);
    auto space = std::make_shared<const ConfigurationSpace>(g, 5, Flavor::unordered);
    auto chains = place(*space, tree_overcomplete_basis(*space, 2));
    ChainComplex cx = build_complex(space);
    EXPECT_EQ(span_rank(cx, chains, 2), 5);
    EXPECT_EQ(span_rank_by_matrix(cx, chains, 2), 5);
    EXPECT_EQ(span_rank(*space, chains, 2), 5);
}

TEST(Basis, StarFirstHomology) {
    auto space = std::make_shared<const ConfigurationSpace>(graphs::star(3), 2, Flavor::unordered);
    auto chains = place(*space, tree_overcomplete_basis(*space, 1));
    EXPECT_EQ(chains.size(), 1u);
    EXPECT_TRUE(spans_homology(build_complex(space), chains, 1));

    auto s4 = std::make_shared<const ConfigurationSpace>(subdivide_for(graphs::star(4), 3), 3, Flavor::unordered);
    auto c4 = place(*s4, tree_overcomplete_basis(*s4, 1));
    EXPECT_TRUE(spans_homology(*s4, c4, 1));
    EXPECT_EQ(span_rank(*s4, c4, 1), 11);
}

TEST(Basis, SingleYDoesNotSpanFourStar) {
    auto space = std::make_shared<const ConfigurationSpace>(graphs::star(4), 2, Flavor::unordered);
    ChainComplex cx = build_complex(space);
    Chain y = to_chain(*space, first_y(*space, "h"));
    EXPECT_FALSE(spans_homology(cx, {y}, 1));
    EXPECT_EQ(span_rank(cx, {y}, 1), 1);
    EXPECT_EQ(span_rank_by_matrix(cx, {y}, 1), 1);
    EXPECT_EQ(homology(cx).betti_at(1), 3);
}

TEST(Basis, EmptyListOnTrivialHomology) {
    auto space = std::make_shared<const ConfigurationSpace>(graphs::star(3), 2, Flavor::unordered);
    ChainComplex cx = build_complex(space);
    EXPECT_TRUE(spans_homology(cx, {}, 2));
    EXPECT_TRUE(spans_homology(*space, {}, 2));
    EXPECT_FALSE(spans_homology(cx, {}, 1));
}

TEST(Basis, Errors) {
    ConfigurationSpace s(subdivide_for(load("double_y"), 3), 3, Flavor::unordered);
    EXPECT_THROW(tree_overcomplete_basis(s, 2), InvalidInput);
    ConfigurationSpace loop(graphs::cycle(4), 2, Flavor::unordered);
    EXPECT_THROW(tree_overcomplete_basis(loop, 1), InvalidInput);
    ConfigurationSpace ord(graphs::y_graph(), 2, Flavor::ordered);
    EXPECT_THROW(tree_overcomplete_basis(ord, 1), InvalidInput);

    auto space = std::make_shared<const ConfigurationSpace>(graphs::y_graph(), 2, Flavor::unordered);
    ChainComplex cx = build_complex(space);
    Chain edge{1, {{0, 1}}};
    EXPECT_THROW(spans_homology(cx, {edge}, 1), InvalidInput);
    EXPECT_THROW(spans_homology(*space, {edge}, 1), InvalidInput);
}

TEST(Basis, MatrixOracleAgreesOnRandomSubsets) {
    Graph g = subdivide_for(load("double_y"), 5);
    auto space = std::make_shared<const ConfigurationSpace>(g, 5, Flavor::unordered);
    auto chains = place(*space, tree_overcomplete_basis(*space, 2));
    ChainComplex cx = build_complex(space);
    std::uint64_t state = 12345;
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Chain> subset;
        for (const auto& c : chains) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            if ((state >> 62) == 0)
                subset.push_back(c);
        }
        EXPECT_EQ(span_rank(cx, subset, 2), span_rank_by_matrix(cx, subset, 2));
    }
}
