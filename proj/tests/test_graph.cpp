#include "confspace/graph.hpp"
#include "confspace/graph_library.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace confspace;

namespace {

std::vector<std::string> neighbor_names(const Graph& g, const std::string& v) {
    std::vector<std::string> out;
    for (Vertex w : g.neighbors(g.find_or_throw(v)))
        out.push_back(g.name(w));
    return out;
}

std::multiset<std::size_t> essential_degrees(const Graph& g) {
    std::multiset<std::size_t> out;
    for (Vertex v : essential_vertices(g))
        out.insert(g.degree(v));
    return out;
}

} // namespace

TEST(ParseGraph, PathPicksFirstVertexAsRoot) {
    Graph g = parse_graph("edge a b\nedge b c");
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.name(g.root()), "a");
    EXPECT_EQ(neighbor_names(g, "b"), (std::vector<std::string>{"a", "c"}));
}

TEST(ParseGraph, RootDirectiveAndNeighborOrder) {
    Graph g = parse_graph("root x\nedge x y\nedge x z\nedge x w");
    EXPECT_EQ(g.name(g.root()), "x");
    EXPECT_EQ(neighbor_names(g, "x"), (std::vector<std::string>{"y", "z", "w"}));
    EXPECT_EQ(essential_vertices(g).size(), 1u);
}

TEST(ParseGraph, CommentsAndBlankLines) {
    Graph g = parse_graph("# a comment\n\nedge a b   # trailing\n  edge b c\n");
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(ParseGraph, Errors) {
    EXPECT_THROW(parse_graph("edge a a"), ParseError);
    EXPECT_THROW(parse_graph("edge a b\nedge b a"), ParseError);
    EXPECT_THROW(parse_graph(""), ParseError);
    EXPECT_THROW(parse_graph("# nothing\n"), ParseError);
    EXPECT_THROW(parse_graph("edge a b\nroot q"), ParseError);
    EXPECT_THROW(parse_graph("edge a"), ParseError);
    EXPECT_THROW(parse_graph("vertex a"), ParseError);
    EXPECT_THROW(parse_graph("root a\nroot b\nedge a b"), ParseError);
}

TEST(ParseGraph, TextRoundTrip) {
    Graph g = parse_graph("root c\nedge a b\nedge b c\nedge c d");
    Graph h = parse_graph(to_text(g));
    EXPECT_EQ(to_text(h), to_text(g));
    EXPECT_EQ(h.name(h.root()), "c");
}

TEST(Subdivide, TriangleAlreadySufficientForTwo) {
    Graph t = graphs::cycle(3);
    EXPECT_TRUE(is_sufficiently_subdivided(t, 2));
    EXPECT_EQ(subdivide_for(t, 2).edge_count(), 3u);
}

TEST(Subdivide, TriangleForFourParticlesHasAtLeastFiveEdges) {
    Graph t = graphs::cycle(3);
    EXPECT_FALSE(is_sufficiently_subdivided(t, 4));
    Graph s = subdivide_for(t, 4);
    EXPECT_GE(s.edge_count(), 5u);
    EXPECT_TRUE(is_sufficiently_subdivided(s, 4));
    EXPECT_EQ(first_betti(s), 1);
}

TEST(Subdivide, YGraphQualifiesForTwo) {
    Graph y = graphs::y_graph();
    EXPECT_TRUE(is_sufficiently_subdivided(y, 2));
    Graph s = subdivide_for(y, 2);
    EXPECT_EQ(to_text(s), to_text(y));
}

TEST(Subdivide, IdempotentAndPreservesInvariants) {
    for (const Graph& g : {graphs::star(4), graphs::complete(5), graphs::theta(), graphs::figure_eight(),
                           graphs::caterpillar({3, 4, 3})}) {
        for (int n = 1; n <= 5; ++n) {
            Graph s = subdivide_for(g, n);
            EXPECT_TRUE(is_sufficiently_subdivided(s, n));
            EXPECT_EQ(first_betti(s), first_betti(g));
            EXPECT_EQ(essential_degrees(s), essential_degrees(g));
            EXPECT_EQ(to_text(subdivide_for(s, n)), to_text(s));
        }
    }
}

TEST(Subdivide, FreshNamesAndEmbedding) {
    Graph g = parse_graph("edge h a\nedge h b\nedge h c");
    Graph s = subdivide_for(g, 4);
    ASSERT_EQ(subdivision_factor(g, 4), 3u);
    EXPECT_TRUE(s.find("h:a:1").has_value());
    EXPECT_TRUE(s.find("h:a:2").has_value());
    EXPECT_EQ(neighbor_names(s, "h"), (std::vector<std::string>{"h:a:1", "h:b:1", "h:c:1"}));
    EXPECT_EQ(s.name(s.root()), "h");
    EXPECT_THROW(subdivide_for(g, 0), InvalidInput);
}

TEST(Numbering, PathRootedAtEnd) {
    Graph g = parse_graph("edge a b\nedge b c");
    auto num = number_vertices(g, spanning_tree(g));
    EXPECT_EQ(num[g.find_or_throw("a")], 1u);
    EXPECT_EQ(num[g.find_or_throw("b")], 2u);
    EXPECT_EQ(num[g.find_or_throw("c")], 3u);
}

TEST(Numbering, StarRootedAtLeaf) {
    Graph g = parse_graph("root a\nedge h x\nedge h a\nedge h y");
    auto num = default_numbering(g);
    EXPECT_EQ(num[g.find_or_throw("a")], 1u);
    EXPECT_EQ(num[g.find_or_throw("h")], 2u);
    EXPECT_EQ(num[g.find_or_throw("x")], 3u);
    EXPECT_EQ(num[g.find_or_throw("y")], 4u);
}

TEST(Numbering, YGraphMatchesLabels) {
    Graph y = graphs::y_graph();
    auto num = default_numbering(y);
    for (const char* name : {"1", "2", "3", "4"})
        EXPECT_EQ(num[y.find_or_throw(name)], static_cast<std::size_t>(std::stoi(name)));
}

TEST(Numbering, BijectionWithRootFirst) {
    for (const Graph& g : {graphs::complete(5), graphs::caterpillar({3, 3, 3}), graphs::theta(),
                           graphs::complete_bipartite(3, 3)}) {
        auto num = default_numbering(g);
        std::vector<std::size_t> ranks = num.rank;
        std::sort(ranks.begin(), ranks.end());
        for (std::size_t i = 0; i < ranks.size(); ++i)
            EXPECT_EQ(ranks[i], i + 1);
        EXPECT_EQ(num[g.root()], 1u);
    }
}

TEST(Numbering, RejectsNonSpanningSubset) {
    Graph g = graphs::cycle(5);
    std::vector<std::size_t> too_few{0, 1};
    EXPECT_THROW(number_vertices(g, too_few), InvalidInput);
    std::vector<std::size_t> bad{0, 1, 2, 99};
    EXPECT_THROW(number_vertices(g, bad), InvalidInput);
}

TEST(SpanningTree, Examples) {
    Graph tree = graphs::caterpillar({3, 4});
    EXPECT_EQ(spanning_tree(tree).size(), tree.edge_count());
    EXPECT_EQ(spanning_tree(graphs::cycle(5)).size(), 4u);
    auto k5 = spanning_tree(graphs::complete(5));
    EXPECT_EQ(k5.size(), 4u);
    EXPECT_EQ(graphs::complete(5).edge_count() - k5.size(), 6u);
    EXPECT_EQ(spanning_tree(graphs::complete(5)), k5);
    Graph two = graphs::disjoint_union(graphs::path(2), graphs::path(2));
    EXPECT_THROW(spanning_tree(two), InvalidInput);
}

TEST(FirstBetti, Examples) {
    EXPECT_EQ(first_betti(graphs::star(5)), 0);
    EXPECT_EQ(first_betti(graphs::theta()), 2);
    EXPECT_EQ(first_betti(graphs::disjoint_union(graphs::cycle(3), graphs::cycle(4))), 2);
    EXPECT_EQ(first_betti(graphs::complete(5)), 6);
}

TEST(Split, FigureEight) {
    Graph g = graphs::figure_eight();
    auto s = split_at_cut_vertex(g, g.find_or_throw("v"));
    ASSERT_EQ(s.components.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(first_betti(s.components[i]), 1);
        EXPECT_TRUE(is_tree(s.trimmed_components[i]));
        EXPECT_EQ(s.attachment_counts[i], 2u);
        EXPECT_EQ(s.mu(i), 1);
        EXPECT_FALSE(s.trimmed_components[i].find("v").has_value());
    }
}

TEST(Split, TwoTrianglesJoinedByBridge) {
    Graph g = parse_graph("edge a1 a2\nedge a2 a3\nedge a3 a1\nedge a1 b1\nedge b1 b2\nedge b2 b3\nedge b3 b1");
    auto s = split_at_cut_vertex(g, g.find_or_throw("a1"));
    ASSERT_EQ(s.components.size(), 2u);
    // The triangle through a1 attaches twice; the bridge side once.
    std::vector<std::pair<std::int64_t, std::size_t>> got;
    for (std::size_t i = 0; i < 2; ++i)
        got.push_back({first_betti(s.components[i]), s.attachment_counts[i]});
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got[0], (std::pair<std::int64_t, std::size_t>{1, 1}));
    EXPECT_EQ(got[1], (std::pair<std::int64_t, std::size_t>{1, 2}));
}

TEST(Split, BettiRelations) {
    for (const Graph& g : {graphs::figure_eight(), graphs::single_edge_join(graphs::theta(), "t", graphs::cycle(3), "v1"),
                           parse_graph("edge c x1\nedge x1 x2\nedge x2 c\nedge c y1\nedge y1 y2\nedge y2 c\nedge c z")}) {
        for (Vertex v : cut_vertices(g)) {
            auto s = split_at_cut_vertex(g, v);
            std::int64_t total = 0;
            for (std::size_t i = 0; i < s.components.size(); ++i) {
                total += first_betti(s.components[i]);
                EXPECT_EQ(first_betti(s.components[i]) - first_betti(s.trimmed_components[i]),
                          static_cast<std::int64_t>(s.attachment_counts[i]) - 1);
            }
            EXPECT_EQ(total, first_betti(g));
        }
    }
}

TEST(Split, NonCutVertexRejected) {
    Graph c = graphs::cycle(5);
    EXPECT_THROW(split_at_cut_vertex(c, 0), InvalidInput);
    EXPECT_TRUE(cut_vertices(c).empty());
}

TEST(Essential, Examples) {
    EXPECT_TRUE(essential_vertices(graphs::path(6)).empty());
    Graph y = graphs::y_graph();
    ASSERT_EQ(essential_vertices(y).size(), 1u);
    EXPECT_EQ(y.name(essential_vertices(y)[0]), "2");
    EXPECT_EQ(essential_vertices(graphs::caterpillar({3, 3})).size(), 2u);
}

TEST(TreeShape, Examples) {
    auto dy = tree_shape(graphs::caterpillar({3, 3}));
    EXPECT_EQ(dy.degrees(), (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(dy.adjacency.size(), 1u);

    auto star = tree_shape(graphs::star(5));
    EXPECT_EQ(star.degrees(), (std::vector<std::size_t>{5}));
    EXPECT_TRUE(star.adjacency.empty());

    auto cat = tree_shape(subdivide_for(graphs::caterpillar({3, 4, 3}), 4));
    EXPECT_EQ(cat.degrees(), (std::vector<std::size_t>{3, 4, 3}));
    EXPECT_EQ(cat.adjacency, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));

    EXPECT_THROW(tree_shape(graphs::cycle(4)), InvalidInput);
}

TEST(TreeShape, StarCountMatchesEssentialVertices) {
    for (const Graph& g : {graphs::caterpillar({3, 5, 3, 4}), graphs::star(3), graphs::path(4)})
        EXPECT_EQ(tree_shape(g).stars.size(), essential_vertices(g).size());
}

TEST(Graph, StructuralErrors) {
    Graph g;
    g.add_edge("a", "b");
    EXPECT_THROW(g.add_edge("a", "b"), InvalidInput);
    EXPECT_THROW(g.add_edge("b", "b"), InvalidInput);
    EXPECT_THROW(g.set_neighbor_order(0, {}), InvalidInput);
    EXPECT_THROW(g.find_or_throw("zz"), InvalidInput);
    EXPECT_THROW(g.set_root(7), InvalidInput);
}
