#pragma once

// Named small graphs used by the CLI shape options and the test corpus.

#include "confspace/graph.hpp"

#include <string>
#include <vector>

namespace confspace::graphs {

/// Hub "h" with arms "a1".."aE", rooted at the hub.
inline Graph star(std::size_t arms) {
    Graph g;
    Vertex h = g.add_vertex("h");
    for (std::size_t i = 1; i <= arms; ++i)
        g.add_edge(h, g.add_vertex("a" + std::to_string(i)));
    return g;
}

/// Path v1 - v2 - ... - vk.
inline Graph path(std::size_t vertices) {
    Graph g;
    Vertex prev = g.add_vertex("v1");
    for (std::size_t i = 2; i <= vertices; ++i) {
        Vertex v = g.add_vertex("v" + std::to_string(i));
        g.add_edge(prev, v);
        prev = v;
    }
    return g;
}

inline Graph cycle(std::size_t vertices) {
    Graph g = path(vertices);
    g.add_edge(g.find_or_throw("v" + std::to_string(vertices)), g.find_or_throw("v1"));
    return g;
}

inline Graph complete(std::size_t vertices) {
    Graph g;
    for (std::size_t i = 1; i <= vertices; ++i)
        g.add_vertex("k" + std::to_string(i));
    for (Vertex u = 0; u < vertices; ++u)
        for (Vertex v = u + 1; v < vertices; ++v)
            g.add_edge(u, v);
    return g;
}

inline Graph complete_bipartite(std::size_t left, std::size_t right) {
    Graph g;
    for (std::size_t i = 1; i <= left; ++i)
        g.add_vertex("p" + std::to_string(i));
    for (std::size_t j = 1; j <= right; ++j)
        g.add_vertex("q" + std::to_string(j));
    for (Vertex u = 0; u < left; ++u)
        for (Vertex v = left; v < left + right; ++v)
            g.add_edge(u, v);
    return g;
}

/// The Y-graph with vertices numbered as drawn: leaf 1 (root), hub 2, leaves 3 and 4.
inline Graph y_graph() {
    Graph g;
    g.add_edge("1", "2");
    g.add_edge("2", "3");
    g.add_edge("2", "4");
    return g;
}

/// Hubs h1..hm on a path; each hub padded with leaves up to its degree.
inline Graph caterpillar(const std::vector<std::size_t>& degrees) {
    if (degrees.empty())
        throw InvalidInput("caterpillar needs at least one hub");
    Graph g;
    std::vector<Vertex> hubs;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        hubs.push_back(g.add_vertex("h" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        std::size_t links = (i > 0) + (i + 1 < degrees.size());
        if (degrees[i] < std::max<std::size_t>(links, 1))
            throw InvalidInput("hub degree too small for its position");
        if (i > 0)
            g.add_edge(hubs[i - 1], hubs[i]);
        for (std::size_t j = 1; j + links <= degrees[i]; ++j)
            g.add_edge(hubs[i], g.add_vertex("h" + std::to_string(i + 1) + "l" + std::to_string(j)));
    }
    // Embedding order at each hub: previous hub, leaves, next hub.
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        std::vector<Vertex> order;
        if (i > 0)
            order.push_back(hubs[i - 1]);
        for (Vertex w : g.neighbors(hubs[i]))
            if (g.degree(w) == 1)
                order.push_back(w);
        if (i + 1 < degrees.size())
            order.push_back(hubs[i + 1]);
        g.set_neighbor_order(hubs[i], std::move(order));
    }
    return g;
}

/// Two triangles sharing the vertex "v".
inline Graph figure_eight() {
    Graph g;
    g.add_edge("v", "a1");
    g.add_edge("a1", "a2");
    g.add_edge("a2", "v");
    g.add_edge("v", "b1");
    g.add_edge("b1", "b2");
    g.add_edge("b2", "v");
    return g;
}

/// Two branch vertices "s" and "t" joined by three paths of two edges.
inline Graph theta() {
    Graph g;
    for (int i = 1; i <= 3; ++i) {
        std::string m = "m" + std::to_string(i);
        g.add_edge("s", m);
        g.add_edge(m, "t");
    }
    return g;
}

/// Disjoint union; vertex names are prefixed to keep them apart.
inline Graph disjoint_union(const Graph& a, const Graph& b, const std::string& pa = "L.",
                            const std::string& pb = "R.") {
    Graph g;
    for (const auto& n : a.names())
        g.add_vertex(pa + n);
    for (const auto& n : b.names())
        g.add_vertex(pb + n);
    for (const auto& e : a.edges())
        g.add_edge(e.u, e.v);
    for (const auto& e : b.edges())
        g.add_edge(a.vertex_count() + e.u, a.vertex_count() + e.v);
    for (Vertex v = 0; v < a.vertex_count(); ++v)
        g.set_neighbor_order(v, {a.neighbors(v).begin(), a.neighbors(v).end()});
    for (Vertex v = 0; v < b.vertex_count(); ++v) {
        std::vector<Vertex> order;
        for (Vertex w : b.neighbors(v))
            order.push_back(a.vertex_count() + w);
        g.set_neighbor_order(a.vertex_count() + v, std::move(order));
    }
    g.set_root(a.root());
    return g;
}

/// `a` and `b` each joined by one new edge to a new vertex "v"; v has valence two.
inline Graph single_edge_join(const Graph& a, const std::string& at_a, const Graph& b, const std::string& at_b) {
    Graph g = disjoint_union(a, b);
    Vertex v = g.add_vertex("v");
    g.add_edge(g.find_or_throw("L." + at_a), v);
    g.add_edge(v, g.find_or_throw("R." + at_b));
    return g;
}

} // namespace confspace::graphs
