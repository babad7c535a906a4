#pragma once

// Simple graphs with a plane-embedding order at each vertex, plus the
// structural operations the configuration-space code needs: sufficient
// subdivision, DFS numbering, cut-vertex splits and tree shapes.

#include "confspace/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace confspace {

using Vertex = std::size_t;

struct Edge {
    Vertex u;
    Vertex v;

    Vertex other(Vertex w) const { return w == u ? v : u; }
    bool has(Vertex w) const { return w == u || w == v; }
};

class Graph {
public:
    Vertex add_vertex(std::string name) {
        if (index_.contains(name))
            throw InvalidInput("duplicate vertex '" + name + "'");
        Vertex v = names_.size();
        index_.emplace(name, v);
        names_.push_back(std::move(name));
        neighbors_.emplace_back();
        return v;
    }

    /// Returns the vertex with this name, creating it if necessary.
    Vertex vertex(const std::string& name) {
        if (auto it = index_.find(name); it != index_.end())
            return it->second;
        return add_vertex(name);
    }

    void add_edge(Vertex u, Vertex v) {
        if (u == v)
            throw InvalidInput("self-loop at '" + names_.at(u) + "'");
        auto key = std::minmax(u, v);
        if (!edge_set_.insert({key.first, key.second}).second)
            throw InvalidInput("duplicate edge '" + names_.at(u) + "'-'" + names_.at(v) + "'");
        edges_.push_back({u, v});
        neighbors_.at(u).push_back(v);
        neighbors_.at(v).push_back(u);
    }

    void add_edge(const std::string& u, const std::string& v) {
        Vertex a = vertex(u);
        Vertex b = vertex(v);
        add_edge(a, b);
    }

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& name(Vertex v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }

    /// Neighbors in embedding order.
    std::span<const Vertex> neighbors(Vertex v) const { return neighbors_.at(v); }
    std::size_t degree(Vertex v) const { return neighbors_.at(v).size(); }

    bool has_edge(Vertex u, Vertex v) const {
        auto key = std::minmax(u, v);
        return edge_set_.contains({key.first, key.second});
    }

    std::optional<Vertex> find(std::string_view name) const {
        if (auto it = index_.find(std::string(name)); it != index_.end())
            return it->second;
        return std::nullopt;
    }

    Vertex find_or_throw(std::string_view name) const {
        if (auto v = find(name))
            return *v;
        throw InvalidInput("unknown vertex '" + std::string(name) + "'");
    }

    Vertex root() const { return root_; }
    void set_root(Vertex v) {
        if (v >= vertex_count())
            throw InvalidInput("root is not a vertex of the graph");
        root_ = v;
    }

    /// Reorders the neighbor list of v; `order` must be a permutation of it.
    void set_neighbor_order(Vertex v, std::vector<Vertex> order) {
        auto a = neighbors_.at(v);
        auto b = order;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw InvalidInput("neighbor order of '" + name(v) + "' is not a permutation of its neighbors");
        neighbors_[v] = std::move(order);
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::set<std::pair<Vertex, Vertex>> edge_set_;
    Vertex root_ = 0;
};

/// Parses the line-oriented graph format: `edge <u> <v>`, `root <v>`, `#` comments.
inline Graph parse_graph(std::string_view text) {
    Graph g;
    std::optional<std::string> root_name;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream words(line);
        std::string directive;
        if (!(words >> directive))
            continue;
        std::vector<std::string> args;
        for (std::string w; words >> w;)
            args.push_back(w);
        auto where = " (line " + std::to_string(lineno) + ")";
        if (directive == "edge") {
            if (args.size() != 2)
                throw ParseError("edge directive needs two vertices" + where);
            try {
                g.add_edge(args[0], args[1]);
            } catch (const InvalidInput& e) {
                throw ParseError(e.what() + where);
            }
        } else if (directive == "root") {
            if (args.size() != 1)
                throw ParseError("root directive needs one vertex" + where);
            if (root_name)
                throw ParseError("root given twice" + where);
            root_name = args[0];
        } else {
            throw ParseError("unknown directive '" + directive + "'" + where);
        }
    }
    if (g.vertex_count() == 0)
        throw ParseError("graph file has no edges");
    if (root_name) {
        auto r = g.find(*root_name);
        if (!r)
            throw ParseError("root directive names unknown vertex '" + *root_name + "'");
        g.set_root(*r);
    }
    return g;
}

/// Canonical text form: root line then edges in storage order.
inline std::string to_text(const Graph& g) {
    std::string out = "root " + g.name(g.root()) + "\n";
    for (const auto& e : g.edges())
        out += "edge " + g.name(e.u) + " " + g.name(e.v) + "\n";
    return out;
}

/// Component label per vertex, labels numbered by first vertex.
inline std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count = nullptr) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(g.vertex_count(), unset);
    std::size_t next = 0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (label[s] != unset)
            continue;
        std::vector<Vertex> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (label[w] == unset) {
                    label[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    if (count)
        *count = next;
    return label;
}

inline std::size_t component_count(const Graph& g) {
    std::size_t c = 0;
    component_labels(g, &c);
    return c;
}

inline bool is_connected(const Graph& g) { return component_count(g) <= 1; }

inline std::int64_t first_betti(const Graph& g) {
    return static_cast<std::int64_t>(g.edge_count()) - static_cast<std::int64_t>(g.vertex_count()) +
           static_cast<std::int64_t>(component_count(g));
}

inline bool is_tree(const Graph& g) { return is_connected(g) && g.edge_count() + 1 == g.vertex_count(); }

inline std::vector<Vertex> essential_vertices(const Graph& g) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= 3)
            out.push_back(v);
    return out;
}

/// Length of the shortest cycle, or nullopt for forests.
inline std::optional<std::size_t> girth(const Graph& g) {
    std::optional<std::size_t> best;
    constexpr auto unset = static_cast<std::size_t>(-1);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        std::vector<std::size_t> dist(g.vertex_count(), unset), parent(g.vertex_count(), unset);
        std::queue<Vertex> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] == unset) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else if (parent[v] != w) {
                    std::size_t len = dist[v] + dist[w] + 1;
                    if (!best || len < *best)
                        best = len;
                }
            }
        }
    }
    return best;
}

/// Shortest edge path between distinct vertices of degree != 2 that avoids
/// such vertices in its interior; nullopt if there is no such path.
inline std::optional<std::size_t> shortest_branch(const Graph& g) {
    std::optional<std::size_t> best;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (g.degree(s) == 2)
            continue;
        for (Vertex first : g.neighbors(s)) {
            Vertex prev = s, cur = first;
            std::size_t len = 1;
            while (g.degree(cur) == 2 && cur != s) {
                Vertex next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
                prev = cur;
                cur = next;
                ++len;
            }
            if (cur != s && (!best || len < *best))
                best = len;
        }
    }
    return best;
}

inline bool is_sufficiently_subdivided(const Graph& g, int n) {
    if (auto b = shortest_branch(g); b && static_cast<long>(*b) < n - 1)
        return false;
    if (auto c = girth(g); c && static_cast<long>(*c) < n + 1)
        return false;
    return true;
}

/// Number of segments every edge is cut into by subdivide_for.
inline std::size_t subdivision_factor(const Graph& g, int n) {
    auto ceil_div = [](long a, long b) { return a <= 0 ? 1L : (a + b - 1) / b; };
    long s = 1;
    if (auto b = shortest_branch(g))
        s = std::max(s, ceil_div(n - 1, static_cast<long>(*b)));
    if (auto c = girth(g))
        s = std::max(s, ceil_div(n + 1, static_cast<long>(*c)));
    return static_cast<std::size_t>(s);
}

/// Cuts every edge into `s` segments.
inline Graph subdivide(const Graph& g, std::size_t s) {
    if (s < 1)
        throw InvalidInput("segment count must be positive");
    if (s == 1)
        return g;

    // Interior vertices of edge (u, v), ordered from u to v.
    std::vector<std::vector<std::string>> interior(g.edge_count());
    std::set<std::string> taken(g.names().begin(), g.names().end());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        for (std::size_t k = 1; k < s; ++k) {
            std::string name = g.name(e.u) + ":" + g.name(e.v) + ":" + std::to_string(k);
            while (taken.contains(name))
                name += "'";
            taken.insert(name);
            interior[i].push_back(std::move(name));
        }
    }

    Graph out;
    for (const auto& name : g.names())
        out.add_vertex(name);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        Vertex prev = e.u;
        for (const auto& name : interior[i]) {
            Vertex w = out.add_vertex(name);
            out.add_edge(prev, w);
            prev = w;
        }
        out.add_edge(prev, e.v);
    }

    // Carry the embedding order over: each original neighbor is replaced by
    // the first interior vertex on the edge towards it.
    std::map<std::pair<Vertex, Vertex>, std::size_t> edge_index;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        edge_index[{g.edges()[i].u, g.edges()[i].v}] = i;
        edge_index[{g.edges()[i].v, g.edges()[i].u}] = i;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<Vertex> order;
        for (Vertex w : g.neighbors(v)) {
            std::size_t i = edge_index.at({v, w});
            const auto& path = interior[i];
            const std::string& step = g.edges()[i].u == v ? path.front() : path.back();
            order.push_back(out.find_or_throw(step));
        }
        out.set_neighbor_order(v, std::move(order));
    }
    out.set_root(g.root());
    return out;
}

/// Cuts every edge into the same number of segments so that both
/// sufficiency conditions hold for n particles. Identity on sufficient input.
inline Graph subdivide_for(const Graph& g, int n) {
    if (n < 1)
        throw InvalidInput("particle count must be at least 1 for subdivision");
    return subdivide(g, subdivision_factor(g, n));
}

/// Edge indices of the DFS tree from the root, following neighbor order.
inline std::vector<std::size_t> spanning_tree(const Graph& g) {
    if (!is_connected(g))
        throw InvalidInput("spanning tree requested for a disconnected graph");
    std::map<std::pair<Vertex, Vertex>, std::size_t> edge_index;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        edge_index[{g.edges()[i].u, g.edges()[i].v}] = i;
        edge_index[{g.edges()[i].v, g.edges()[i].u}] = i;
    }
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<std::size_t> tree;
    // Iterative DFS that descends into the first unvisited neighbor each time.
    std::vector<std::pair<Vertex, std::size_t>> stack{{g.root(), 0}};
    seen[g.root()] = true;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == g.degree(v)) {
            stack.pop_back();
            continue;
        }
        Vertex w = g.neighbors(v)[next++];
        if (!seen[w]) {
            seen[w] = true;
            tree.push_back(edge_index.at({v, w}));
            stack.push_back({w, 0});
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

/// Rank of each vertex in 1..|V|; root has rank 1.
struct VertexNumbering {
    std::vector<std::size_t> rank;

    std::size_t operator[](Vertex v) const { return rank.at(v); }
    std::size_t size() const { return rank.size(); }
};

/// Preorder numbering along a spanning tree (or forest, for disjoint unions),
/// visiting branches at each vertex in embedding order.
inline VertexNumbering number_vertices(const Graph& g, std::span<const std::size_t> tree_edges) {
    const std::size_t nv = g.vertex_count();
    std::set<std::pair<Vertex, Vertex>> in_tree;
    for (std::size_t i : tree_edges) {
        if (i >= g.edge_count())
            throw InvalidInput("spanning tree references an unknown edge");
        const auto& e = g.edges()[i];
        in_tree.insert({e.u, e.v});
        in_tree.insert({e.v, e.u});
    }
    std::size_t comps = component_count(g);
    if (tree_edges.size() + comps != nv)
        throw InvalidInput("edge subset is not a spanning tree");

    VertexNumbering num;
    num.rank.assign(nv, 0);
    std::size_t next = 1;
    auto visit_from = [&](Vertex start) {
        std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
        num.rank[start] = next++;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i == g.degree(v)) {
                stack.pop_back();
                continue;
            }
            Vertex w = g.neighbors(v)[i++];
            if (num.rank[w] == 0 && in_tree.contains({v, w})) {
                num.rank[w] = next++;
                stack.push_back({w, 0});
            }
        }
    };
    visit_from(g.root());
    for (Vertex v = 0; v < nv; ++v)
        if (num.rank[v] == 0)
            visit_from(v);
    if (next != nv + 1)
        throw InvalidInput("edge subset is not a spanning tree");
    return num;
}

/// Spanning forest used for numbering disjoint unions: DFS trees from the
/// root and then from the first unvisited vertex of each further component.
inline std::vector<std::size_t> spanning_forest(const Graph& g) {
    std::map<std::pair<Vertex, Vertex>, std::size_t> edge_index;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        edge_index[{g.edges()[i].u, g.edges()[i].v}] = i;
        edge_index[{g.edges()[i].v, g.edges()[i].u}] = i;
    }
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<std::size_t> forest;
    auto grow = [&](Vertex start) {
        std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
        seen[start] = true;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == g.degree(v)) {
                stack.pop_back();
                continue;
            }
            Vertex w = g.neighbors(v)[next++];
            if (!seen[w]) {
                seen[w] = true;
                forest.push_back(edge_index.at({v, w}));
                stack.push_back({w, 0});
            }
        }
    };
    grow(g.root());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!seen[v])
            grow(v);
    std::sort(forest.begin(), forest.end());
    return forest;
}

inline VertexNumbering default_numbering(const Graph& g) { return number_vertices(g, spanning_forest(g)); }

/// Subgraph on `keep` (in the given order), restricted embedding order.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
    Graph out;
    std::unordered_map<Vertex, Vertex> map;
    for (Vertex v : keep)
        map[v] = out.add_vertex(g.name(v));
    for (const auto& e : g.edges())
        if (map.contains(e.u) && map.contains(e.v))
            out.add_edge(map[e.u], map[e.v]);
    for (Vertex v : keep) {
        std::vector<Vertex> order;
        for (Vertex w : g.neighbors(v))
            if (map.contains(w))
                order.push_back(map[w]);
        out.set_neighbor_order(map[v], std::move(order));
    }
    if (map.contains(g.root()))
        out.set_root(map[g.root()]);
    return out;
}

inline std::vector<Vertex> cut_vertices(const Graph& g) {
    std::vector<Vertex> out;
    const std::size_t base = component_count(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<Vertex> rest;
        for (Vertex w = 0; w < g.vertex_count(); ++w)
            if (w != v)
                rest.push_back(w);
        if (rest.empty())
            continue;
        if (component_count(induced_subgraph(g, rest)) > base)
            out.push_back(v);
    }
    return out;
}

struct OneConnectedSplit {
    Vertex cut_vertex;
    std::vector<Graph> components;          // each includes the cut vertex
    std::vector<Graph> trimmed_components;  // cut vertex and last segments removed
    std::vector<std::size_t> attachment_counts;

    /// Cycles lost by trimming component i.
    std::int64_t mu(std::size_t i) const { return static_cast<std::int64_t>(attachment_counts.at(i)) - 1; }
};

inline OneConnectedSplit split_at_cut_vertex(const Graph& g, Vertex v) {
    if (v >= g.vertex_count())
        throw InvalidInput("split vertex is not in the graph");
    // Pieces of g - v that touch v, ordered by their smallest vertex.
    std::vector<Vertex> rest;
    for (Vertex w = 0; w < g.vertex_count(); ++w)
        if (w != v)
            rest.push_back(w);
    Graph without = induced_subgraph(g, rest);
    std::size_t count = 0;
    auto labels = component_labels(without, &count);
    std::vector<std::vector<Vertex>> pieces(count);
    for (std::size_t i = 0; i < rest.size(); ++i)
        pieces[labels[i]].push_back(rest[i]);
    std::erase_if(pieces, [&](const std::vector<Vertex>& piece) {
        return std::none_of(piece.begin(), piece.end(), [&](Vertex w) { return g.has_edge(v, w); });
    });
    if (pieces.size() < 2)
        throw InvalidInput("'" + g.name(v) + "' is not a cut vertex");

    OneConnectedSplit split;
    split.cut_vertex = v;
    for (const auto& piece : pieces) {
        std::vector<Vertex> with_v = piece;
        with_v.push_back(v);
        Graph comp = induced_subgraph(g, with_v);
        if (!comp.find(g.name(g.root())))
            comp.set_root(comp.find_or_throw(g.name(v)));
        split.components.push_back(std::move(comp));

        Graph trimmed = induced_subgraph(g, piece);
        std::size_t attach = 0;
        for (Vertex w : g.neighbors(v)) {
            if (std::find(piece.begin(), piece.end(), w) == piece.end())
                continue;
            ++attach;
            Vertex stub = trimmed.add_vertex(g.name(w) + ":" + g.name(v) + ":trim");
            trimmed.add_edge(trimmed.find_or_throw(g.name(w)), stub);
        }
        if (!trimmed.find(g.name(g.root())))
            trimmed.set_root(0);
        split.trimmed_components.push_back(std::move(trimmed));
        split.attachment_counts.push_back(attach);
    }
    return split;
}

struct TreeShape {
    struct Star {
        Vertex hub;
        std::size_t degree;
    };
    std::vector<Star> stars;
    /// Pairs of indices into `stars` joined by a path free of other hubs.
    std::vector<std::pair<std::size_t, std::size_t>> adjacency;

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> out;
        for (const auto& s : stars)
            out.push_back(s.degree);
        return out;
    }
};

inline TreeShape tree_shape(const Graph& tree) {
    if (!is_tree(tree))
        throw InvalidInput("tree_shape requires a tree");
    TreeShape shape;
    std::unordered_map<Vertex, std::size_t> star_of;
    for (Vertex h : essential_vertices(tree)) {
        star_of[h] = shape.stars.size();
        shape.stars.push_back({h, tree.degree(h)});
    }
    for (const auto& [hub, idx] : star_of) {
        for (Vertex first : tree.neighbors(hub)) {
            Vertex prev = hub, cur = first;
            while (!star_of.contains(cur) && tree.degree(cur) == 2) {
                Vertex next = tree.neighbors(cur)[0] == prev ? tree.neighbors(cur)[1] : tree.neighbors(cur)[0];
                prev = cur;
                cur = next;
            }
            if (auto it = star_of.find(cur); it != star_of.end() && idx < it->second)
                shape.adjacency.emplace_back(idx, it->second);
        }
    }
    std::sort(shape.adjacency.begin(), shape.adjacency.end());
    return shape;
}

} // namespace confspace
