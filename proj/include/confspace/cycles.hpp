#pragma once

// Explicit cycle representatives: a particle circling a loop, two particles
// exchanging on a Y, products of disjoint cycles, and the product basis for
// trees.

#include "confspace/chain_complex.hpp"
#include "confspace/homology.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace confspace {

/// Chain keyed by cells themselves rather than by complex indices, so that
/// pieces with fewer particles can be combined before being placed in a
/// space. Cells use the entity codes of one configuration space.
struct CellChain {
    int dimension = 0;
    int particles = 0;
    Flavor flavor = Flavor::unordered;
    std::map<std::vector<EntityCode>, std::int64_t> terms;

    void add(std::vector<EntityCode> cell, std::int64_t coeff) {
        if (coeff == 0)
            return;
        if (flavor == Flavor::unordered)
            std::sort(cell.begin(), cell.end());
        auto [it, fresh] = terms.emplace(std::move(cell), coeff);
        if (!fresh) {
            it->second = arith::add(it->second, coeff);
            if (it->second == 0)
                terms.erase(it);
        }
    }
    CellChain scaled(std::int64_t a) const {
        CellChain out{dimension, particles, flavor, {}};
        for (const auto& [c, v] : terms)
            out.add(c, arith::mul(a, v));
        return out;
    }
    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    bool operator==(const CellChain&) const = default;
};

/// Internal vertices touched by any cell of the chain.
inline Mask128 support(const ConfigurationSpace& s, const CellChain& c) {
    Mask128 m;
    for (const auto& [cell, v] : c.terms)
        for (auto code : cell)
            m = m | s.support(code);
    return m;
}

/// Cellular boundary of a cell chain, for any particle count.
inline CellChain boundary(const ConfigurationSpace& s, const CellChain& c) {
    CellChain out{c.dimension - 1, c.particles, c.flavor, {}};
    for (const auto& [cell, v] : c.terms) {
        std::vector<std::pair<EntityCode, std::size_t>> es;
        for (std::size_t p = 0; p < cell.size(); ++p)
            if (is_edge(cell[p]))
                es.push_back({cell[p], p});
        std::sort(es.begin(), es.end());
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::size_t e = entity_index(es[i].first);
            const std::int64_t alt = i % 2 == 0 ? 1 : -1;
            auto face = cell;
            face[es[i].second] = vertex_code(s.iota(e));
            out.add(face, arith::mul(alt, v));
            face[es[i].second] = vertex_code(s.tau(e));
            out.add(face, arith::mul(-alt, v));
        }
    }
    return out;
}

/// Places a cell chain in the space with matching particle count.
inline Chain to_chain(const ConfigurationSpace& s, const CellChain& c) {
    if (c.particles != s.particles() || c.flavor != s.flavor())
        throw InvalidInput("chain does not live in this configuration space");
    Chain out{c.dimension, {}};
    for (const auto& [cell, v] : c.terms) {
        Cell x = s.make_cell(cell);
        out.add(static_cast<std::size_t>(s.index_of(x) - s.offset(c.dimension)), v);
    }
    return out;
}

inline CellChain to_cell_chain(const ConfigurationSpace& s, const Chain& c) {
    CellChain out{c.dimension, s.particles(), s.flavor(), {}};
    for (auto [i, v] : c.terms)
        out.add(s.cell(s.offset(c.dimension) + i).entities, v);
    return out;
}

/// Boundary through the implicit space, without building matrices.
inline Chain boundary(const ConfigurationSpace& s, const Chain& c) {
    Chain out{c.dimension - 1, {}};
    if (c.dimension < 1)
        return out;
    std::vector<Term> terms;
    for (auto [i, v] : c.terms) {
        s.boundary(s.offset(c.dimension) + i, terms);
        for (const auto& t : terms)
            out.add(static_cast<std::size_t>(t.cell - s.offset(c.dimension - 1)), arith::mul(t.coefficient, v));
    }
    return out;
}

namespace detail {

inline std::vector<EntityCode> spectator_codes(const ConfigurationSpace& s, const std::vector<Vertex>& spectators,
                                               Mask128& used) {
    std::vector<EntityCode> out;
    for (Vertex v : spectators) {
        std::size_t i = s.internal_vertex(v);
        if (used.test(i))
            throw InvalidInput("spectator '" + s.graph().name(v) + "' is not disjoint from the cycle");
        used.set(i);
        out.push_back(vertex_code(i));
    }
    return out;
}

inline EntityCode edge_between(const ConfigurationSpace& s, Vertex a, Vertex b) {
    return s.edge_entity(s.graph().name(a), s.graph().name(b));
}

/// Coefficient of a move from a to b along e: +1 towards the initial vertex.
inline std::int64_t move_sign(const ConfigurationSpace& s, EntityCode e, std::size_t to) {
    return s.iota(entity_index(e)) == to ? 1 : -1;
}

} // namespace detail

/// One particle walking once around a simple closed walk; the others sit on
/// the spectator vertices. The walk starts at its lowest-numbered vertex and
/// heads to the lower-numbered of its two neighbours.
inline CellChain o_cycle(const ConfigurationSpace& s, const std::vector<std::pair<Vertex, Vertex>>& edges,
                         const std::vector<Vertex>& spectators = {}) {
    if (edges.size() < 3)
        throw InvalidInput("a closed walk needs at least three edges");
    std::map<std::size_t, std::vector<std::size_t>> next;
    for (auto [a, b] : edges) {
        if (!s.graph().has_edge(a, b))
            throw InvalidInput("cycle edge is not an edge of the graph");
        std::size_t u = s.internal_vertex(a), v = s.internal_vertex(b);
        next[u].push_back(v);
        next[v].push_back(u);
    }
    for (auto& [v, ns] : next) {
        std::sort(ns.begin(), ns.end());
        if (ns.size() != 2 || ns[0] == ns[1])
            throw InvalidInput("edges do not form a simple closed walk");
    }
    Mask128 used;
    for (const auto& [v, ns] : next)
        used.set(v);
    auto spec = detail::spectator_codes(s, spectators, used);
    CellChain c{1, static_cast<int>(spectators.size()) + 1, s.flavor(), {}};
    const std::size_t start = next.begin()->first;
    std::size_t prev = start, cur = next.begin()->second[0];
    std::size_t steps = 0;
    auto step = [&](std::size_t a, std::size_t b) {
        EntityCode e = detail::edge_between(s, s.graph_vertex(a), s.graph_vertex(b));
        std::vector<EntityCode> cell{e};
        cell.insert(cell.end(), spec.begin(), spec.end());
        c.add(std::move(cell), detail::move_sign(s, e, b));
        ++steps;
    };
    step(start, cur);
    while (cur != start) {
        const auto& ns = next[cur];
        std::size_t to = ns[0] == prev ? ns[1] : ns[0];
        step(cur, to);
        prev = cur;
        cur = to;
    }
    if (steps != edges.size())
        throw InvalidInput("edges do not form a single closed walk");
    return c;
}

/// Two particles exchanging on the Y formed by `hub` and three of its
/// neighbours. In the ordered space the hexagon is traversed twice so that
/// each particle returns to its start.
inline CellChain y_cycle(const ConfigurationSpace& s, Vertex hub, const std::array<Vertex, 3>& arms,
                         const std::vector<Vertex>& spectators = {}) {
    if (s.graph().degree(hub) < 3)
        throw InvalidInput("hub must have degree at least three");
    std::array<std::size_t, 3> a{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!s.graph().has_edge(hub, arms[i]))
            throw InvalidInput("arm '" + s.graph().name(arms[i]) + "' is not adjacent to the hub");
        a[i] = s.internal_vertex(arms[i]);
    }
    std::sort(a.begin(), a.end());
    if (a[0] == a[1] || a[1] == a[2])
        throw InvalidInput("arms must be distinct");
    const std::size_t h = s.internal_vertex(hub), x = a[0], y = a[1], z = a[2];
    Mask128 used;
    used.set(h);
    for (auto v : a)
        used.set(v);
    auto spec = detail::spectator_codes(s, spectators, used);

    // Occupied vertex pairs along the hexagon; consecutive states differ by one move.
    const std::array<std::pair<std::size_t, std::size_t>, 7> states{
        {{h, x}, {y, x}, {y, h}, {y, z}, {h, z}, {x, z}, {x, h}}};
    CellChain c{1, static_cast<int>(spectators.size()) + 2, s.flavor(), {}};
    std::array<std::size_t, 2> pos{h, x};
    const int laps = s.flavor() == Flavor::ordered ? 2 : 1;
    for (int lap = 0; lap < laps; ++lap)
        for (std::size_t i = 0; i + 1 < states.size(); ++i) {
            auto [p0, p1] = states[i];
            auto [q0, q1] = states[i + 1];
            const std::size_t from = p0 == q0 || p0 == q1 ? p1 : p0;
            const std::size_t to = q0 == p0 || q0 == p1 ? q1 : q0;
            const int mover = pos[0] == from ? 0 : 1;
            EntityCode e = detail::edge_between(s, s.graph_vertex(from), s.graph_vertex(to));
            std::vector<EntityCode> cell(2);
            cell[mover] = e;
            cell[1 - mover] = vertex_code(pos[1 - mover]);
            cell.insert(cell.end(), spec.begin(), spec.end());
            c.add(std::move(cell), detail::move_sign(s, e, to));
            pos[mover] = to;
        }
    return c;
}

/// A 0-chain holding particles at fixed vertices.
inline CellChain point_chain(const ConfigurationSpace& s, const std::vector<Vertex>& vertices) {
    Mask128 used;
    auto codes = detail::spectator_codes(s, vertices, used);
    CellChain c{0, static_cast<int>(vertices.size()), s.flavor(), {}};
    c.add(std::move(codes), 1);
    return c;
}

/// Product of chains on disjoint parts of the graph. Orientation follows the
/// merged terminal-vertex order of the edges.
inline CellChain tensor_product(const ConfigurationSpace& s, const CellChain& a, const CellChain& b) {
    if (a.flavor != Flavor::unordered || b.flavor != Flavor::unordered)
        throw InvalidInput("tensor products are defined for unordered chains");
    if ((support(s, a) & support(s, b)).any())
        throw InvalidInput("tensor factors must have disjoint supports");
    CellChain out{a.dimension + b.dimension, a.particles + b.particles, Flavor::unordered, {}};
    for (const auto& [ca, va] : a.terms)
        for (const auto& [cb, vb] : b.terms) {
            int inversions = 0;
            for (auto ea : ca)
                for (auto eb : cb)
                    inversions += is_edge(ea) && is_edge(eb) && eb < ea;
            std::vector<EntityCode> cell = ca;
            cell.insert(cell.end(), cb.begin(), cb.end());
            out.add(std::move(cell), arith::mul(arith::mul(va, vb), inversions % 2 == 0 ? 1 : -1));
        }
    return out;
}

struct BasisOptions {
    /// Spectator placements tried per choice of Y-subgraphs.
    std::size_t spectator_cap = 256;
};

/// Products of m pairwise disjoint Y-cycles with the remaining n - 2m
/// particles parked on free vertices, for a tree.
inline std::vector<CellChain> tree_overcomplete_basis(const ConfigurationSpace& s, int m, BasisOptions opt = {}) {
    const Graph& g = s.graph();
    const int n = s.particles();
    if (!is_tree(g))
        throw InvalidInput("the product basis is defined for trees");
    if (s.flavor() != Flavor::unordered)
        throw InvalidInput("the product basis is built in the unordered space");
    if (m < 1 || n < 2 * m)
        throw InvalidInput("need m >= 1 and at least 2m particles");

    struct Y {
        Vertex hub;
        std::array<Vertex, 3> arms;
        Mask128 vertices;
        std::size_t lowest;
    };
    // Y-subgraphs grouped by hub, hubs and arms in numbering order.
    std::vector<std::vector<Y>> by_hub;
    std::vector<std::size_t> hubs;
    for (std::size_t i = 0; i < s.vertex_count(); ++i)
        if (g.degree(s.graph_vertex(i)) >= 3)
            hubs.push_back(i);
    for (std::size_t hi : hubs) {
        Vertex h = s.graph_vertex(hi);
        std::vector<std::size_t> ns;
        for (Vertex w : g.neighbors(h))
            ns.push_back(s.internal_vertex(w));
        std::sort(ns.begin(), ns.end());
        std::vector<Y> ys;
        for (std::size_t i = 0; i < ns.size(); ++i)
            for (std::size_t j = i + 1; j < ns.size(); ++j)
                for (std::size_t k = j + 1; k < ns.size(); ++k) {
                    Y y{h, {s.graph_vertex(ns[i]), s.graph_vertex(ns[j]), s.graph_vertex(ns[k])}, {}, 0};
                    y.vertices.set(hi);
                    y.vertices.set(ns[i]);
                    y.vertices.set(ns[j]);
                    y.vertices.set(ns[k]);
                    y.lowest = std::min(hi, ns[i]);
                    ys.push_back(y);
                }
        by_hub.push_back(std::move(ys));
    }

    std::vector<CellChain> out;
    std::vector<const Y*> chosen;
    auto emit = [&]() {
        Mask128 used;
        std::vector<const Y*> factors = chosen;
        std::sort(factors.begin(), factors.end(), [](const Y* p, const Y* q) { return p->lowest < q->lowest; });
        for (const Y* y : factors)
            used = used | y->vertices;
        CellChain product = y_cycle(s, factors[0]->hub, factors[0]->arms);
        for (std::size_t i = 1; i < factors.size(); ++i)
            product = tensor_product(s, product, y_cycle(s, factors[i]->hub, factors[i]->arms));
        const int free_particles = n - 2 * m;
        std::vector<std::size_t> pool;
        for (std::size_t v = 0; v < s.vertex_count(); ++v)
            if (!used.test(v))
                pool.push_back(v);
        if (static_cast<int>(pool.size()) < free_particles)
            return;
        if (free_particles == 0) {
            out.push_back(std::move(product));
            return;
        }
        // Lexicographic (n - 2m)-subsets of the free vertices, capped.
        std::vector<std::size_t> idx(static_cast<std::size_t>(free_particles));
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t made = 0; made < opt.spectator_cap; ++made) {
            std::vector<Vertex> spec;
            for (auto i : idx)
                spec.push_back(s.graph_vertex(pool[i]));
            out.push_back(tensor_product(s, product, point_chain(s, spec)));
            int j = free_particles - 1;
            while (j >= 0 && idx[j] == pool.size() - free_particles + j)
                --j;
            if (j < 0)
                break;
            ++idx[j];
            for (int t = j + 1; t < free_particles; ++t)
                idx[t] = idx[t - 1] + 1;
        }
    };
    std::function<void(std::size_t, Mask128)> pick = [&](std::size_t from, Mask128 used) {
        if (static_cast<int>(chosen.size()) == m) {
            emit();
            return;
        }
        for (std::size_t h = from; h < by_hub.size(); ++h)
            for (const Y& y : by_hub[h]) {
                if ((y.vertices & used).any())
                    continue;
                chosen.push_back(&y);
                pick(h + 1, used | y.vertices);
                chosen.pop_back();
            }
    };
    pick(0, Mask128{});
    return out;
}

namespace detail {

inline std::vector<std::vector<Term>> as_terms(std::uint64_t offset, const std::vector<Chain>& chains) {
    std::vector<std::vector<Term>> out;
    for (const auto& c : chains) {
        std::vector<Term> ts;
        for (auto [i, v] : c.terms) {
            if (v > INT32_MAX || v < INT32_MIN)
                throw OverflowError("chain coefficient too large");
            ts.push_back({offset + i, static_cast<int>(v)});
        }
        out.push_back(std::move(ts));
    }
    return out;
}

template <CellView V> std::int64_t span_rank_in(const V& view, const std::vector<Chain>& chains, int m,
                                                HomologyOptions opt) {
    for (const auto& c : chains)
        if (c.dimension != m && !c.empty())
            throw InvalidInput("all chains must have dimension m");
    opt.max_dim = m;
    opt.rank_only = true;
    std::int64_t before = homology_of_view(view, opt).betti_at(m);
    if (chains.empty())
        return 0;
    AugmentedView<V> aug(view, m, as_terms(view.offset(m), chains));
    std::int64_t after = homology_of_view(aug, opt).betti_at(m);
    return before - after;
}

} // namespace detail

/// Dimension of the span of the chains' classes in H_m with rational
/// coefficients. Each chain must be an m-cycle.
inline std::int64_t span_rank(const ChainComplex& cx, const std::vector<Chain>& chains, int m,
                              HomologyOptions opt = {}) {
    for (const auto& c : chains)
        if (!is_cycle(cx, c))
            throw InvalidInput("input chain is not a cycle");
    return detail::span_rank_in(ExplicitView(cx), chains, m, opt);
}

inline std::int64_t span_rank(const ConfigurationSpace& s, const std::vector<Chain>& chains, int m,
                              HomologyOptions opt = {}) {
    for (const auto& c : chains)
        if (!boundary(s, c).empty())
            throw InvalidInput("input chain is not a cycle");
    return detail::span_rank_in(s, chains, m, opt);
}

/// True when the classes of the chains span H_m rationally.
inline bool spans_homology(const ChainComplex& cx, const std::vector<Chain>& chains, int m) {
    HomologyOptions opt;
    opt.max_dim = m;
    opt.rank_only = true;
    return span_rank(cx, chains, m) == homology(cx, opt).betti_at(m);
}

inline bool spans_homology(const ConfigurationSpace& s, const std::vector<Chain>& chains, int m) {
    for (const auto& c : chains)
        if (!boundary(s, c).empty())
            throw InvalidInput("input chain is not a cycle");
    for (const auto& c : chains)
        if (c.dimension != m && !c.empty())
            throw InvalidInput("all chains must have dimension m");
    HomologyOptions opt;
    opt.max_dim = m;
    opt.rank_only = true;
    if (chains.empty())
        return homology_of_view(s, opt).betti_at(m) == 0;
    AugmentedView<ConfigurationSpace> aug(s, m, detail::as_terms(s.offset(m), chains));
    return homology_of_view(aug, opt).betti_at(m) == 0;
}

/// Span rank from matrix ranks: rank [d_{m+1} | Z] - rank d_{m+1}.
inline std::int64_t span_rank_by_matrix(const ChainComplex& cx, const std::vector<Chain>& chains, int m) {
    SparseIntMatrix d = cx.boundary(m + 1);
    SparseIntMatrix ext = SparseIntMatrix::from_triplets(d.rows(), d.cols(), d.triplets());
    for (const auto& c : chains) {
        std::vector<SparseIntMatrix::Entry> col;
        for (auto [i, v] : c.terms)
            col.push_back({static_cast<std::uint32_t>(i), v});
        ext.append_column(std::move(col));
    }
    return static_cast<std::int64_t>(rational_rank(ext)) - static_cast<std::int64_t>(rational_rank(d));
}

} // namespace confspace
