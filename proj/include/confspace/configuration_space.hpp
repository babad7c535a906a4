#pragma once

// Discrete configuration spaces D_n (unordered) and its ordered cover as
// implicit cubical complexes. Cells are ranked into dense integer ids so that
// boundaries and coboundaries can be produced on the fly without storing the
// complex.

#include "confspace/checked_int.hpp"
#include "confspace/error.hpp"
#include "confspace/graph.hpp"
#include "confspace/mask.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace confspace {

enum class Flavor { unordered, ordered };

inline const char* to_string(Flavor f) { return f == Flavor::ordered ? "ordered" : "unordered"; }

/// A vertex or an edge of the numbered graph. Edge codes carry the high bit so
/// that sorting puts vertices first and edges in terminal-vertex order.
using EntityCode = std::uint16_t;

constexpr EntityCode kEdgeBit = 0x8000;
constexpr EntityCode vertex_code(std::size_t v) { return static_cast<EntityCode>(v); }
constexpr EntityCode edge_code(std::size_t e) { return static_cast<EntityCode>(kEdgeBit | e); }
constexpr bool is_edge(EntityCode c) { return (c & kEdgeBit) != 0; }
constexpr std::size_t entity_index(EntityCode c) { return c & static_cast<EntityCode>(~kEdgeBit); }

/// One cube: k edges and n-k vertices, pairwise disjoint. Unordered cells
/// keep their entities sorted; ordered cells list them by particle.
struct Cell {
    std::vector<EntityCode> entities;
    Flavor flavor = Flavor::unordered;

    int dimension() const {
        return static_cast<int>(std::count_if(entities.begin(), entities.end(), is_edge));
    }
    auto operator<=>(const Cell&) const = default;
};

struct Term {
    std::uint64_t cell;
    int coefficient;
};

constexpr int kMaxParticles = 16;

class ConfigurationSpace {
public:
    ConfigurationSpace(Graph graph, int particles, Flavor flavor,
                       std::optional<VertexNumbering> numbering = std::nullopt, bool require_sufficient = true)
        : graph_(std::move(graph)), n_(particles), flavor_(flavor) {
        if (n_ < 0 || n_ > kMaxParticles)
            throw InvalidInput("particle count must be in 0.." + std::to_string(kMaxParticles));
        if (graph_.vertex_count() > Mask128::capacity || graph_.edge_count() > Mask128::capacity)
            throw InvalidInput("graphs are limited to 128 vertices and 128 edges");
        if (require_sufficient && !is_sufficiently_subdivided(graph_, n_))
            throw InsufficientSubdivision("graph is not sufficiently subdivided for " + std::to_string(n_) +
                                          " particles");
        numbering_ = numbering ? std::move(*numbering) : default_numbering(graph_);
        if (numbering_.size() != graph_.vertex_count())
            throw InvalidInput("numbering does not cover the graph");
        setup_vertices();
        setup_edges();
        setup_matchings();
        setup_counts();
    }

    const Graph& graph() const { return graph_; }
    const VertexNumbering& numbering() const { return numbering_; }
    int particles() const { return n_; }
    Flavor flavor() const { return flavor_; }
    std::size_t vertex_count() const { return nv_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Highest dimension that carries cells.
    int top_dimension() const { return static_cast<int>(counts_.size()) - 1; }
    std::uint64_t cell_count() const { return offsets_.back(); }
    std::uint64_t cell_count(int k) const {
        return k < 0 || k > top_dimension() ? 0 : counts_[static_cast<std::size_t>(k)];
    }
    std::uint64_t offset(int k) const { return offsets_.at(static_cast<std::size_t>(k)); }
    std::vector<std::uint64_t> cell_counts() const { return counts_; }

    int dimension_of(std::uint64_t id) const {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
        return static_cast<int>(it - offsets_.begin()) - 1;
    }

    // --- entities -------------------------------------------------------

    /// Internal vertices are numbered in DFS order; this maps them back.
    Vertex graph_vertex(std::size_t internal) const { return order_.at(internal); }
    std::size_t internal_vertex(Vertex v) const { return position_.at(v); }

    EntityCode vertex_entity(const std::string& name) const {
        return vertex_code(internal_vertex(graph_.find_or_throw(name)));
    }
    EntityCode edge_entity(const std::string& a, const std::string& b) const {
        auto u = internal_vertex(graph_.find_or_throw(a));
        auto v = internal_vertex(graph_.find_or_throw(b));
        auto key = std::minmax(u, v);
        auto it = edge_lookup_.find(key.first * nv_ + key.second);
        if (it == edge_lookup_.end())
            throw InvalidInput("no edge between '" + a + "' and '" + b + "'");
        return edge_code(it->second);
    }
    /// Terminal (smaller-numbered) and initial endpoints, internal ids.
    std::size_t tau(std::size_t e) const { return edges_[e].first; }
    std::size_t iota(std::size_t e) const { return edges_[e].second; }

    /// Internal vertices occupied by an entity.
    Mask128 support(EntityCode c) const {
        Mask128 m;
        if (is_edge(c)) {
            m.set(tau(entity_index(c)));
            m.set(iota(entity_index(c)));
        } else {
            m.set(entity_index(c));
        }
        return m;
    }

    std::string describe(EntityCode c) const {
        if (!is_edge(c))
            return graph_.name(graph_vertex(entity_index(c)));
        auto e = entity_index(c);
        return graph_.name(graph_vertex(tau(e))) + "-" + graph_.name(graph_vertex(iota(e)));
    }
    std::vector<std::string> describe(const Cell& cell) const {
        std::vector<std::string> out;
        for (auto c : cell.entities)
            out.push_back(describe(c));
        return out;
    }

    /// Canonicalises and validates a cell for this space.
    Cell make_cell(std::vector<EntityCode> entities) const {
        Cell c{std::move(entities), flavor_};
        if (flavor_ == Flavor::unordered)
            std::sort(c.entities.begin(), c.entities.end());
        validate(c);
        return c;
    }

    bool is_valid(const Cell& c) const {
        if (c.flavor != flavor_ || static_cast<int>(c.entities.size()) != n_)
            return false;
        Mask128 used;
        for (auto code : c.entities) {
            if (is_edge(code) ? entity_index(code) >= edges_.size() : entity_index(code) >= nv_)
                return false;
            Mask128 s = support(code);
            if ((used & s).any())
                return false;
            used = used | s;
        }
        if (flavor_ == Flavor::unordered && !std::is_sorted(c.entities.begin(), c.entities.end()))
            return false;
        return true;
    }

    // --- ranking --------------------------------------------------------

    std::uint64_t index_of(const Cell& c) const {
        validate(c);
        Buffer b{};
        std::copy(c.entities.begin(), c.entities.end(), b.begin());
        return rank(b);
    }

    Cell cell(std::uint64_t id) const {
        if (id >= cell_count())
            throw InvalidInput("cell id out of range");
        Buffer b = unrank(id);
        return Cell{std::vector<EntityCode>(b.begin(), b.begin() + n_), flavor_};
    }

    /// Cellular boundary: faces replace one edge by its endpoints, signed by
    /// the edge's position in terminal-vertex order.
    void boundary(std::uint64_t id, std::vector<Term>& out) const {
        out.clear();
        Buffer b = unrank(id);
        for_each_face(b, [&](const Buffer& face, int sign) { out.push_back({rank(face), sign}); });
    }

    std::vector<std::pair<Cell, int>> boundary(const Cell& c) const {
        validate(c);
        Buffer b{};
        std::copy(c.entities.begin(), c.entities.end(), b.begin());
        std::vector<std::pair<Cell, int>> out;
        for_each_face(b, [&](const Buffer& face, int sign) {
            out.push_back({Cell{std::vector<EntityCode>(face.begin(), face.begin() + n_), flavor_}, sign});
        });
        return out;
    }

    void coboundary(std::uint64_t id, std::vector<Term>& out) const {
        out.clear();
        Buffer b = unrank(id);
        Mask128 occupied;
        for (int p = 0; p < n_; ++p)
            occupied = occupied | support(b[p]);
        for (int p = 0; p < n_; ++p) {
            if (is_edge(b[p]))
                continue;
            const std::size_t w = b[p];
            for (std::size_t e : incident_[w]) {
                std::size_t x = tau(e) == w ? iota(e) : tau(e);
                if (occupied.test(x))
                    continue;
                EntityCode ec = edge_code(e);
                int before = 0;
                for (int q = 0; q < n_; ++q)
                    before += is_edge(b[q]) && b[q] < ec;
                int sign = (before % 2 == 0 ? 1 : -1) * (w == iota(e) ? 1 : -1);
                Buffer c = b;
                c[p] = ec;
                if (flavor_ == Flavor::unordered)
                    std::sort(c.begin(), c.begin() + n_);
                out.push_back({rank(c), sign});
            }
        }
    }

    /// Cell count without building the space (used for budget checks).
    static std::uint64_t count_cells(const Graph& g, int n, Flavor flavor) {
        ConfigurationSpace probe(g, 0, flavor, std::nullopt, false);
        return probe.count_for(n);
    }

private:
    using Buffer = std::array<EntityCode, kMaxParticles>;

    void validate(const Cell& c) const {
        if (!is_valid(c))
            throw InvalidInput("cell is not a valid configuration for this space");
    }

    void setup_vertices() {
        nv_ = graph_.vertex_count();
        order_.assign(nv_, 0);
        position_.assign(nv_, 0);
        std::vector<bool> used(nv_ + 1, false);
        for (Vertex v = 0; v < nv_; ++v) {
            std::size_t r = numbering_[v];
            if (r < 1 || r > nv_ || used[r])
                throw InvalidInput("vertex numbering is not a bijection onto 1..|V|");
            used[r] = true;
            order_[r - 1] = v;
            position_[v] = r - 1;
        }
    }

    void setup_edges() {
        for (const auto& e : graph_.edges()) {
            auto a = position_[e.u], b = position_[e.v];
            edges_.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges_.begin(), edges_.end());
        incident_.assign(nv_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            edge_lookup_[edges_[i].first * nv_ + edges_[i].second] = i;
            incident_[edges_[i].first].push_back(i);
            incident_[edges_[i].second].push_back(i);
        }
    }

    void setup_matchings() {
        matchings_.assign(1, {});
        covers_.assign(1, {});
        lookup_.assign(1, {});
        enumerate_matchings(0, Mask128{}, Mask128{}, 0);
        for (std::size_t k = 0; k < matchings_.size(); ++k)
            for (std::size_t i = 0; i < matchings_[k].size(); ++i)
                lookup_[k].emplace(matchings_[k][i], i);
    }

    void enumerate_matchings(std::size_t start, Mask128 chosen, Mask128 cover, int k) {
        if (static_cast<std::size_t>(k) >= matchings_.size()) {
            matchings_.emplace_back();
            covers_.emplace_back();
            lookup_.emplace_back();
        }
        matchings_[k].push_back(chosen);
        covers_[k].push_back(cover);
        if (k == n_)
            return;
        for (std::size_t e = start; e < edges_.size(); ++e) {
            if (cover.test(tau(e)) || cover.test(iota(e)))
                continue;
            Mask128 c2 = chosen, cv2 = cover;
            c2.set(e);
            cv2.set(tau(e));
            cv2.set(iota(e));
            enumerate_matchings(e + 1, c2, cv2, k + 1);
        }
    }

    std::uint64_t count_for(int n) const {
        // Matchings are enumerated up to n_ = 0 here, so count them directly.
        std::vector<std::uint64_t> per_k;
        count_matchings(0, Mask128{}, 0, n, per_k);
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < per_k.size(); ++k) {
            auto avail = static_cast<std::int64_t>(nv_) - 2 * static_cast<std::int64_t>(k);
            std::int64_t c = binomial(avail, n - static_cast<std::int64_t>(k));
            std::int64_t cells = arith::mul(static_cast<std::int64_t>(per_k[k]), c);
            if (flavor_ == Flavor::ordered)
                cells = arith::mul(cells, factorial(n));
            total = static_cast<std::uint64_t>(arith::add(static_cast<std::int64_t>(total), cells));
        }
        return total;
    }

    void count_matchings(std::size_t start, Mask128 cover, int k, int n, std::vector<std::uint64_t>& per_k) const {
        if (static_cast<std::size_t>(k) >= per_k.size())
            per_k.push_back(0);
        ++per_k[k];
        if (k == n)
            return;
        for (std::size_t e = start; e < edges_.size(); ++e) {
            if (cover.test(tau(e)) || cover.test(iota(e)))
                continue;
            Mask128 c2 = cover;
            c2.set(tau(e));
            c2.set(iota(e));
            count_matchings(e + 1, c2, k + 1, n, per_k);
        }
    }

    void setup_counts() {
        const std::size_t maxk = std::min<std::size_t>(matchings_.size() - 1, static_cast<std::size_t>(n_));
        for (std::size_t a = 0; a <= nv_; ++a)
            for (int b = 0; b <= kMaxParticles; ++b)
                binom_[a][b] = binom_checked(a, b);
        perm_ = static_cast<std::uint64_t>(flavor_ == Flavor::ordered ? factorial(n_) : 1);
        for (int i = 0; i <= kMaxParticles; ++i)
            fact_[i] = i <= 20 ? static_cast<std::uint64_t>(factorial(i)) : 0;
        offsets_.assign(1, 0);
        for (std::size_t k = 0; k <= maxk; ++k) {
            std::int64_t avail = static_cast<std::int64_t>(nv_) - 2 * static_cast<std::int64_t>(k);
            std::int64_t per = binomial(avail, n_ - static_cast<std::int64_t>(k));
            if (per == 0)
                break;
            std::int64_t cells = arith::mul(arith::mul(static_cast<std::int64_t>(matchings_[k].size()), per),
                                            static_cast<std::int64_t>(perm_));
            counts_.push_back(static_cast<std::uint64_t>(cells));
            offsets_.push_back(static_cast<std::uint64_t>(
                arith::add(static_cast<std::int64_t>(offsets_.back()), cells)));
        }
    }

    static std::uint64_t binom_checked(std::size_t a, int b) {
        try {
            return static_cast<std::uint64_t>(binomial(static_cast<std::int64_t>(a), b));
        } catch (const OverflowError&) {
            return UINT64_MAX;
        }
    }

    template <typename F> void for_each_face(const Buffer& b, F&& emit) const {
        // Positions of edges ordered by edge code, i.e. by terminal vertex.
        std::array<std::pair<EntityCode, int>, kMaxParticles> es{};
        int k = 0;
        for (int p = 0; p < n_; ++p)
            if (is_edge(b[p]))
                es[k++] = {b[p], p};
        std::sort(es.begin(), es.begin() + k);
        for (int i = 0; i < k; ++i) {
            auto [code, pos] = es[i];
            const std::size_t e = entity_index(code);
            const int alt = i % 2 == 0 ? 1 : -1;
            for (int side = 0; side < 2; ++side) {
                Buffer f = b;
                f[pos] = vertex_code(side == 0 ? iota(e) : tau(e));
                if (flavor_ == Flavor::unordered)
                    std::sort(f.begin(), f.begin() + n_);
                emit(f, side == 0 ? alt : -alt);
            }
        }
    }

    std::uint64_t rank(const Buffer& b) const {
        // Sorted view of the entities, and for ordered cells the permutation.
        Buffer s = b;
        if (flavor_ == Flavor::ordered)
            std::sort(s.begin(), s.begin() + n_);
        Mask128 em;
        int k = 0;
        for (int p = 0; p < n_; ++p)
            if (is_edge(s[p])) {
                em.set(entity_index(s[p]));
                ++k;
            }
        const auto& table = lookup_.at(static_cast<std::size_t>(k));
        auto it = table.find(em);
        if (it == table.end())
            throw InvalidInput("edges of cell do not form a matching");
        const std::uint64_t midx = it->second;
        const Mask128 avail = ~covers_[k][midx] & Mask128::first_n(nv_);
        std::uint64_t r = 0;
        const int nvert = n_ - k;
        for (int i = 0; i < nvert; ++i)
            r += binom_[avail.count_below(s[i])][i + 1];
        std::uint64_t within = midx * binom_[avail.count()][nvert] + r;
        if (flavor_ == Flavor::ordered) {
            std::uint64_t pr = 0;
            std::array<int, kMaxParticles> sigma{};
            for (int p = 0; p < n_; ++p)
                sigma[p] = static_cast<int>(std::lower_bound(s.begin(), s.begin() + n_, b[p]) - s.begin());
            for (int p = 0; p < n_; ++p) {
                int smaller = 0;
                for (int q = p + 1; q < n_; ++q)
                    smaller += sigma[q] < sigma[p];
                pr += static_cast<std::uint64_t>(smaller) * fact_[n_ - 1 - p];
            }
            within = within * perm_ + pr;
        }
        return offsets_[k] + within;
    }

    Buffer unrank(std::uint64_t id) const {
        const int k = dimension_of(id);
        std::uint64_t within = id - offsets_[k];
        std::uint64_t pr = 0;
        if (flavor_ == Flavor::ordered) {
            pr = within % perm_;
            within /= perm_;
        }
        const int nvert = n_ - k;
        const std::uint64_t per = binom_[nv_ - 2 * k][nvert];
        const std::uint64_t midx = within / per;
        std::uint64_t r = within % per;
        const Mask128 avail = ~covers_[k][midx] & Mask128::first_n(nv_);
        Buffer s{};
        for (int i = nvert - 1; i >= 0; --i) {
            std::size_t p = static_cast<std::size_t>(i);
            while (binom_[p + 1][i + 1] <= r)
                ++p;
            r -= binom_[p][i + 1];
            s[i] = vertex_code(avail.select(p));
        }
        Mask128 em = matchings_[k][midx];
        for (int i = 0; i < k; ++i) {
            std::size_t e = em.select(0);
            em.reset(e);
            s[nvert + i] = edge_code(e);
        }
        if (flavor_ == Flavor::unordered)
            return s;
        // Decode the Lehmer code into sorted positions per particle.
        std::array<int, kMaxParticles> pool{};
        std::iota(pool.begin(), pool.begin() + n_, 0);
        int left = n_;
        Buffer b{};
        for (int p = 0; p < n_; ++p) {
            std::uint64_t f = fact_[n_ - 1 - p];
            int j = static_cast<int>(pr / f);
            pr %= f;
            b[p] = s[pool[j]];
            std::copy(pool.begin() + j + 1, pool.begin() + left, pool.begin() + j);
            --left;
        }
        return b;
    }

    Graph graph_;
    int n_;
    Flavor flavor_;
    VertexNumbering numbering_;
    std::size_t nv_ = 0;
    std::vector<Vertex> order_;
    std::vector<std::size_t> position_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::unordered_map<std::size_t, std::size_t> edge_lookup_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::vector<Mask128>> matchings_;
    std::vector<std::vector<Mask128>> covers_;
    std::vector<std::unordered_map<Mask128, std::uint64_t, Mask128Hash>> lookup_;
    std::array<std::array<std::uint64_t, kMaxParticles + 1>, Mask128::capacity + 1> binom_{};
    std::array<std::uint64_t, kMaxParticles + 1> fact_{};
    std::uint64_t perm_ = 1;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> offsets_;
};

} // namespace confspace
