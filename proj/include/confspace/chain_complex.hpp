#pragma once

#include "confspace/configuration_space.hpp"
#include "confspace/sparse_matrix.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <vector>

namespace confspace {

/// Cells graded by dimension with explicit boundary matrices. Complexes built
/// from a configuration space keep it for naming and cell lookup; hand-made
/// complexes carry only matrices.
class ChainComplex {
public:
    ChainComplex() : counts_{1} {}

    /// `boundaries[k-1]` is the matrix of d_k, of shape counts[k-1] x counts[k].
    ChainComplex(std::vector<std::size_t> counts, std::vector<SparseIntMatrix> boundaries)
        : counts_(std::move(counts)), boundaries_(std::move(boundaries)) {
        if (counts_.empty())
            throw InvalidInput("complex needs at least dimension 0");
        if (boundaries_.size() + 1 != counts_.size())
            throw InvalidInput("one boundary matrix per positive dimension is required");
        for (std::size_t k = 1; k < counts_.size(); ++k)
            if (boundaries_[k - 1].rows() != counts_[k - 1] || boundaries_[k - 1].cols() != counts_[k])
                throw InvalidInput("boundary matrix shape does not match cell counts");
    }

    ChainComplex(std::shared_ptr<const ConfigurationSpace> space, std::vector<SparseIntMatrix> boundaries)
        : ChainComplex(to_sizes(space->cell_counts()), std::move(boundaries)) {
        space_ = std::move(space);
    }

    int top_dimension() const { return static_cast<int>(counts_.size()) - 1; }
    std::size_t cell_count(int k) const {
        return k < 0 || k > top_dimension() ? 0 : counts_[static_cast<std::size_t>(k)];
    }
    std::size_t total_cells() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }
    const std::vector<std::size_t>& cell_counts() const { return counts_; }

    /// Matrix of d_k; for k outside 1..top an empty matrix of the right shape.
    SparseIntMatrix boundary(int k) const {
        if (k >= 1 && k <= top_dimension())
            return boundaries_[static_cast<std::size_t>(k) - 1];
        return SparseIntMatrix(cell_count(k - 1), cell_count(k));
    }
    const SparseIntMatrix& boundary_ref(int k) const { return boundaries_.at(static_cast<std::size_t>(k) - 1); }

    const ConfigurationSpace* space() const { return space_.get(); }
    std::shared_ptr<const ConfigurationSpace> shared_space() const { return space_; }

    Cell cell(int k, std::size_t i) const {
        require_space();
        if (i >= cell_count(k))
            throw InvalidInput("cell index out of range");
        return space_->cell(space_->offset(k) + i);
    }
    std::vector<Cell> cells(int k) const {
        std::vector<Cell> out;
        for (std::size_t i = 0; i < cell_count(k); ++i)
            out.push_back(cell(k, i));
        return out;
    }
    /// Index of a cell within its dimension.
    std::size_t index_of(const Cell& c) const {
        require_space();
        std::uint64_t id = space_->index_of(c);
        return static_cast<std::size_t>(id - space_->offset(c.dimension()));
    }

private:
    static std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) {
        return {v.begin(), v.end()};
    }
    void require_space() const {
        if (!space_)
            throw InvalidInput("complex has no cell data");
    }

    std::vector<std::size_t> counts_;
    std::vector<SparseIntMatrix> boundaries_;
    std::shared_ptr<const ConfigurationSpace> space_;
};

inline ChainComplex build_complex(std::shared_ptr<const ConfigurationSpace> space) {
    if (space->cell_count() > UINT32_MAX)
        throw BudgetExceeded("complex too large for explicit matrices");
    std::vector<SparseIntMatrix> bs;
    std::vector<Term> terms;
    std::vector<SparseIntMatrix::Entry> col;
    for (int k = 1; k <= space->top_dimension(); ++k) {
        SparseIntMatrix m(space->cell_count(k - 1), 0);
        const std::uint64_t lo = space->offset(k - 1);
        for (std::uint64_t id = space->offset(k); id < space->offset(k) + space->cell_count(k); ++id) {
            space->boundary(id, terms);
            col.clear();
            for (const auto& t : terms)
                col.push_back({static_cast<std::uint32_t>(t.cell - lo), t.coefficient});
            m.append_column(col);
        }
        bs.push_back(std::move(m));
    }
    return ChainComplex(std::move(space), std::move(bs));
}

/// Builds D_n (or its ordered version) of a sufficiently subdivided graph.
inline ChainComplex build_complex(const Graph& g, int n, Flavor flavor,
                                  std::optional<VertexNumbering> numbering = std::nullopt) {
    return build_complex(std::make_shared<const ConfigurationSpace>(g, n, flavor, std::move(numbering)));
}

inline std::int64_t euler_characteristic(const ChainComplex& c) {
    std::int64_t chi = 0;
    for (int k = 0; k <= c.top_dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.cell_count(k));
    return chi;
}

inline std::int64_t euler_characteristic(const ConfigurationSpace& s) {
    std::int64_t chi = 0;
    for (int k = 0; k <= s.top_dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(s.cell_count(k));
    return chi;
}

/// Components of the 1-skeleton.
inline std::size_t connected_components(const ChainComplex& c) {
    const std::size_t nv = c.cell_count(0);
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t comps = nv;
    if (c.top_dimension() >= 1) {
        const auto& d1 = c.boundary_ref(1);
        for (std::size_t j = 0; j < d1.cols(); ++j) {
            auto col = d1.column(j);
            for (std::size_t i = 1; i < col.size(); ++i) {
                auto a = find(col[0].row), b = find(col[i].row);
                if (a != b) {
                    parent[a] = b;
                    --comps;
                }
            }
        }
    }
    return comps;
}

/// True when d_k d_{k+1} vanishes for every k.
inline bool boundary_squares_to_zero(const ChainComplex& c) {
    for (int k = 1; k < c.top_dimension(); ++k)
        if (!(c.boundary_ref(k) * c.boundary_ref(k + 1)).is_zero())
            return false;
    return true;
}

/// Finite integer combination of cells of one dimension, keyed by the cell's
/// index within that dimension.
struct Chain {
    int dimension = 0;
    std::map<std::size_t, std::int64_t> terms;

    void add(std::size_t cell, std::int64_t coeff) {
        if (coeff == 0)
            return;
        auto [it, fresh] = terms.emplace(cell, coeff);
        if (!fresh) {
            it->second = arith::add(it->second, coeff);
            if (it->second == 0)
                terms.erase(it);
        }
    }
    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }

    Chain scaled(std::int64_t a) const {
        Chain out{dimension, {}};
        for (auto [c, v] : terms)
            out.add(c, arith::mul(a, v));
        return out;
    }

    Chain& operator+=(const Chain& o) {
        if (o.dimension != dimension && !o.empty())
            throw InvalidInput("adding chains of different dimension");
        for (auto [c, v] : o.terms)
            add(c, v);
        return *this;
    }

    bool operator==(const Chain&) const = default;
};

inline Chain boundary(const ChainComplex& cx, const Chain& c) {
    Chain out{c.dimension - 1, {}};
    if (c.dimension < 1 || c.dimension > cx.top_dimension())
        return out;
    const auto& d = cx.boundary_ref(c.dimension);
    for (auto [j, v] : c.terms)
        for (const auto& e : d.column(j))
            out.add(e.row, arith::mul(e.value, v));
    return out;
}

inline bool is_cycle(const ChainComplex& cx, const Chain& c) { return boundary(cx, c).empty(); }

} // namespace confspace
