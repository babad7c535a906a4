#pragma once

// Coreduction of implicit complexes. Pairs (b, a) where a is the only
// surviving face of b, with a unit coefficient, are removed; this keeps the
// boundary of the surviving cells unchanged, so the residual complex can be
// handed to the Smith normal form directly.

#include "confspace/chain_complex.hpp"

#include <deque>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace confspace {

/// Any complex exposing ids 0..size()-1 with boundary and coboundary access.
/// Dimensions 0 and 1 must occupy the contiguous ranges given by offset and
/// cell_count.
template <typename V>
concept CellView = requires(const V& v, std::uint64_t id, std::vector<Term>& out, int k) {
    { v.cell_count() } -> std::convertible_to<std::uint64_t>;
    { v.cell_count(k) } -> std::convertible_to<std::uint64_t>;
    { v.offset(k) } -> std::convertible_to<std::uint64_t>;
    { v.top_dimension() } -> std::convertible_to<int>;
    { v.dimension_of(id) } -> std::convertible_to<int>;
    v.boundary(id, out);
    v.coboundary(id, out);
};

/// An explicit complex seen through global ids.
class ExplicitView {
public:
    explicit ExplicitView(const ChainComplex& c) : cx_(&c) {
        offsets_.push_back(0);
        for (int k = 0; k <= c.top_dimension(); ++k)
            offsets_.push_back(offsets_.back() + c.cell_count(k));
        for (int k = 1; k <= c.top_dimension(); ++k)
            cobound_.push_back(c.boundary_ref(k).transpose());
    }
    std::uint64_t cell_count() const { return offsets_.back(); }
    std::uint64_t cell_count(int k) const { return cx_->cell_count(k); }
    std::uint64_t offset(int k) const { return offsets_.at(static_cast<std::size_t>(k)); }
    int top_dimension() const { return cx_->top_dimension(); }
    int dimension_of(std::uint64_t id) const {
        return static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin()) - 1;
    }
    void boundary(std::uint64_t id, std::vector<Term>& out) const {
        out.clear();
        int k = dimension_of(id);
        if (k < 1)
            return;
        for (const auto& e : cx_->boundary_ref(k).column(id - offsets_[k]))
            out.push_back({offsets_[k - 1] + e.row, static_cast<int>(e.value)});
    }
    void coboundary(std::uint64_t id, std::vector<Term>& out) const {
        out.clear();
        int k = dimension_of(id);
        if (k >= top_dimension())
            return;
        for (const auto& e : cobound_[k].column(id - offsets_[k]))
            out.push_back({offsets_[k + 1] + e.row, static_cast<int>(e.value)});
    }

private:
    const ChainComplex* cx_;
    std::vector<std::uint64_t> offsets_;
    std::vector<SparseIntMatrix> cobound_;
};

/// A base complex with extra cells of dimension m+1 attached along given
/// m-cycles. The extra cells take ids after all base cells.
template <CellView Base> class AugmentedView {
public:
    /// `cycles` hold (base id, coefficient) lists of dimension m >= 1.
    AugmentedView(const Base& base, int m, std::vector<std::vector<Term>> cycles)
        : base_(&base), m_(m), extra_(std::move(cycles)) {
        if (m < 1)
            throw InvalidInput("augmented cells must have dimension at least 2");
        for (std::size_t i = 0; i < extra_.size(); ++i)
            for (const auto& t : extra_[i])
                attached_[t.cell].push_back({base.cell_count() + i, t.coefficient});
    }
    std::uint64_t cell_count() const { return base_->cell_count() + extra_.size(); }
    std::uint64_t cell_count(int k) const {
        return base_->cell_count(k) + (k == m_ + 1 ? extra_.size() : 0);
    }
    std::uint64_t offset(int k) const { return base_->offset(k); }
    int top_dimension() const { return std::max(base_->top_dimension(), extra_.empty() ? 0 : m_ + 1); }
    int dimension_of(std::uint64_t id) const {
        return id >= base_->cell_count() ? m_ + 1 : base_->dimension_of(id);
    }
    void boundary(std::uint64_t id, std::vector<Term>& out) const {
        if (id >= base_->cell_count()) {
            out = extra_[id - base_->cell_count()];
            return;
        }
        base_->boundary(id, out);
    }
    void coboundary(std::uint64_t id, std::vector<Term>& out) const {
        if (id >= base_->cell_count()) {
            out.clear();
            return;
        }
        base_->coboundary(id, out);
        if (auto it = attached_.find(id); it != attached_.end())
            out.insert(out.end(), it->second.begin(), it->second.end());
    }

private:
    const Base* base_;
    int m_;
    std::vector<std::vector<Term>> extra_;
    std::unordered_map<std::uint64_t, std::vector<Term>> attached_;
};

struct ReductionStats {
    std::uint64_t cells = 0;
    std::uint64_t pairs = 0;
    std::uint64_t bases = 0;
    std::uint64_t residual = 0;
};

/// Residual complex after coreduction. One 0-cell per connected component
/// was removed as a base point, so H_0 of the original complex has `bases`
/// more free generators than H_0 of `complex`.
struct ReducedComplex {
    ChainComplex complex;
    std::uint64_t bases = 0;
    ReductionStats stats;
};

namespace detail {

class Bits {
public:
    explicit Bits(std::uint64_t n) : w_((n + 63) / 64, 0) {}
    bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::uint64_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint64_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

private:
    std::vector<std::uint64_t> w_;
};

} // namespace detail

/// Coreduces cells of dimension <= max_cell_dim (all when negative). The
/// residual has the homology of the truncated complex in dimensions below
/// max_cell_dim.
template <CellView V> ReducedComplex coreduce(const V& view, int max_cell_dim = -1) {
    const std::uint64_t n = view.cell_count();
    if (n > UINT32_MAX)
        throw BudgetExceeded("complex too large for coreduction");
    const int top = max_cell_dim < 0 ? view.top_dimension() : std::min(max_cell_dim, view.top_dimension());
    detail::Bits removed(n), queued(n);
    std::deque<std::uint32_t> queue;
    std::vector<Term> terms, faces;
    ReductionStats st;
    st.cells = n;

    auto enqueue_cofaces = [&](std::uint64_t id) {
        if (view.dimension_of(id) >= top)
            return;
        view.coboundary(id, terms);
        for (const auto& t : terms)
            if (!removed.test(t.cell) && !queued.test(t.cell)) {
                queued.set(t.cell);
                queue.push_back(static_cast<std::uint32_t>(t.cell));
            }
    };

    // Base points: the first 0-cell of each component of the 1-skeleton.
    const std::uint64_t c0 = view.cell_count(0), o0 = view.offset(0);
    std::vector<std::uint32_t> parent(c0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    if (top >= 1) {
        const std::uint64_t o1 = view.offset(1);
        for (std::uint64_t id = o1; id < o1 + view.cell_count(1); ++id) {
            if (view.dimension_of(id) != 1)
                continue;
            view.boundary(id, terms);
            for (std::size_t i = 1; i < terms.size(); ++i) {
                auto a = find(static_cast<std::uint32_t>(terms[0].cell - o0));
                auto b = find(static_cast<std::uint32_t>(terms[i].cell - o0));
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    for (std::uint32_t v = 0; v < c0; ++v)
        if (find(v) == v) {
            removed.set(o0 + v);
            ++st.bases;
        }
    std::vector<std::uint32_t>().swap(parent);
    for (std::uint64_t v = 0; v < c0; ++v)
        if (removed.test(o0 + v))
            enqueue_cofaces(o0 + v);

    while (!queue.empty()) {
        const std::uint64_t s = queue.front();
        queue.pop_front();
        queued.reset(s);
        if (removed.test(s))
            continue;
        view.boundary(s, terms);
        faces.clear();
        for (const auto& t : terms)
            if (!removed.test(t.cell)) {
                faces.push_back(t);
                if (faces.size() > 1)
                    break;
            }
        if (faces.empty()) {
            enqueue_cofaces(s);
        } else if (faces.size() == 1 && (faces[0].coefficient == 1 || faces[0].coefficient == -1)) {
            const std::uint64_t a = faces[0].cell;
            removed.set(s);
            removed.set(a);
            ++st.pairs;
            enqueue_cofaces(a);
            enqueue_cofaces(s);
        }
    }

    // Residual cells by dimension, in id order.
    std::vector<std::vector<std::uint64_t>> keep(static_cast<std::size_t>(top) + 1);
    for (std::uint64_t id = 0; id < n; ++id)
        if (!removed.test(id)) {
            int k = view.dimension_of(id);
            if (k <= top)
                keep[k].push_back(id);
        }
    std::vector<std::size_t> counts;
    for (const auto& cells : keep) {
        counts.push_back(cells.size());
        st.residual += cells.size();
    }
    std::vector<SparseIntMatrix> mats;
    std::vector<SparseIntMatrix::Entry> col;
    for (int k = 1; k <= top; ++k) {
        const auto& lower = keep[k - 1];
        SparseIntMatrix m(lower.size(), 0);
        for (std::uint64_t id : keep[k]) {
            view.boundary(id, terms);
            col.clear();
            for (const auto& t : terms) {
                auto it = std::lower_bound(lower.begin(), lower.end(), t.cell);
                if (it != lower.end() && *it == t.cell)
                    col.push_back({static_cast<std::uint32_t>(it - lower.begin()), t.coefficient});
            }
            // Augmented boundaries may repeat a cell; merge before storing.
            std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.row < y.row; });
            std::vector<SparseIntMatrix::Entry> merged;
            for (const auto& e : col) {
                if (!merged.empty() && merged.back().row == e.row)
                    merged.back().value = arith::add(merged.back().value, e.value);
                else
                    merged.push_back(e);
            }
            std::erase_if(merged, [](const auto& e) { return e.value == 0; });
            m.append_column(std::move(merged));
        }
        mats.push_back(std::move(m));
    }
    return {ChainComplex(std::move(counts), std::move(mats)), st.bases, st};
}

} // namespace confspace
