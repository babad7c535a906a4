#pragma once

// Sparse Smith normal form and rational rank over the integers.

#include "confspace/checked_int.hpp"
#include "confspace/sparse_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace confspace {

enum class Arithmetic { checked64, bigint, automatic };

struct SmithOptions {
    Arithmetic arithmetic = Arithmetic::automatic;
    /// Compute only the rank over Q; invariant factors are left empty.
    bool rank_only = false;
};

struct SmithForm {
    /// d_1 | d_2 | ... | d_r, including the unit factors.
    std::vector<std::int64_t> invariant_factors;
    std::size_t rank = 0;
    bool factors_known = true;

    std::vector<std::int64_t> nonunit_factors() const {
        std::vector<std::int64_t> out;
        for (auto d : invariant_factors)
            if (d > 1)
                out.push_back(d);
        return out;
    }
};

namespace detail {

template <typename Int> class Eliminator {
public:
    struct E {
        std::uint32_t row;
        Int v;
    };
    using Col = std::vector<E>;

    explicit Eliminator(const SparseIntMatrix& m)
        : cols_(m.cols()), row_cols_(m.rows()), col_alive_(m.cols(), 1), row_alive_(m.rows(), 1) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto src = m.column(j);
            cols_[j].reserve(src.size());
            for (const auto& e : src) {
                cols_[j].push_back({e.row, Int(e.value)});
                row_cols_[e.row].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }

    SmithForm run(bool rank_only) {
        unit_phase();
        if (rank_only)
            rational_phase();
        else
            euclid_phase();
        SmithForm f;
        f.rank = rank_;
        f.factors_known = !rank_only;
        if (!rank_only)
            f.invariant_factors = normalise(pivots_, unit_pivots_);
        return f;
    }

private:
    static bool is_unit(const Int& v) { return v == 1 || v == -1; }
    static Int magnitude(const Int& v) { return arith::abs(v); }

    const E* find(std::uint32_t c, std::uint32_t r) const {
        const Col& col = cols_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r, [](const E& e, std::uint32_t row) { return e.row < row; });
        return it != col.end() && it->row == r ? &*it : nullptr;
    }

    /// Live columns with a nonzero in row r, deduplicated in place.
    const std::vector<std::uint32_t>& live_row(std::uint32_t r) {
        auto& list = row_cols_[r];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::uint32_t c) { return !col_alive_[c] || find(c, r) == nullptr; }),
                   list.end());
        return list;
    }

    /// col_j <- g * col_j + f * col_c
    void combine(std::uint32_t j, const Int& g, const Int& f, std::uint32_t c) {
        const Col& a = cols_[j];
        const Col& b = cols_[c];
        Col out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, k = 0;
        while (i < a.size() || k < b.size()) {
            if (k == b.size() || (i < a.size() && a[i].row < b[k].row)) {
                Int v = arith::mul(g, a[i].v);
                if (v != 0)
                    out.push_back({a[i].row, std::move(v)});
                ++i;
            } else if (i == a.size() || b[k].row < a[i].row) {
                Int v = arith::mul(f, b[k].v);
                if (v != 0) {
                    out.push_back({b[k].row, std::move(v)});
                    row_cols_[b[k].row].push_back(j);
                }
                ++k;
            } else {
                Int v = arith::add(arith::mul(g, a[i].v), arith::mul(f, b[k].v));
                if (v != 0)
                    out.push_back({a[i].row, std::move(v)});
                ++i;
                ++k;
            }
        }
        cols_[j] = std::move(out);
    }

    /// col_j[r] += delta
    void bump(std::uint32_t j, std::uint32_t r, const Int& delta) {
        Col& col = cols_[j];
        auto it = std::lower_bound(col.begin(), col.end(), r, [](const E& e, std::uint32_t row) { return e.row < row; });
        if (it != col.end() && it->row == r) {
            it->v = arith::add(it->v, delta);
            if (it->v == 0)
                col.erase(it);
        } else if (delta != 0) {
            col.insert(it, E{r, delta});
            row_cols_[r].push_back(j);
        }
    }

    void retire(std::uint32_t c, std::uint32_t r) {
        col_alive_[c] = 0;
        row_alive_[r] = 0;
        Col().swap(cols_[c]);
        std::vector<std::uint32_t>().swap(row_cols_[r]);
        ++rank_;
    }

    void unit_phase() {
        using Item = std::pair<std::size_t, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        for (std::uint32_t j = 0; j < cols_.size(); ++j)
            queue.push({cols_[j].size(), j});
        while (!queue.empty()) {
            auto [nnz, c] = queue.top();
            queue.pop();
            if (!col_alive_[c] || nnz != cols_[c].size())
                continue;
            if (cols_[c].empty()) {
                col_alive_[c] = 0;
                continue;
            }
            std::uint32_t best = UINT32_MAX;
            std::size_t best_count = SIZE_MAX;
            Int p = 0;
            for (const auto& e : cols_[c])
                if (is_unit(e.v) && row_cols_[e.row].size() < best_count) {
                    best = e.row;
                    best_count = row_cols_[e.row].size();
                    p = e.v;
                }
            if (best == UINT32_MAX)
                continue;
            std::vector<std::uint32_t> others = live_row(best);
            for (std::uint32_t j : others) {
                if (j == c)
                    continue;
                const E* e = find(j, best);
                Int f = arith::mul(Int(-1), arith::mul(e->v, p));
                combine(j, Int(1), f, c);
                queue.push({cols_[j].size(), j});
            }
            ++unit_pivots_;
            retire(c, best);
        }
    }

    struct Pivot {
        std::uint32_t row = 0, col = 0;
        Int v = 0;
        bool found = false;
    };

    /// Smallest magnitude entry among live columns; ties prefer sparser lines.
    Pivot smallest() {
        Pivot best;
        Int best_mag = 0;
        std::size_t best_cost = SIZE_MAX;
        for (std::uint32_t j = 0; j < cols_.size(); ++j) {
            if (!col_alive_[j])
                continue;
            for (const auto& e : cols_[j]) {
                Int mag = magnitude(e.v);
                std::size_t cost = cols_[j].size() * row_cols_[e.row].size();
                if (!best.found || mag < best_mag || (mag == best_mag && cost < best_cost)) {
                    best = {e.row, j, e.v, true};
                    best_mag = mag;
                    best_cost = cost;
                }
            }
        }
        return best;
    }

    void euclid_phase() {
        for (;;) {
            Pivot pv = smallest();
            if (!pv.found)
                break;
            for (;;) {
                const std::uint32_t r = pv.row, c = pv.col;
                const Int p = pv.v;
                Pivot next;
                Int next_mag = 0;
                auto consider = [&](std::uint32_t row, std::uint32_t col, const Int& v) {
                    Int mag = magnitude(v);
                    if (!next.found || mag < next_mag) {
                        next = {row, col, v, true};
                        next_mag = mag;
                    }
                };
                // Column operations clear row r.
                std::vector<std::uint32_t> others = live_row(r);
                for (std::uint32_t j : others) {
                    if (j == c)
                        continue;
                    Int q = arith::quot(find(j, r)->v, p);
                    if (q != 0)
                        combine(j, Int(1), arith::mul(Int(-1), q), c);
                    if (const E* e = find(j, r))
                        consider(r, j, e->v);
                }
                // Row operations clear column c.
                std::vector<std::pair<std::uint32_t, Int>> pivot_row;
                for (std::uint32_t j : live_row(r))
                    pivot_row.push_back({j, find(j, r)->v});
                Col col_c = cols_[c];
                for (const auto& e : col_c) {
                    if (e.row == r)
                        continue;
                    Int q = arith::quot(e.v, p);
                    if (q != 0)
                        for (const auto& [j, a] : pivot_row)
                            bump(j, e.row, arith::mul(arith::mul(Int(-1), q), a));
                    if (const E* rem = find(c, e.row))
                        consider(e.row, c, rem->v);
                }
                if (!next.found)
                    break;
                pv = next;
            }
            pivots_.push_back(magnitude(pv.v));
            retire(pv.col, pv.row);
        }
    }

    void rational_phase() {
        for (;;) {
            Pivot pv = smallest();
            if (!pv.found)
                break;
            std::vector<std::uint32_t> others = live_row(pv.row);
            for (std::uint32_t j : others) {
                if (j == pv.col)
                    continue;
                Int a = find(j, pv.row)->v;
                combine(j, pv.v, arith::mul(Int(-1), a), pv.col);
                Int g = 0;
                for (const auto& e : cols_[j])
                    g = arith::gcd(g, e.v);
                if (g > 1)
                    for (auto& e : cols_[j])
                        e.v = arith::quot(e.v, g);
            }
            retire(pv.col, pv.row);
        }
    }

    static std::vector<std::int64_t> normalise(std::vector<Int> d, std::size_t units) {
        // Pairwise gcd/lcm turns a diagonal into a divisibility chain.
        std::sort(d.begin(), d.end());
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                Int g = arith::gcd(d[i], d[j]);
                if (g == d[i])
                    continue;
                Int l = arith::mul(arith::quot(d[i], g), d[j]);
                d[i] = g;
                d[j] = l;
            }
        std::vector<std::int64_t> out(units, 1);
        for (const auto& v : d) {
            if constexpr (std::is_same_v<Int, std::int64_t>) {
                out.push_back(v);
            } else {
                if (v > INT64_MAX)
                    throw OverflowError("invariant factor exceeds int64");
                out.push_back(static_cast<std::int64_t>(v));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Col> cols_;
    std::vector<std::vector<std::uint32_t>> row_cols_;
    std::vector<char> col_alive_;
    std::vector<char> row_alive_;
    std::vector<Int> pivots_;
    std::size_t unit_pivots_ = 0;
    std::size_t rank_ = 0;
};

} // namespace detail

/// Invariant factors under unimodular row and column operations. In automatic
/// mode an int64 overflow restarts the computation with big integers.
inline SmithForm smith_normal_form(const SparseIntMatrix& m, SmithOptions opt = {}) {
    if (opt.arithmetic == Arithmetic::bigint)
        return detail::Eliminator<BigInt>(m).run(opt.rank_only);
    try {
        return detail::Eliminator<std::int64_t>(m).run(opt.rank_only);
    } catch (const OverflowError&) {
        if (opt.arithmetic == Arithmetic::checked64)
            throw;
    }
    return detail::Eliminator<BigInt>(m).run(opt.rank_only);
}

inline std::size_t rational_rank(const SparseIntMatrix& m, Arithmetic a = Arithmetic::automatic) {
    return smith_normal_form(m, {a, true}).rank;
}

} // namespace confspace
