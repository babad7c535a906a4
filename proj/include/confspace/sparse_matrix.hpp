#pragma once

#include "confspace/checked_int.hpp"
#include "confspace/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace confspace {

struct Triplet {
    std::size_t row;
    std::size_t col;
    std::int64_t value;
    bool operator==(const Triplet&) const = default;
};

/// Compressed sparse column matrix over the integers.
class SparseIntMatrix {
public:
    struct Entry {
        std::uint32_t row;
        std::int64_t value;
    };

    SparseIntMatrix() : col_ptr_(1, 0) {}
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(0), col_ptr_(1, 0) {
        check_rows(rows);
        for (std::size_t j = 0; j < cols; ++j)
            append_column({});
    }

    /// Duplicate positions are summed and zeros dropped.
    static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> ts) {
        for (const auto& t : ts)
            if (t.row >= rows || t.col >= cols)
                throw InvalidInput("triplet outside matrix bounds");
        std::sort(ts.begin(), ts.end(),
                  [](const Triplet& a, const Triplet& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
        SparseIntMatrix m(rows, 0);
        std::size_t i = 0;
        std::vector<Entry> col;
        for (std::size_t j = 0; j < cols; ++j) {
            col.clear();
            while (i < ts.size() && ts[i].col == j) {
                std::int64_t v = 0;
                std::size_t r = ts[i].row;
                for (; i < ts.size() && ts[i].col == j && ts[i].row == r; ++i)
                    v = arith::add(v, ts[i].value);
                if (v != 0)
                    col.push_back({static_cast<std::uint32_t>(r), v});
            }
            m.append_column(col);
        }
        return m;
    }

    /// Appends a column; entries need not be sorted but rows must be distinct.
    void append_column(std::vector<Entry> col) {
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (col[i].row >= rows_)
                throw InvalidInput("row index outside matrix bounds");
            if (i > 0 && col[i].row == col[i - 1].row)
                throw InvalidInput("duplicate entry in column");
            if (col[i].value != 0)
                entries_.push_back(col[i]);
        }
        col_ptr_.push_back(entries_.size());
        ++cols_;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }

    std::span<const Entry> column(std::size_t j) const {
        return {entries_.data() + col_ptr_[j], entries_.data() + col_ptr_[j + 1]};
    }

    std::int64_t at(std::size_t r, std::size_t c) const {
        auto col = column(c);
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::size_t row) { return e.row < row; });
        return it != col.end() && it->row == r ? it->value : 0;
    }

    std::vector<Triplet> triplets() const {
        std::vector<Triplet> out;
        out.reserve(entries_.size());
        for (std::size_t j = 0; j < cols_; ++j)
            for (const auto& e : column(j))
                out.push_back({e.row, j, e.value});
        return out;
    }

    SparseIntMatrix transpose() const {
        std::vector<Triplet> ts = triplets();
        for (auto& t : ts)
            std::swap(t.row, t.col);
        return from_triplets(cols_, rows_, std::move(ts));
    }

    /// Reorders rows and columns: entry (r, c) moves to (row_perm[r], col_perm[c]).
    SparseIntMatrix permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const {
        std::vector<Triplet> ts = triplets();
        for (auto& t : ts) {
            t.row = row_perm.at(t.row);
            t.col = col_perm.at(t.col);
        }
        return from_triplets(rows_, cols_, std::move(ts));
    }

    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        if (a.cols() != b.rows())
            throw InvalidInput("matrix shapes do not compose");
        SparseIntMatrix out(a.rows(), 0);
        std::map<std::uint32_t, std::int64_t> acc;
        std::vector<Entry> col;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            acc.clear();
            for (const auto& eb : b.column(j))
                for (const auto& ea : a.column(eb.row))
                    acc[ea.row] = arith::add(acc[ea.row], arith::mul(ea.value, eb.value));
            col.clear();
            for (auto [r, v] : acc)
                if (v != 0)
                    col.push_back({r, v});
            out.append_column(col);
        }
        return out;
    }

    bool is_zero() const { return entries_.empty(); }

private:
    static void check_rows(std::size_t rows) {
        if (rows > UINT32_MAX)
            throw InvalidInput("matrix too large for explicit storage");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> col_ptr_;
    std::vector<Entry> entries_;
};

} // namespace confspace
