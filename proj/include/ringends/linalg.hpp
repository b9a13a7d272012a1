#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ringends/errors.hpp"

namespace ringends {

/// Dense matrix over an exact field K. K needs +, -, *, /, ==, and a
/// zero obtainable as x - x. Used with Rational and Fp.
template <class K>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const K& fill) : rows(r), cols(c), a(r * c, fill) {}

    K& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class K>
Matrix<K> mat_mul(const Matrix<K>& x, const Matrix<K>& y) {
    if (x.cols != y.rows) throw error("mat_mul: shape mismatch");
    K zero = x.a.empty() ? (y.a.empty() ? K() : y.a[0] - y.a[0]) : x.a[0] - x.a[0];
    Matrix<K> z(x.rows, y.cols, zero);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const K& v = x.at(i, k);
            if (v == zero) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// pivot row, in order.
template <class K>
std::vector<std::size_t> rref_inplace(Matrix<K>& m) {
    std::vector<std::size_t> pivots;
    if (m.a.empty()) return pivots;
    K zero = m.a[0] - m.a[0];
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == zero) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        K inv_piv = m.at(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) / inv_piv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            K f = m.at(i, col);
            if (f == zero) continue;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref_inplace(m).size();
}

/// Basis of the right kernel {v : m v = 0}. `one` supplies the field unit
/// (needed when m is the zero matrix).
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m, const K& one) {
    K zero = one - one;
    auto pivots = rref_inplace(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(m.cols, zero);
        v[free] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = zero - m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Incremental row space with coordinates: supports testing membership of a
/// vector in the span of the added vectors and expressing it in terms of them.
template <class K>
class SpanBasis {
public:
    explicit SpanBasis(std::size_t dim, const K& one) : dim_(dim), one_(one), zero_(one - one) {}

    std::size_t size() const { return ech_.size(); }
    std::size_t dim() const { return dim_; }

    /// Coordinates of v in terms of the added vectors, if dependent.
    std::optional<std::vector<K>> express(const std::vector<K>& v) const {
        std::vector<K> r = v;
        std::vector<K> coeff(ech_.size(), zero_);
        reduce(r, coeff);
        for (const K& x : r)
            if (!(x == zero_)) return std::nullopt;
        // coeff is in terms of echelon rows; convert to original vectors
        std::vector<K> out(count_, zero_);
        for (std::size_t i = 0; i < ech_.size(); ++i) {
            if (coeff[i] == zero_) continue;
            for (std::size_t j = 0; j < rep_[i].size(); ++j)
                out[j] += coeff[i] * rep_[i][j];
        }
        return out;
    }

    /// Adds v if independent of the current span. Returns true when added.
    bool add(const std::vector<K>& v) {
        if (v.size() != dim_) throw error("SpanBasis: dimension mismatch");
        std::vector<K> r = v;
        std::vector<K> coeff(ech_.size(), zero_);
        reduce(r, coeff);
        std::size_t piv = 0;
        while (piv < dim_ && r[piv] == zero_) ++piv;
        if (piv == dim_) return false;
        K inv = one_ / r[piv];
        for (auto& x : r) x = x * inv;
        // representation of the new echelon row in terms of originals
        std::vector<K> rep(count_ + 1, zero_);
        rep[count_] = inv;
        for (std::size_t i = 0; i < ech_.size(); ++i) {
            if (coeff[i] == zero_) continue;
            for (std::size_t j = 0; j < rep_[i].size(); ++j)
                rep[j] -= inv * coeff[i] * rep_[i][j];
        }
        for (auto& rr : rep_) rr.resize(count_ + 1, zero_);
        ech_.push_back(std::move(r));
        pivot_.push_back(piv);
        rep_.push_back(std::move(rep));
        ++count_;
        return true;
    }

private:
    // r <- r reduced against echelon rows; coeff[i] accumulates the factor
    // of echelon row i used.
    void reduce(std::vector<K>& r, std::vector<K>& coeff) const {
        if (r.size() != dim_) throw error("SpanBasis: dimension mismatch");
        for (std::size_t i = 0; i < ech_.size(); ++i) {
            K f = r[pivot_[i]];
            if (f == zero_) continue;
            coeff[i] = f;
            for (std::size_t j = 0; j < dim_; ++j)
                r[j] -= f * ech_[i][j];
        }
    }

    std::size_t dim_;
    K one_, zero_;
    std::size_t count_ = 0;
    std::vector<std::vector<K>> ech_;    // echelon rows, pivot normalized to 1
    std::vector<std::size_t> pivot_;
    std::vector<std::vector<K>> rep_;    // ech_[i] = sum_j rep_[i][j] * original_j
};

} // namespace ringends
