#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace hcol {

using FieldVector = std::vector<FieldElement>;

/// Dense row-major matrix over a finite field.
class Matrix {
public:
    Matrix(FieldSpec f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, FieldElement{0}) {}

    static Matrix identity(FieldSpec f, std::size_t n)
    {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = f->one();
        return m;
    }

    /// Matrix whose rows are the given vectors (all of length cols).
    static Matrix from_rows(FieldSpec f, const std::vector<FieldVector>& rows, std::size_t cols)
    {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, "matrix: row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    /// Integer entries reduced into the prime subfield.
    static Matrix from_ints(FieldSpec f, const std::vector<std::vector<long long>>& rows)
    {
        const std::size_t cols = rows.empty() ? 0 : rows[0].size();
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, "matrix: row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = f->from_int(rows[i][j]);
        }
        return m;
    }

    const FieldSpec& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    FieldElement operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    FieldVector row(std::size_t i) const { return FieldVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)); }
    FieldVector col(std::size_t j) const
    {
        FieldVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out[i] = (*this)(i, j);
        return out;
    }

    bool operator==(const Matrix& o) const { return *f_ == *o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    Matrix operator*(const Matrix& o) const
    {
        require(cols_ == o.rows_, "matrix: dimension mismatch in product");
        Matrix out(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement a = (*this)(i, k);
                if (a.code == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out(i, j) = f_->add(out(i, j), f_->mul(a, o(k, j)));
            }
        return out;
    }

    FieldVector apply(const FieldVector& x) const
    {
        require(x.size() == cols_, "matrix: vector length mismatch");
        FieldVector out(rows_, FieldElement{0});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] = f_->add(out[i], f_->mul((*this)(i, j), x[j]));
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    FieldSpec f_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldElement> data_;
};

struct RowReduction {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots; // increasing
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RowReduction row_reduce(Matrix m)
{
    const auto& f = *m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, r);
        const FieldElement inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c)))
                continue;
            const FieldElement factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return RowReduction{std::move(m), r, std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank; }

inline FieldElement determinant(Matrix m)
{
    require(m.rows() == m.cols(), "determinant: matrix must be square");
    const auto& f = *m.field();
    const std::size_t n = m.rows();
    FieldElement det = f.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(m(p, c)))
            ++p;
        if (p == n)
            return f.zero();
        if (p != c) {
            m.swap_rows(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        const FieldElement inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c)))
                continue;
            const FieldElement factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

/// Basis of the right nullspace {x : M x = 0}, one vector per free column.
inline std::vector<FieldVector> nullspace(const Matrix& m)
{
    const auto& f = *m.field();
    const auto rr = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots)
        is_pivot[p] = true;
    std::vector<FieldVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        FieldVector x(m.cols(), f.zero());
        x[free] = f.one();
        for (std::size_t i = 0; i < rr.rank; ++i)
            x[rr.pivots[i]] = f.neg(rr.reduced(i, free));
        basis.push_back(std::move(x));
    }
    return basis;
}

/// A row-reduced spanning set supporting repeated membership queries.
class SpanBasis {
public:
    SpanBasis(FieldSpec f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}

    SpanBasis(FieldSpec f, std::size_t dim, const std::vector<FieldVector>& gens) : SpanBasis(std::move(f), dim)
    {
        for (const auto& g : gens)
            insert(g);
    }

    std::size_t dimension() const { return rows_.size(); }

    /// Adds v; returns false if it was already in the span.
    bool insert(FieldVector v)
    {
        reduce(v);
        std::size_t lead = 0;
        while (lead < dim_ && f_->is_zero(v[lead]))
            ++lead;
        if (lead == dim_)
            return false;
        const FieldElement inv = f_->inv(v[lead]);
        for (auto& x : v)
            x = f_->mul(x, inv);
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        return true;
    }

    bool contains(FieldVector v) const
    {
        reduce(v);
        for (const auto& x : v)
            if (!f_->is_zero(x))
                return false;
        return true;
    }

private:
    void reduce(FieldVector& v) const
    {
        require(v.size() == dim_, "span: vector length mismatch");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const FieldElement c = v[leads_[r]];
            if (f_->is_zero(c))
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                v[j] = f_->sub(v[j], f_->mul(c, rows_[r][j]));
        }
    }

    FieldSpec f_;
    std::size_t dim_;
    std::vector<FieldVector> rows_;
    std::vector<std::size_t> leads_;
};

inline std::size_t span_dimension(const FieldSpec& f, std::size_t dim, const std::vector<FieldVector>& gens)
{
    return SpanBasis(f, dim, gens).dimension();
}

inline FieldElement dot(const Field& f, const FieldVector& a, const FieldVector& b)
{
    require(a.size() == b.size(), "dot: length mismatch");
    FieldElement s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

} // namespace hcol
