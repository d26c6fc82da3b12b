#include "torsion/exact_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace torsion {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::select_rows(std::span<const std::size_t> rows) const
{
    RationalMatrix s(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            s(i, j) = (*this)(rows[i], j);
    return s;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("RationalMatrix: dimension mismatch in product");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<mpq_class> RationalMatrix::operator*(std::span<const mpq_class> v) const
{
    if (cols_ != v.size())
        throw std::invalid_argument("RationalMatrix: dimension mismatch in matrix-vector product");
    std::vector<mpq_class> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0)
                out[i] += (*this)(i, j) * v[j];
    return out;
}

namespace {

// In-place Gauss-Jordan on the first `limit` columns; returns pivot columns
// and accumulates the determinant sign/scale for square inputs.
std::vector<std::size_t> gauss_jordan(RationalMatrix& m, std::size_t limit, mpq_class* det)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    if (det)
        *det = 1;
    for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0)
            ++sel;
        if (sel == m.rows()) {
            if (det)
                *det = 0;
            continue;
        }
        if (sel != row) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(sel, j), m(row, j));
            if (det)
                *det = -*det;
        }
        const mpq_class p = m(row, col);
        if (det)
            *det *= p;
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(row, j) /= p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            const mpq_class f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0)
                    m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::vector<std::size_t> RationalMatrix::pivot_columns() const
{
    RationalMatrix work = *this;
    return gauss_jordan(work, cols_, nullptr);
}

std::optional<RationalMatrix> RationalMatrix::inverse() const
{
    if (rows_ != cols_)
        return std::nullopt;
    const std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    if (gauss_jordan(aug, n, nullptr).size() != n)
        return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

mpq_class RationalMatrix::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("RationalMatrix::determinant: matrix is not square");
    RationalMatrix work = *this;
    mpq_class det;
    if (gauss_jordan(work, cols_, &det).size() != rows_)
        return 0;
    return det;
}

bool RationalMatrix::is_integral() const
{
    for (const auto& x : data_)
        if (x.get_den() != 1)
            return false;
    return true;
}

} // namespace torsion
