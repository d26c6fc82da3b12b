#pragma once

// Dense matrices over Q with exact Gauss-Jordan elimination. Sized for the
// change-of-basis problems in Z[zeta_n + zeta_n^{-1}] (a few hundred rows).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace torsion {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    RationalMatrix select_rows(std::span<const std::size_t> rows) const;
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    std::vector<mpq_class> operator*(std::span<const mpq_class> v) const;
    bool operator==(const RationalMatrix& rhs) const = default;

    /// Pivot columns of the reduced row echelon form, ascending.
    std::vector<std::size_t> pivot_columns() const;
    std::size_t rank() const { return pivot_columns().size(); }
    /// Empty when singular or not square.
    std::optional<RationalMatrix> inverse() const;
    mpq_class determinant() const;

    bool is_integral() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> data_;
};

} // namespace torsion
