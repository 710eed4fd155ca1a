#pragma once

// Dense linear algebra over a finite field. Elimination uses a fixed pivot
// rule (first column with a nonzero entry, lowest row index within it) so
// kernel bases are reproducible.

#include <cstddef>
#include <vector>

#include "kst/gfarith.hpp"

namespace kst {

class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Elem>& row);
    std::vector<Elem> row(std::size_t r) const;
    Matrix transposed() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

/// Basis of {x : m x = 0}; one vector per free column, with a 1 at that column.
std::vector<std::vector<Elem>> right_kernel(const Field& f, const Matrix& m);

/// Basis of {c : c^T m = 0}.
std::vector<std::vector<Elem>> left_kernel(const Field& f, const Matrix& m);

/// Solves basis * x = v where `basis` holds the basis vectors as columns and is
/// square invertible. Throws precondition if singular.
std::vector<Elem> solve_square(const Field& f, const Matrix& basis, const std::vector<Elem>& v);

}  // namespace kst
