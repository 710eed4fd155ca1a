#include "kst/linalg.hpp"

namespace kst {

void Matrix::append_row(const std::vector<Elem>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    require(row.size() == cols_, ErrorCode::invalid_argument, "row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<Elem> Matrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::vector<std::size_t> row_reduce(const Field& f, Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < m.rows() && m(piv, col).value == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != lead)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(lead, c));
        const Elem scale = f.inv(m(lead, col));
        for (std::size_t c = col; c < m.cols(); ++c) m(lead, c) = f.mul(m(lead, c), scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, col).value == 0) continue;
            const Elem factor = f.neg(m(r, col));
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = f.add(m(r, c), f.mul(factor, m(lead, c)));
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return row_reduce(f, m).size(); }

std::vector<std::vector<Elem>> right_kernel(const Field& f, const Matrix& m) {
    Matrix r = m;
    const auto pivots = row_reduce(f, r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Elem>> left_kernel(const Field& f, const Matrix& m) { return right_kernel(f, m.transposed()); }

std::vector<Elem> solve_square(const Field& f, const Matrix& basis, const std::vector<Elem>& v) {
    const std::size_t n = basis.rows();
    require(basis.cols() == n && v.size() == n, ErrorCode::invalid_argument, "solve_square: shape mismatch");
    if (n == 0) return {};
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = basis(r, c);
        aug(r, n) = v[r];
    }
    const auto pivots = row_reduce(f, aug);
    require(pivots.size() == n && pivots.back() == n - 1, ErrorCode::precondition, "solve_square: singular basis");
    std::vector<Elem> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
    return x;
}

}  // namespace kst
