#ifndef SYMHYP_LINALG_HPP
#define SYMHYP_LINALG_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symhyp/gf.hpp"

namespace symhyp {

using gf::Elem;
using gf::Field;

/// Dense row-major matrix over F_q.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Field::zero()) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    /// Submatrix made of the listed columns, all rows.
    [[nodiscard]] Matrix columns(std::span<const std::size_t> which) const {
        Matrix out(rows_, which.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < which.size(); ++j) out(r, j) = (*this)(r, which[j]);
        return out;
    }

    [[nodiscard]] Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    [[nodiscard]] bool is_zero() const noexcept {
        for (auto e : data_)
            if (e != Field::zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

inline Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Elem acc = Field::zero();
            for (std::size_t t = 0; t < a.cols(); ++t) acc = F.add(acc, F.mul(a(i, t), b(t, j)));
            out(i, j) = acc;
        }
    return out;
}

/// Determinant by Gaussian elimination with row pivoting.
inline Elem determinant(const Field& F, Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Elem det = Field::one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == Field::zero()) ++piv;
        if (piv == n) return Field::zero();
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
            det = F.neg(det);
        }
        const Elem p = m(col, col);
        det = F.mul(det, p);
        const Elem p_inv = F.inv(p);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == Field::zero()) continue;
            const Elem factor = F.mul(m(r, col), p_inv);
            for (std::size_t c = col; c < n; ++c) m(r, c) = F.sub(m(r, c), F.mul(factor, m(col, c)));
        }
    }
    return det;
}

inline std::size_t rank(const Field& F, Matrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, col) == Field::zero()) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(r, c));
        const Elem p_inv = F.inv(m(r, col));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col) == Field::zero()) continue;
            const Elem factor = F.mul(m(i, col), p_inv);
            for (std::size_t c = col; c < m.cols(); ++c) m(i, c) = F.sub(m(i, c), F.mul(factor, m(r, c)));
        }
        ++r;
    }
    return r;
}

}  // namespace symhyp

#endif  // SYMHYP_LINALG_HPP
