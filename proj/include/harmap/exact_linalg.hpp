#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "harmap/errors.hpp"
#include "harmap/scalar.hpp"

namespace harmap {

/// Dense row-major matrix.  Only what the exact kernel/rank code needs.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  std::vector<T> apply(const std::vector<T>& u) const {
    if (u.size() != cols_) throw PreconditionError("matrix-vector size mismatch");
    std::vector<T> out(rows_, ScalarTraits<T>::zero());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * u[c];
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Row echelon form from fraction-free (Bareiss) elimination plus the pivot
/// column of each nonzero row.
template <ExactScalar T>
struct Echelon {
  Matrix<T> form;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
  /// Sign-tracked product of pivots; equals det for square input.
  T determinant_factor;
};

/// Bareiss elimination: each update is a 2x2 cross product divided exactly by
/// the previous pivot, so no inverses are formed during elimination.
template <ExactScalar T>
Echelon<T> bareiss_echelon(Matrix<T> m) {
  using Traits = ScalarTraits<T>;
  std::vector<std::size_t> pivots;
  T prev = Traits::one();
  bool negate = false;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && Traits::is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      m.swap_rows(p, row);
      negate = !negate;
    }
    const T pivot = m(row, col);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      const T factor = m(r, col);
      for (std::size_t c = col + 1; c < m.cols(); ++c) m(r, c) = (pivot * m(r, c) - factor * m(row, c)) / prev;
      m(r, col) = Traits::zero();
    }
    // Rows past the pivot row were scaled consistently; earlier rows keep
    // their values, which is all back-substitution needs.
    prev = pivot;
    pivots.push_back(col);
    ++row;
  }
  T det = prev;
  if (pivots.size() < m.rows() || pivots.size() < m.cols()) det = Traits::zero();
  if (negate) det = -det;
  return {std::move(m), std::move(pivots), std::move(det)};
}

template <ExactScalar T>
std::size_t exact_rank(const Matrix<T>& m) {
  return bareiss_echelon(m).rank();
}

/// Determinant of a square matrix (the last Bareiss pivot).
template <ExactScalar T>
T exact_determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  if (m.rows() == 0) return ScalarTraits<T>::one();
  return bareiss_echelon(m).determinant_factor;
}

/// Basis of the right kernel, one vector per free column with that free
/// coordinate set to one and the other free coordinates zero.
template <ExactScalar T>
std::vector<std::vector<T>> exact_kernel(const Matrix<T>& m) {
  using Traits = ScalarTraits<T>;
  const Echelon<T> e = bareiss_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> u(m.cols(), Traits::zero());
    u[free] = Traits::one();
    for (std::size_t r = e.rank(); r-- > 0;) {
      const std::size_t pc = e.pivot_cols[r];
      T acc = Traits::zero();
      for (std::size_t c = pc + 1; c < m.cols(); ++c)
        if (!Traits::is_zero(u[c])) acc += e.form(r, c) * u[c];
      u[pc] = -acc / e.form(r, pc);
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

}  // namespace harmap
