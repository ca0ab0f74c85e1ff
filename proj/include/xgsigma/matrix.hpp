#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "xgsigma/errors.hpp"
#include "xgsigma/rational.hpp"

namespace xgs {

/// Dense row-major matrix over BigInt or Rat.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require_dim(rows[i].size(), cols, "Matrix::from_rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vec(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> col_vec(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require_dim(cols_, o.rows_, "Matrix::operator*");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  std::vector<T> apply(std::span<const T> x) const {
    require_dim(x.size(), cols_, "Matrix::apply");
    std::vector<T> y(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0}, as primitive integer vectors (deterministic order).
std::vector<IntVec> nullspace(const RatMatrix& m);

/// Basis of the orthogonal complement of span(vectors) inside Q^dim.
std::vector<IntVec> orthogonal_complement(const std::vector<RatVec>& vectors, std::size_t dim);

/// Some matrix L with L m = I; requires full column rank.
RatMatrix left_inverse(const RatMatrix& m);

/// Integer determinant via fraction-free elimination.
BigInt determinant(const IntMatrix& m);

std::string format_matrix(const RatMatrix& m);

}  // namespace xgs
