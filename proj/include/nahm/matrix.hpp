#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "nahm/rational.hpp"

namespace nahm {

// Dense row-major matrix of exact rationals.
class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols);
  MatrixQ(std::initializer_list<std::initializer_list<Rational>> rows);
  explicit MatrixQ(const std::vector<std::vector<Rational>>& rows);

  static MatrixQ identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_symmetric() const;
  MatrixQ transposed() const;
  MatrixQ scaled(const Rational& factor) const;

  friend bool operator==(const MatrixQ& a, const MatrixQ& b);
  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

std::vector<Rational> operator*(const MatrixQ& m, const std::vector<Rational>& v);
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Exact Gauss-Jordan. Throws SingularMatrixError.
MatrixQ invert(const MatrixQ& m);

MatrixQ kronecker(const MatrixQ& a, const MatrixQ& b);

Rational determinant(const MatrixQ& m);

// Determinants of the leading k x k blocks, k = 1..n.
std::vector<Rational> leading_principal_minors(const MatrixQ& m);

// Symmetric with all leading principal minors positive.
bool is_positive_definite(const MatrixQ& m);

}  // namespace nahm
