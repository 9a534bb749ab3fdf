#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace perarfima {

// Small dense row-major matrix. Sizes here are S x S companion blocks and
// their stacked companion forms, so everything is direct O(n^3) with no
// blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const double* data() const { return a_.data(); }
  double* data() { return a_.data(); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);

  Matrix transpose() const;
  double max_abs() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Solves A X = B by LU with partial pivoting. Throws std::domain_error when
// A is singular to working precision.
Matrix solve(const Matrix& a, const Matrix& b);

Matrix inverse(const Matrix& a);

// All eigenvalues of a general real square matrix: Householder reduction to
// Hessenberg form followed by the Francis double-shift QR iteration.
std::vector<std::complex<double>> eigenvalues(Matrix a);

}  // namespace perarfima
