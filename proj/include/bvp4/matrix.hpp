#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bvp4 {

/// Dense row-major matrix. Sizes here are small (N up to a few hundred), so
/// no banded or sparse storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

std::vector<double> matvec(const Matrix& m, std::span<const double> x);
Matrix matmul(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);
double max_asymmetry(const Matrix& m);

/// Solves the symmetric system s x = rhs by LDL^T without pivoting. Returns
/// false when a pivot falls below pivot_floor in magnitude (the caller is
/// expected to fall back to another step).
bool ldlt_solve(const Matrix& s, std::span<const double> rhs, std::vector<double>& out,
                double pivot_floor);

/// Solves a general square system by Gaussian elimination with partial
/// pivoting. Returns false on a (numerically) singular matrix.
bool lu_solve(Matrix a, std::vector<double> rhs, std::vector<double>& out);

/// Numerical rank by Gaussian elimination with full pivoting: the number of
/// pivots whose magnitude exceeds threshold.
std::size_t numerical_rank(Matrix b, double threshold);

}  // namespace bvp4
