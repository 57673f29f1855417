#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace blade {

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Reduces a square matrix to upper-Hessenberg form by Householder
/// similarity transforms (eigenvalues are preserved).
[[nodiscard]] DenseMatrix hessenberg(DenseMatrix a);

/// All eigenvalues of a square matrix: Householder reduction to Hessenberg
/// form, then Francis double-shift QR with deflation. Throws NumericalError
/// if an eigenvalue needs more than `max_iterations` sweeps.
[[nodiscard]] std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a,
                                                            int max_iterations = 60);

/// Solves a x = b by Gaussian elimination with partial pivoting. Throws
/// NumericalError if the matrix is numerically singular.
[[nodiscard]] std::vector<double> solve(DenseMatrix a, std::vector<double> b);

/// Solves a X = B column-wise for several right-hand sides (B is n x k).
[[nodiscard]] DenseMatrix solve(DenseMatrix a, DenseMatrix b);

}  // namespace blade
