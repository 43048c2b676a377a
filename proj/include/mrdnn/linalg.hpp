#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

// Dense row-major float64 matrix plus the handful of operations the rest
// of the library needs. Matrix products route through the dispatched
// kernels; the symmetric eigensolver is a cyclic Jacobi sweep.

namespace mrdnn::linalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool operator==(const Matrix& other) const = default;

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// c = a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// c = a^T * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// c = a * b^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

void add_inplace(Matrix& a, const Matrix& b);
void scale_inplace(Matrix& a, double s);

// Per-column sums, used for bias gradients.
std::vector<double> column_sums(const Matrix& a);

// Adds v to every row.
void add_row_vector(Matrix& a, const std::vector<double>& v);

// Numerically shifted softmax over each row. Rows sum to 1.
Matrix rowwise_softmax(const Matrix& a);

// d(softmax)/d(pre) applied to an upstream gradient for one row:
// out_p = z_p * (g_p - sum_q g_q z_q), with z the softmax output.
void softmax_vjp_row(std::size_t n, const double* z, const double* g, double* out);

Matrix relu(const Matrix& a);

// Sum of squared entries.
double frobenius_sq(const Matrix& a);

double max_abs(const Matrix& a);

struct SymEig {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns are the unit eigenvectors
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Throws std::invalid_argument if the input is visibly asymmetric.
SymEig sym_eig(const Matrix& s);

}  // namespace mrdnn::linalg
