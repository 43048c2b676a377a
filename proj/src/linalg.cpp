#include "mrdnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mrdnn/kernels.hpp"

namespace mrdnn::linalg {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("linalg: " + what);
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul shape mismatch " + shape(a) + " * " + shape(b));
  Matrix c(a.rows(), b.cols());
  kernels::gemm_nn(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "matmul_tn shape mismatch " + shape(a) + " ^T * " + shape(b));
  Matrix c(a.cols(), b.cols());
  kernels::gemm_tn(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "matmul_nt shape mismatch " + shape(a) + " * " + shape(b) + "^T");
  Matrix c(a.rows(), b.rows());
  kernels::gemm_nt(a.rows(), a.cols(), b.rows(), a.data(), b.data(), c.data());
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

void add_inplace(Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "add shape mismatch " + shape(a) + " + " + shape(b));
  kernels::axpy(a.size(), 1.0, b.data(), a.data());
}

void scale_inplace(Matrix& a, double s) {
  double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) p[i] *= s;
}

std::vector<double> column_sums(const Matrix& a) {
  std::vector<double> out(a.cols(), 0.0);
  kernels::add_rows(a.rows(), a.cols(), a.data(), out.data());
  return out;
}

void add_row_vector(Matrix& a, const std::vector<double>& v) {
  require(v.size() == a.cols(), "row vector length mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    kernels::axpy(a.cols(), 1.0, v.data(), a.row(i));
}

Matrix rowwise_softmax(const Matrix& a) {
  Matrix z(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* in = a.row(i);
    double* out = z.row(i);
    double mx = in[0];
    for (std::size_t j = 1; j < a.cols(); ++j) mx = std::max(mx, in[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out[j] = std::exp(in[j] - mx);
      sum += out[j];
    }
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] /= sum;
  }
  return z;
}

void softmax_vjp_row(std::size_t n, const double* z, const double* g, double* out) {
  double gz = kernels::dot(n, g, z);
  for (std::size_t j = 0; j < n; ++j) out[j] = z[j] * (g[j] - gz);
}

Matrix relu(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  kernels::relu(a.size(), a.data(), out.data());
  return out;
}

double frobenius_sq(const Matrix& a) {
  return kernels::dot(a.size(), a.data(), a.data());
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

SymEig sym_eig(const Matrix& s) {
  require(s.rows() == s.cols(), "sym_eig needs a square matrix, got " + shape(s));
  std::size_t n = s.rows();
  double scale = max_abs(s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(std::abs(s(i, j) - s(j, i)) <= 1e-9 * std::max(scale, 1.0),
              "sym_eig input is not symmetric");

  // Work on the symmetrized copy; accumulate rotations into v.
  Matrix a = s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = m;
      a(j, i) = m;
    }
  Matrix v = Matrix::identity(n);

  auto off_diag_sq = [&] {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) t += 2.0 * a(i, j) * a(i, j);
    return t;
  };

  double stop = 1e-28 * std::max(frobenius_sq(a), 1e-300);
  for (int sweep = 0; sweep < 64 && off_diag_sq() > stop; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - sn * aiq;
          a(i, q) = sn * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - sn * aqi;
          a(q, i) = sn * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - sn * viq;
          v(i, q) = sn * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymEig out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace mrdnn::linalg
