#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mrdnn/linalg.hpp"
#include "mrdnn/rng.hpp"

using namespace mrdnn;
using linalg::Matrix;

namespace {

Matrix random_symmetric(std::size_t n, rng::Engine& e) {
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = e.uniform(-2.0, 2.0);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

double frob(const Matrix& m) { return std::sqrt(linalg::frobenius_sq(m)); }

}  // namespace

TEST_CASE("matmul identity and hand case") {
  Matrix a = {{1, 2}, {3, 4}, {5, 6}};
  Matrix id = Matrix::identity(3);
  CHECK(linalg::matmul(id, a) == a);

  Matrix b = {{5, 6}, {7, 8}};
  Matrix c = linalg::matmul(a, b);
  Matrix want = {{19, 22}, {43, 50}, {67, 78}};
  CHECK(c == want);
}

TEST_CASE("matmul shape mismatch throws") {
  Matrix a(2, 3), b(2, 3);
  CHECK_THROWS_AS(linalg::matmul(a, b), std::invalid_argument);
  CHECK_THROWS_AS(linalg::matmul_tn(a, Matrix(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(linalg::matmul_nt(a, Matrix(3, 2)), std::invalid_argument);
}

TEST_CASE("transpose is an involution and matches tn/nt products") {
  rng::Engine e(11);
  Matrix a(4, 6);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = e.uniform(-1, 1);

  CHECK(linalg::transpose(linalg::transpose(a)) == a);

  Matrix b(4, 3);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = e.uniform(-1, 1);
  Matrix tn = linalg::matmul_tn(a, b);
  Matrix ref = linalg::matmul(linalg::transpose(a), b);
  for (std::size_t i = 0; i < tn.size(); ++i)
    CHECK(tn.data()[i] == doctest::Approx(ref.data()[i]).epsilon(1e-12));

  Matrix c(5, 6);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = e.uniform(-1, 1);
  Matrix nt = linalg::matmul_nt(a, c);
  Matrix ref2 = linalg::matmul(a, linalg::transpose(c));
  for (std::size_t i = 0; i < nt.size(); ++i)
    CHECK(nt.data()[i] == doctest::Approx(ref2.data()[i]).epsilon(1e-12));
}

TEST_CASE("column sums and row vector add") {
  Matrix a = {{1, 2, 3}, {4, 5, 6}};
  CHECK(linalg::column_sums(a) == std::vector<double>{5, 7, 9});
  linalg::add_row_vector(a, {10, 20, 30});
  CHECK(a == Matrix{{11, 22, 33}, {14, 25, 36}});
}

TEST_CASE("rowwise softmax") {
  Matrix a = {{0, 0, 0, 0}, {1, 2, 3, 4}, {1000, 1000, 1000, 1000}};
  Matrix z = linalg::rowwise_softmax(a);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < z.cols(); ++j) {
      sum += z(i, j);
      CHECK(z(i, j) > 0.0);
      CHECK(std::isfinite(z(i, j)));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  // constant row -> uniform
  for (std::size_t j = 0; j < 4; ++j) CHECK(z(0, j) == doctest::Approx(0.25));

  // shift invariance
  Matrix shifted = {{6, 7, 8, 9}};
  Matrix zs = linalg::rowwise_softmax(shifted);
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(zs(0, j) == doctest::Approx(z(1, j)).epsilon(1e-12));
}

TEST_CASE("softmax vjp matches finite differences") {
  rng::Engine e(3);
  std::size_t n = 5;
  std::vector<double> pre(n), g(n);
  for (auto& v : pre) v = e.uniform(-2, 2);
  for (auto& v : g) v = e.uniform(-1, 1);

  auto f = [&](const std::vector<double>& p) {
    Matrix m(1, n);
    for (std::size_t j = 0; j < n; ++j) m(0, j) = p[j];
    Matrix z = linalg::rowwise_softmax(m);
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += g[j] * z(0, j);
    return s;
  };

  Matrix m(1, n);
  for (std::size_t j = 0; j < n; ++j) m(0, j) = pre[j];
  Matrix z = linalg::rowwise_softmax(m);
  std::vector<double> vjp(n);
  linalg::softmax_vjp_row(n, z.row(0), g.data(), vjp.data());

  double eps = 1e-6;
  for (std::size_t j = 0; j < n; ++j) {
    auto plus = pre, minus = pre;
    plus[j] += eps;
    minus[j] -= eps;
    double numeric = (f(plus) - f(minus)) / (2 * eps);
    CHECK(vjp[j] == doctest::Approx(numeric).epsilon(1e-7));
  }
}

TEST_CASE("relu matrix") {
  Matrix a = {{-1, 2}, {0, -3}};
  CHECK(linalg::relu(a) == Matrix{{0, 2}, {0, 0}});
}

TEST_CASE("sym_eig diagonal case") {
  Matrix s = {{3, 0}, {0, 1}};
  auto eig = linalg::sym_eig(s);
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(eig.vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(eig.vectors(1, 0)) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 1)) < 1e-12);
}

TEST_CASE("sym_eig 2x2 closed form") {
  Matrix s = {{2, 1}, {1, 2}};
  auto eig = linalg::sym_eig(s);
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-13));
  double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(r).epsilon(1e-12));
  CHECK(std::abs(eig.vectors(1, 0)) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("sym_eig matches frozen reference values") {
  // Eigenvalues of this matrix computed with an independent solver.
  Matrix s = {{4.0, 1.0, -2.0, 0.5},
              {1.0, 3.0, 0.0, 1.5},
              {-2.0, 0.0, 5.0, -1.0},
              {0.5, 1.5, -1.0, 2.0}};
  auto eig = linalg::sym_eig(s);
  CHECK(eig.values[0] == doctest::Approx(7.0495162730364171).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(3.858181525316084).epsilon(1e-12));
  CHECK(eig.values[2] == doctest::Approx(2.4510237937334756).epsilon(1e-12));
  CHECK(eig.values[3] == doctest::Approx(0.6412784079140218).epsilon(1e-12));
}

TEST_CASE("sym_eig reconstruction and orthonormality") {
  rng::Engine e(99);
  for (std::size_t n : {1, 5, 40}) {
    Matrix s = random_symmetric(n, e);
    auto eig = linalg::sym_eig(s);

    // descending order
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.values[i] >= eig.values[i + 1]);

    // V^T V = I to 1e-9
    Matrix vtv = linalg::matmul_tn(eig.vectors, eig.vectors);
    Matrix id = Matrix::identity(n);
    for (std::size_t i = 0; i < n * n; ++i)
      CHECK(std::abs(vtv.data()[i] - id.data()[i]) < 1e-9);

    // V Lambda V^T = S to 1e-8
    Matrix vl = eig.vectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) vl(i, j) *= eig.values[j];
    Matrix rec = linalg::matmul_nt(vl, eig.vectors);
    double scale = std::max(frob(s), 1.0);
    for (std::size_t i = 0; i < n * n; ++i)
      CHECK(std::abs(rec.data()[i] - s.data()[i]) < 1e-8 * scale);

    // S v = lambda v within 1e-8 * ||S||
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t i = 0; i < n; ++i) {
        double sv = 0;
        for (std::size_t j = 0; j < n; ++j) sv += s(i, j) * eig.vectors(j, p);
        CHECK(std::abs(sv - eig.values[p] * eig.vectors(i, p)) < 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("sym_eig input validation") {
  CHECK_THROWS_AS(linalg::sym_eig(Matrix(2, 3)), std::invalid_argument);
  Matrix bad = {{1, 2}, {0, 1}};
  CHECK_THROWS_AS(linalg::sym_eig(bad), std::invalid_argument);
}
