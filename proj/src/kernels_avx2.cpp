#include <cmath>
#include <cstddef>

#include "kernel_table.hpp"

// AVX2+FMA variants. Compiled only when the toolchain targets x86-64 and
// accepts -mavx2 -mfma; kernels.cpp checks CPUID before installing them.
//
// Each kernel mirrors the scalar reference: vector body over full 4-lane
// blocks, scalar std::fma tail for the remainder. Broadcast kernels keep
// per-element operation order identical to the reference, which is what
// makes them bit-exact across backends.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace mrdnn::kernels::detail {
namespace {

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  std::size_t i = 0;
  __m256d av = _mm256_set1_pd(a);
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

// Sums the four lanes left to right so the result is reproducible.
double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

double dot_avx2(std::size_t n, const double* x, const double* y) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total = std::fma(x[i], y[i], total);
  return total;
}

double squared_distance_avx2(std::size_t n, const double* x, const double* y) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    double d = x[i] - y[i];
    total = std::fma(d, d, total);
  }
  return total;
}

void relu_avx2(std::size_t n, const double* x, double* out) {
  std::size_t i = 0;
  __m256d zero = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_mask_avx2(std::size_t n, const double* pre, double* g) {
  std::size_t i = 0;
  __m256d zero = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d keep = _mm256_cmp_pd(_mm256_loadu_pd(pre + i), zero, _CMP_GT_OQ);
    _mm256_storeu_pd(g + i, _mm256_and_pd(_mm256_loadu_pd(g + i), keep));
  }
  for (; i < n; ++i) {
    if (!(pre[i] > 0.0)) g[i] = 0.0;
  }
}

void fma_row(std::size_t n, double a, const double* brow, double* crow) {
  std::size_t j = 0;
  __m256d av = _mm256_set1_pd(a);
  for (; j + 4 <= n; j += 4) {
    __m256d cv = _mm256_loadu_pd(crow + j);
    cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j), cv);
    _mm256_storeu_pd(crow + j, cv);
  }
  for (; j < n; ++j) crow[j] = std::fma(a, brow[j], crow[j]);
}

void gemm_nn_avx2(std::size_t m, std::size_t k, std::size_t n,
                  const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) fma_row(n, arow[p], b + p * n, crow);
  }
}

void gemm_tn_avx2(std::size_t m, std::size_t k, std::size_t n,
                  const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    const double* brow = b + i * n;
    for (std::size_t p = 0; p < k; ++p) fma_row(n, arow[p], brow, c + p * n);
  }
}

void gemm_nt_avx2(std::size_t m, std::size_t k, std::size_t n,
                  const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += dot_avx2(k, arow, b + j * k);
  }
}

void add_rows_avx2(std::size_t m, std::size_t n, const double* a, double* out) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d ov = _mm256_add_pd(_mm256_loadu_pd(out + j), _mm256_loadu_pd(arow + j));
      _mm256_storeu_pd(out + j, ov);
    }
    for (; j < n; ++j) out[j] += arow[j];
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t = {
      axpy_avx2,    dot_avx2,      squared_distance_avx2,
      relu_avx2,    relu_mask_avx2,
      gemm_nn_avx2, gemm_tn_avx2,  gemm_nt_avx2, add_rows_avx2,
  };
  return &t;
}

}  // namespace mrdnn::kernels::detail

#else

namespace mrdnn::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace mrdnn::kernels::detail

#endif
