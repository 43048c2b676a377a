#include "mrdnn/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "kernel_table.hpp"

namespace mrdnn::kernels {
namespace {

// ===== scalar reference =====
// Broadcast kernels use std::fma so that the fused rounding matches the
// AVX2 variants exactly (same accumulation order, same contraction).

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc = std::fma(x[i], y[i], acc);
  return acc;
}

double squared_distance_scalar(std::size_t n, const double* x, const double* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - y[i];
    acc = std::fma(d, d, acc);
  }
  return acc;
}

void relu_scalar(std::size_t n, const double* x, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_mask_scalar(std::size_t n, const double* pre, double* g) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pre[i] > 0.0)) g[i] = 0.0;
  }
}

void gemm_nn_scalar(std::size_t m, std::size_t k, std::size_t n,
                    const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      double av = arow[p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] = std::fma(av, brow[j], crow[j]);
    }
  }
}

void gemm_tn_scalar(std::size_t m, std::size_t k, std::size_t n,
                    const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    const double* brow = b + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      double av = arow[p];
      double* crow = c + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] = std::fma(av, brow[j], crow[j]);
    }
  }
}

void gemm_nt_scalar(std::size_t m, std::size_t k, std::size_t n,
                    const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += dot_scalar(k, arow, b + j * k);
  }
}

void add_rows_scalar(std::size_t m, std::size_t n, const double* a, double* out) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] += arow[j];
  }
}

const detail::KernelTable scalar_table = {
    axpy_scalar,   dot_scalar,     squared_distance_scalar,
    relu_scalar,   relu_mask_scalar,
    gemm_nn_scalar, gemm_tn_scalar, gemm_nt_scalar, add_rows_scalar,
};

// ===== dispatch =====

struct Active {
  const detail::KernelTable* table;
  Backend which;
};

Active resolve(Backend request) {
  if (request == Backend::auto_detect) {
    const char* env = std::getenv("MRDNN_BACKEND");
    if (env != nullptr && std::string(env) != "auto")
      return resolve(backend_from_name(env));
    request = avx2_available() ? Backend::avx2 : Backend::scalar;
  }
  if (request == Backend::avx2) {
    if (!avx2_available())
      throw std::invalid_argument("kernels: avx2 backend unavailable on this machine");
    return {detail::avx2_table(), Backend::avx2};
  }
  return {&scalar_table, Backend::scalar};
}

Active& active() {
  static Active a = resolve(Backend::auto_detect);
  return a;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool avx2_available() { return detail::avx2_table() != nullptr && cpu_has_avx2(); }

Backend active_backend() { return active().which; }

void set_backend(Backend b) { active() = resolve(b); }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::auto_detect: return "auto";
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

Backend backend_from_name(const std::string& name) {
  if (name == "auto") return Backend::auto_detect;
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  throw std::invalid_argument("kernels: unknown backend '" + name + "'");
}

void axpy(std::size_t n, double a, const double* x, double* y) {
  active().table->axpy(n, a, x, y);
}

double dot(std::size_t n, const double* x, const double* y) {
  return active().table->dot(n, x, y);
}

double squared_distance(std::size_t n, const double* x, const double* y) {
  return active().table->squared_distance(n, x, y);
}

void relu(std::size_t n, const double* x, double* out) {
  active().table->relu(n, x, out);
}

void relu_mask(std::size_t n, const double* pre, double* g) {
  active().table->relu_mask(n, pre, g);
}

void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c) {
  active().table->gemm_nn(m, k, n, a, b, c);
}

void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c) {
  active().table->gemm_tn(m, k, n, a, b, c);
}

void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c) {
  active().table->gemm_nt(m, k, n, a, b, c);
}

void add_rows(std::size_t m, std::size_t n, const double* a, double* out) {
  active().table->add_rows(m, n, a, out);
}

}  // namespace mrdnn::kernels
