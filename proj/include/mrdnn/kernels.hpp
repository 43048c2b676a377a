#pragma once

#include <cstddef>
#include <string>

// Dispatched numeric kernels. Every kernel has a scalar reference
// implementation; on x86-64 built with AVX2+FMA support there is a
// vectorized variant as well. The active variant is resolved once at
// startup from CPUID, and can be overridden with set_backend() or the
// MRDNN_BACKEND environment variable (values: auto, scalar, avx2).
//
// Equivalence contract, pinned by tests:
//  - broadcast/elementwise kernels (axpy, gemm_nn, gemm_tn, add_rows,
//    relu, relu_mask) are bit-identical across backends. The scalar
//    reference uses std::fma in the same accumulation order as the
//    vector code, so fused rounding matches lane for lane.
//  - reduction kernels (dot, squared_distance, gemm_nt) reassociate
//    partial sums across lanes and agree only to rounding error.

namespace mrdnn::kernels {

enum class Backend { auto_detect, scalar, avx2 };

// True when the running CPU reports AVX2 and FMA.
bool cpu_has_avx2();

// True when the avx2 backend was compiled into this binary and the CPU
// supports it.
bool avx2_available();

// Resolved backend currently in use; never auto_detect.
Backend active_backend();

// Force a backend. auto_detect re-runs the startup resolution.
// Throws std::invalid_argument if the backend is unavailable.
void set_backend(Backend b);

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);

// y[i] += a * x[i]
void axpy(std::size_t n, double a, const double* x, double* y);

// sum_i x[i] * y[i]
double dot(std::size_t n, const double* x, const double* y);

// sum_i (x[i] - y[i])^2
double squared_distance(std::size_t n, const double* x, const double* y);

// out[i] = max(x[i], 0)
void relu(std::size_t n, const double* x, double* out);

// g[i] = pre[i] > 0 ? g[i] : 0   (derivative at 0 taken as 0)
void relu_mask(std::size_t n, const double* pre, double* g);

// C (m x n) += A (m x k) * B (k x n), all row-major.
void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c);

// C (k x n) += A^T * B with A (m x k), B (m x n).
void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c);

// C (m x n) += A * B^T with A (m x k), B (n x k).
void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c);

// out[j] += sum_i A[i][j] for A (m x n).
void add_rows(std::size_t m, std::size_t n, const double* a, double* out);

}  // namespace mrdnn::kernels
