#pragma once

#include <cstddef>

// Internal: one function pointer per kernel, swapped as a unit when the
// backend changes.

namespace mrdnn::kernels::detail {

struct KernelTable {
  void (*axpy)(std::size_t, double, const double*, double*);
  double (*dot)(std::size_t, const double*, const double*);
  double (*squared_distance)(std::size_t, const double*, const double*);
  void (*relu)(std::size_t, const double*, double*);
  void (*relu_mask)(std::size_t, const double*, double*);
  void (*gemm_nn)(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
  void (*gemm_tn)(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
  void (*gemm_nt)(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
  void (*add_rows)(std::size_t, std::size_t, const double*, double*);
};

// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

}  // namespace mrdnn::kernels::detail
