#include "rainbow/simd/kernels.hpp"

namespace rainbow::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void matvec_scalar(const double* A, const double* x, double* y, std::size_t rows,
                   std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(A + r * cols, x, cols);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double positive_sum_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] > 0.0) acc += v[i];
  return acc;
}

void hadamard_scalar(const double* a, const double* b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{dot_scalar, matvec_scalar, axpy_scalar, positive_sum_scalar,
                                 hadamard_scalar};
  return table;
}

}  // namespace rainbow::simd
