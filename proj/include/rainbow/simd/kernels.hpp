#pragma once

// Data-parallel inner loops used by the cut-norm search, the quadratic
// maximin optimizer and the tree-density dynamic program.
//
// Every kernel has a scalar reference implementation and an AVX2/FMA
// variant. The variant is picked once at first use from the CPU feature
// flags; RT_SIMD=scalar in the environment (or set_isa) forces the
// reference path. Variants agree with the reference up to summation order.

#include <cstddef>
#include <string_view>

namespace rainbow::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[r] = sum_c A[r*cols + c] * x[c]
  void (*matvec)(const double* A, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i max(0, v[i])
  double (*positive_sum)(const double* v, std::size_t n);
  // y[i] = a[i] * b[i]
  void (*hadamard)(const double* a, const double* b, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
// Null when the AVX2 translation unit was not built (non-x86 targets).
const KernelTable* avx2_kernels();

bool cpu_has_avx2();

// Currently selected table.
const KernelTable& kernels();
Isa active_isa();
// Returns false (and keeps the current selection) if the ISA is unavailable.
bool set_isa(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(const double* a, const double* b, std::size_t n) {
  return kernels().dot(a, b, n);
}
inline void matvec(const double* A, const double* x, double* y, std::size_t rows,
                   std::size_t cols) {
  kernels().matvec(A, x, y, rows, cols);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  kernels().axpy(alpha, x, y, n);
}
inline double positive_sum(const double* v, std::size_t n) { return kernels().positive_sum(v, n); }
inline void hadamard(const double* a, const double* b, double* y, std::size_t n) {
  kernels().hadamard(a, b, y, n);
}

// x^T A x for a row-major m x m table; scratch must hold m doubles.
inline double quadratic_form(const double* A, const double* x, double* scratch, std::size_t m) {
  matvec(A, x, scratch, m, m);
  return dot(scratch, x, m);
}

}  // namespace rainbow::simd
