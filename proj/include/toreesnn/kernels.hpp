#pragma once

// Dense double-precision inner loops used by the layer arithmetic.
//
// Every kernel has a scalar reference implementation. Vector variants (AVX2+FMA
// on x86-64, NEON on AArch64) are compiled into separate translation units and
// picked once at startup from the CPU feature flags. The environment variable
// TOREESNN_KERNELS=scalar forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace toreesnn::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

struct KernelTable {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y = W x + bias, W row-major (rows x cols); bias may be null
    void (*gemv)(const double* w, const double* x, const double* bias, double* y,
                 std::size_t rows, std::size_t cols);
    // y = W^T x, W row-major (rows x cols), x has `rows` entries, y has `cols`
    void (*gemv_t)(const double* w, const double* x, double* y, std::size_t rows,
                   std::size_t cols);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out = u v^T, out row-major (nu x nv)
    void (*outer)(const double* u, std::size_t nu, const double* v, std::size_t nv,
                  double* out);
    // sum_i (a[i] - b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();
// Null when the variant was not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Best backend this CPU supports.
Backend detect_backend();

Backend active_backend();
// Throws std::invalid_argument when the backend is unavailable on this machine.
void set_backend(Backend b);
bool backend_available(Backend b);

const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    return active().sum_sq_diff(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace toreesnn::kernels
