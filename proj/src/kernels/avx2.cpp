// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
#include "toreesnn/kernels.hpp"

#include <immintrin.h>

namespace toreesnn::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void gemv_avx2(const double* w, const double* x, const double* bias, double* y,
               std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r)
        y[r] = (bias ? bias[r] : 0.0) + dot_avx2(w + r * cols, x, cols);
}

void gemv_t_avx2(const double* w, const double* x, double* y, std::size_t rows,
                 std::size_t cols) {
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t r = 0; r < rows; ++r)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + r * cols + c), _mm256_set1_pd(x[r]), acc);
        _mm256_storeu_pd(y + c, acc);
    }
    for (; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += w[r * cols + c] * x[r];
        y[c] = s;
    }
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void outer_avx2(const double* u, std::size_t nu, const double* v, std::size_t nv,
                double* out) {
    for (std::size_t i = 0; i < nu; ++i) {
        const __m256d ui = _mm256_set1_pd(u[i]);
        double* row = out + i * nv;
        std::size_t j = 0;
        for (; j + 4 <= nv; j += 4) _mm256_storeu_pd(row + j, _mm256_mul_pd(ui, _mm256_loadu_pd(v + j)));
        for (; j < nv; ++j) row[j] = u[i] * v[j];
    }
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

constexpr KernelTable kAvx2{dot_avx2, gemv_avx2, gemv_t_avx2, axpy_avx2, outer_avx2,
                            sum_sq_diff_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace toreesnn::kernels
