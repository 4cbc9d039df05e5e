#include "toreesnn/kernels.hpp"

#include <arm_neon.h>

namespace toreesnn::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void gemv_neon(const double* w, const double* x, const double* bias, double* y,
               std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r)
        y[r] = (bias ? bias[r] : 0.0) + dot_neon(w + r * cols, x, cols);
}

void gemv_t_neon(const double* w, const double* x, double* y, std::size_t rows,
                 std::size_t cols) {
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t r = 0; r < rows; ++r)
            acc = vfmaq_n_f64(acc, vld1q_f64(w + r * cols + c), x[r]);
        vst1q_f64(y + c, acc);
    }
    for (; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += w[r * cols + c] * x[r];
        y[c] = s;
    }
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), alpha));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void outer_neon(const double* u, std::size_t nu, const double* v, std::size_t nv,
                double* out) {
    for (std::size_t i = 0; i < nu; ++i) {
        double* row = out + i * nv;
        std::size_t j = 0;
        for (; j + 2 <= nv; j += 2) vst1q_f64(row + j, vmulq_n_f64(vld1q_f64(v + j), u[i]));
        for (; j < nv; ++j) row[j] = u[i] * v[j];
    }
}

double sum_sq_diff_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

constexpr KernelTable kNeon{dot_neon, gemv_neon, gemv_t_neon, axpy_neon, outer_neon,
                            sum_sq_diff_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace toreesnn::kernels
