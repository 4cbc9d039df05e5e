#include "toreesnn/kernels.hpp"

namespace toreesnn::kernels {
namespace {

double dot_ref(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void gemv_ref(const double* w, const double* x, const double* bias, double* y,
              std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        double s = bias ? bias[r] : 0.0;
        const double* row = w + r * cols;
        for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
        y[r] = s;
    }
}

void gemv_t_ref(const double* w, const double* x, double* y, std::size_t rows,
                std::size_t cols) {
    for (std::size_t c = 0; c < cols; ++c) y[c] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = w + r * cols;
        for (std::size_t c = 0; c < cols; ++c) y[c] += row[c] * x[r];
    }
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void outer_ref(const double* u, std::size_t nu, const double* v, std::size_t nv,
               double* out) {
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nv; ++j) out[i * nv + j] = u[i] * v[j];
}

double sum_sq_diff_ref(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

constexpr KernelTable kScalar{dot_ref, gemv_ref, gemv_t_ref, axpy_ref, outer_ref,
                              sum_sq_diff_ref};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace toreesnn::kernels
