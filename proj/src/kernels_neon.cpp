// NEON kernel variants, aarch64 only.
#include "blognet/kernels.hpp"

#if BLOGNET_HAVE_NEON

#include <arm_neon.h>

namespace blognet::kernels::detail {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_neon(double a, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double sumsq_diff_neon(const double* x, std::size_t n, double c) {
    const float64x2_t vc = vdupq_n_f64(c);
    float64x2_t acc0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(x + i), vc);
        acc0 = vfmaq_f64(acc0, d, d);
    }
    double acc = vaddvq_f64(acc0);
    for (; i < n; ++i) {
        const double d = x[i] - c;
        acc += d * d;
    }
    return acc;
}

void spmv_neon(std::size_t n, const std::int64_t* row_ptr, const std::int32_t* col,
               const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < n; ++r) {
        const std::int64_t lo = row_ptr[r];
        const std::int64_t hi = row_ptr[r + 1];
        float64x2_t acc = vdupq_n_f64(0.0);
        std::int64_t k = lo;
        for (; k + 2 <= hi; k += 2) {
            float64x2_t xv = {x[col[k]], x[col[k + 1]]};
            acc = vfmaq_f64(acc, vld1q_f64(val + k), xv);
        }
        double s = vaddvq_f64(acc);
        for (; k < hi; ++k) s += val[k] * x[col[k]];
        y[r] = s;
    }
}

}  // namespace

const Ops& neon_ops() {
    static const Ops ops = {dot_neon, axpy_neon, scal_neon,
                            sum_neon, sumsq_diff_neon, spmv_neon};
    return ops;
}

}  // namespace blognet::kernels::detail

#endif  // BLOGNET_HAVE_NEON
