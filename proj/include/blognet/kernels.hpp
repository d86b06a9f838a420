#pragma once

#include <cstddef>
#include <cstdint>

// Low-level numeric kernels behind the linear algebra and the statistics
// reductions. Every kernel has a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at startup from
// CPU capabilities. The BLOGNET_KERNELS environment variable ("scalar",
// "avx2", "neon") overrides the automatic choice; tests use force_backend()
// to compare backends on identical data.

namespace blognet::kernels {

enum class Backend { Scalar, Avx2, Neon };

/// Table of function pointers for one backend.
struct Ops {
    double (*dot)(const double* x, const double* y, std::size_t n);
    void (*axpy)(double a, const double* x, double* y, std::size_t n);  // y += a*x
    void (*scal)(double a, double* x, std::size_t n);                   // x *= a
    double (*sum)(const double* x, std::size_t n);
    double (*sumsq_diff)(const double* x, std::size_t n, double c);     // sum (x-c)^2
    void (*spmv)(std::size_t n, const std::int64_t* row_ptr, const std::int32_t* col,
                 const double* val, const double* x, double* y);        // y = A x
};

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);

/// Switch the active backend; returns false (and leaves the current backend
/// in place) when the requested one is not available on this machine.
bool force_backend(Backend b);

const Ops& ops();

inline double dot(const double* x, const double* y, std::size_t n) { return ops().dot(x, y, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { ops().axpy(a, x, y, n); }
inline void scal(double a, double* x, std::size_t n) { ops().scal(a, x, n); }
inline double sum(const double* x, std::size_t n) { return ops().sum(x, n); }
inline double sumsq_diff(const double* x, std::size_t n, double c) { return ops().sumsq_diff(x, n, c); }
inline void spmv(std::size_t n, const std::int64_t* row_ptr, const std::int32_t* col,
                 const double* val, const double* x, double* y) {
    ops().spmv(n, row_ptr, col, val, x, y);
}

struct MeanVar {
    double mean;
    double var;  // population variance
};

/// Two-pass mean and population variance.
MeanVar mean_var(const double* x, std::size_t n);

}  // namespace blognet::kernels
