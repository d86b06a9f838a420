#include "blognet/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "blognet/csr.hpp"

namespace blognet::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sumsq_diff_scalar(const double* x, std::size_t n, double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - c;
        acc += d * d;
    }
    return acc;
}

void spmv_scalar(std::size_t n, const std::int64_t* row_ptr, const std::int32_t* col,
                 const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

constexpr Ops kScalarOps = {dot_scalar, axpy_scalar, scal_scalar,
                            sum_scalar, sumsq_diff_scalar, spmv_scalar};

}  // namespace

namespace detail {
#if BLOGNET_HAVE_AVX2
const Ops& avx2_ops();
bool avx2_supported();
#endif
#if BLOGNET_HAVE_NEON
const Ops& neon_ops();
#endif
}  // namespace detail

namespace {

struct Dispatch {
    Backend backend = Backend::Scalar;
    const Ops* ops = &kScalarOps;
};

Backend detect_backend() {
    if (const char* env = std::getenv("BLOGNET_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return Backend::Scalar;
#if BLOGNET_HAVE_AVX2
        if (want == "avx2" && detail::avx2_supported()) return Backend::Avx2;
#endif
#if BLOGNET_HAVE_NEON
        if (want == "neon") return Backend::Neon;
#endif
        return Backend::Scalar;
    }
#if BLOGNET_HAVE_AVX2
    if (detail::avx2_supported()) return Backend::Avx2;
#endif
#if BLOGNET_HAVE_NEON
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

const Ops* ops_for(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &kScalarOps;
        case Backend::Avx2:
#if BLOGNET_HAVE_AVX2
            return &detail::avx2_ops();
#else
            return nullptr;
#endif
        case Backend::Neon:
#if BLOGNET_HAVE_NEON
            return &detail::neon_ops();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Dispatch& dispatch() {
    static Dispatch d = [] {
        Dispatch init;
        init.backend = detect_backend();
        init.ops = ops_for(init.backend);
        return init;
    }();
    return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

bool backend_available(Backend b) {
    if (b == Backend::Scalar) return true;
#if BLOGNET_HAVE_AVX2
    if (b == Backend::Avx2) return detail::avx2_supported();
#endif
#if BLOGNET_HAVE_NEON
    if (b == Backend::Neon) return true;
#endif
    return false;
}

bool force_backend(Backend b) {
    if (!backend_available(b)) return false;
    dispatch().backend = b;
    dispatch().ops = ops_for(b);
    return true;
}

const Ops& ops() { return *dispatch().ops; }

MeanVar mean_var(const double* x, std::size_t n) {
    if (n == 0) return {0.0, 0.0};
    const double mean = sum(x, n) / static_cast<double>(n);
    const double var = sumsq_diff(x, n, mean) / static_cast<double>(n);
    return {mean, var};
}

}  // namespace blognet::kernels

namespace blognet {

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    CsrMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    m.col.reserve(triplets.size());
    m.val.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size();) {
        std::size_t j = i;
        double acc = 0.0;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col) {
            acc += triplets[j].val;
            ++j;
        }
        m.col.push_back(triplets[i].col);
        m.val.push_back(acc);
        m.row_ptr[static_cast<std::size_t>(triplets[i].row) + 1]++;
        i = j;
    }
    for (std::size_t r = 0; r < n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

void CsrMatrix::multiply(const double* x, double* y) const {
    kernels::spmv(n, row_ptr.data(), col.data(), val.data(), x, y);
}

}  // namespace blognet
