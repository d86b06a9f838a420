#pragma once

#include <cstdint>
#include <vector>

namespace blognet {

/// Square sparse matrix in compressed-sparse-row form. Column indices are
/// sorted within each row; duplicate triplets are summed on construction.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> row_ptr;  // size n+1
    std::vector<std::int32_t> col;
    std::vector<double> val;

    struct Triplet {
        std::int32_t row;
        std::int32_t col;
        double val;
    };

    static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

    std::size_t nnz() const { return val.size(); }

    /// y = A x  (dispatches to the active SIMD backend)
    void multiply(const double* x, double* y) const;
};

}  // namespace blognet
