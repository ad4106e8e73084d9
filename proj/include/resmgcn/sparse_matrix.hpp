#pragma once

#include "resmgcn/dense_matrix.hpp"
#include "resmgcn/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace resmgcn {

/// Square sparse matrix in CSR form. Holds the normalized adjacency and the
/// raw (self-loop-free) adjacency; row iteration is the only access pattern
/// the hot kernels need.
template <typename Real>
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;   // length n+1, row_ptr[0] == 0
    std::vector<std::uint32_t> col_idx; // strictly increasing within each row
    std::vector<Real> vals;             // parallel to col_idx

    std::size_t nnz() const { return col_idx.size(); }

    /// Structural invariant check; used by constructors of derived matrices
    /// and by tests. Throws ContractError on violation.
    void validate() const {
        if (row_ptr.size() != n + 1 || row_ptr.front() != 0 || row_ptr.back() != col_idx.size() ||
            col_idx.size() != vals.size()) {
            throw ContractError("SparseMatrix: inconsistent CSR arrays");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (row_ptr[i] > row_ptr[i + 1]) {
                throw ContractError("SparseMatrix: row_ptr not non-decreasing");
            }
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                if (col_idx[k] >= n) {
                    throw ContractError("SparseMatrix: column index out of range");
                }
                if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) {
                    throw ContractError("SparseMatrix: columns not strictly increasing in row");
                }
            }
        }
    }

    bool is_symmetric(Real tol = Real{0}) const {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                const std::uint32_t j = col_idx[k];
                const Real* mirror = find(j, static_cast<std::uint32_t>(i));
                if (mirror == nullptr) return false;
                const Real d = *mirror - vals[k];
                if ((d < Real{0} ? -d : d) > tol) return false;
            }
        }
        return true;
    }

    /// Pointer to entry (r, c) or nullptr. Binary search within the row.
    const Real* find(std::uint32_t r, std::uint32_t c) const {
        std::size_t lo = row_ptr[r];
        std::size_t hi = row_ptr[r + 1];
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (col_idx[mid] < c) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo < row_ptr[r + 1] && col_idx[lo] == c) return &vals[lo];
        return nullptr;
    }

    DenseMatrix<Real> densify() const {
        DenseMatrix<Real> out(n, n, Real{0});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                out.at(i, col_idx[k]) = vals[k];
            }
        }
        return out;
    }
};

} // namespace resmgcn
