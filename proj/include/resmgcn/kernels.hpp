#pragma once

#include "resmgcn/dense_matrix.hpp"
#include "resmgcn/sparse_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace resmgcn::kernels {

// Row-parallel kernels. Each output row is produced by exactly one thread
// with an unchanged inner summation order, so results are bit-identical
// for any thread count.

/// out = A * B
template <typename Real>
void matmul(DenseMatrix<Real>& out, const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    out.fill(Real{0});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        Real* out_row = out.data() + static_cast<std::size_t>(i) * n;
        const Real* a_row = a.data() + static_cast<std::size_t>(i) * k;
        for (std::size_t p = 0; p < k; ++p) {
            const Real av = a_row[p];
            if (av == Real{0}) continue;
            const Real* b_row = b.data() + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                out_row[j] += av * b_row[j];
            }
        }
    }
}

/// acc += A * B^T
template <typename Real>
void matmul_acc_nt(DenseMatrix<Real>& acc, const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        Real* acc_row = acc.data() + static_cast<std::size_t>(i) * n;
        const Real* a_row = a.data() + static_cast<std::size_t>(i) * k;
        for (std::size_t j = 0; j < n; ++j) {
            const Real* b_row = b.data() + j * k;
            Real dot{0};
            for (std::size_t p = 0; p < k; ++p) {
                dot += a_row[p] * b_row[p];
            }
            acc_row[j] += dot;
        }
    }
}

/// acc += A^T * B
template <typename Real>
void matmul_acc_tn(DenseMatrix<Real>& acc, const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(k); ++r) {
        Real* acc_row = acc.data() + static_cast<std::size_t>(r) * n;
        for (std::size_t i = 0; i < m; ++i) {
            const Real av = a.at(i, static_cast<std::size_t>(r));
            if (av == Real{0}) continue;
            const Real* b_row = b.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                acc_row[j] += av * b_row[j];
            }
        }
    }
}

/// out = S * X (S square sparse, X dense)
template <typename Real>
void spmm(DenseMatrix<Real>& out, const SparseMatrix<Real>& s, const DenseMatrix<Real>& x) {
    const std::size_t cols = x.cols();
    out.fill(Real{0});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s.n); ++i) {
        Real* out_row = out.data() + static_cast<std::size_t>(i) * cols;
        for (std::size_t k = s.row_ptr[static_cast<std::size_t>(i)];
             k < s.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const Real v = s.vals[k];
            const Real* x_row = x.data() + static_cast<std::size_t>(s.col_idx[k]) * cols;
            for (std::size_t j = 0; j < cols; ++j) {
                out_row[j] += v * x_row[j];
            }
        }
    }
}

/// acc += S * X
template <typename Real>
void spmm_acc(DenseMatrix<Real>& acc, const SparseMatrix<Real>& s, const DenseMatrix<Real>& x) {
    const std::size_t cols = x.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s.n); ++i) {
        Real* acc_row = acc.data() + static_cast<std::size_t>(i) * cols;
        for (std::size_t k = s.row_ptr[static_cast<std::size_t>(i)];
             k < s.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const Real v = s.vals[k];
            const Real* x_row = x.data() + static_cast<std::size_t>(s.col_idx[k]) * cols;
            for (std::size_t j = 0; j < cols; ++j) {
                acc_row[j] += v * x_row[j];
            }
        }
    }
}

/// out[i] = sum over neighbors j of adj: scale[j] * x[j]
/// adj carries structure only (values ignored); used for the message step,
/// where the per-source 1/sqrt(d_j) factor lives in `scale`.
template <typename Real>
void neighbor_scaled(DenseMatrix<Real>& out, const SparseMatrix<Real>& adj,
                     const std::vector<Real>& scale, const DenseMatrix<Real>& x) {
    const std::size_t cols = x.cols();
    out.fill(Real{0});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(adj.n); ++i) {
        Real* out_row = out.data() + static_cast<std::size_t>(i) * cols;
        for (std::size_t k = adj.row_ptr[static_cast<std::size_t>(i)];
             k < adj.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const std::uint32_t j = adj.col_idx[k];
            const Real sj = scale[j];
            const Real* x_row = x.data() + static_cast<std::size_t>(j) * cols;
            for (std::size_t c = 0; c < cols; ++c) {
                out_row[c] += sj * x_row[c];
            }
        }
    }
}

/// acc[j] += scale[j] * sum over neighbors i of adj: g[i]
/// Adjoint of neighbor_scaled for symmetric adj, written as a row gather
/// so it parallelizes without scatter races.
template <typename Real>
void neighbor_scaled_acc(DenseMatrix<Real>& acc, const SparseMatrix<Real>& adj,
                         const std::vector<Real>& scale, const DenseMatrix<Real>& g) {
    const std::size_t cols = g.cols();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(adj.n); ++j) {
        Real* acc_row = acc.data() + static_cast<std::size_t>(j) * cols;
        const Real sj = scale[static_cast<std::size_t>(j)];
        for (std::size_t k = adj.row_ptr[static_cast<std::size_t>(j)];
             k < adj.row_ptr[static_cast<std::size_t>(j) + 1]; ++k) {
            const Real* g_row = g.data() + static_cast<std::size_t>(adj.col_idx[k]) * cols;
            for (std::size_t c = 0; c < cols; ++c) {
                acc_row[c] += sj * g_row[c];
            }
        }
    }
}

/// Numerically safe logistic function.
template <typename Real>
Real stable_sigmoid(Real x) {
    if (x >= Real{0}) {
        return Real{1} / (Real{1} + std::exp(-x));
    }
    const Real e = std::exp(x);
    return e / (Real{1} + e);
}

/// Per-pair binary cross entropy from the raw logit; the log-sum-exp form,
/// finite for any finite logit.
template <typename Real>
Real bce_from_logit(Real logit, Real label) {
    const Real neg_abs = logit < Real{0} ? logit : -logit;
    const Real max_part = logit > Real{0} ? logit : Real{0};
    return max_part - logit * label + std::log1p(std::exp(neg_abs));
}

} // namespace resmgcn::kernels
