#include "resmgcn/dense_matrix.hpp"
#include "resmgcn/kernels.hpp"
#include "resmgcn/sparse_matrix.hpp"
#include "resmgcn/util.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace resmgcn;

namespace {

// Reference triple-loop product, the oracle every fast path is checked against.
DenseMatrix<double> dense_matmul_oracle(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
    DenseMatrix<double> out(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += a.at(i, k) * b.at(k, j);
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

SparseMatrix<double> sparse_from_dense(const DenseMatrix<double>& dense) {
    SparseMatrix<double> s;
    s.n = dense.rows();
    s.row_ptr.assign(s.n + 1, 0);
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            if (dense.at(i, j) != 0.0) {
                s.col_idx.push_back(static_cast<std::uint32_t>(j));
                s.vals.push_back(dense.at(i, j));
            }
        }
        s.row_ptr[i + 1] = s.col_idx.size();
    }
    return s;
}

DenseMatrix<double> random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix<double> m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) {
        m.data()[i] = rng.uniform_real(-1.0, 1.0);
    }
    return m;
}

double max_abs_diff(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
    REQUIRE(a.same_shape(b));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("DenseMatrix rejects mismatched value counts") {
    CHECK_THROWS_AS(DenseMatrix<double>(2, 3, std::vector<double>{1.0, 2.0}), ShapeError);
    DenseMatrix<double> ok(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
    CHECK(ok.at(1, 2) == 6.0);
    CHECK(ok.all_finite());
}

TEST_CASE("SparseMatrix validate catches malformed CSR") {
    SparseMatrix<double> s;
    s.n = 2;
    s.row_ptr = {0, 1, 2};
    s.col_idx = {1, 0};
    s.vals = {0.5, 0.5};
    CHECK_NOTHROW(s.validate());
    CHECK(s.is_symmetric());

    SparseMatrix<double> bad = s;
    bad.row_ptr = {0, 2, 1};
    CHECK_THROWS_AS(bad.validate(), ContractError);

    bad = s;
    bad.row_ptr = {0, 2, 2};
    bad.col_idx = {1, 0};
    CHECK_THROWS_AS(bad.validate(), ContractError); // columns not increasing within row 0

    bad = s;
    bad.col_idx = {1, 5};
    CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("spmm with the identity leaves X unchanged") {
    DenseMatrix<double> eye(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
    const SparseMatrix<double> z = sparse_from_dense(eye);

    Rng rng(7);
    const DenseMatrix<double> x = random_matrix(rng, 3, 2);
    DenseMatrix<double> out(3, 2);
    kernels::spmm(out, z, x);
    CHECK(max_abs_diff(out, x) == 0.0);
}

TEST_CASE("spmm with an all-zero matrix yields zero") {
    SparseMatrix<double> z;
    z.n = 3;
    z.row_ptr = {0, 0, 0, 0};
    Rng rng(8);
    const DenseMatrix<double> x = random_matrix(rng, 3, 4);
    DenseMatrix<double> out(3, 4, 1.0);
    kernels::spmm(out, z, x);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.data()[i] == 0.0);
}

TEST_CASE("spmm on the normalized 3-node path matches the dense oracle") {
    // path 0-1-2 with self-loops: degrees 2, 3, 2
    const double s01 = 1.0 / std::sqrt(6.0);
    DenseMatrix<double> z_dense(3, 3, std::vector<double>{
        0.5, s01, 0.0,
        s01, 1.0 / 3.0, s01,
        0.0, s01, 0.5,
    });
    const SparseMatrix<double> z = sparse_from_dense(z_dense);

    DenseMatrix<double> eye(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) eye.at(i, i) = 1.0;

    DenseMatrix<double> out(3, 3);
    kernels::spmm(out, z, eye);
    CHECK(max_abs_diff(out, dense_matmul_oracle(z_dense, eye)) < 1e-15);
}

TEST_CASE("spmm equals the dense oracle on random sparse matrices up to n=50") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_index(49));
        DenseMatrix<double> dense(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rng.uniform_real(0.0, 1.0) < 0.2) {
                    dense.at(i, j) = rng.uniform_real(-2.0, 2.0);
                }
            }
        }
        const SparseMatrix<double> sparse = sparse_from_dense(dense);
        sparse.validate();
        const DenseMatrix<double> x = random_matrix(rng, n, 5);
        DenseMatrix<double> out(n, 5);
        kernels::spmm(out, sparse, x);
        CHECK(max_abs_diff(out, dense_matmul_oracle(dense, x)) < 1e-12);
    }
}

TEST_CASE("matmul basics") {
    Rng rng(9);
    const DenseMatrix<double> a = random_matrix(rng, 4, 3);
    DenseMatrix<double> eye(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) eye.at(i, i) = 1.0;

    DenseMatrix<double> out(4, 3);
    kernels::matmul(out, a, eye);
    CHECK(max_abs_diff(out, a) == 0.0);

    const DenseMatrix<double> m(2, 2, std::vector<double>{1, 2, 3, 4});
    const DenseMatrix<double> ones(2, 1, std::vector<double>{1, 1});
    DenseMatrix<double> prod(2, 1);
    kernels::matmul(prod, m, ones);
    CHECK(prod.at(0, 0) == 3.0);
    CHECK(prod.at(1, 0) == 7.0);

    const DenseMatrix<double> zero(2, 2, 0.0);
    DenseMatrix<double> zprod(2, 1);
    kernels::matmul(zprod, zero, ones);
    CHECK(zprod.at(0, 0) == 0.0);
    CHECK(zprod.at(1, 0) == 0.0);
}

TEST_CASE("matmul matches oracle on random shapes") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 1 + rng.uniform_index(8);
        const std::size_t k = 1 + rng.uniform_index(8);
        const std::size_t n = 1 + rng.uniform_index(8);
        const auto a = random_matrix(rng, m, k);
        const auto b = random_matrix(rng, k, n);
        DenseMatrix<double> out(m, n);
        kernels::matmul(out, a, b);
        CHECK(max_abs_diff(out, dense_matmul_oracle(a, b)) < 1e-13);
    }
}
