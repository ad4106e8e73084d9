#pragma once

#include "resmgcn/errors.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace resmgcn {

/// Row-major dense real matrix. Houses node features, layer weights and
/// per-layer messages. Plain value type; all math lives in kernels.hpp
/// and on the Tape.
template <typename Real>
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols, Real fill = Real{0})
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Real> values)
        : rows_(rows), cols_(cols), values_(std::move(values)) {
        if (values_.size() != rows_ * cols_) {
            throw ShapeError("DenseMatrix: " + std::to_string(values_.size()) +
                             " values for a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " matrix");
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    Real& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    Real at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

    Real* data() { return values_.data(); }
    const Real* data() const { return values_.data(); }

    std::span<Real> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
    std::span<const Real> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

    std::vector<Real>& values() { return values_; }
    const std::vector<Real>& values() const { return values_; }

    void fill(Real v) { values_.assign(values_.size(), v); }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const {
        for (Real v : values_) {
            if (!std::isfinite(static_cast<double>(v))) return false;
        }
        return true;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Real> values_;
};

} // namespace resmgcn
