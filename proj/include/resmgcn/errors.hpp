#pragma once

#include <stdexcept>
#include <string>

namespace resmgcn {

/// Operand dimensions do not conform (matmul inner dims, spmm size, ...).
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its contract (non-scalar backward seed, ...).
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration (zero layers, non-positive learning rate, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure: missing file, unwritable output.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data; carries the 1-based line number when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

/// Semantically invalid data: empty graph, not enough non-edges to sample, ...
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Metric undefined on the given input (single-class AUROC, AUPRC without positives).
struct MetricError : std::runtime_error {
    explicit MetricError(const std::string& what) : std::runtime_error(what) {}
};

/// Training aborted because the loss left the finite range.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace resmgcn
