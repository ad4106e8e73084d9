#pragma once

#include "resmgcn/dense_matrix.hpp"
#include "resmgcn/errors.hpp"
#include "resmgcn/kernels.hpp"
#include "resmgcn/sparse_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace resmgcn {

enum class Activation { Identity, Relu, Sigmoid };

/// Derivative of an activation expressed through its *output* value.
/// Relu uses subgradient 0 at exactly 0.
template <typename Real>
Real activation_grad_from_output(Activation act, Real out) {
    switch (act) {
        case Activation::Identity: return Real{1};
        case Activation::Relu: return out > Real{0} ? Real{1} : Real{0};
        case Activation::Sigmoid: return out * (Real{1} - out);
    }
    return Real{0};
}

template <typename Real>
Real apply_activation(Activation act, Real x) {
    switch (act) {
        case Activation::Identity: return x;
        case Activation::Relu: return x > Real{0} ? x : Real{0};
        case Activation::Sigmoid: return kernels::stable_sigmoid(x);
    }
    return x;
}

/// Reverse-mode gradient tape over dense matrices.
///
/// Values are identified by insertion index; every recorded operation's
/// inputs precede it, so forward() is a single in-order sweep and
/// backward() a single reverse sweep. Operations are pure: re-running
/// forward() with unchanged leaf values reproduces bit-identical outputs.
///
/// Sparse matrices, scale vectors and index vectors are borrowed by
/// pointer and must outlive the tape; they are run-constant graph
/// structure, not differentiated quantities.
template <typename Real>
class Tape {
public:
    using ValueId = std::uint32_t;

    // ---- leaves ----

    /// Trainable leaf; receives a gradient slot on backward().
    ValueId parameter(DenseMatrix<Real> init) {
        return push_leaf(std::move(init), /*requires_grad=*/true);
    }

    /// Non-trainable leaf (inputs, frozen features).
    ValueId constant(DenseMatrix<Real> value) {
        return push_leaf(std::move(value), /*requires_grad=*/false);
    }

    // ---- operations ----

    /// out = A * B; adjoints dA += dOut*B^T, dB += A^T*dOut.
    ValueId matmul(ValueId a, ValueId b) {
        const auto& va = value(a);
        const auto& vb = value(b);
        if (va.cols() != vb.rows()) {
            throw ShapeError("matmul: " + va.shape_string() + " * " + vb.shape_string());
        }
        Node node{OpKind::Matmul};
        node.a = a;
        node.b = b;
        return push_op(node, va.rows(), vb.cols());
    }

    /// out = Z * X for a *symmetric* sparse Z; the adjoint reuses Z itself
    /// (dX += Z*dOut), which is what symmetry buys.
    ValueId spmm(const SparseMatrix<Real>& z, ValueId x) {
        const auto& vx = value(x);
        if (z.n != vx.rows()) {
            throw ShapeError("spmm: sparse " + std::to_string(z.n) + "x" + std::to_string(z.n) +
                             " * dense " + vx.shape_string());
        }
        Node node{OpKind::Spmm};
        node.a = x;
        node.sparse = &z;
        return push_op(node, z.n, vx.cols());
    }

    /// out[i] = sum_{j in N(i)} scale[j] * X[j]  (neighbor message gather;
    /// adj is structure-only and symmetric, self column absent).
    ValueId neighbor_messages(const SparseMatrix<Real>& adj, const std::vector<Real>& scale,
                              ValueId x) {
        const auto& vx = value(x);
        if (adj.n != vx.rows() || scale.size() != vx.rows()) {
            throw ShapeError("neighbor_messages: adjacency " + std::to_string(adj.n) +
                             ", scale " + std::to_string(scale.size()) + ", X " + vx.shape_string());
        }
        Node node{OpKind::NeighborMessages};
        node.a = x;
        node.sparse = &adj;
        node.scale_vec = &scale;
        return push_op(node, vx.rows(), vx.cols());
    }

    ValueId add(ValueId a, ValueId b) { return binary_elementwise(OpKind::Add, a, b); }

    /// out = 0.5 * (A + B): the two-message fusion.
    ValueId mean2(ValueId a, ValueId b) { return binary_elementwise(OpKind::Mean2, a, b); }

    ValueId scale(ValueId a, Real alpha) {
        Node node{OpKind::Scale};
        node.a = a;
        node.alpha = alpha;
        return push_op(node, value(a).rows(), value(a).cols());
    }

    ValueId relu(ValueId a) {
        Node node{OpKind::Relu};
        node.a = a;
        return push_op(node, value(a).rows(), value(a).cols());
    }

    ValueId sigmoid(ValueId a) {
        Node node{OpKind::Sigmoid};
        node.a = a;
        return push_op(node, value(a).rows(), value(a).cols());
    }

    ValueId activation(Activation act, ValueId a) {
        switch (act) {
            case Activation::Identity: return a;
            case Activation::Relu: return relu(a);
            case Activation::Sigmoid: return sigmoid(a);
        }
        return a;
    }

    /// out[i] = s[i] * X[i] (row scaling by a constant vector).
    ValueId row_scale(ValueId a, const std::vector<Real>& s) {
        const auto& va = value(a);
        if (s.size() != va.rows()) {
            throw ShapeError("row_scale: vector " + std::to_string(s.size()) + " vs rows " +
                             std::to_string(va.rows()));
        }
        Node node{OpKind::RowScale};
        node.a = a;
        node.scale_vec = &s;
        return push_op(node, va.rows(), va.cols());
    }

    /// Fused node update: out[i] = act(s[i] * (C[i] + s[i] * P[i])).
    /// C is the (fused) message, P the projected own representation,
    /// s the 1/sqrt(d) vector.
    ValueId node_update(ValueId combined, ValueId projected, const std::vector<Real>& s,
                        Activation act) {
        const auto& vc = value(combined);
        const auto& vp = value(projected);
        if (!vc.same_shape(vp) || s.size() != vc.rows()) {
            throw ShapeError("node_update: C " + vc.shape_string() + ", P " + vp.shape_string() +
                             ", scale " + std::to_string(s.size()));
        }
        Node node{OpKind::NodeUpdate};
        node.a = combined;
        node.b = projected;
        node.scale_vec = &s;
        node.act = act;
        return push_op(node, vc.rows(), vc.cols());
    }

    /// Node update with the message fusion folded in:
    /// out[i] = act(s[i] * (0.5*(M[i] + M_prev[i]) + s[i] * P[i])).
    /// One pass instead of mean2 + node_update; the layer the residue makes hot.
    ValueId node_update_fused(ValueId message, ValueId prev_message, ValueId projected,
                              const std::vector<Real>& s, Activation act) {
        const auto& vm = value(message);
        const auto& vq = value(prev_message);
        const auto& vp = value(projected);
        if (!vm.same_shape(vq) || !vm.same_shape(vp) || s.size() != vm.rows()) {
            throw ShapeError("node_update_fused: M " + vm.shape_string() + ", M_prev " +
                             vq.shape_string() + ", P " + vp.shape_string() + ", scale " +
                             std::to_string(s.size()));
        }
        Node node{OpKind::NodeUpdate};
        node.a = message;
        node.b = projected;
        node.c = prev_message;
        node.fuse_mean = true;
        node.scale_vec = &s;
        node.act = act;
        return push_op(node, vm.rows(), vm.cols());
    }

    /// Pairwise link logits: out[k] = H[lhs[k]] . Wp_top + H[rhs[k]] . Wp_bottom + bias,
    /// with Wp of shape (2*H.cols, 1) split into the two concatenation halves.
    /// Produces an m x 1 column without materializing gathered copies of H.
    ValueId pair_logits(ValueId h, const std::vector<std::uint32_t>& lhs,
                        const std::vector<std::uint32_t>& rhs, ValueId w_p, ValueId bias) {
        const auto& vh = value(h);
        const auto& vw = value(w_p);
        const auto& vb = value(bias);
        if (lhs.size() != rhs.size()) {
            throw ShapeError("pair_logits: index vectors of different lengths");
        }
        if (vw.rows() != 2 * vh.cols() || vw.cols() != 1) {
            throw ShapeError("pair_logits: predictor weight " + vw.shape_string() +
                             " for embedding width " + std::to_string(vh.cols()));
        }
        if (vb.rows() != 1 || vb.cols() != 1) {
            throw ShapeError("pair_logits: bias must be 1x1, got " + vb.shape_string());
        }
        for (std::uint32_t idx : lhs) {
            if (idx >= vh.rows()) throw ContractError("pair_logits: lhs index out of range");
        }
        for (std::uint32_t idx : rhs) {
            if (idx >= vh.rows()) throw ContractError("pair_logits: rhs index out of range");
        }
        Node node{OpKind::PairLogits};
        node.a = h;
        node.b = w_p;
        node.c = bias;
        node.idx_lhs = &lhs;
        node.idx_rhs = &rhs;
        return push_op(node, lhs.size(), 1);
    }

    /// Scalar sum of all entries.
    ValueId sum(ValueId a) {
        Node node{OpKind::Sum};
        node.a = a;
        return push_op(node, 1, 1);
    }

    /// Summed binary cross entropy over logits (m x 1) against 0/1 labels.
    /// Log-sum-exp form; finite for any finite logit.
    ValueId bce_with_logits(ValueId logits, const std::vector<Real>& labels) {
        const auto& vl = value(logits);
        if (vl.cols() != 1 || vl.rows() != labels.size()) {
            throw ShapeError("bce_with_logits: logits " + vl.shape_string() + " vs " +
                             std::to_string(labels.size()) + " labels");
        }
        Node node{OpKind::BceWithLogits};
        node.a = logits;
        node.scale_vec = &labels;
        return push_op(node, 1, 1);
    }

    // ---- execution ----

    /// Re-executes every recorded operation in order. Leaf values are taken
    /// as-is, so this is how updated parameters are propagated without
    /// rebuilding the graph.
    void forward() {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            compute_forward(static_cast<ValueId>(i));
        }
    }

    /// Seeds d(loss)/d(loss) = 1 and accumulates adjoints into every
    /// gradient-requiring value at or before `loss`.
    void backward(ValueId loss) {
        const auto& vl = value(loss);
        if (vl.rows() != 1 || vl.cols() != 1) {
            throw ContractError("backward: seed must be a 1x1 scalar, got " + vl.shape_string());
        }
        grads_.assign(nodes_.size(), DenseMatrix<Real>{});
        for (std::size_t i = 0; i <= loss; ++i) {
            if (requires_grad_[i]) {
                grads_[i] = DenseMatrix<Real>(values_[i].rows(), values_[i].cols(), Real{0});
            }
        }
        if (!requires_grad_[loss]) {
            return; // loss does not depend on any parameter; all gradients are zero
        }
        grads_[loss].at(0, 0) = Real{1};
        for (ValueId i = loss + 1; i-- > 0;) {
            if (requires_grad_[i] && nodes_[i].kind != OpKind::Leaf &&
                nodes_[i].kind != OpKind::Constant) {
                compute_backward(i);
            }
        }
    }

    // ---- access ----

    const DenseMatrix<Real>& value(ValueId id) const { return values_[id]; }

    /// Mutable access to a leaf's storage (parameter updates between epochs).
    DenseMatrix<Real>& leaf_value(ValueId id) {
        if (nodes_[id].kind != OpKind::Leaf && nodes_[id].kind != OpKind::Constant) {
            throw ContractError("leaf_value: value " + std::to_string(id) + " is not a leaf");
        }
        return values_[id];
    }

    /// Gradient of `id` after backward(); empty matrix if none was computed.
    const DenseMatrix<Real>& grad(ValueId id) const { return grads_[id]; }

    std::size_t num_values() const { return nodes_.size(); }

    /// Number of non-leaf values with the given shape; the unit of the
    /// per-layer buffer accounting reported by the benchmark.
    std::size_t count_op_values_with_shape(std::size_t rows, std::size_t cols) const {
        std::size_t count = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].kind == OpKind::Leaf || nodes_[i].kind == OpKind::Constant) continue;
            if (values_[i].rows() == rows && values_[i].cols() == cols) ++count;
        }
        return count;
    }

    std::size_t value_bytes() const {
        std::size_t total = 0;
        for (const auto& v : values_) total += v.size() * sizeof(Real);
        return total;
    }

    std::size_t grad_bytes() const {
        std::size_t total = 0;
        for (const auto& g : grads_) total += g.size() * sizeof(Real);
        return total;
    }

    std::size_t max_value_rows() const {
        std::size_t m = 0;
        for (const auto& v : values_) m = v.rows() > m ? v.rows() : m;
        return m;
    }

    bool has_value_with_shape(std::size_t rows, std::size_t cols) const {
        for (const auto& v : values_) {
            if (v.rows() == rows && v.cols() == cols) return true;
        }
        return false;
    }

private:
    enum class OpKind {
        Leaf,
        Constant,
        Matmul,
        Spmm,
        NeighborMessages,
        Add,
        Mean2,
        Scale,
        Relu,
        Sigmoid,
        RowScale,
        NodeUpdate,
        PairLogits,
        Sum,
        BceWithLogits,
    };

    struct Node {
        OpKind kind = OpKind::Leaf;
        ValueId a = 0;
        ValueId b = 0;
        ValueId c = 0;
        bool fuse_mean = false; // NodeUpdate only: average inputs a and c first
        Real alpha = Real{0};
        Activation act = Activation::Identity;
        const SparseMatrix<Real>* sparse = nullptr;
        const std::vector<Real>* scale_vec = nullptr;
        const std::vector<std::uint32_t>* idx_lhs = nullptr;
        const std::vector<std::uint32_t>* idx_rhs = nullptr;
    };

    ValueId push_leaf(DenseMatrix<Real> v, bool requires_grad) {
        Node node{requires_grad ? OpKind::Leaf : OpKind::Constant};
        nodes_.push_back(node);
        values_.push_back(std::move(v));
        requires_grad_.push_back(requires_grad);
        return static_cast<ValueId>(nodes_.size() - 1);
    }

    ValueId push_op(const Node& node, std::size_t rows, std::size_t cols) {
        nodes_.push_back(node);
        values_.emplace_back(rows, cols, Real{0});
        bool rg = requires_grad_[node.a];
        if (node.kind == OpKind::Matmul || node.kind == OpKind::Add ||
            node.kind == OpKind::Mean2 || node.kind == OpKind::NodeUpdate) {
            rg = rg || requires_grad_[node.b];
        }
        if (node.kind == OpKind::NodeUpdate && node.fuse_mean) {
            rg = rg || requires_grad_[node.c];
        }
        if (node.kind == OpKind::PairLogits) {
            rg = rg || requires_grad_[node.b] || requires_grad_[node.c];
        }
        requires_grad_.push_back(rg);
        const ValueId id = static_cast<ValueId>(nodes_.size() - 1);
        compute_forward(id);
        return id;
    }

    ValueId binary_elementwise(OpKind kind, ValueId a, ValueId b) {
        const auto& va = value(a);
        const auto& vb = value(b);
        if (!va.same_shape(vb)) {
            throw ShapeError("elementwise: " + va.shape_string() + " vs " + vb.shape_string());
        }
        Node node{kind};
        node.a = a;
        node.b = b;
        return push_op(node, va.rows(), va.cols());
    }

    void compute_forward(ValueId id) {
        Node& node = nodes_[id];
        DenseMatrix<Real>& out = values_[id];
        switch (node.kind) {
            case OpKind::Leaf:
            case OpKind::Constant:
                break;
            case OpKind::Matmul:
                kernels::matmul(out, values_[node.a], values_[node.b]);
                break;
            case OpKind::Spmm:
                kernels::spmm(out, *node.sparse, values_[node.a]);
                break;
            case OpKind::NeighborMessages:
                kernels::neighbor_scaled(out, *node.sparse, *node.scale_vec, values_[node.a]);
                break;
            case OpKind::Add: {
                const auto& a = values_[node.a];
                const auto& b = values_[node.b];
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out.data()[i] = a.data()[i] + b.data()[i];
                }
                break;
            }
            case OpKind::Mean2: {
                const auto& a = values_[node.a];
                const auto& b = values_[node.b];
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out.data()[i] = (a.data()[i] + b.data()[i]) * Real{0.5};
                }
                break;
            }
            case OpKind::Scale: {
                const auto& a = values_[node.a];
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out.data()[i] = node.alpha * a.data()[i];
                }
                break;
            }
            case OpKind::Relu: {
                const auto& a = values_[node.a];
                for (std::size_t i = 0; i < out.size(); ++i) {
                    const Real v = a.data()[i];
                    out.data()[i] = v > Real{0} ? v : Real{0};
                }
                break;
            }
            case OpKind::Sigmoid: {
                const auto& a = values_[node.a];
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out.data()[i] = kernels::stable_sigmoid(a.data()[i]);
                }
                break;
            }
            case OpKind::RowScale: {
                const auto& a = values_[node.a];
                const auto& s = *node.scale_vec;
                for (std::size_t r = 0; r < out.rows(); ++r) {
                    for (std::size_t c = 0; c < out.cols(); ++c) {
                        out.at(r, c) = s[r] * a.at(r, c);
                    }
                }
                break;
            }
            case OpKind::NodeUpdate: {
                const auto& cm = values_[node.a];
                const auto& pm = values_[node.b];
                const auto& s = *node.scale_vec;
                if (node.fuse_mean) {
                    const auto& prev = values_[node.c];
                    for (std::size_t r = 0; r < out.rows(); ++r) {
                        const Real sr = s[r];
                        for (std::size_t c = 0; c < out.cols(); ++c) {
                            const Real fused = (cm.at(r, c) + prev.at(r, c)) * Real{0.5};
                            out.at(r, c) = apply_activation(node.act, sr * (fused + sr * pm.at(r, c)));
                        }
                    }
                } else {
                    for (std::size_t r = 0; r < out.rows(); ++r) {
                        const Real sr = s[r];
                        for (std::size_t c = 0; c < out.cols(); ++c) {
                            out.at(r, c) =
                                apply_activation(node.act, sr * (cm.at(r, c) + sr * pm.at(r, c)));
                        }
                    }
                }
                break;
            }
            case OpKind::PairLogits: {
                const auto& h = values_[node.a];
                const auto& w = values_[node.b];
                const Real bias = values_[node.c].at(0, 0);
                const auto& lhs = *node.idx_lhs;
                const auto& rhs = *node.idx_rhs;
                const std::size_t width = h.cols();
                const Real* w_top = w.data();
                const Real* w_bottom = w.data() + width;
                for (std::size_t k = 0; k < lhs.size(); ++k) {
                    const Real* hl = h.data() + static_cast<std::size_t>(lhs[k]) * width;
                    const Real* hr = h.data() + static_cast<std::size_t>(rhs[k]) * width;
                    Real acc = bias;
                    for (std::size_t c = 0; c < width; ++c) {
                        acc += hl[c] * w_top[c];
                    }
                    for (std::size_t c = 0; c < width; ++c) {
                        acc += hr[c] * w_bottom[c];
                    }
                    out.at(k, 0) = acc;
                }
                break;
            }
            case OpKind::Sum: {
                const auto& a = values_[node.a];
                Real acc{0};
                for (std::size_t i = 0; i < a.size(); ++i) {
                    acc += a.data()[i];
                }
                out.at(0, 0) = acc;
                break;
            }
            case OpKind::BceWithLogits: {
                const auto& l = values_[node.a];
                const auto& labels = *node.scale_vec;
                Real acc{0};
                for (std::size_t k = 0; k < l.rows(); ++k) {
                    acc += kernels::bce_from_logit(l.at(k, 0), labels[k]);
                }
                out.at(0, 0) = acc;
                break;
            }
        }
    }

    void accumulate(ValueId target, std::size_t flat_index, Real amount) {
        if (requires_grad_[target]) {
            grads_[target].data()[flat_index] += amount;
        }
    }

    void compute_backward(ValueId id) {
        const Node& node = nodes_[id];
        const DenseMatrix<Real>& g = grads_[id];
        switch (node.kind) {
            case OpKind::Leaf:
            case OpKind::Constant:
                break;
            case OpKind::Matmul:
                if (requires_grad_[node.a]) {
                    kernels::matmul_acc_nt(grads_[node.a], g, values_[node.b]);
                }
                if (requires_grad_[node.b]) {
                    kernels::matmul_acc_tn(grads_[node.b], values_[node.a], g);
                }
                break;
            case OpKind::Spmm:
                if (requires_grad_[node.a]) {
                    kernels::spmm_acc(grads_[node.a], *node.sparse, g);
                }
                break;
            case OpKind::NeighborMessages:
                if (requires_grad_[node.a]) {
                    kernels::neighbor_scaled_acc(grads_[node.a], *node.sparse, *node.scale_vec, g);
                }
                break;
            case OpKind::Add:
                for (std::size_t i = 0; i < g.size(); ++i) {
                    accumulate(node.a, i, g.data()[i]);
                    accumulate(node.b, i, g.data()[i]);
                }
                break;
            case OpKind::Mean2:
                for (std::size_t i = 0; i < g.size(); ++i) {
                    accumulate(node.a, i, g.data()[i] * Real{0.5});
                    accumulate(node.b, i, g.data()[i] * Real{0.5});
                }
                break;
            case OpKind::Scale:
                for (std::size_t i = 0; i < g.size(); ++i) {
                    accumulate(node.a, i, g.data()[i] * node.alpha);
                }
                break;
            case OpKind::Relu: {
                const auto& out = values_[id];
                for (std::size_t i = 0; i < g.size(); ++i) {
                    if (out.data()[i] > Real{0}) {
                        accumulate(node.a, i, g.data()[i]);
                    }
                }
                break;
            }
            case OpKind::Sigmoid: {
                const auto& out = values_[id];
                for (std::size_t i = 0; i < g.size(); ++i) {
                    const Real s = out.data()[i];
                    accumulate(node.a, i, g.data()[i] * s * (Real{1} - s));
                }
                break;
            }
            case OpKind::RowScale: {
                const auto& s = *node.scale_vec;
                const std::size_t cols = g.cols();
                for (std::size_t r = 0; r < g.rows(); ++r) {
                    for (std::size_t c = 0; c < cols; ++c) {
                        accumulate(node.a, r * cols + c, g.at(r, c) * s[r]);
                    }
                }
                break;
            }
            case OpKind::NodeUpdate: {
                const auto& out = values_[id];
                const auto& s = *node.scale_vec;
                const std::size_t cols = g.cols();
                const Real message_coeff = node.fuse_mean ? Real{0.5} : Real{1};
                for (std::size_t r = 0; r < g.rows(); ++r) {
                    const Real sr = s[r];
                    for (std::size_t c = 0; c < cols; ++c) {
                        const Real d_pre =
                            g.at(r, c) * activation_grad_from_output(node.act, out.at(r, c));
                        accumulate(node.a, r * cols + c, d_pre * sr * message_coeff);
                        accumulate(node.b, r * cols + c, d_pre * sr * sr);
                        if (node.fuse_mean) {
                            accumulate(node.c, r * cols + c, d_pre * sr * Real{0.5});
                        }
                    }
                }
                break;
            }
            case OpKind::PairLogits: {
                const auto& h = values_[node.a];
                const auto& w = values_[node.b];
                const auto& lhs = *node.idx_lhs;
                const auto& rhs = *node.idx_rhs;
                const std::size_t width = h.cols();
                const Real* w_top = w.data();
                const Real* w_bottom = w.data() + width;
                const bool want_h = requires_grad_[node.a];
                const bool want_w = requires_grad_[node.b];
                const bool want_b = requires_grad_[node.c];
                for (std::size_t k = 0; k < lhs.size(); ++k) {
                    const Real gk = g.at(k, 0);
                    if (gk == Real{0}) continue;
                    const std::size_t il = static_cast<std::size_t>(lhs[k]) * width;
                    const std::size_t ir = static_cast<std::size_t>(rhs[k]) * width;
                    if (want_h) {
                        Real* gh = grads_[node.a].data();
                        for (std::size_t c = 0; c < width; ++c) {
                            gh[il + c] += gk * w_top[c];
                            gh[ir + c] += gk * w_bottom[c];
                        }
                    }
                    if (want_w) {
                        Real* gw = grads_[node.b].data();
                        for (std::size_t c = 0; c < width; ++c) {
                            gw[c] += gk * h.data()[il + c];
                            gw[width + c] += gk * h.data()[ir + c];
                        }
                    }
                    if (want_b) {
                        grads_[node.c].at(0, 0) += gk;
                    }
                }
                break;
            }
            case OpKind::Sum: {
                const Real gs = g.at(0, 0);
                if (requires_grad_[node.a]) {
                    auto& ga = grads_[node.a];
                    for (std::size_t i = 0; i < ga.size(); ++i) {
                        ga.data()[i] += gs;
                    }
                }
                break;
            }
            case OpKind::BceWithLogits: {
                const Real gs = g.at(0, 0);
                if (requires_grad_[node.a]) {
                    const auto& l = values_[node.a];
                    const auto& labels = *node.scale_vec;
                    auto& gl = grads_[node.a];
                    for (std::size_t k = 0; k < l.rows(); ++k) {
                        gl.at(k, 0) += gs * (kernels::stable_sigmoid(l.at(k, 0)) - labels[k]);
                    }
                }
                break;
            }
        }
    }

    std::vector<Node> nodes_;
    std::vector<DenseMatrix<Real>> values_;
    std::vector<DenseMatrix<Real>> grads_;
    std::vector<bool> requires_grad_;
};

} // namespace resmgcn
