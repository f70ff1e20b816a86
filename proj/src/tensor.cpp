#include "catsem/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace catsem {

namespace {

std::size_t checked_product(const std::vector<Space>& axes) {
    std::size_t n = 1;
    for (const auto& s : axes) {
        if (s.dim == 0) throw ShapeError("space '" + s.name + "' has dimension 0");
        n *= s.dim;
    }
    return n;
}

void check_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) throw ShapeError("tensor entries must be finite");
    }
}

std::string shape_string(const Tensor& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.rank(); ++i) {
        if (i) s += ", ";
        s += t.axes()[i].name + ":" + std::to_string(t.axes()[i].dim);
    }
    return s + ")";
}

}  // namespace

Space product_space(const Space& a, const Space& b) {
    return Space{a.name + "*" + b.name, a.dim * b.dim};
}

Tensor::Tensor(std::vector<Space> axes, std::vector<double> data)
    : axes_(std::move(axes)), data_(std::move(data)) {
    if (data_.size() != checked_product(axes_)) {
        throw ShapeError("data length " + std::to_string(data_.size()) +
                         " does not match axis dims " + shape_string(*this));
    }
    check_finite(data_);
}

Tensor Tensor::scalar(double value) { return Tensor({}, {value}); }

Tensor Tensor::vector(const Space& space, std::vector<double> data) {
    return Tensor({space}, std::move(data));
}

Tensor Tensor::matrix(const Space& rows, const Space& cols, std::vector<double> row_major) {
    return Tensor({rows, cols}, std::move(row_major));
}

Tensor Tensor::zeros(std::vector<Space> axes) {
    std::size_t n = checked_product(axes);
    return Tensor(std::move(axes), std::vector<double>(n, 0.0));
}

Tensor Tensor::basis(const Space& space, std::size_t index) {
    if (index >= space.dim) throw AxisOutOfRange("basis index out of range");
    std::vector<double> d(space.dim, 0.0);
    d[index] = 1.0;
    return Tensor({space}, std::move(d));
}

const Space& Tensor::axis(std::size_t i) const {
    if (i >= axes_.size()) throw AxisOutOfRange("axis " + std::to_string(i) + " out of range");
    return axes_[i];
}

std::size_t Tensor::offset_of(std::span<const std::size_t> index) const {
    if (index.size() != axes_.size()) throw AxisOutOfRange("index rank mismatch");
    std::size_t off = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (index[i] >= axes_[i].dim) throw AxisOutOfRange("index out of range");
        off = off * axes_[i].dim + index[i];
    }
    return off;
}

double Tensor::at(std::span<const std::size_t> index) const { return data_[offset_of(index)]; }

double Tensor::at(std::initializer_list<std::size_t> index) const {
    std::vector<std::size_t> idx(index);
    return at(std::span<const std::size_t>(idx));
}

void Tensor::set(std::span<const std::size_t> index, double value) {
    data_[offset_of(index)] = value;
}

double Tensor::value() const {
    if (data_.size() != 1) throw RankError("value() requires a single-entry tensor");
    return data_[0];
}

Tensor Tensor::reshaped(std::vector<Space> axes) const {
    if (checked_product(axes) != data_.size()) {
        throw ShapeError("reshape must preserve total size");
    }
    return Tensor(std::move(axes), data_);
}

Tensor operator+(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor addition requires identical axes");
    std::vector<double> d(a.data_);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.data_[i];
    return Tensor(a.axes_, std::move(d));
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor subtraction requires identical axes");
    std::vector<double> d(a.data_);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.data_[i];
    return Tensor(a.axes_, std::move(d));
}

Tensor operator*(double s, const Tensor& t) {
    std::vector<double> d(t.data_);
    for (double& v : d) v *= s;
    return Tensor(t.axes_, std::move(d));
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    std::vector<Space> axes = a.axes();
    axes.insert(axes.end(), b.axes().begin(), b.axes().end());
    std::vector<double> d;
    d.reserve(a.size() * b.size());
    for (double x : a.data())
        for (double y : b.data()) d.push_back(x * y);
    return Tensor(std::move(axes), std::move(d));
}

Tensor epsilon(const Space& space) { return identity(space); }

Tensor eta(const Space& space) { return identity(space); }

Tensor identity(const Space& space) {
    std::vector<double> d(space.dim * space.dim, 0.0);
    for (std::size_t i = 0; i < space.dim; ++i) d[i * space.dim + i] = 1.0;
    return Tensor({space, space}, std::move(d));
}

Tensor frobenius_mu(const Tensor& a, const Tensor& b) {
    if (a.rank() != 1 || b.rank() != 1) throw RankError("frobenius_mu expects two vectors");
    if (!(a.axes()[0] == b.axes()[0])) {
        throw SpaceMismatch("frobenius_mu requires both vectors in the same space");
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.data()[i] * b.data()[i];
    return Tensor({a.axes()[0]}, std::move(d));
}

Tensor iota_delete(const Tensor& t, std::size_t axis) {
    if (axis >= t.rank()) throw AxisOutOfRange("iota_delete axis out of range");
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < axis; ++i) outer *= t.dim(i);
    for (std::size_t i = axis + 1; i < t.rank(); ++i) inner *= t.dim(i);
    std::size_t mid = t.dim(axis);

    std::vector<Space> axes;
    for (std::size_t i = 0; i < t.rank(); ++i)
        if (i != axis) axes.push_back(t.axes()[i]);
    std::vector<double> d(outer * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t m = 0; m < mid; ++m)
            for (std::size_t in = 0; in < inner; ++in)
                d[o * inner + in] += t.data()[(o * mid + m) * inner + in];
    return Tensor(std::move(axes), std::move(d));
}

Tensor contract(std::span<const Tensor> operands,
                const std::vector<std::pair<AxisRef, AxisRef>>& pairings,
                const std::vector<AxisRef>& output_order) {
    auto check_ref = [&](const AxisRef& r) {
        if (r.operand >= operands.size()) throw AxisOutOfRange("operand index out of range");
        if (r.axis >= operands[r.operand].rank()) throw AxisOutOfRange("axis index out of range");
    };

    // wire id per (operand, axis); SIZE_MAX = unassigned
    std::vector<std::vector<std::size_t>> wire_of(operands.size());
    for (std::size_t o = 0; o < operands.size(); ++o)
        wire_of[o].assign(operands[o].rank(), static_cast<std::size_t>(-1));

    std::vector<std::size_t> wire_dims;
    std::size_t n_summed = 0;
    for (const auto& [a, b] : pairings) {
        check_ref(a);
        check_ref(b);
        if (wire_of[a.operand][a.axis] != static_cast<std::size_t>(-1) ||
            wire_of[b.operand][b.axis] != static_cast<std::size_t>(-1) || (a == b)) {
            throw DuplicateAxis("axis appears in more than one pairing");
        }
        if (operands[a.operand].dim(a.axis) != operands[b.operand].dim(b.axis)) {
            throw DimMismatch("paired axes must have equal dimensions");
        }
        std::size_t w = wire_dims.size();
        wire_of[a.operand][a.axis] = w;
        wire_of[b.operand][b.axis] = w;
        wire_dims.push_back(operands[a.operand].dim(a.axis));
        ++n_summed;
    }

    std::vector<Space> out_axes;
    for (const auto& r : output_order) {
        check_ref(r);
        if (wire_of[r.operand][r.axis] != static_cast<std::size_t>(-1)) {
            throw DuplicateAxis("output axis already paired or listed twice");
        }
        std::size_t w = wire_dims.size();
        wire_of[r.operand][r.axis] = w;
        wire_dims.push_back(operands[r.operand].dim(r.axis));
        out_axes.push_back(operands[r.operand].axes()[r.axis]);
    }
    for (std::size_t o = 0; o < operands.size(); ++o)
        for (std::size_t a = 0; a < operands[o].rank(); ++a)
            if (wire_of[o][a] == static_cast<std::size_t>(-1)) {
                throw ShapeError("every axis must be paired or listed in output_order");
            }

    // per-operand and output strides along each wire
    std::size_t n_wires = wire_dims.size();
    std::vector<std::vector<std::size_t>> op_stride(operands.size(),
                                                    std::vector<std::size_t>(n_wires, 0));
    for (std::size_t o = 0; o < operands.size(); ++o) {
        std::size_t stride = 1;
        for (std::size_t a = operands[o].rank(); a-- > 0;) {
            op_stride[o][wire_of[o][a]] += stride;
            stride *= operands[o].dim(a);
        }
    }
    std::vector<std::size_t> out_stride(n_wires, 0);
    {
        std::size_t stride = 1;
        for (std::size_t i = output_order.size(); i-- > 0;) {
            const AxisRef& r = output_order[i];
            out_stride[wire_of[r.operand][r.axis]] = stride;
            stride *= operands[r.operand].dim(r.axis);
        }
    }

    Tensor out = Tensor::zeros(out_axes);
    std::vector<double> acc(out.size(), 0.0);

    std::vector<std::size_t> idx(n_wires, 0);
    // wires are ordered: summed wires first, then output wires
    bool done = n_wires == 0;
    for (;;) {
        double prod = 1.0;
        for (std::size_t o = 0; o < operands.size(); ++o) {
            std::size_t off = 0;
            for (std::size_t w = 0; w < n_wires; ++w) off += op_stride[o][w] * idx[w];
            prod *= operands[o].data()[off];
        }
        std::size_t out_off = 0;
        for (std::size_t w = n_summed; w < n_wires; ++w) out_off += out_stride[w] * idx[w];
        acc[out_off] += prod;

        if (done) break;
        std::size_t w = n_wires;
        while (w-- > 0) {
            if (++idx[w] < wire_dims[w]) break;
            idx[w] = 0;
            if (w == 0) done = true;
        }
        if (done) break;
    }
    return Tensor(out_axes, std::move(acc));
}

namespace {

// One-sided Jacobi SVD of an m x n matrix (m >= n), row-major.
// Rotates columns of u until mutually orthogonal; v accumulates rotations.
void jacobi_svd(std::vector<double>& u, std::vector<double>& v, std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < n * n; ++i) v[i] = 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double tol = 1e-15;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    double up = u[i * n + p], uq = u[i * n + q];
                    alpha += up * up;
                    beta += uq * uq;
                    gamma += up * uq;
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = std::copysign(1.0, zeta) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    double up = u[i * n + p], uq = u[i * n + q];
                    u[i * n + p] = c * up - s * uq;
                    u[i * n + q] = s * up + c * uq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vp = v[i * n + p], vq = v[i * n + q];
                    v[i * n + p] = c * vp - s * vq;
                    v[i * n + q] = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

}  // namespace

Tensor pseudoinverse(const Tensor& m, double tol) {
    if (m.rank() != 2) throw RankError("pseudoinverse expects a rank-2 tensor");
    if (tol < 0) tol = std::numeric_limits<double>::epsilon();

    const std::size_t rows = m.dim(0), cols = m.dim(1);
    const bool transposed = rows < cols;
    const std::size_t mm = transposed ? cols : rows;
    const std::size_t nn = transposed ? rows : cols;

    std::vector<double> u(mm * nn);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            double x = m.data()[i * cols + j];
            if (transposed)
                u[j * nn + i] = x;
            else
                u[i * nn + j] = x;
        }
    std::vector<double> v(nn * nn);
    jacobi_svd(u, v, mm, nn);

    std::vector<double> sigma(nn, 0.0);
    double sigma_max = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < mm; ++i) s2 += u[i * nn + j] * u[i * nn + j];
        sigma[j] = std::sqrt(s2);
        sigma_max = std::max(sigma_max, sigma[j]);
    }
    const double cutoff = tol * sigma_max * static_cast<double>(std::max(rows, cols));

    // pinv(A) = V diag(1/sigma) U^T, dropping singular values at or below cutoff
    std::vector<double> pinv(nn * mm, 0.0);
    for (std::size_t k = 0; k < nn; ++k) {
        if (!(sigma[k] > cutoff)) continue;
        double inv2 = 1.0 / (sigma[k] * sigma[k]);
        for (std::size_t j = 0; j < nn; ++j) {
            double vk = v[j * nn + k];
            if (vk == 0.0) continue;
            for (std::size_t i = 0; i < mm; ++i) {
                pinv[j * mm + i] += vk * u[i * nn + k] * inv2;
            }
        }
    }

    // result maps row space -> column space: axes swap
    std::vector<double> out(cols * rows);
    if (transposed) {
        // pinv above is for A^T (nn=rows, mm=cols): pinv(m) = pinv(m^T)^T
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < rows; ++j) out[i * rows + j] = pinv[j * cols + i];
    } else {
        out = std::move(pinv);
    }
    return Tensor({m.axes()[1], m.axes()[0]}, std::move(out));
}

double dot(const Tensor& a, const Tensor& b) {
    if (a.size() != b.size()) throw DimMismatch("dot requires equal total dimensions");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

double norm(const Tensor& t) { return std::sqrt(dot(t, t)); }

double cosine(const Tensor& a, const Tensor& b) {
    if (a.rank() != 1 || b.rank() != 1) throw RankError("cosine expects two vectors");
    if (a.size() != b.size()) {
        throw SpaceMismatch("cosine requires vectors of equal dimension");
    }
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine undefined for a zero vector");
    return dot(a, b) / (na * nb);
}

Tensor matvec(const Tensor& m, const Tensor& v) {
    if (m.rank() != 2 || v.rank() != 1) throw RankError("matvec expects a matrix and a vector");
    if (m.dim(1) != v.dim(0)) throw DimMismatch("matvec dimension mismatch");
    const Tensor ops[] = {m, v};
    return contract(ops, {{AxisRef{0, 1}, AxisRef{1, 0}}}, {AxisRef{0, 0}});
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) throw RankError("matmul expects two matrices");
    if (a.dim(1) != b.dim(0)) throw DimMismatch("matmul dimension mismatch");
    const Tensor ops[] = {a, b};
    return contract(ops, {{AxisRef{0, 1}, AxisRef{1, 0}}}, {AxisRef{0, 0}, AxisRef{1, 1}});
}

Tensor transpose(const Tensor& m) {
    if (m.rank() != 2) throw RankError("transpose expects a rank-2 tensor");
    std::vector<double> d(m.size());
    for (std::size_t i = 0; i < m.dim(0); ++i)
        for (std::size_t j = 0; j < m.dim(1); ++j) d[j * m.dim(0) + i] = m.data()[i * m.dim(1) + j];
    return Tensor({m.axes()[1], m.axes()[0]}, std::move(d));
}

Tensor kron(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) throw RankError("kron expects two matrices");
    Space rows = product_space(a.axes()[0], b.axes()[0]);
    Space cols = product_space(a.axes()[1], b.axes()[1]);
    std::vector<double> d(rows.dim * cols.dim);
    for (std::size_t i = 0; i < a.dim(0); ++i)
        for (std::size_t j = 0; j < a.dim(1); ++j)
            for (std::size_t k = 0; k < b.dim(0); ++k)
                for (std::size_t l = 0; l < b.dim(1); ++l)
                    d[(i * b.dim(0) + k) * cols.dim + (j * b.dim(1) + l)] =
                        a.data()[i * a.dim(1) + j] * b.data()[k * b.dim(1) + l];
    return Tensor({rows, cols}, std::move(d));
}

}  // namespace catsem
