#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsem/errors.hpp"

namespace catsem {

/// A named finite-dimensional real vector space.
struct Space {
    std::string name;
    std::size_t dim = 1;

    bool operator==(const Space&) const = default;
};

/// Space for the tensor product of two spaces (dims multiply, names join).
Space product_space(const Space& a, const Space& b);

/// Dense real tensor with an ordered axis signature.
///
/// Data is stored row-major over the axis order: the first axis is slowest,
/// the last axis is fastest. A rank-0 tensor holds a single scalar entry.
class Tensor {
public:
    Tensor() : data_(1, 0.0) {}
    Tensor(std::vector<Space> axes, std::vector<double> data);

    static Tensor scalar(double value);
    static Tensor vector(const Space& space, std::vector<double> data);
    static Tensor matrix(const Space& rows, const Space& cols, std::vector<double> row_major);
    static Tensor zeros(std::vector<Space> axes);
    /// Basis vector e_index (0-based) of the given space.
    static Tensor basis(const Space& space, std::size_t index);

    std::size_t rank() const { return axes_.size(); }
    const std::vector<Space>& axes() const { return axes_; }
    const Space& axis(std::size_t i) const;
    std::size_t dim(std::size_t i) const { return axis(i).dim; }
    std::size_t size() const { return data_.size(); }

    const std::vector<double>& data() const { return data_; }

    double at(std::span<const std::size_t> index) const;
    double at(std::initializer_list<std::size_t> index) const;
    void set(std::span<const std::size_t> index, double value);

    /// Value of a rank-0 (or any single-entry) tensor.
    double value() const;

    /// Same data reinterpreted with a new axis signature of equal total size.
    Tensor reshaped(std::vector<Space> axes) const;

    bool same_shape(const Tensor& other) const { return axes_ == other.axes_; }

    friend Tensor operator+(const Tensor& a, const Tensor& b);
    friend Tensor operator-(const Tensor& a, const Tensor& b);
    friend Tensor operator*(double s, const Tensor& t);

private:
    std::vector<Space> axes_;
    std::vector<double> data_;

    std::size_t offset_of(std::span<const std::size_t> index) const;
};

/// Kronecker/tensor product: axes concatenate, entries multiply.
Tensor tensor_product(const Tensor& a, const Tensor& b);

/// Counit of the compact closed structure for a space with a fixed basis:
/// the rank-2 tensor whose pairing with e_i ⊗ e_j gives δ_ij.
Tensor epsilon(const Space& space);

/// Unit of the compact closed structure: Σ_i e_i ⊗ e_i as a rank-2 tensor.
Tensor eta(const Space& space);

/// Identity matrix on a space (same entries as eta, used as a map).
Tensor identity(const Space& space);

/// Frobenius multiplication: pointwise product of two vectors in one space.
Tensor frobenius_mu(const Tensor& a, const Tensor& b);

/// Frobenius deletion: sum the tensor over one axis.
Tensor iota_delete(const Tensor& t, std::size_t axis);

/// Names one axis of one operand in a contraction.
struct AxisRef {
    std::size_t operand = 0;
    std::size_t axis = 0;

    bool operator==(const AxisRef&) const = default;
};

/// Generalized inner product over the paired axes (einsum semantics).
///
/// Every axis of every operand must appear exactly once: either in one
/// pairing or in `output_order`, which fixes the axis order of the result.
Tensor contract(std::span<const Tensor> operands,
                const std::vector<std::pair<AxisRef, AxisRef>>& pairings,
                const std::vector<AxisRef>& output_order);

/// Moore-Penrose pseudoinverse of a rank-2 tensor.
///
/// Computed by one-sided Jacobi SVD; singular values below
/// tol * sigma_max * max(rows, cols) are treated as zero. A negative tol
/// selects the default (double machine epsilon).
Tensor pseudoinverse(const Tensor& m, double tol = -1.0);

/// Cosine similarity of two vectors of equal dimension.
double cosine(const Tensor& a, const Tensor& b);

double dot(const Tensor& a, const Tensor& b);
double norm(const Tensor& t);

/// Matrix-vector product for a rank-2 and a rank-1 tensor.
Tensor matvec(const Tensor& m, const Tensor& v);

/// Matrix-matrix product for rank-2 tensors.
Tensor matmul(const Tensor& a, const Tensor& b);

Tensor transpose(const Tensor& m);

/// Kronecker product of two rank-2 tensors as a rank-2 tensor.
Tensor kron(const Tensor& a, const Tensor& b);

}  // namespace catsem
