#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "catsem/semantics.hpp"
#include "catsem/tensor.hpp"

namespace catsem {

/// The two role vectors encoding left/right tree positions. They must be
/// linearly independent for exact unbinding.
struct RoleBasis {
    Tensor r0;
    Tensor r1;
};

/// An immutable binary tree whose leaves carry filler vectors.
class BinaryTree {
public:
    static BinaryTree leaf(Tensor filler);
    static BinaryTree node(BinaryTree left, BinaryTree right);

    bool is_leaf() const;
    const Tensor& filler() const;
    const BinaryTree& left() const;
    const BinaryTree& right() const;

private:
    struct Impl;
    explicit BinaryTree(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// An element of the graded direct-sum space: one tensor per tree depth,
/// with axes (filler space, role space, ..., role space). Depths that were
/// never written are zero.
class DirectSumElement {
public:
    DirectSumElement(Space filler_space, Space role_space)
        : filler_space_(std::move(filler_space)), role_space_(std::move(role_space)) {}

    const Space& filler_space() const { return filler_space_; }
    const Space& role_space() const { return role_space_; }

    /// Component at a depth; zero tensor of the right shape when absent.
    Tensor component(std::size_t depth) const;
    bool has_component(std::size_t depth) const { return components_.count(depth) != 0; }
    std::vector<std::size_t> depths() const;

    /// Add a tensor into the component at its depth (axis count - 1).
    void accumulate(std::size_t depth, const Tensor& t);

private:
    Space filler_space_;
    Space role_space_;
    std::map<std::size_t, Tensor> components_;
};

/// Bind a filler to a role: their tensor product.
Tensor bind(const Tensor& filler, const Tensor& role);

/// Encode a binary tree as a sum of filler/role-string bindings, one
/// component per depth. A leaf's role string lists its path steps deepest
/// first: a leaf reached by steps b1..bd from the root gets
/// filler ⊗ r_{bd} ⊗ ... ⊗ r_{b1}.
DirectSumElement encode_tree(const BinaryTree& tree, const RoleBasis& roles);

/// Extract the filler at a tree address by contracting the depth component
/// with the dual basis of the roles. The path string is in role-axis order
/// (deepest step first), matching the subscripts produced by encode_tree.
Tensor unbind_role(const DirectSumElement& element, std::string_view path, const RoleBasis& roles);

/// Collapse a list of vectors to their tensor product.
Tensor direct_sum_to_tensor(std::span<const Tensor> vectors);

/// A structure in weight-times-filler normal form: a single matrix applied
/// to the tensor product of atomic fillers.
struct FactoredForm {
    Tensor weight;
    Tensor filler;
    std::vector<std::string> filler_words;
};

/// Expression over atomic filler vectors: leaves are vectors, internal nodes
/// apply a matrix or pair two subexpressions with the tensor product.
class FillerExpr {
public:
    static FillerExpr atom(Tensor vector);
    static FillerExpr apply(Tensor op, FillerExpr arg);
    static FillerExpr pair(FillerExpr left, FillerExpr right);

    /// Direct evaluation of the expression.
    Tensor eval() const;

private:
    struct Impl;
    explicit FillerExpr(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
    friend FactoredForm factor_expression(const FillerExpr&);
};

/// Rewrite an expression as one weight matrix times the tensor product of
/// its atomic fillers. Operators pulled over pairings are identity-padded
/// with Kronecker products, so weight * filler equals direct evaluation.
FactoredForm factor_expression(const FillerExpr& expr);

/// Factor a sentence: words of a plain atomic type become the filler slots
/// and everything else folds into the weight matrix, so that
/// weight * filler equals evaluate(words, lexicon, target).
FactoredForm compile_sentence_factored(const std::vector<std::string>& words,
                                       const Lexicon& lexicon, const PregroupType& target);

/// Cyclic binding of two equal-length vectors:
/// (a * b)[k] = sum_i a[i] * b[(k - i) mod n].
Tensor circular_convolution(const Tensor& a, const Tensor& b);

}  // namespace catsem
