#include "catsem/binding.hpp"

#include <algorithm>
#include <variant>

namespace catsem {

struct BinaryTree::Impl {
    std::variant<Tensor, std::pair<BinaryTree, BinaryTree>> node;
};

BinaryTree BinaryTree::leaf(Tensor filler) {
    if (filler.rank() != 1) throw RankError("tree leaves must carry rank-1 fillers");
    return BinaryTree(std::make_shared<const Impl>(Impl{std::move(filler)}));
}

BinaryTree BinaryTree::node(BinaryTree left, BinaryTree right) {
    return BinaryTree(
        std::make_shared<const Impl>(Impl{std::make_pair(std::move(left), std::move(right))}));
}

bool BinaryTree::is_leaf() const { return std::holds_alternative<Tensor>(impl_->node); }

const Tensor& BinaryTree::filler() const {
    if (!is_leaf()) throw Error("not a leaf");
    return std::get<Tensor>(impl_->node);
}

const BinaryTree& BinaryTree::left() const {
    if (is_leaf()) throw Error("leaf has no children");
    return std::get<std::pair<BinaryTree, BinaryTree>>(impl_->node).first;
}

const BinaryTree& BinaryTree::right() const {
    if (is_leaf()) throw Error("leaf has no children");
    return std::get<std::pair<BinaryTree, BinaryTree>>(impl_->node).second;
}

Tensor DirectSumElement::component(std::size_t depth) const {
    auto it = components_.find(depth);
    if (it != components_.end()) return it->second;
    std::vector<Space> axes{filler_space_};
    for (std::size_t d = 0; d < depth; ++d) axes.push_back(role_space_);
    return Tensor::zeros(std::move(axes));
}

std::vector<std::size_t> DirectSumElement::depths() const {
    std::vector<std::size_t> out;
    for (const auto& [d, _] : components_) out.push_back(d);
    return out;
}

void DirectSumElement::accumulate(std::size_t depth, const Tensor& t) {
    if (t.rank() != depth + 1) throw ShapeError("component rank must be depth + 1");
    auto it = components_.find(depth);
    if (it == components_.end()) {
        components_.emplace(depth, t);
    } else {
        it->second = it->second + t;
    }
}

Tensor bind(const Tensor& filler, const Tensor& role) {
    if (filler.rank() != 1 || role.rank() != 1) throw RankError("bind expects two vectors");
    return tensor_product(filler, role);
}

namespace {

const Space& leaf_space(const BinaryTree& t) {
    return t.is_leaf() ? t.filler().axes()[0] : leaf_space(t.left());
}

// appends the step role on the right of every component of the subtree
void encode_into(const BinaryTree& t, const RoleBasis& roles, DirectSumElement& out,
                 const Tensor& suffix, std::size_t depth) {
    if (t.is_leaf()) {
        if (!(t.filler().axes()[0] == out.filler_space())) {
            throw SpaceMismatch("all leaf fillers must share one space");
        }
        out.accumulate(depth, depth == 0 ? t.filler() : tensor_product(t.filler(), suffix));
        return;
    }
    Tensor left_suffix = depth == 0 ? roles.r0 : tensor_product(roles.r0, suffix);
    Tensor right_suffix = depth == 0 ? roles.r1 : tensor_product(roles.r1, suffix);
    encode_into(t.left(), roles, out, left_suffix, depth + 1);
    encode_into(t.right(), roles, out, right_suffix, depth + 1);
}

}  // namespace

DirectSumElement encode_tree(const BinaryTree& tree, const RoleBasis& roles) {
    if (roles.r0.rank() != 1 || roles.r1.rank() != 1 ||
        !(roles.r0.axes()[0] == roles.r1.axes()[0])) {
        throw SpaceMismatch("roles must be vectors in one space");
    }
    DirectSumElement out(leaf_space(tree), roles.r0.axes()[0]);
    encode_into(tree, roles, out, Tensor::scalar(1.0), 0);
    return out;
}

namespace {

// rows of the pseudoinverse of [r0 r1] form the dual basis
std::pair<Tensor, Tensor> dual_basis(const RoleBasis& roles) {
    const Space& r_space = roles.r0.axes()[0];
    const std::size_t m = r_space.dim;
    std::vector<double> cols(m * 2);
    for (std::size_t i = 0; i < m; ++i) {
        cols[i * 2 + 0] = roles.r0.data()[i];
        cols[i * 2 + 1] = roles.r1.data()[i];
    }
    Tensor role_matrix({r_space, Space{"role-index", 2}}, std::move(cols));
    Tensor duals = pseudoinverse(role_matrix);

    // independence check: duals . roles must be the 2x2 identity
    Tensor gram = matmul(duals, role_matrix);
    Tensor residual = gram - identity(gram.axes()[0]);
    if (norm(residual) > 1e-8) {
        throw SingularRoles("role vectors are not linearly independent");
    }
    std::vector<double> d0(m), d1(m);
    for (std::size_t i = 0; i < m; ++i) {
        d0[i] = duals.data()[0 * m + i];
        d1[i] = duals.data()[1 * m + i];
    }
    return {Tensor::vector(r_space, std::move(d0)), Tensor::vector(r_space, std::move(d1))};
}

}  // namespace

Tensor unbind_role(const DirectSumElement& element, std::string_view path,
                   const RoleBasis& roles) {
    for (char c : path) {
        if (c != '0' && c != '1') throw ParseError("path must be a string of 0s and 1s");
    }
    auto [d0, d1] = dual_basis(roles);

    Tensor current = element.component(path.size());
    // contract the last role axis against each path step, deepest step first
    for (std::size_t step = path.size(); step-- > 0;) {
        const Tensor& dual = path[step] == '0' ? d0 : d1;
        const Tensor ops[] = {current, dual};
        std::vector<AxisRef> keep;
        for (std::size_t a = 0; a + 1 < current.rank(); ++a) keep.push_back(AxisRef{0, a});
        current = contract(ops, {{AxisRef{0, current.rank() - 1}, AxisRef{1, 0}}}, keep);
    }
    return current;
}

Tensor direct_sum_to_tensor(std::span<const Tensor> vectors) {
    if (vectors.empty()) throw ShapeError("expected at least one vector");
    Tensor out = vectors[0];
    for (std::size_t i = 1; i < vectors.size(); ++i) out = tensor_product(out, vectors[i]);
    return out;
}

struct FillerExpr::Impl {
    enum class Kind { atom, apply, pair } kind;
    Tensor tensor;                        // atom vector or apply operator
    std::vector<FillerExpr> children;
};

FillerExpr FillerExpr::atom(Tensor vector) {
    if (vector.rank() != 1) throw ShapeMismatch("atomic fillers must be vectors");
    return FillerExpr(
        std::make_shared<const Impl>(Impl{Impl::Kind::atom, std::move(vector), {}}));
}

FillerExpr FillerExpr::apply(Tensor op, FillerExpr arg) {
    if (op.rank() != 2) throw ShapeMismatch("operators must be rank-2 tensors");
    return FillerExpr(
        std::make_shared<const Impl>(Impl{Impl::Kind::apply, std::move(op), {std::move(arg)}}));
}

FillerExpr FillerExpr::pair(FillerExpr left, FillerExpr right) {
    return FillerExpr(std::make_shared<const Impl>(
        Impl{Impl::Kind::pair, Tensor{}, {std::move(left), std::move(right)}}));
}

Tensor FillerExpr::eval() const {
    switch (impl_->kind) {
        case Impl::Kind::atom:
            return impl_->tensor;
        case Impl::Kind::apply: {
            Tensor arg = impl_->children[0].eval();
            Tensor flat = arg.rank() == 1 ? arg : arg.reshaped({Space{"f", arg.size()}});
            if (impl_->tensor.dim(1) != flat.dim(0)) {
                throw ShapeMismatch("operator input dimension mismatch");
            }
            return matvec(impl_->tensor, flat);
        }
        case Impl::Kind::pair:
            return tensor_product(impl_->children[0].eval(), impl_->children[1].eval());
    }
    throw Error("unreachable");
}

FactoredForm factor_expression(const FillerExpr& expr) {
    auto walk = [](auto&& self, const FillerExpr& e) -> FactoredForm {
        const auto& impl = *e.impl_;
        switch (impl.kind) {
            case FillerExpr::Impl::Kind::atom:
                return FactoredForm{identity(impl.tensor.axes()[0]), impl.tensor, {}};
            case FillerExpr::Impl::Kind::apply: {
                FactoredForm inner = self(self, impl.children[0]);
                if (impl.tensor.dim(1) != inner.weight.dim(0)) {
                    throw ShapeMismatch("operator input dimension mismatch");
                }
                return FactoredForm{matmul(impl.tensor, inner.weight), std::move(inner.filler),
                                    {}};
            }
            case FillerExpr::Impl::Kind::pair: {
                FactoredForm l = self(self, impl.children[0]);
                FactoredForm r = self(self, impl.children[1]);
                Tensor filler = tensor_product(l.filler, r.filler);
                Space flat{"f", filler.size()};
                return FactoredForm{kron(l.weight, r.weight), filler.reshaped({flat}), {}};
            }
        }
        throw Error("unreachable");
    };
    return walk(walk, expr);
}

FactoredForm compile_sentence_factored(const std::vector<std::string>& words,
                                       const Lexicon& lexicon, const PregroupType& target) {
    std::vector<PregroupType> types;
    std::vector<Tensor> meanings;
    for (const auto& w : words) {
        const LexiconEntry& e = lexicon.entry(w);
        types.push_back(e.type);
        meanings.push_back(e.meaning);
    }
    ReductionDiagram diagram = parse(types, target, lexicon.spaces().alphabet());
    ContractionPlan plan = compile_reduction(diagram, types, lexicon.spaces());

    // filler slots: words of a plain atomic type (single simple, no adjoint)
    std::vector<std::size_t> slots;
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (types[w].size() == 1 && types[w][0].adjoint == 0) slots.push_back(w);
    }

    Tensor reference = evaluate_plan(plan, meanings);
    const std::size_t out_dim = reference.size();
    Space out_space = reference.rank() == 1 ? reference.axes()[0] : Space{"out", out_dim};

    std::vector<std::string> filler_words;
    Tensor filler = Tensor::scalar(1.0);
    for (std::size_t s : slots) {
        filler_words.push_back(words[s]);
        filler = tensor_product(filler, meanings[s]);
    }
    const std::size_t f_dim = filler.size();
    Space filler_space{"f", f_dim};

    // column c of the weight: the contraction with each filler word replaced
    // by the basis vector picked out by c (row-major over slot order)
    std::vector<double> w_data(out_dim * f_dim, 0.0);
    std::vector<std::size_t> index(slots.size(), 0);
    for (std::size_t c = 0; c < f_dim; ++c) {
        std::vector<Tensor> probe = meanings;
        for (std::size_t t = 0; t < slots.size(); ++t) {
            probe[slots[t]] = Tensor::basis(meanings[slots[t]].axes()[0], index[t]);
        }
        Tensor col = evaluate_plan(plan, probe);
        for (std::size_t r = 0; r < out_dim; ++r) w_data[r * f_dim + c] = col.data()[r];

        for (std::size_t t = slots.size(); t-- > 0;) {
            if (++index[t] < meanings[slots[t]].dim(0)) break;
            index[t] = 0;
        }
    }

    return FactoredForm{Tensor::matrix(out_space, filler_space, std::move(w_data)),
                        filler.reshaped({filler_space}), std::move(filler_words)};
}

Tensor circular_convolution(const Tensor& a, const Tensor& b) {
    if (a.rank() != 1 || b.rank() != 1) throw RankError("circular convolution expects vectors");
    const std::size_t n = a.dim(0);
    if (n != b.dim(0)) throw DimMismatch("circular convolution requires equal dimensions");
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[(i + j) % n] += a.data()[i] * b.data()[j];
    return Tensor({a.axes()[0]}, std::move(d));
}

}  // namespace catsem
