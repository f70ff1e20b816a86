#include "catsem/unbinding.hpp"

namespace catsem {

Tensor approx_unbind(const Tensor& w, const Tensor& s, double tol) {
    if (w.rank() != 2 || s.rank() != 1) throw RankError("approx_unbind expects a matrix and a vector");
    if (w.dim(0) != s.dim(0)) throw DimMismatch("structure dimension does not match weight rows");
    return matvec(pseudoinverse(w, tol), s);
}

Tensor padded_modifier(const Tensor& modifier, std::size_t slot, std::size_t n_slots,
                       const std::vector<std::size_t>& slot_dims) {
    if (slot >= n_slots) throw SlotOutOfRange("slot index out of range");
    if (slot_dims.size() != n_slots) throw DimMismatch("slot_dims must list every slot");
    if (modifier.rank() != 2 || modifier.dim(0) != modifier.dim(1) ||
        modifier.dim(0) != slot_dims[slot]) {
        throw DimMismatch("modifier must be square on the selected slot");
    }
    Tensor padded = Tensor::matrix(Space{"1", 1}, Space{"1", 1}, {1.0});
    for (std::size_t i = 0; i < n_slots; ++i) {
        const Tensor factor =
            i == slot ? modifier : identity(Space{"s" + std::to_string(i), slot_dims[i]});
        padded = kron(padded, factor);
    }
    return padded;
}

SubstitutionOp make_substitution(const Tensor& w_r, const Tensor& modifier, std::size_t slot,
                                 std::size_t n_slots, const std::vector<std::size_t>& slot_dims,
                                 double tol) {
    if (w_r.rank() != 2) throw RankError("source role must be rank-2");
    Tensor padded = padded_modifier(modifier, slot, n_slots, slot_dims);
    if (padded.dim(0) != w_r.dim(1)) {
        throw DimMismatch("slot dimensions do not multiply to the weight's filler dimension");
    }
    Tensor op = matmul(matmul(w_r, padded), pseudoinverse(w_r, tol));
    return SubstitutionOp{std::move(op), w_r, modifier, slot};
}

Tensor apply_substitution(const SubstitutionOp& op, const Tensor& s) {
    return matvec(op.op, s);
}

}  // namespace catsem
