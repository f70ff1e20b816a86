#pragma once

#include <cstddef>
#include <vector>

#include "catsem/tensor.hpp"

namespace catsem {

/// In-place modification of one filler slot of a bound structure:
/// operator = source_role . (I ⊗ ... ⊗ modifier ⊗ ... ⊗ I) . source_role⁺.
struct SubstitutionOp {
    Tensor op;
    Tensor source_role;
    Tensor modifier;
    std::size_t slot = 0;
};

/// Approximately unbind a filler from a weight matrix: returns w⁺ . s.
/// Recovery is exact whenever w has full column rank.
Tensor approx_unbind(const Tensor& w, const Tensor& s, double tol = -1.0);

/// Build a substitution operator acting on the given filler slot.
/// slot_dims lists the dimension of each slot; the modifier must be a square
/// matrix on slot_dims[slot].
SubstitutionOp make_substitution(const Tensor& w_r, const Tensor& modifier, std::size_t slot,
                                 std::size_t n_slots, const std::vector<std::size_t>& slot_dims,
                                 double tol = -1.0);

/// Apply a substitution operator to a bound structure vector.
Tensor apply_substitution(const SubstitutionOp& op, const Tensor& s);

/// The identity-padded modifier I ⊗ ... ⊗ modifier ⊗ ... ⊗ I used inside a
/// substitution operator; exposed for computing ground truths and residuals.
Tensor padded_modifier(const Tensor& modifier, std::size_t slot, std::size_t n_slots,
                       const std::vector<std::size_t>& slot_dims);

}  // namespace catsem
