// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "tripc/tro.hpp"

namespace tripc {

/// An element u of a TroSpace with u u* u = u. Singular values are snapped
/// to exactly 1 on construction (make_tripotent), so downstream order and
/// lattice identities do not drift.
struct Tripotent {
    TroSpacePtr space;
    CMatrix u;
};

/// Validates u u* u = u and membership in the space, snaps singular values.
/// Throws NotTripotent / NotInSpace / ShapeMismatch.
Tripotent make_tripotent(TroSpacePtr space, const CMatrix& u,
                         const TolerancePolicy& tol);

/// The tripotent order a <= b, i.e. a b* a = a. Evaluated through five
/// equivalent criteria (the three product forms, "a is a projection in the
/// Peirce algebra of b", and hat(a) <= hat(b)); any disagreement raises
/// InconsistencyError.
bool leq(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol);

/// hat(u) = (I(u) + I(u)^2)/2 and breve(u) = Theta(hat(u)), both projections
/// in M_{p+q}; hat(u) Theta(hat(u)) = 0.
CMatrix hat_matrix(const Tripotent& a);
CMatrix breve_matrix(const Tripotent& a);

/// Recovers the tripotent v with hat(v) = r from an antisymmetric projection
/// r in M_{p+q} (v is twice the upper-right block). Throws NotProjection /
/// NotAntisymmetric / NotInSpace.
Tripotent antisymmetric_decompose(TroSpacePtr space, const CMatrix& r,
                                  const TolerancePolicy& tol);

/// v* u = u* v and v u* = u v*; orthogonal when these products vanish.
bool commutes(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol);
bool orthogonal(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol);

/// Existence of a least upper bound: u v* v = u u* v and v v* u = v u* u,
/// cross-validated against hat(a) perp breve(b).
bool sup_exists(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol);

/// u v = r(u + v) when sup_exists; hard error (SupDoesNotExist) otherwise.
/// Verifies domination of both inputs, hat(w) = range projection of
/// hat(a) + hat(b), and (on small spaces) minimality against sampled
/// dominating tripotents.
Tripotent sup(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol);

/// a + b - b b* a for commuting inputs with b a* a = b b* a; verified
/// against sup(a, b). Throws PreconditionFailed.
Tripotent sup_commuting(const Tripotent& a, const Tripotent& b,
                        const TolerancePolicy& tol);

/// (b b* a + b a* a)/2 for commuting inputs; the result is a tripotent below
/// both. Throws NotCommuting / NotTripotentResult.
Tripotent inf_commuting(const Tripotent& a, const Tripotent& b,
                        const TolerancePolicy& tol);

/// Infimum of a family: the largest tripotent w whose cone is contained in
/// every cone of the family. Computed by sampling the intersection cone
///   C = { z in Z : z = u_a z* u_a, u_a* z >= 0 for all a }
/// (conjugate-linear constraints solved over the realification, then cyclic
/// projections onto the PSD constraints) and taking a running sup of range
/// tripotents until `stabilization_k` consecutive samples stop growing it.
Tripotent inf_family(const std::vector<Tripotent>& us, const TolerancePolicy& tol,
                     std::uint64_t seed, int stabilization_k = 8);

/// u tensor I_n in the n-fold amplification M_n(Z); order-preserving.
TroSpacePtr amplify_space(const TroSpace& z, int n, const TolerancePolicy& tol);
Tripotent amplify(const Tripotent& a, int n, const TolerancePolicy& tol);

/// Finite-dimensional openness of `a` relative to the subTRO z of a.space:
/// membership in z, cross-validated against hat(a) lying in L(z) and the
/// cone-span dimension count. Disagreement raises InconsistencyError.
bool is_open_relative(const Tripotent& a, const TroSpace& z,
                      const TolerancePolicy& tol);

/// Extreme-point criterion: (1 - u u*) Z (1 - u* u) = (0).
bool is_maximal(const Tripotent& a, const TolerancePolicy& tol);

} // namespace tripc
