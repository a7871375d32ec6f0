// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "tripc/peirce.hpp"

namespace tripc {

/// An operator space X in M_{p x q} with level-1 cone generators. In square
/// mode each generator must be PSD, so the inclusion map is positive.
struct OrderedSpace {
    int p = 0;
    int q = 0;
    bool square_mode = false;
    std::vector<CMatrix> space_basis;
    std::vector<CMatrix> cone_generators;
};

/// Validates shapes, generator containment and (square mode) positivity.
void validate_ordered_space(const OrderedSpace& x, const TolerancePolicy& tol);

/// S_annihilator = { x in Z : y x = x y = 0 for all y in S }, a ternary
/// *-ideal of the *-TRO Z, returned with an orthonormal basis.
TroSpacePtr annihilator(const TroSpacePtr& z, const std::vector<CMatrix>& s,
                        const TolerancePolicy& tol);

/// Maximality of a selfadjoint central tripotent among its kind: true iff
/// { w in Z : w = w*, w central, u w = w u = 0 } is trivial.
bool central_sa_maximal(const TroSpacePtr& z, const Tripotent& u,
                        const TolerancePolicy& tol);

/// Per-witness complete-orderability probe: reports dim(u_annihilator) for a
/// maximal central selfadjoint u; verdict true iff the dimension is zero.
ConeReport orderable_probe(const TroSpacePtr& z, const Tripotent& u,
                           const TolerancePolicy& tol);

struct BoundaryCone {
    TroSpacePtr w;    // the TRO generated by X
    Tripotent u;      // sup of the range tripotents of the cone generators
    ConeReport report; // generator membership in d_u at levels 1 and 2
};

/// The ordered-boundary cone assignment u = sup_x r(i(x)) over the cone
/// generators; every generator must land in d_u (checked at n = 1 and,
/// through amplification, n = 2).
BoundaryCone boundary_cone(const OrderedSpace& x, const TolerancePolicy& tol);

/// For densely spanning cones: W = <X> must equal J(W) (a C*-subalgebra)
/// and satisfy W = u W* u for the boundary tripotent u.
ConeReport bk_check(const OrderedSpace& x, const TolerancePolicy& tol);

/// Completeness probe: does every element of X inside d_u lie in the cone
/// generated by the cone_generators? Sampled at levels 1 and 2; conic
/// membership decided by a feasibility solve (undecided solves mark the
/// report undecided, never false).
ConeReport completeness_check(const OrderedSpace& x, const TolerancePolicy& tol);

struct RestrictedDecomposition {
    Tripotent u; // selfadjoint central tripotent, u = pmat - Theta(pmat) corner
    CMatrix q;   // central projection with q u = u q = 0
};

/// Splits a central projection of the restricted linking algebra of a *-TRO
/// into its antisymmetric part hat(u) and diagonal part q + q.
RestrictedDecomposition restricted_linking_decompose(const TroSpacePtr& z,
                                                     const CMatrix& pmat,
                                                     const TolerancePolicy& tol);

} // namespace tripc
