// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripc/tripotent.hpp"

namespace tripc {

/// The Peirce 2-space Z_2(u) = u Z* u as an explicit unital C*-algebra with
/// product x . y = x u* y, involution x -> u x* u and unit u. The map
/// x -> u* x is a *-isomorphism onto a C*-subalgebra of M_q.
struct PeirceAlgebra {
    Tripotent unit;
    std::vector<CMatrix> basis; // orthonormal basis of Z_2(u)
    std::optional<std::vector<CMatrix>> relative_basis; // Z(u) = Z_2(u) n relative

    CMatrix product(const CMatrix& x, const CMatrix& y) const;
    CMatrix involution(const CMatrix& x) const;
    CMatrix iso_image(const CMatrix& x) const; // u* x
};

/// Validates all C*-identities; AlgebraAxiomFailure on tolerance breakdown.
PeirceAlgebra build_peirce(const Tripotent& a, const TroSpace* relative,
                           const TolerancePolicy& tol);

/// Membership in the cone c_u = { z in Z_2(u) : u* z >= 0, z = u z* u },
/// which for members also forces u* z = |z|.
bool cone_membership(const PeirceAlgebra& pa, const CMatrix& x,
                     const TolerancePolicy& tol);

/// Detailed residuals behind cone_membership (for reports).
std::map<std::string, double> cone_residuals(const PeirceAlgebra& pa,
                                             const CMatrix& x,
                                             const TolerancePolicy& tol);

/// r(x): the partial isometry of the polar decomposition, validated to stay
/// inside z (RangeEscape otherwise) and to be the least tripotent with
/// x = r |x|.
Tripotent range_tripotent(const TroSpacePtr& z, const CMatrix& x,
                          const TolerancePolicy& tol);

/// u(x): the limit of odd powers of a contraction — the part of x with unit
/// singular values. Cross-validated against explicit odd-power iteration.
Tripotent limit_tripotent(const TroSpacePtr& z, const CMatrix& x,
                          const TolerancePolicy& tol);

/// r(x) restricted to singular values inside [lo, hi]; (0, inf) recovers r(x).
Tripotent spectral_tripotent(const TroSpacePtr& z, const CMatrix& x, double lo,
                             double hi, const TolerancePolicy& tol);

/// The matrix-level limit of odd powers: the singular directions of x with
/// |sigma - 1| <= one_tol. Throws NormExceedsOne past 1 + one_tol.
CMatrix unit_band_part(const CMatrix& x, const TolerancePolicy& tol);

/// Support tripotent of an inner C*-ideal: u with J = Z(u). Tries a
/// canonical selfadjoint-positive choice first (projection of the identity
/// into J) and falls back to generic random elements of J, retrying up to 16
/// times. Throws NotInnerIdeal / NoUnitaryFound.
Tripotent support_tripotent(const TroSpacePtr& z, const std::vector<CMatrix>& j_basis,
                            const TolerancePolicy& tol, std::uint64_t seed);

/// hat(x) = [[|x*|, x], [x*, |x|]]/2 in M_{p+q}: positive, norm <= 1,
/// dominated by hat(r(x)), and satisfying u(hat(x)) = hat(u(x)) and
/// r(hat(x)) = hat(r(x)).
CMatrix hat_element(const TroSpacePtr& z, const CMatrix& x, const TolerancePolicy& tol);

struct ConeReport {
    bool verdict = false;
    bool decided = true; // false when a feasibility solve hit its cap
    std::map<std::string, double> residuals;
    std::vector<CMatrix> witnesses;
};

/// For PSD block contractions x over a C*-algebra A (square-mode TroSpace
/// equal to its own J), verifies
///   (inf_i u(x_ii)) (x) I_n <= u(x) <= x <= r(x) <= (sup_i r(x_ii)) (x) I_n
/// and reports every PSD slack. Throws NotPSD / NotContraction.
ConeReport block_bounds_check(const TroSpacePtr& a, const CMatrix& x,
                              const TolerancePolicy& tol);

} // namespace tripc
