// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "tripc/linalg.hpp"

namespace tripc {

/// A finite-dimensional TRO: a subspace Z of p x q complex matrices closed
/// under the triple product x y* z, carried by an orthonormal basis.
///
/// The ambient algebra is M_{p+q} with Z in the upper-right corner. When
/// p == q and square_mode is set, Z is additionally read as sitting inside
/// M_p directly, which is what gives "Z intersect PSD" its meaning.
struct TroSpace {
    int p = 0;
    int q = 0;
    bool square_mode = false;
    bool star_closed = false; // p == q and b* in span(basis) for each b
    std::vector<CMatrix> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

using TroSpacePtr = std::shared_ptr<const TroSpace>;

/// Validates orthonormality and ternary closedness, computes star_closed.
/// Throws ShapeMismatch / NotOrthonormal / NotTernaryClosed / NotSquareAmbient.
TroSpacePtr make_tro_space(int p, int q, std::vector<CMatrix> basis,
                           bool square_mode, const TolerancePolicy& tol);

/// Linear map between TROs respecting T(x y* z) = T(x) T(y)* T(z);
/// `action` maps domain coordinates to codomain coordinates.
struct TernaryMorphism {
    TroSpacePtr domain;
    TroSpacePtr codomain;
    CMatrix action; // codomain.dim() x domain.dim()
};

/// The smallest subTRO containing the generators: iterate
/// V <- span(V u {x y* z}) until the dimension stabilizes (<= pq rounds).
TroSpacePtr generate_subtro(int p, int q, const std::vector<CMatrix>& generators,
                            bool square_mode, const TolerancePolicy& tol);

bool contains(const TroSpace& z, const CMatrix& x, const TolerancePolicy& tol);

/// Orthonormal spans of {b_i b_j*} and {b_i* b_j} (the left/right corners
/// of the linking algebra, before embedding).
std::vector<CMatrix> left_products(const TroSpace& z, const TolerancePolicy& tol);
std::vector<CMatrix> right_products(const TroSpace& z, const TolerancePolicy& tol);
std::vector<CMatrix> adjoint_span(const TroSpace& z, const TolerancePolicy& tol);

/// J(Z) = Z n Z* n span(Z* Z) n span(Z Z*), a C*-subalgebra of M_p and an
/// inner ideal of Z. Throws NotSquareAmbient when p != q.
TroSpacePtr j_subalgebra(const TroSpace& z, const TolerancePolicy& tol);

/// Membership of x in the natural cone J(Z)_+ = Z n PSD. Cross-validated
/// against explicit J(Z) membership; disagreement raises InconsistencyError.
bool natural_cone_membership(const TroSpace& z, const CMatrix& x,
                             const TolerancePolicy& tol);

/// The linking algebra L(Z) inside M_{p+q}: corners span(Z Z*), Z, Z*,
/// span(Z* Z), the injection I(z) = [[0, z], [z*, 0]] and the period-2
/// automorphism Theta negating the off-diagonal blocks.
struct LinkingAlgebra {
    int p = 0;
    int q = 0;
    std::vector<CMatrix> corner_left;   // span(Z Z*) embedded at (0,0)
    std::vector<CMatrix> corner_z;      // Z embedded at (0,p)
    std::vector<CMatrix> corner_zstar;  // Z* embedded at (p,0)
    std::vector<CMatrix> corner_right;  // span(Z* Z) embedded at (p,p)

    CMatrix inject(const CMatrix& z) const;
    CMatrix theta(const CMatrix& m) const;
    std::vector<CMatrix> full_basis() const;
    bool contains(const CMatrix& m, const TolerancePolicy& tol) const;
};

LinkingAlgebra linking_algebra(const TroSpace& z, const TolerancePolicy& tol);

/// Theta on M_{p+q} without building the full corner data.
CMatrix theta_reflect(const CMatrix& m, int p, int q);

/// J Z* J in J (inner) / J Z* Z in J and Z Z* J in J (ternary), checked
/// exhaustively on basis triples. Throws NotSubspace if j is not inside z.
bool is_inner_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                    const TolerancePolicy& tol);
bool is_ternary_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                      const TolerancePolicy& tol);

struct Quotient {
    TroSpacePtr space;       // Z (1 - q)
    TernaryMorphism map;     // z -> z (1 - q), surjective
    CMatrix support;         // the central support projection q of span(J* J)
};

/// Quotient by a ternary ideal via its support projection. Throws
/// NotTernaryIdeal, or SupportMismatch when J != Z q numerically.
Quotient quotient_by_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                           const TolerancePolicy& tol);

/// Block-diagonal direct sum. The natural cone of the sum is the product of
/// the natural cones (cross-checked via j_subalgebra on square inputs).
TroSpacePtr direct_sum(const std::vector<TroSpacePtr>& zs,
                       const TolerancePolicy& tol);

CMatrix apply_ternary_morphism(const TernaryMorphism& t, const CMatrix& x,
                               const TolerancePolicy& tol);
bool validate_ternary(const TernaryMorphism& t, const TolerancePolicy& tol);

/// True when both spaces agree (same object, or same shape and span).
bool same_space(const TroSpace& a, const TroSpace& b, const TolerancePolicy& tol);

} // namespace tripc
