// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "tripc/errors.hpp"

namespace tripc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Uniform tolerance discipline shared by every module. Every "=" of the
/// underlying identities becomes approx_eq under eq_tol, every ">= 0"
/// becomes is_psd under psd_tol; rank decisions use the relative cutoff
/// rank_tol, and singular values within one_tol of 1 are snapped to 1.
struct TolerancePolicy {
    double eq_tol = 1e-9;   // relative Frobenius threshold for matrix equality
    double rank_tol = 1e-8; // relative singular-value cutoff
    double one_tol = 1e-8;  // absolute band |sigma - 1| for unit singular values
    double psd_tol = 1e-10; // minimum-eigenvalue slack

    /// Throws InputError if a threshold is non-positive or eq_tol is below
    /// machine epsilon times the largest dimension in play.
    void validate(int max_dim = 1) const;
};

struct HermitianEigen {
    RVector values; // descending
    CMatrix vectors; // unitary, columns matching `values`
};

struct PolarParts {
    CMatrix isometry; // partial isometry r with r r* r = r
    CMatrix positive; // |x|, PSD, with sub-cutoff singular values zeroed
};

double fro_norm(const CMatrix& a);
double spectral_norm(const CMatrix& a);
Complex trace_inner(const CMatrix& a, const CMatrix& b); // <a,b> = tr(b* a)

/// ||a-b||_F <= eq_tol * max(1, ||a||_F, ||b||_F). Throws ShapeMismatch.
bool approx_eq(const CMatrix& a, const CMatrix& b, const TolerancePolicy& tol);
/// The scaled residual approx_eq thresholds against.
double eq_residual(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& a, const TolerancePolicy& tol);

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Throws NotHermitian if ||a - a*||_F > eq_tol * ||a||_F.
HermitianEigen hermitian_eigen(const CMatrix& a, const TolerancePolicy& tol);

double min_eigenvalue(const CMatrix& a_hermitian);

/// True iff min eigenvalue >= -psd_tol * max(1, ||a||_2). Throws NotHermitian.
bool is_psd(const CMatrix& a, const TolerancePolicy& tol);

/// PSD square root. Throws NotPSD.
CMatrix psd_sqrt(const CMatrix& a, const TolerancePolicy& tol);

/// Hermitian part of a with negative eigenvalues clamped to zero.
CMatrix psd_clamp(const CMatrix& a);

/// x = r |x| with r a partial isometry of exact numerical rank; singular
/// values below rank_tol * sigma_max are zeroed. The zero matrix maps to
/// (0, 0); there are no error cases.
PolarParts polar_decompose(const CMatrix& x, const TolerancePolicy& tol);

/// Hermitian idempotent p with p a = a and rank(p) = numerical rank of a.
CMatrix range_projection(const CMatrix& a, const TolerancePolicy& tol);

int numerical_rank(const CMatrix& a, const TolerancePolicy& tol);

// ---------------------------------------------------------------------------
// Span utilities over lists of equal-shape matrices (trace inner product).
// All bases produced here are orthonormal.
// ---------------------------------------------------------------------------

std::vector<CMatrix> orthonormal_span(const std::vector<CMatrix>& gens,
                                      const TolerancePolicy& tol);

/// Orthogonal projection of x onto span(basis); basis must be orthonormal.
CMatrix project_onto_span(const std::vector<CMatrix>& basis, const CMatrix& x);

double span_distance(const std::vector<CMatrix>& basis, const CMatrix& x);

/// dist(x, span) <= eq_tol * max(1, ||x||_F).
bool span_contains(const std::vector<CMatrix>& basis, const CMatrix& x,
                   const TolerancePolicy& tol);

/// span(a) included in span(b).
bool span_subset(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                 const TolerancePolicy& tol);

/// Intersection of subspaces via averaged orthogonal projectors and an
/// eigendecomposition with rank_tol cutoff. `rows`/`cols` give the shape of
/// the ambient matrix space (needed when the result is trivial).
std::vector<CMatrix> span_intersection(
    const std::vector<std::vector<CMatrix>>& spans, int rows, int cols,
    const TolerancePolicy& tol);

/// Orthonormal basis (over the reals) of
///   { z in span_R(i^k basis) : constraint(z) = 0 for every constraint },
/// where the constraints are real-linear (they may involve conjugation, e.g.
/// z - u z* u). Real combinations of the returned matrices exhaust the
/// solution set.
std::vector<CMatrix> real_linear_nullspace(
    const std::vector<CMatrix>& basis,
    const std::vector<std::function<CMatrix(const CMatrix&)>>& constraints,
    const TolerancePolicy& tol);

} // namespace tripc
