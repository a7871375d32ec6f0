// SPDX-License-Identifier: Apache-2.0
#include "tripc/peirce.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "tripc/rng.hpp"

namespace tripc {

CMatrix PeirceAlgebra::product(const CMatrix& x, const CMatrix& y) const {
    return x * unit.u.adjoint() * y;
}

CMatrix PeirceAlgebra::involution(const CMatrix& x) const {
    return unit.u * x.adjoint() * unit.u;
}

CMatrix PeirceAlgebra::iso_image(const CMatrix& x) const {
    return unit.u.adjoint() * x;
}

PeirceAlgebra build_peirce(const Tripotent& a, const TroSpace* relative,
                           const TolerancePolicy& tol) {
    const TroSpace& z = *a.space;
    if (relative &&
        (relative->p != z.p || relative->q != z.q ||
         !span_subset(relative->basis, z.basis, tol)))
        throw InputError("NotSubspace", "relative space is not a subTRO");

    std::vector<CMatrix> gens;
    for (const auto& b : z.basis) gens.push_back(a.u * b.adjoint() * a.u);
    PeirceAlgebra pa;
    pa.unit = a;
    pa.basis = orthonormal_span(gens, tol);

    auto axiom = [&](bool ok, const char* what) {
        if (!ok) throw InconsistencyError("AlgebraAxiomFailure", what);
    };
    const double loose = tol.eq_tol * 10;
    for (const auto& x : pa.basis) {
        axiom(span_contains(z.basis, x, tol), "Z_2(u) escapes Z");
        axiom(eq_residual(pa.product(a.u, x), x) <= loose, "u . x != x");
        axiom(eq_residual(pa.product(x, a.u), x) <= loose, "x . u != x");
        axiom(span_contains(pa.basis, pa.involution(x), tol),
              "involution escapes Z_2(u)");
        for (const auto& y : pa.basis) {
            axiom(span_contains(pa.basis, pa.product(x, y), tol),
                  "product escapes Z_2(u)");
            // x -> u* x must be a *-homomorphism
            axiom(eq_residual(pa.iso_image(pa.product(x, y)),
                              pa.iso_image(x) * pa.iso_image(y)) <= loose,
                  "u* (x.y) != (u* x)(u* y)");
        }
        axiom(eq_residual(pa.iso_image(pa.involution(x)),
                          pa.iso_image(x).adjoint()) <= loose,
              "u* (x#) != (u* x)*");
    }
    if (relative) {
        std::vector<std::vector<CMatrix>> spans{pa.basis, relative->basis};
        pa.relative_basis = span_intersection(spans, z.p, z.q, tol);
    }
    return pa;
}

std::map<std::string, double> cone_residuals(const PeirceAlgebra& pa,
                                             const CMatrix& x,
                                             const TolerancePolicy& tol) {
    std::map<std::string, double> r;
    r["peirce_distance"] = span_distance(pa.basis, x) / std::max(1.0, x.norm());
    const CMatrix h = pa.iso_image(x);
    r["herm_residual"] = (h - h.adjoint()).norm() / std::max(1.0, h.norm());
    r["min_eig"] = min_eigenvalue(0.5 * (h + h.adjoint()));
    r["sharp_residual"] = eq_residual(pa.involution(x), x);
    const CMatrix absx = psd_sqrt(CMatrix(x.adjoint() * x), tol);
    r["lemma_x_residual"] = eq_residual(h, absx);
    return r;
}

bool cone_membership(const PeirceAlgebra& pa, const CMatrix& x,
                     const TolerancePolicy& tol) {
    if (x.rows() != pa.unit.space->p || x.cols() != pa.unit.space->q)
        throw InputError("ShapeMismatch", "element shape does not match the space");
    if (!span_contains(pa.basis, x, tol)) return false;
    const CMatrix h = pa.iso_image(x);
    if (!is_hermitian(h, tol) || !is_psd(CMatrix(0.5 * (h + h.adjoint())), tol))
        return false;
    if (eq_residual(pa.involution(x), x) > tol.eq_tol) return false;
    // Members must satisfy u* x = |x|; the identity is implied, so treat a
    // large residual as part of the verdict rather than a separate oracle.
    const CMatrix absx = psd_sqrt(CMatrix(x.adjoint() * x), tol);
    return eq_residual(h, absx) <= tol.eq_tol * 10;
}

Tripotent range_tripotent(const TroSpacePtr& z, const CMatrix& x,
                          const TolerancePolicy& tol) {
    if (!contains(*z, x, tol))
        throw InputError("NotInSpace", "range tripotent of an element outside Z");
    const PolarParts parts = polar_decompose(x, tol);
    Tripotent r;
    try {
        r = make_tripotent(z, parts.isometry, tol);
    } catch (const InputError& e) {
        if (std::string(e.kind()) == "NotInSpace")
            throw InputError("RangeEscape",
                             "polar isometry escapes Z: input space is not "
                             "ternary closed at working precision");
        throw;
    }
    if (eq_residual(r.u * parts.positive, x) > tol.eq_tol * 10)
        throw InconsistencyError("InternalInconsistency", "x != r(x) |x|");
    // x must lie in the cone of its own range tripotent; use the direct
    // description { z : u* z >= 0, z = u z* u } to keep this cheap.
    if (x.norm() > tol.eq_tol) {
        const CMatrix h = r.u.adjoint() * x;
        if (!is_hermitian(h, tol) ||
            min_eigenvalue(CMatrix(0.5 * (h + h.adjoint()))) <
                -tol.psd_tol * std::max(1.0, x.norm()) ||
            eq_residual(r.u * x.adjoint() * r.u, x) > tol.eq_tol * 10)
            throw InconsistencyError("InternalInconsistency", "x escapes c_{r(x)}");
    }
    // Least-tripotent property: dropping any singular direction of r must
    // break x = t |x|.
    if (x.norm() > 0.0) {
        Eigen::JacobiSVD<CMatrix> svd(r.u, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int k = numerical_rank(r.u, tol);
        for (int i = 0; i < k; ++i) {
            const CMatrix cut =
                r.u - svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
            if (eq_residual(cut * parts.positive, x) <= tol.eq_tol)
                throw InconsistencyError("InternalInconsistency",
                                         "a smaller tripotent reproduces x");
        }
    }
    return r;
}

namespace {

// Keep directions with |sigma - 1| <= one_tol; reject sigma > 1 + one_tol.
struct UnitBand {
    CMatrix tripotent_part;
    CMatrix snapped; // input with in-band singular values set to exactly 1
};

UnitBand unit_band_split(const CMatrix& x, const TolerancePolicy& tol) {
    UnitBand out;
    out.tripotent_part = CMatrix::Zero(x.rows(), x.cols());
    out.snapped = CMatrix::Zero(x.rows(), x.cols());
    if (x.size() == 0 || x.norm() == 0.0) return out;
    Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    if (s(0) > 1.0 + tol.one_tol)
        throw InputError("NormExceedsOne", "spectral norm exceeds 1 + one_tol");
    RVector snapped = s;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (std::abs(s(i) - 1.0) <= tol.one_tol) {
            snapped(i) = 1.0;
            out.tripotent_part += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
        }
    }
    out.snapped = svd.matrixU() * snapped.asDiagonal() * svd.matrixV().adjoint();
    return out;
}

} // namespace

CMatrix unit_band_part(const CMatrix& x, const TolerancePolicy& tol) {
    return unit_band_split(x, tol).tripotent_part;
}

Tripotent limit_tripotent(const TroSpacePtr& z, const CMatrix& x,
                          const TolerancePolicy& tol) {
    if (!contains(*z, x, tol))
        throw InputError("NotInSpace", "limit tripotent of an element outside Z");
    const UnitBand band = unit_band_split(x, tol);

    // Independent route: iterate y <- y y* y on the snapped matrix (snapping
    // first keeps inputs at 1 + one_tol from blowing up: the band owns the
    // |sigma - 1| <= one_tol semantics).
    CMatrix y = band.snapped;
    for (int iter = 0; iter < 200; ++iter) {
        const CMatrix next = y * y.adjoint() * y;
        const double step = (next - y).norm();
        y = next;
        if (step <= tol.eq_tol) break;
    }
    if (eq_residual(y, band.tripotent_part) > tol.eq_tol * 100)
        throw InconsistencyError("InternalInconsistency",
                                 "odd-power iteration disagrees with the "
                                 "unit singular band");
    Tripotent u = make_tripotent(z, band.tripotent_part, tol);
    const Tripotent r = range_tripotent(z, x, tol);
    if (!leq(u, r, tol))
        throw InconsistencyError("InternalInconsistency", "u(x) escapes below r(x)");
    return u;
}

Tripotent spectral_tripotent(const TroSpacePtr& z, const CMatrix& x, double lo,
                             double hi, const TolerancePolicy& tol) {
    if (!contains(*z, x, tol))
        throw InputError("NotInSpace", "spectral tripotent of an element outside Z");
    if (lo < 0.0 || hi < lo)
        throw InputError("PreconditionFailed", "interval must sit inside (0, inf)");
    CMatrix t = CMatrix::Zero(x.rows(), x.cols());
    if (x.norm() > 0.0) {
        Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector& s = svd.singularValues();
        const double floor = tol.rank_tol * s(0);
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > floor && s(i) >= lo && s(i) <= hi)
                t += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    }
    Tripotent out = make_tripotent(z, t, tol);
    const Tripotent r = range_tripotent(z, x, tol);
    if (!leq(out, r, tol))
        throw InconsistencyError("InternalInconsistency",
                                 "spectral tripotent escapes below r(x)");
    return out;
}

namespace {

bool valid_support(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                   const Tripotent& u, const TolerancePolicy& tol) {
    if (!span_contains(j_basis, u.u, tol)) return false;
    // J must sit inside Z_2(u) ...
    for (const auto& b : j_basis)
        if (eq_residual(u.u * u.u.adjoint() * b * u.u.adjoint() * u.u, b) >
            tol.eq_tol * 10)
            return false;
    // ... and agree with Z(u) = Z_2(u) n Z as a subspace.
    const PeirceAlgebra pa = build_peirce(u, nullptr, tol);
    std::vector<std::vector<CMatrix>> spans{pa.basis, z.basis};
    const auto zu = span_intersection(spans, z.p, z.q, tol);
    return zu.size() == j_basis.size() && span_subset(j_basis, zu, tol);
}

} // namespace

Tripotent support_tripotent(const TroSpacePtr& z, const std::vector<CMatrix>& j_basis,
                            const TolerancePolicy& tol, std::uint64_t seed) {
    if (!is_inner_ideal(*z, j_basis, tol))
        throw InputError("NotInnerIdeal", "support tripotent needs an inner ideal");
    if (j_basis.empty()) return make_tripotent(z, CMatrix::Zero(z->p, z->q), tol);

    // Canonical choice first: when J contains a PSD element of full support
    // (square mode), the support tripotent can be taken selfadjoint positive.
    if (z->p == z->q) {
        const CMatrix y = project_onto_span(j_basis, CMatrix::Identity(z->p, z->p));
        if (y.norm() > tol.eq_tol && is_hermitian(y, tol) && is_psd(y, tol)) {
            try {
                Tripotent u = make_tripotent(z, polar_decompose(y, tol).isometry, tol);
                if (valid_support(*z, j_basis, u, tol)) return u;
            } catch (const InputError&) {
                // fall through to the generic route
            }
        }
    }

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        CMatrix g = CMatrix::Zero(z->p, z->q);
        for (const auto& b : j_basis) g += rng.gauss() * b;
        if (g.norm() <= tol.eq_tol) continue;
        Tripotent u;
        try {
            u = make_tripotent(z, polar_decompose(g, tol).isometry, tol);
        } catch (const InputError&) {
            continue;
        }
        if (!valid_support(*z, j_basis, u, tol)) continue;
        // Deterministic phase: rotate so the dominant coefficient against
        // the ideal's basis is a positive real.
        std::size_t best = 0;
        double best_abs = 0.0;
        Complex best_coef(1.0, 0.0);
        for (std::size_t i = 0; i < j_basis.size(); ++i) {
            const Complex c = trace_inner(u.u, j_basis[i]);
            if (std::abs(c) > best_abs) {
                best_abs = std::abs(c);
                best = i;
                best_coef = c;
            }
        }
        (void)best;
        if (best_abs > tol.eq_tol) u.u *= std::conj(best_coef) / best_abs;
        return make_tripotent(z, u.u, tol);
    }
    throw InputError("NoUnitaryFound",
                     "no generic element of J carries full support: J is "
                     "likely not ternary isomorphic to a C*-algebra");
}

CMatrix hat_element(const TroSpacePtr& z, const CMatrix& x, const TolerancePolicy& tol) {
    if (spectral_norm(x) > 1.0 + tol.one_tol)
        throw InputError("NormExceedsOne", "hat element needs a contraction");
    const int p = z->p, q = z->q;
    const CMatrix abs_left = psd_sqrt(CMatrix(x * x.adjoint()), tol);
    const CMatrix abs_right = psd_sqrt(CMatrix(x.adjoint() * x), tol);
    CMatrix h = CMatrix::Zero(p + q, p + q);
    h.block(0, 0, p, p) = abs_left;
    h.block(0, p, p, q) = x;
    h.block(p, 0, q, p) = x.adjoint();
    h.block(p, p, q, q) = abs_right;
    h *= 0.5;

    auto expect = [&](bool ok, const char* what) {
        if (!ok) throw InconsistencyError("InternalInconsistency", what);
    };
    expect(is_psd(h, tol), "hat element is not positive");
    expect(spectral_norm(h) <= 1.0 + tol.one_tol, "hat element exceeds the ball");

    const Tripotent r = range_tripotent(z, x, tol);
    const CMatrix hat_r = hat_matrix(r);
    expect(is_psd(CMatrix(hat_r - h), tol), "hat element escapes above hat(r(x))");

    // Lemma-thin2-style identities: the unit band and range of hat(x) are the
    // hats of the unit band and range of x.
    const UnitBand band_x = unit_band_split(x, tol);
    const UnitBand band_h = unit_band_split(h, tol);
    Tripotent ux;
    ux.space = z;
    ux.u = band_x.tripotent_part;
    const double loose = tol.eq_tol * 10;
    expect(eq_residual(band_h.tripotent_part, hat_matrix(ux)) <= loose,
           "u(hat x) != hat(u(x))");
    expect(eq_residual(range_projection(h, tol), hat_r) <= loose,
           "r(hat x) != hat(r(x))");
    return h;
}

ConeReport block_bounds_check(const TroSpacePtr& a, const CMatrix& x,
                              const TolerancePolicy& tol) {
    const TroSpace& alg = *a;
    if (alg.p != alg.q)
        throw InputError("NotSquareAmbient", "block bounds need a C*-algebra");
    {
        const auto j = j_subalgebra(alg, tol);
        if (j->dim() != alg.dim())
            throw InputError("NotCStarAlgebra", "the space is not its own J(Z)");
    }
    if (x.rows() != x.cols() || x.rows() % alg.p != 0)
        throw InputError("ShapeMismatch", "x must be an n x n block matrix over A");
    const int n = static_cast<int>(x.rows()) / alg.p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!span_contains(alg.basis, x.block(i * alg.p, j * alg.p, alg.p, alg.p),
                               tol))
                throw InputError("NotInSpace", "a block of x escapes A");
    if (!is_hermitian(x, tol) || !is_psd(x, tol))
        throw InputError("NotPSD", "block bounds need a PSD input");
    if (spectral_norm(x) > 1.0 + tol.one_tol)
        throw InputError("NotContraction", "block bounds need a contraction");

    // Diagonal data: u(x_ii) and r(x_ii), projections in A.
    std::vector<Tripotent> units;
    std::vector<CMatrix> ranges;
    for (int i = 0; i < n; ++i) {
        const CMatrix d = x.block(i * alg.p, i * alg.p, alg.p, alg.p);
        units.push_back(limit_tripotent(a, d, tol));
        ranges.push_back(range_projection(d, tol));
    }
    const Tripotent p_inf = inf_family(units, tol, /*seed=*/0x1fb10c5ULL);
    CMatrix p_sup = CMatrix::Zero(alg.p, alg.p);
    for (const auto& r : ranges) p_sup = range_projection(CMatrix(p_sup + r), tol);

    const UnitBand band = unit_band_split(x, tol);
    const CMatrix u_x = band.tripotent_part;
    const CMatrix r_x = range_projection(x, tol);

    auto kron_id = [&](const CMatrix& m) {
        CMatrix big = CMatrix::Zero(n * alg.p, n * alg.p);
        for (int i = 0; i < n; ++i) big.block(i * alg.p, i * alg.p, alg.p, alg.p) = m;
        return big;
    };

    ConeReport report;
    report.residuals["inf_leq_ux"] = min_eigenvalue(u_x - kron_id(p_inf.u));
    report.residuals["ux_leq_x"] = min_eigenvalue(x - u_x);
    report.residuals["x_leq_rx"] = min_eigenvalue(r_x - x);
    report.residuals["rx_leq_sup"] = min_eigenvalue(kron_id(p_sup) - r_x);
    const double slack = -tol.psd_tol * std::max(1.0, spectral_norm(x));
    report.verdict = report.residuals["inf_leq_ux"] >= slack &&
                     report.residuals["ux_leq_x"] >= slack &&
                     report.residuals["x_leq_rx"] >= slack &&
                     report.residuals["rx_leq_sup"] >= slack;
    report.witnesses.push_back(u_x);
    report.witnesses.push_back(r_x);
    return report;
}

} // namespace tripc
