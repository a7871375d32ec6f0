// SPDX-License-Identifier: Apache-2.0
#include "tripc/tro.hpp"

#include <algorithm>
#include <cmath>

namespace tripc {

namespace {

void check_shapes(int p, int q, const std::vector<CMatrix>& mats) {
    for (const auto& m : mats)
        if (m.rows() != p || m.cols() != q)
            throw InputError("ShapeMismatch", "expected " + std::to_string(p) + "x" +
                                                  std::to_string(q) + " matrices");
}

bool ternary_closed(const std::vector<CMatrix>& basis, const TolerancePolicy& tol) {
    for (const auto& x : basis)
        for (const auto& y : basis)
            for (const auto& z : basis)
                if (!span_contains(basis, x * y.adjoint() * z, tol)) return false;
    return true;
}

bool compute_star_closed(int p, int q, const std::vector<CMatrix>& basis,
                         const TolerancePolicy& tol) {
    if (p != q) return false;
    for (const auto& b : basis)
        if (!span_contains(basis, b.adjoint(), tol)) return false;
    return true;
}

} // namespace

TroSpacePtr make_tro_space(int p, int q, std::vector<CMatrix> basis,
                           bool square_mode, const TolerancePolicy& tol) {
    if (p < 0 || q < 0) throw InputError("ShapeMismatch", "negative dimensions");
    if (square_mode && p != q)
        throw InputError("NotSquareAmbient", "square_mode requires p == q");
    check_shapes(p, q, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = trace_inner(basis[i], basis[j]);
            const double expect = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - Complex(expect, 0.0)) > tol.eq_tol * 10)
                throw InputError("NotOrthonormal",
                                 "basis fails <b_i, b_j> = delta_ij");
        }
    if (!ternary_closed(basis, tol))
        throw InputError("NotTernaryClosed", "x y* z escapes span(basis)");
    auto z = std::make_shared<TroSpace>();
    z->p = p;
    z->q = q;
    z->square_mode = square_mode;
    z->basis = std::move(basis);
    z->star_closed = compute_star_closed(p, q, z->basis, tol);
    return z;
}

TroSpacePtr generate_subtro(int p, int q, const std::vector<CMatrix>& generators,
                            bool square_mode, const TolerancePolicy& tol) {
    check_shapes(p, q, generators);
    std::vector<CMatrix> basis = orthonormal_span(generators, tol);
    const int cap = p * q + 1;
    for (int round = 0; round < cap; ++round) {
        std::vector<CMatrix> grown = basis;
        for (const auto& x : basis)
            for (const auto& y : basis)
                for (const auto& z : basis) grown.push_back(x * y.adjoint() * z);
        std::vector<CMatrix> next = orthonormal_span(grown, tol);
        if (static_cast<int>(next.size()) == static_cast<int>(basis.size())) {
            basis = std::move(next);
            break;
        }
        basis = std::move(next);
    }
    return make_tro_space(p, q, std::move(basis), square_mode && p == q, tol);
}

bool contains(const TroSpace& z, const CMatrix& x, const TolerancePolicy& tol) {
    if (x.rows() != z.p || x.cols() != z.q)
        throw InputError("ShapeMismatch", "element shape does not match the space");
    return span_contains(z.basis, x, tol);
}

std::vector<CMatrix> left_products(const TroSpace& z, const TolerancePolicy& tol) {
    std::vector<CMatrix> prods;
    for (const auto& a : z.basis)
        for (const auto& b : z.basis) prods.push_back(a * b.adjoint());
    return orthonormal_span(prods, tol);
}

std::vector<CMatrix> right_products(const TroSpace& z, const TolerancePolicy& tol) {
    std::vector<CMatrix> prods;
    for (const auto& a : z.basis)
        for (const auto& b : z.basis) prods.push_back(a.adjoint() * b);
    return orthonormal_span(prods, tol);
}

std::vector<CMatrix> adjoint_span(const TroSpace& z, const TolerancePolicy& tol) {
    std::vector<CMatrix> adj;
    for (const auto& b : z.basis) adj.push_back(b.adjoint());
    return orthonormal_span(adj, tol);
}

TroSpacePtr j_subalgebra(const TroSpace& z, const TolerancePolicy& tol) {
    if (z.p != z.q)
        throw InputError("NotSquareAmbient", "J(Z) needs Z inside a square algebra");
    std::vector<std::vector<CMatrix>> spans;
    spans.push_back(z.basis);
    spans.push_back(adjoint_span(z, tol));
    spans.push_back(right_products(z, tol));
    spans.push_back(left_products(z, tol));
    std::vector<CMatrix> j = span_intersection(spans, z.p, z.q, tol);
    // J(Z) must come out a *-algebra; anything else is a tolerance pathology.
    for (const auto& a : j) {
        if (!span_contains(j, a.adjoint(), tol))
            throw InconsistencyError("JNotStarClosed", "J(Z) escaped under adjoint");
        for (const auto& b : j)
            if (!span_contains(j, CMatrix(a * b), tol))
                throw InconsistencyError("JNotProductClosed",
                                         "J(Z) escaped under product");
    }
    return make_tro_space(z.p, z.q, std::move(j), true, tol);
}

bool natural_cone_membership(const TroSpace& z, const CMatrix& x,
                             const TolerancePolicy& tol) {
    if (z.p != z.q)
        throw InputError("NotSquareAmbient", "natural cone needs p == q");
    if (x.rows() != z.p || x.cols() != z.q)
        throw InputError("ShapeMismatch", "element shape does not match the space");
    const bool psd = is_hermitian(x, tol) && is_psd(x, tol);
    const bool primary = contains(z, x, tol) && psd;
    const auto j = j_subalgebra(z, tol);
    const bool via_j = contains(*j, x, tol) && psd;
    if (primary != via_j)
        throw InconsistencyError("ConeMembership",
                                 "Z n PSD disagrees with J(Z)_+ membership");
    return primary;
}

CMatrix LinkingAlgebra::inject(const CMatrix& z) const {
    CMatrix m = CMatrix::Zero(p + q, p + q);
    m.block(0, p, p, q) = z;
    m.block(p, 0, q, p) = z.adjoint();
    return m;
}

CMatrix LinkingAlgebra::theta(const CMatrix& m) const { return theta_reflect(m, p, q); }

std::vector<CMatrix> LinkingAlgebra::full_basis() const {
    std::vector<CMatrix> all;
    all.insert(all.end(), corner_left.begin(), corner_left.end());
    all.insert(all.end(), corner_z.begin(), corner_z.end());
    all.insert(all.end(), corner_zstar.begin(), corner_zstar.end());
    all.insert(all.end(), corner_right.begin(), corner_right.end());
    return all;
}

bool LinkingAlgebra::contains(const CMatrix& m, const TolerancePolicy& tol) const {
    return span_contains(full_basis(), m, tol);
}

CMatrix theta_reflect(const CMatrix& m, int p, int q) {
    CMatrix out = m;
    out.block(0, p, p, q) = -m.block(0, p, p, q);
    out.block(p, 0, q, p) = -m.block(p, 0, q, p);
    return out;
}

LinkingAlgebra linking_algebra(const TroSpace& z, const TolerancePolicy& tol) {
    LinkingAlgebra l;
    l.p = z.p;
    l.q = z.q;
    const int n = z.p + z.q;
    auto embed = [&](const std::vector<CMatrix>& small, int r0, int c0) {
        std::vector<CMatrix> out;
        for (const auto& s : small) {
            CMatrix m = CMatrix::Zero(n, n);
            m.block(r0, c0, s.rows(), s.cols()) = s;
            out.push_back(m);
        }
        return out;
    };
    l.corner_left = embed(left_products(z, tol), 0, 0);
    l.corner_z = embed(z.basis, 0, z.p);
    l.corner_zstar = embed(adjoint_span(z, tol), z.p, 0);
    l.corner_right = embed(right_products(z, tol), z.p, z.p);
    return l;
}

bool is_inner_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                    const TolerancePolicy& tol) {
    if (!span_subset(j_basis, z.basis, tol))
        throw InputError("NotSubspace", "J is not a subspace of Z");
    for (const auto& a : j_basis)
        for (const auto& y : z.basis)
            for (const auto& b : j_basis)
                if (!span_contains(j_basis, a * y.adjoint() * b, tol)) return false;
    return true;
}

bool is_ternary_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                      const TolerancePolicy& tol) {
    if (!span_subset(j_basis, z.basis, tol))
        throw InputError("NotSubspace", "J is not a subspace of Z");
    for (const auto& a : j_basis)
        for (const auto& y : z.basis)
            for (const auto& w : z.basis) {
                if (!span_contains(j_basis, a * y.adjoint() * w, tol)) return false;
                if (!span_contains(j_basis, w * y.adjoint() * a, tol)) return false;
            }
    return true;
}

Quotient quotient_by_ideal(const TroSpace& z, const std::vector<CMatrix>& j_basis,
                           const TolerancePolicy& tol) {
    if (!is_ternary_ideal(z, j_basis, tol))
        throw InputError("NotTernaryIdeal", "quotient needs a ternary ideal");
    CMatrix s = CMatrix::Zero(z.q, z.q);
    for (const auto& b : j_basis) s += b.adjoint() * b;
    const CMatrix qproj = range_projection(s, tol);

    // q must be central in span(Z* Z) and must recover J as Z q.
    const auto zsz = right_products(z, tol);
    for (const auto& m : zsz)
        if (eq_residual(qproj * m, m * qproj) > tol.eq_tol * 10)
            throw InputError("SupportMismatch",
                             "support projection is not central in span(Z* Z)");
    std::vector<CMatrix> zq;
    for (const auto& b : z.basis) zq.push_back(b * qproj);
    const auto zq_span = orthonormal_span(zq, tol);
    if (!span_subset(zq_span, j_basis, tol) || !span_subset(j_basis, zq_span, tol))
        throw InputError("SupportMismatch", "J != Z q numerically");

    const CMatrix comp = CMatrix::Identity(z.q, z.q) - qproj;
    std::vector<CMatrix> quot;
    for (const auto& b : z.basis) quot.push_back(b * comp);
    auto quot_space = make_tro_space(z.p, z.q, orthonormal_span(quot, tol),
                                     z.square_mode, tol);

    Quotient out;
    out.support = qproj;
    out.space = quot_space;
    out.map.domain = std::make_shared<TroSpace>(z);
    out.map.codomain = quot_space;
    out.map.action = CMatrix::Zero(quot_space->dim(), z.dim());
    for (int i = 0; i < z.dim(); ++i) {
        const CMatrix img = z.basis[i] * comp;
        for (int k = 0; k < quot_space->dim(); ++k)
            out.map.action(k, i) = trace_inner(img, quot_space->basis[k]);
    }
    if (!validate_ternary(out.map, tol))
        throw InconsistencyError("NotTernary", "quotient map failed the ternary law");
    if (numerical_rank(out.map.action, tol) != quot_space->dim())
        throw InconsistencyError("QuotientNotSurjective",
                                 "quotient map does not reach the whole quotient");
    return out;
}

TroSpacePtr direct_sum(const std::vector<TroSpacePtr>& zs, const TolerancePolicy& tol) {
    int p = 0, q = 0;
    bool square = true;
    for (const auto& z : zs) {
        p += z->p;
        q += z->q;
        square = square && z->square_mode;
    }
    std::vector<CMatrix> basis;
    int rp = 0, cq = 0;
    for (const auto& z : zs) {
        for (const auto& b : z->basis) {
            CMatrix m = CMatrix::Zero(p, q);
            m.block(rp, cq, z->p, z->q) = b;
            basis.push_back(m);
        }
        rp += z->p;
        cq += z->q;
    }
    auto sum = make_tro_space(p, q, std::move(basis), square && p == q, tol);

    // Cross-check J(sum) = direct sum of the J(z_i) on all-square input.
    bool all_square = !zs.empty();
    for (const auto& z : zs) all_square = all_square && z->p == z->q;
    if (all_square && p == q) {
        std::vector<CMatrix> jparts;
        int off = 0;
        for (const auto& z : zs) {
            const auto jz = j_subalgebra(*z, tol);
            for (const auto& b : jz->basis) {
                CMatrix m = CMatrix::Zero(p, q);
                m.block(off, off, z->p, z->q) = b;
                jparts.push_back(m);
            }
            off += z->p;
        }
        const auto jsum = j_subalgebra(*sum, tol);
        if (!span_subset(jparts, jsum->basis, tol) ||
            !span_subset(jsum->basis, jparts, tol))
            throw InconsistencyError("DirectSumCone",
                                     "J(sum) differs from the sum of the J(z_i)");
    }
    return sum;
}

CMatrix apply_ternary_morphism(const TernaryMorphism& t, const CMatrix& x,
                               const TolerancePolicy& tol) {
    if (!contains(*t.domain, x, tol))
        throw InputError("NotInSpace", "morphism applied outside its domain");
    Eigen::VectorXcd coords(t.domain->dim());
    for (int i = 0; i < t.domain->dim(); ++i)
        coords(i) = trace_inner(x, t.domain->basis[i]);
    const Eigen::VectorXcd img = t.action * coords;
    CMatrix out = CMatrix::Zero(t.codomain->p, t.codomain->q);
    for (int k = 0; k < t.codomain->dim(); ++k) out += img(k) * t.codomain->basis[k];
    return out;
}

bool validate_ternary(const TernaryMorphism& t, const TolerancePolicy& tol) {
    if (t.action.rows() != t.codomain->dim() || t.action.cols() != t.domain->dim())
        throw InputError("ShapeMismatch", "action matrix shape mismatch");
    std::vector<CMatrix> images;
    for (int i = 0; i < t.domain->dim(); ++i)
        images.push_back(apply_ternary_morphism(t, t.domain->basis[i], tol));
    for (int i = 0; i < t.domain->dim(); ++i)
        for (int j = 0; j < t.domain->dim(); ++j)
            for (int k = 0; k < t.domain->dim(); ++k) {
                const CMatrix lhs = apply_ternary_morphism(
                    t,
                    CMatrix(t.domain->basis[i] * t.domain->basis[j].adjoint() *
                            t.domain->basis[k]),
                    tol);
                const CMatrix rhs = images[i] * images[j].adjoint() * images[k];
                if (eq_residual(lhs, rhs) > tol.eq_tol * 10) return false;
            }
    return true;
}

bool same_space(const TroSpace& a, const TroSpace& b, const TolerancePolicy& tol) {
    if (&a == &b) return true;
    if (a.p != b.p || a.q != b.q || a.dim() != b.dim()) return false;
    return span_subset(a.basis, b.basis, tol);
}

} // namespace tripc
