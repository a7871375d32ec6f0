// SPDX-License-Identifier: Apache-2.0
#include "tripc/tripotent.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "tripc/rng.hpp"

namespace tripc {

namespace {

void require_same_space(const Tripotent& a, const Tripotent& b,
                        const TolerancePolicy& tol) {
    if (a.space == b.space) return;
    if (!a.space || !b.space || !same_space(*a.space, *b.space, tol))
        throw InputError("SpaceMismatch", "tripotents live in different spaces");
}

CMatrix zero_like(const TroSpace& z) { return CMatrix::Zero(z.p, z.q); }

} // namespace

Tripotent make_tripotent(TroSpacePtr space, const CMatrix& u,
                         const TolerancePolicy& tol) {
    if (!space) throw InputError("SpaceMismatch", "null space");
    if (u.rows() != space->p || u.cols() != space->q)
        throw InputError("ShapeMismatch", "tripotent shape does not match space");
    if (eq_residual(u * u.adjoint() * u, u) > tol.eq_tol)
        throw InputError("NotTripotent", "||u u* u - u|| too large");
    if (!contains(*space, u, tol))
        throw InputError("NotInSpace", "tripotent escapes the space");
    Tripotent t;
    t.space = std::move(space);
    if (u.norm() == 0.0) {
        t.u = u;
        return t;
    }
    // Snap singular values to exactly 1; the cube check above already
    // bounds their distance from {0, 1}.
    Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    int k = 0;
    while (k < s.size() && s(k) >= 0.5) ++k;
    for (int i = 0; i < k; ++i)
        if (std::abs(s(i) - 1.0) > tol.one_tol)
            throw InputError("NotTripotent", "singular value off the {0,1} ladder");
    t.u = svd.matrixU().leftCols(k) * svd.matrixV().leftCols(k).adjoint();
    return t;
}

bool leq(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol) {
    require_same_space(a, b, tol);
    const CMatrix& u = a.u;
    const CMatrix& v = b.u;
    const bool c1 = approx_eq(u * v.adjoint() * u, u, tol); // u v* u = u
    const bool c2 = approx_eq(v * u.adjoint() * u, u, tol); // u = v u* u
    const bool c3 = approx_eq(u * u.adjoint() * v, u, tol); // u = u u* v
    // (iv) u in Z_2(v) and a projection there (idempotent + sharp-selfadjoint)
    const bool c4 = approx_eq(v * v.adjoint() * u * v.adjoint() * v, u, tol) &&
                    approx_eq(v * u.adjoint() * v, u, tol) && c1;
    // (v) hat(u) <= hat(v) as projections
    const CMatrix hu = hat_matrix(a);
    const CMatrix hv = hat_matrix(b);
    const bool c5 = approx_eq(hu * hv, hu, tol);
    if (c1 != c2 || c1 != c3 || c1 != c4 || c1 != c5)
        throw InconsistencyError(
            "InternalInconsistency",
            "the five order criteria disagree (tolerance pathology)");
    return c1;
}

CMatrix hat_matrix(const Tripotent& a) {
    const int p = a.space->p, q = a.space->q;
    CMatrix m = CMatrix::Zero(p + q, p + q);
    m.block(0, 0, p, p) = a.u * a.u.adjoint();
    m.block(0, p, p, q) = a.u;
    m.block(p, 0, q, p) = a.u.adjoint();
    m.block(p, p, q, q) = a.u.adjoint() * a.u;
    return 0.5 * m;
}

CMatrix breve_matrix(const Tripotent& a) {
    return theta_reflect(hat_matrix(a), a.space->p, a.space->q);
}

Tripotent antisymmetric_decompose(TroSpacePtr space, const CMatrix& r,
                                  const TolerancePolicy& tol) {
    const int p = space->p, q = space->q;
    if (r.rows() != p + q || r.cols() != p + q)
        throw InputError("ShapeMismatch", "projection must be (p+q) x (p+q)");
    if (!is_hermitian(r, tol) || eq_residual(r * r, r) > tol.eq_tol)
        throw InputError("NotProjection", "not a Hermitian idempotent");
    const CMatrix tr = theta_reflect(r, p, q);
    if ((r * tr).norm() > tol.eq_tol * std::max(1.0, r.norm()))
        throw InputError("NotAntisymmetric", "r Theta(r) != 0");
    const CMatrix v = 2.0 * r.block(0, p, p, q);
    Tripotent t = make_tripotent(std::move(space), v, tol);
    const CMatrix twice_a = 2.0 * r.block(0, 0, p, p);
    if (eq_residual(twice_a * twice_a, twice_a) > tol.eq_tol * 10)
        throw InconsistencyError("InternalInconsistency",
                                 "upper-left block is not half a projection");
    if (eq_residual(hat_matrix(t), r) > tol.eq_tol * 10)
        throw InconsistencyError("InternalInconsistency",
                                 "hat of the recovered tripotent differs from r");
    return t;
}

bool commutes(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol) {
    require_same_space(a, b, tol);
    return approx_eq(b.u.adjoint() * a.u, a.u.adjoint() * b.u, tol) &&
           approx_eq(b.u * a.u.adjoint(), a.u * b.u.adjoint(), tol);
}

bool orthogonal(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol) {
    require_same_space(a, b, tol);
    const double scale = std::max({1.0, a.u.norm(), b.u.norm()});
    return (b.u.adjoint() * a.u).norm() <= tol.eq_tol * scale &&
           (b.u * a.u.adjoint()).norm() <= tol.eq_tol * scale;
}

bool sup_exists(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol) {
    require_same_space(a, b, tol);
    const CMatrix& u = a.u;
    const CMatrix& v = b.u;
    const bool direct = approx_eq(u * v.adjoint() * v, u * u.adjoint() * v, tol) &&
                        approx_eq(v * v.adjoint() * u, v * u.adjoint() * u, tol);
    const CMatrix prod = hat_matrix(a) * breve_matrix(b);
    const bool via_hat = prod.norm() <= tol.eq_tol * 10 * std::max(1.0, u.norm() + v.norm());
    if (direct != via_hat)
        throw InconsistencyError("InternalInconsistency",
                                 "sup criteria (iii) and (ii) disagree");
    return direct;
}

namespace {

// Minimality evidence for w = sup(a, b): no axis-cut sub-tripotent of w may
// dominate both inputs, and every sampled dominating tripotent must dominate
// w. Deterministic (fixed internal stream); runs on small spaces only.
void check_sup_minimality(const Tripotent& a, const Tripotent& b,
                          const Tripotent& w, const TolerancePolicy& tol) {
    const TroSpace& z = *a.space;
    if (z.dim() > 6) return;
    if (w.u.norm() > 0.0) {
        Eigen::JacobiSVD<CMatrix> svd(w.u, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int k = numerical_rank(w.u, tol);
        for (int i = 0; i < k; ++i) {
            const CMatrix cut = w.u - svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
            if (!contains(z, cut, tol)) continue;
            Tripotent t;
            t.space = a.space;
            t.u = cut;
            if (leq(a, t, tol) && leq(b, t, tol))
                throw InconsistencyError("InternalInconsistency",
                                         "a strictly smaller tripotent dominates "
                                         "both inputs of sup");
        }
    }
    SplitMix64 rng(0x5eed2024ULL);
    for (int trial = 0; trial < 16; ++trial) {
        CMatrix x = zero_like(z);
        for (const auto& bm : z.basis) x += rng.cgauss() * bm;
        Tripotent t;
        t.space = a.space;
        t.u = polar_decompose(x, tol).isometry;
        if (!contains(z, t.u, tol)) continue;
        if (eq_residual(t.u * t.u.adjoint() * t.u, t.u) > tol.eq_tol) continue;
        if (leq(a, t, tol) && leq(b, t, tol) && !leq(w, t, tol))
            throw InconsistencyError("InternalInconsistency",
                                     "sampled dominating tripotent does not "
                                     "dominate sup(a, b)");
    }
}

} // namespace

Tripotent sup(const Tripotent& a, const Tripotent& b, const TolerancePolicy& tol) {
    if (!sup_exists(a, b, tol))
        throw InputError("SupDoesNotExist",
                         "r(u+v) is meaningless without a dominating tripotent");
    const CMatrix r = polar_decompose(a.u + b.u, tol).isometry;
    Tripotent w = make_tripotent(a.space, r, tol);
    if (!leq(a, w, tol) || !leq(b, w, tol))
        throw InconsistencyError("InternalInconsistency",
                                 "sup fails to dominate its inputs");
    const CMatrix hsum = hat_matrix(a) + hat_matrix(b);
    if (eq_residual(hat_matrix(w), range_projection(hsum, tol)) > tol.eq_tol * 10)
        throw InconsistencyError("InternalInconsistency",
                                 "hat(sup) != range projection of hat(a)+hat(b)");
    check_sup_minimality(a, b, w, tol);
    return w;
}

Tripotent sup_commuting(const Tripotent& a, const Tripotent& b,
                        const TolerancePolicy& tol) {
    if (!commutes(a, b, tol))
        throw InputError("PreconditionFailed", "inputs do not commute");
    if (!approx_eq(b.u * a.u.adjoint() * a.u, b.u * b.u.adjoint() * a.u, tol))
        throw InputError("PreconditionFailed", "b a* a != b b* a");
    const CMatrix formula = a.u + b.u - b.u * b.u.adjoint() * a.u;
    Tripotent w = make_tripotent(a.space, formula, tol);
    const Tripotent oracle = sup(a, b, tol);
    if (!approx_eq(w.u, oracle.u, tol))
        throw InconsistencyError("InternalInconsistency",
                                 "u + v - v v* u differs from r(u+v)");
    return w;
}

Tripotent inf_commuting(const Tripotent& a, const Tripotent& b,
                        const TolerancePolicy& tol) {
    if (!commutes(a, b, tol))
        throw InputError("NotCommuting", "infimum formula needs commuting inputs");
    const CMatrix formula =
        0.5 * (b.u * b.u.adjoint() * a.u + b.u * a.u.adjoint() * a.u);
    Tripotent w;
    try {
        w = make_tripotent(a.space, formula, tol);
    } catch (const InputError& e) {
        throw InconsistencyError("NotTripotentResult", e.what());
    }
    if (!leq(w, a, tol) || !leq(w, b, tol))
        throw InconsistencyError("NotTripotentResult",
                                 "infimum fails to sit below its inputs");
    return w;
}

Tripotent inf_family(const std::vector<Tripotent>& us, const TolerancePolicy& tol,
                     std::uint64_t seed, int stabilization_k) {
    if (us.empty()) throw InputError("PreconditionFailed", "empty family");
    for (std::size_t i = 1; i < us.size(); ++i) require_same_space(us[0], us[i], tol);
    const TroSpace& z = *us[0].space;

    // V = { z : z = u_a z* u_a for all a }, a real subspace of Z.
    std::vector<std::function<CMatrix(const CMatrix&)>> constraints;
    for (const auto& t : us) {
        const CMatrix u = t.u;
        constraints.push_back(
            [u](const CMatrix& x) { return CMatrix(x - u * x.adjoint() * u); });
    }
    const std::vector<CMatrix> vbasis = real_linear_nullspace(z.basis, constraints, tol);

    Tripotent w;
    w.space = us[0].space;
    w.u = zero_like(z);
    if (vbasis.empty()) return w;

    auto project_v = [&](const CMatrix& x) {
        CMatrix out = zero_like(z);
        for (const auto& vb : vbasis) out += trace_inner(x, vb).real() * vb;
        return out;
    };

    SplitMix64 rng(seed);
    const int max_samples = 64 * std::max(1, stabilization_k);
    int stall = 0;
    for (int sample = 0; sample < max_samples && stall < stabilization_k; ++sample) {
        CMatrix x = zero_like(z);
        for (const auto& vb : vbasis) x += rng.gauss() * vb;
        // Cyclic projections: V, then each PSD side condition u* x >= 0.
        bool feasible = false;
        for (int iter = 0; iter < 400; ++iter) {
            feasible = true;
            for (const auto& t : us) {
                const CMatrix h = 0.5 * (t.u.adjoint() * x + (t.u.adjoint() * x).adjoint());
                if (min_eigenvalue(h) < -tol.psd_tol * std::max(1.0, x.norm())) {
                    feasible = false;
                    x = project_v(t.u * psd_clamp(h));
                }
            }
            if (feasible) break;
        }
        if (!feasible || x.norm() <= tol.eq_tol) {
            ++stall;
            continue;
        }
        Tripotent r = make_tripotent(us[0].space, polar_decompose(x, tol).isometry, tol);
        if (leq(r, w, tol)) {
            ++stall;
            continue;
        }
        stall = 0;
        w = (w.u.norm() == 0.0) ? r : sup(w, r, tol);
    }
    for (const auto& t : us)
        if (!leq(w, t, tol))
            throw InconsistencyError("InternalInconsistency",
                                     "inf_family escaped above a family member");
    return w;
}

TroSpacePtr amplify_space(const TroSpace& z, int n, const TolerancePolicy& tol) {
    if (n < 1) throw InputError("PreconditionFailed", "amplification needs n >= 1");
    std::vector<CMatrix> basis;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (const auto& b : z.basis) {
                CMatrix m = CMatrix::Zero(n * z.p, n * z.q);
                m.block(k * z.p, l * z.q, z.p, z.q) = b;
                basis.push_back(m);
            }
    return make_tro_space(n * z.p, n * z.q, std::move(basis), z.square_mode, tol);
}

Tripotent amplify(const Tripotent& a, int n, const TolerancePolicy& tol) {
    auto space = amplify_space(*a.space, n, tol);
    CMatrix u = CMatrix::Zero(n * a.space->p, n * a.space->q);
    for (int k = 0; k < n; ++k)
        u.block(k * a.space->p, k * a.space->q, a.space->p, a.space->q) = a.u;
    return make_tripotent(space, u, tol);
}

bool is_open_relative(const Tripotent& a, const TroSpace& z,
                      const TolerancePolicy& tol) {
    if (!a.space || z.p != a.space->p || z.q != a.space->q ||
        !span_subset(z.basis, a.space->basis, tol))
        throw InputError("NotSubspace", "z is not a subTRO of the ambient space");
    if (!contains(z, a.u, tol)) return false;

    // (iii) hat(a) must land in the linking algebra of z.
    const bool via_hat = linking_algebra(z, tol).contains(hat_matrix(a), tol);

    // (vii) the selfadjoint part of Z(a) must have real dimension equal to
    // the complex dimension of Z_2(a) n z.
    const CMatrix u = a.u;
    const auto sa_part = real_linear_nullspace(
        z.basis, {[u](const CMatrix& x) { return CMatrix(x - u * x.adjoint() * u); }},
        tol);
    const auto peirce_part = real_linear_nullspace(
        z.basis,
        {[u](const CMatrix& x) {
            return CMatrix(x - u * u.adjoint() * x * u.adjoint() * u);
        }},
        tol);
    const bool via_dim = 2 * sa_part.size() == peirce_part.size();

    if (!via_hat || !via_dim)
        throw InconsistencyError("InternalInconsistency",
                                 "openness criteria disagree in finite dimension");
    return true;
}

bool is_maximal(const Tripotent& a, const TolerancePolicy& tol) {
    const TroSpace& z = *a.space;
    const CMatrix left = CMatrix::Identity(z.p, z.p) - a.u * a.u.adjoint();
    const CMatrix right = CMatrix::Identity(z.q, z.q) - a.u.adjoint() * a.u;
    std::vector<CMatrix> compressed;
    for (const auto& b : z.basis) {
        const CMatrix c = left * b * right;
        if (c.norm() > tol.eq_tol) compressed.push_back(c);
    }
    return orthonormal_span(compressed, tol).empty();
}

} // namespace tripc
