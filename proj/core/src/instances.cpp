// SPDX-License-Identifier: Apache-2.0
#include "tripc/instances.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace tripc {

namespace {

TroSpacePtr closure_flavor(SplitMix64& rng, int p, int q, bool square,
                           const TolerancePolicy& tol) {
    const int ngen = rng.uniform_int(1, 2);
    std::vector<CMatrix> gens;
    for (int i = 0; i < ngen; ++i) gens.push_back(ginibre(rng, p, q));
    return generate_subtro(p, q, gens, square, tol);
}

TroSpacePtr block_pattern_flavor(SplitMix64& rng, int p, int q, bool square,
                                 const TolerancePolicy& tol) {
    // Z = U (diagonal rectangle pattern) V*: pick row/column splits and keep
    // the matched diagonal blocks.
    const int parts = rng.uniform_int(1, std::min({2, p, q}));
    std::vector<int> rsplit{0}, csplit{0};
    if (parts == 1) {
        rsplit.push_back(p);
        csplit.push_back(q);
    } else {
        const int r1 = rng.uniform_int(1, p - 1);
        const int c1 = rng.uniform_int(1, q - 1);
        rsplit.insert(rsplit.end(), {r1, p});
        csplit.insert(csplit.end(), {c1, q});
    }
    const CMatrix u = random_unitary(rng, p);
    const CMatrix v = square ? u : random_unitary(rng, q);
    std::vector<CMatrix> gens;
    for (std::size_t k = 0; k + 1 < rsplit.size(); ++k) {
        const int r0 = rsplit[k], r1 = rsplit[k + 1];
        const int c0 = csplit[k], c1 = csplit[k + 1];
        CMatrix g = CMatrix::Zero(p, q);
        g.block(r0, c0, r1 - r0, c1 - c0) = ginibre(rng, r1 - r0, c1 - c0);
        gens.push_back(u * g * v.adjoint());
    }
    return generate_subtro(p, q, gens, square, tol);
}

} // namespace

TroSpacePtr random_tro(SplitMix64& rng, int dim_max, bool square,
                       const TolerancePolicy& tol) {
    const int p = rng.uniform_int(1, std::max(1, dim_max));
    const int q = square ? p : rng.uniform_int(1, std::max(1, dim_max));
    const int flavor = rng.uniform_int(0, square ? 2 : 1);
    switch (flavor) {
        case 0: return closure_flavor(rng, p, q, square, tol);
        case 1: return block_pattern_flavor(rng, p, q, square, tol);
        default: return random_cstar_subalgebra(rng, p, tol);
    }
}

CMatrix random_element(SplitMix64& rng, const TroSpace& z) {
    CMatrix x = CMatrix::Zero(z.p, z.q);
    for (const auto& b : z.basis) x += rng.cgauss() * b;
    return x;
}

Tripotent random_tripotent(SplitMix64& rng, const TroSpacePtr& z,
                           const TolerancePolicy& tol) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        const CMatrix x = random_element(rng, *z);
        if (x.norm() <= tol.eq_tol) continue;
        Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int rank = numerical_rank(x, tol);
        if (rank == 0) continue;
        const int keep = rng.uniform_int(1, rank);
        CMatrix t = CMatrix::Zero(z->p, z->q);
        for (int i = 0; i < keep; ++i)
            t += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
        try {
            return make_tripotent(z, t, tol);
        } catch (const InputError&) {
            continue; // truncation escaped the space; try again
        }
    }
    return make_tripotent(z, CMatrix::Zero(z->p, z->q), tol);
}

std::pair<Tripotent, Tripotent> random_leq_pair(SplitMix64& rng, const TroSpacePtr& z,
                                                const TolerancePolicy& tol) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        const Tripotent b = random_tripotent(rng, z, tol);
        if (b.u.norm() <= tol.eq_tol) continue;
        const PeirceAlgebra pa = build_peirce(b, nullptr, tol);
        // Random selfadjoint element of Z_2(b), then a spectral projection of
        // its image b* h; mapping back with b gives a Peirce projection.
        CMatrix y = CMatrix::Zero(z->p, z->q);
        for (const auto& e : pa.basis) y += rng.cgauss() * e;
        const CMatrix h = 0.5 * (pa.iso_image(y) + pa.iso_image(y).adjoint());
        const HermitianEigen eig = hermitian_eigen(h, tol);
        CMatrix proj = CMatrix::Zero(z->q, z->q);
        bool any = false;
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            if (std::abs(eig.values(i)) <= 10 * tol.rank_tol) continue;
            if (rng.uniform() < 0.5) continue;
            proj += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
            any = true;
        }
        if (!any) continue;
        try {
            const Tripotent a = make_tripotent(z, CMatrix(b.u * proj), tol);
            if (a.u.norm() <= tol.eq_tol) continue;
            return {a, b};
        } catch (const InputError&) {
            continue;
        }
    }
    const Tripotent b = random_tripotent(rng, z, tol);
    return {b, b};
}

std::pair<Tripotent, Tripotent> random_commuting_pair(SplitMix64& rng, int dim_max,
                                                      const TolerancePolicy& tol) {
    // Shared frame: u = U D1 V*, v = U D2 V* with real diagonal signs in
    // {-1, 0, 1} commute in the *-sense.
    const int p = rng.uniform_int(1, std::max(1, dim_max));
    const int q = rng.uniform_int(1, std::max(1, dim_max));
    const int r = std::min(p, q);
    const CMatrix uu = random_unitary(rng, p);
    const CMatrix vv = random_unitary(rng, q);
    CMatrix d1 = CMatrix::Zero(p, q), d2 = CMatrix::Zero(p, q);
    for (int i = 0; i < r; ++i) {
        const int s1 = rng.uniform_int(-1, 1);
        const int s2 = rng.uniform_int(-1, 1);
        d1(i, i) = s1;
        d2(i, i) = s2;
    }
    const CMatrix a = uu * d1 * vv.adjoint();
    const CMatrix b = uu * d2 * vv.adjoint();
    auto space = generate_subtro(p, q, {a, b}, p == q, tol);
    return {make_tripotent(space, a, tol), make_tripotent(space, b, tol)};
}

CMatrix random_cone_element(SplitMix64& rng, const PeirceAlgebra& pa) {
    const TroSpace& z = *pa.unit.space;
    CMatrix y = CMatrix::Zero(z.p, z.q);
    for (const auto& e : pa.basis) y += rng.cgauss() * e;
    const CMatrix m = pa.iso_image(y);
    return pa.unit.u * (m * m.adjoint()); // u s with s PSD in u* Z_2(u)
}

TroSpacePtr random_cstar_subalgebra(SplitMix64& rng, int n, const TolerancePolicy& tol) {
    // Random partition of n, possibly with a multiplicity-2 block.
    std::vector<int> parts;
    int left = n;
    while (left > 0) {
        const int take = rng.uniform_int(1, left);
        parts.push_back(take);
        left -= take;
    }
    bool multiplicity = false;
    if (parts.size() >= 2 && parts[0] == parts[1] && rng.uniform() < 0.5)
        multiplicity = true;
    const CMatrix u = random_unitary(rng, n);
    std::vector<CMatrix> gens;
    int off0 = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (multiplicity && k == 1) continue; // block 1 rides along with block 0
        const int sz = parts[k];
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) {
                CMatrix g = CMatrix::Zero(n, n);
                g(off0 + i, off0 + j) = 1.0;
                if (multiplicity && k == 0) g(off0 + sz + i, off0 + sz + j) = 1.0;
                gens.push_back(u * g * u.adjoint());
            }
        off0 += sz;
        if (multiplicity && k == 0) off0 += sz;
    }
    return generate_subtro(n, n, gens, true, tol);
}

TroSpacePtr random_odd_star_tro(SplitMix64& rng, int dim_max,
                                const TolerancePolicy& tol) {
    const int total = std::max(2, rng.uniform_int(2, std::max(2, dim_max)));
    const int m = rng.uniform_int(1, total - 1);
    const int n = total - m;
    const int ngen = rng.uniform_int(1, 2);
    std::vector<CMatrix> gens;
    for (int g = 0; g < ngen; ++g) {
        const CMatrix b = ginibre(rng, m, n);
        CMatrix odd = CMatrix::Zero(total, total);
        odd.block(0, m, m, n) = b;
        odd.block(m, 0, n, m) = b.adjoint();
        gens.push_back(odd);
    }
    return generate_subtro(total, total, gens, true, tol);
}

RandomInstance random_instance(int dim_max, std::uint64_t seed,
                               const TolerancePolicy& tol) {
    SplitMix64 rng(seed);
    RandomInstance out;
    out.space = random_tro(rng, dim_max, /*square=*/rng.uniform() < 0.5, tol);
    for (int i = 0; i < 3; ++i)
        out.tripotents.push_back(random_tripotent(rng, out.space, tol));
    for (const auto& t : out.tripotents) {
        if (t.u.norm() <= tol.eq_tol) continue;
        const PeirceAlgebra pa = build_peirce(t, nullptr, tol);
        out.cone_elements.push_back(random_cone_element(rng, pa));
        break;
    }
    return out;
}

} // namespace tripc
