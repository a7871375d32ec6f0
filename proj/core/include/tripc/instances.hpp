// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "tripc/conelab.hpp"
#include "tripc/rng.hpp"

namespace tripc {

/// Deterministic random instances for the property suites and the CLI.
/// Everything below is a pure function of the SplitMix64 stream.

/// A random TRO with ambient dimensions <= dim_max, drawn from a few
/// structural flavors (single/two-generator closures, rotated block
/// patterns, conjugated C*-subalgebras in square mode).
TroSpacePtr random_tro(SplitMix64& rng, int dim_max, bool square,
                       const TolerancePolicy& tol);

/// Random element of the space (Gaussian coordinates).
CMatrix random_element(SplitMix64& rng, const TroSpace& z);

/// Range tripotent of a random element, optionally truncated to a random
/// subset of its singular directions.
Tripotent random_tripotent(SplitMix64& rng, const TroSpacePtr& z,
                           const TolerancePolicy& tol);

/// A pair a <= b by construction: b random, a = b P for a random projection
/// P in the Peirce algebra of b.
std::pair<Tripotent, Tripotent> random_leq_pair(SplitMix64& rng, const TroSpacePtr& z,
                                                const TolerancePolicy& tol);

/// A commuting pair built from a shared singular frame.
std::pair<Tripotent, Tripotent> random_commuting_pair(SplitMix64& rng, int dim_max,
                                                      const TolerancePolicy& tol);

/// Random element of the cone c_u (u times a PSD element of the image
/// algebra u* Z_2(u)).
CMatrix random_cone_element(SplitMix64& rng, const PeirceAlgebra& pa);

/// Conjugated direct sum of full matrix blocks inside M_n (square mode,
/// star-closed, unital); multiplicity flavors included.
TroSpacePtr random_cstar_subalgebra(SplitMix64& rng, int n, const TolerancePolicy& tol);

/// *-TRO with Z n span(Z^2) = 0: a subTRO of the odd part of a 2x2 block
/// grading, generated by random selfadjoint odd elements.
TroSpacePtr random_odd_star_tro(SplitMix64& rng, int dim_max,
                                const TolerancePolicy& tol);

struct RandomInstance {
    TroSpacePtr space;
    std::vector<Tripotent> tripotents;
    std::vector<CMatrix> cone_elements; // members of c_t for the first tripotent
};

/// The CLI-facing bundle: space + a few tripotents + cone samples.
RandomInstance random_instance(int dim_max, std::uint64_t seed,
                               const TolerancePolicy& tol);

} // namespace tripc
