// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tripc/linalg.hpp"

namespace tripc {

struct SuiteConfig {
    std::string suite;
    int trials = 0;    // 0 = the suite's default count
    int dim_max = 4;   // ambient dimension bound (p, q <= dim_max)
    std::uint64_t seed = 0;
    TolerancePolicy tol;
};

struct TrialFailure {
    int trial = 0;
    std::string check;
    double residual = 0.0;
    std::string witness_json; // full instance dump for reproduction
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    int passed = 0;
    int failed = 0;
    std::map<std::string, double> max_residuals;
    std::vector<TrialFailure> failures; // capped at 8 witnesses
    double elapsed_seconds = 0.0;

    std::string to_json() const;
};

/// Suite names: order-equiv, sup-inf, cone-lemmas, hat-lemmas, block-bounds,
/// peirce-cstar, quotient-positivity, boundary-cone, annihilator-maximal.
const std::vector<std::string>& suite_names();

/// Default trial count of a suite (the acceptance budget).
int suite_default_trials(const std::string& name);

/// Runs one suite; throws InputError("UnknownSuite") for unknown names.
SuiteReport run_suite(const SuiteConfig& config);

} // namespace tripc
