// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tripc {

/// Base class of every error raised by the library. `kind()` carries a stable
/// machine-readable tag (e.g. "NotHermitian", "SupDoesNotExist").
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Invalid input or a failed precondition. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Two routes that must agree (cross-validated criteria, formula vs. oracle)
/// disagreed beyond tolerance. This signals a tolerance pathology, never a
/// best-effort answer. The CLI maps these to exit code 3.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace tripc
