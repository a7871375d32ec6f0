// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "tripc/conelab.hpp"

namespace tripc {

// JSON wire formats (shared with the CLI):
//   CMatrix      {"rows":p,"cols":q,"data":[[re,im],...]}   row-major
//   TroSpace     {"p":..,"q":..,"square_mode":bool,"basis":[CMatrix,...]}
//   Tripotent    {"space":TroSpace,"u":CMatrix}
//   Morphism     {"domain":TroSpace,"codomain":TroSpace,"action":CMatrix}
//   OrderedSpace {"p":..,"q":..,"square_mode":bool,
//                 "space_basis":[...],"cone_generators":[...]}
//   ConeReport   {"verdict":bool,"decided":bool,"residuals":{..},
//                 "witnesses":[CMatrix,...]}
// Doubles print as shortest round-trip decimals, so every document re-parses
// into the producing value bit-compatibly.

std::string cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const std::string& text);

std::string tro_to_json(const TroSpace& z);
TroSpacePtr tro_from_json(const std::string& text, const TolerancePolicy& tol);

std::string tripotent_to_json(const Tripotent& t);
Tripotent tripotent_from_json(const std::string& text, const TolerancePolicy& tol);

std::string morphism_to_json(const TernaryMorphism& t);

std::string ordered_to_json(const OrderedSpace& x);
OrderedSpace ordered_from_json(const std::string& text, const TolerancePolicy& tol);

std::string report_to_json(const ConeReport& r);

/// Slurps a file; InputError("FileError") when unreadable.
std::string read_text_file(const std::string& path);

} // namespace tripc
