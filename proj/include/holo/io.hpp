#pragma once

// JSON forms of specs, matrices, bases, certificates, metrics and probe
// reports. Rationals are always strings ("p/q" or "p").

#include <filesystem>
#include <string>

#include "json.hpp"

#include "holo/berger.hpp"
#include "holo/canonical.hpp"
#include "holo/liealg.hpp"
#include "holo/probe.hpp"
#include "holo/realize.hpp"

namespace holo {

using Json = nlohmann::json;

Json matrix_to_json(const RatMatrix& m);
/// Throws SpecError on malformed input.
RatMatrix matrix_from_json(const Json& j);

/// {"eigenvalues":[{"lambda":"0","blocks":[{"size":2,"sign":1}]}]}.
/// Throws SpecError for malformed specs and UnsupportedError for complex
/// eigenvalues (a lambda with an imaginary part or an "imag" field).
PencilSpec pencil_from_json(const Json& j);
Json pencil_to_json(const PencilSpec& spec);

/// List of {"matrix": rows, "tag": [i, j]} (tag omitted when absent).
Json basis_to_json(const SubspaceBasis& basis);

/// {dim_gL, image_rank, bianchi_ok, containment_ok, witnesses: [[i,j],...]}
Json certificate_to_json(const BergerCertificate& cert);

/// {"g0": rows, "B_lowered": [i][j][p][q]}
Json metric_to_json(const QuadraticMetric& qm);
QuadraticMetric metric_from_json(const Json& j);

/// {span_rank, dim_gL, max_membership_residual, samples:[{plane, side,
/// basepoint, residual}]} plus gap, max_metric_defect and singular_values.
Json span_report_to_json(const SpanReport& rep);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace holo
