#pragma once

// JSON report formats for every analysis, plus the settings-file reader.

#include <string_view>

#include "json.hpp"

#include "corrbell/bellgen.hpp"
#include "corrbell/infocrit.hpp"
#include "corrbell/lhv.hpp"
#include "corrbell/pauli_tensor.hpp"

namespace corrbell {

using Json = nlohmann::ordered_json;

/// {"n_qubits", "order": "xN_fastest", "labels": ["0","x","y","z"], "entries"}
Json tensor_to_json(const CorrelationTensor& t);
/// {"max_total", "entangled", "frame": {"normals"}, "optimizer": {"restarts", "converged"}}
Json verdict_to_json(const CriterionVerdict& v);
/// {"n_qubits", "lhs", "bound", "ratio", "violated", "settings", "per_s"}
Json bell_to_json(const BellEvaluation& e, const SettingsPair& settings);
/// {"n_qubits", "atoms": [{"a1", "a2", "p"}], "noise_weight"}
Json lhv_to_json(const LhvModel& m);

Json vec_to_json(const Vec3& v);
Json settings_to_json(const SettingsPair& s);

/// {"pairs": [{"n1": [x,y,z], "n2": [x,y,z]}, ...]}. Throws ParseError,
/// SchemaError or DomainError (non-unit vectors).
SettingsPair parse_settings_file(std::string_view text);

/// Parses text as JSON, mapping syntax errors to ParseError with line and
/// column.
Json parse_json_text(std::string_view text);

}  // namespace corrbell
