#include "corrbell/json_io.hpp"

#include <algorithm>
#include <string>

namespace corrbell {

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line/column from the byte offset.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + e.what(),
                     line, column);
  }
}

Json vec_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json tensor_to_json(const CorrelationTensor& t) {
  Json j;
  j["n_qubits"] = t.n_qubits();
  j["order"] = "xN_fastest";
  j["labels"] = Json::array({"0", "x", "y", "z"});
  j["entries"] = Json(std::vector<double>(t.entries().begin(), t.entries().end()));
  return j;
}

Json verdict_to_json(const CriterionVerdict& v) {
  Json normals = Json::array();
  for (int q = 0; q < v.argmax_frame.n_qubits(); ++q) normals.push_back(vec_to_json(v.argmax_frame.normal(q)));
  Json j;
  j["max_total"] = v.max_total;
  j["entangled"] = v.entangled;
  j["frame"] = {{"normals", std::move(normals)}};
  j["optimizer"] = {{"restarts", v.optimizer.restarts}, {"converged", v.optimizer.converged}};
  return j;
}

Json settings_to_json(const SettingsPair& s) {
  Json out = Json::array();
  for (int q = 0; q < s.n_qubits(); ++q) out.push_back({{"n1", vec_to_json(s.n1(q))}, {"n2", vec_to_json(s.n2(q))}});
  return out;
}

Json bell_to_json(const BellEvaluation& e, const SettingsPair& settings) {
  Json per_s = Json::array();
  for (std::size_t mask = 0; mask < e.per_s_moduli.size(); ++mask) {
    Json s = Json::array();
    for (int q = 0; q < e.n_qubits; ++q) s.push_back((mask >> (e.n_qubits - 1 - q)) & 1u ? -1 : 1);
    per_s.push_back({{"s", std::move(s)}, {"modulus", e.per_s_moduli[mask]}});
  }
  Json j;
  j["n_qubits"] = e.n_qubits;
  j["lhs"] = e.lhs;
  j["bound"] = e.bound;
  j["ratio"] = e.ratio;
  j["violated"] = e.violated;
  j["settings"] = settings_to_json(settings);
  j["per_s"] = std::move(per_s);
  return j;
}

Json lhv_to_json(const LhvModel& m) {
  Json atoms = Json::array();
  for (const auto& atom : m.atoms) {
    Json a1 = Json::array(), a2 = Json::array();
    for (int q = 0; q < m.n_qubits; ++q) {
      a1.push_back(atom.strategy.a1(q, m.n_qubits));
      a2.push_back(atom.strategy.a2(q, m.n_qubits));
    }
    atoms.push_back({{"a1", std::move(a1)}, {"a2", std::move(a2)}, {"p", atom.probability}});
  }
  Json j;
  j["n_qubits"] = m.n_qubits;
  j["atoms"] = std::move(atoms);
  j["noise_weight"] = m.noise_weight;
  return j;
}

SettingsPair parse_settings_file(std::string_view text) {
  const Json doc = parse_json_text(text);
  if (!doc.is_object() || !doc.contains("pairs")) throw SchemaError("settings file needs a 'pairs' array");
  const Json& pairs = doc["pairs"];
  if (!pairs.is_array() || pairs.empty()) throw SchemaError("'pairs' must be a non-empty array");
  auto read_vec = [](const Json& p, const char* key) {
    if (!p.is_object() || !p.contains(key)) throw SchemaError(std::string("missing field '") + key + "' in settings pair");
    const Json& v = p[key];
    if (!v.is_array() || v.size() != 3) throw SchemaError(std::string("'") + key + "' must be [x, y, z]");
    for (const auto& c : v)
      if (!c.is_number()) throw SchemaError(std::string("'") + key + "' must hold numbers");
    return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  };
  std::vector<std::pair<Vec3, Vec3>> dirs;
  for (const auto& p : pairs) dirs.emplace_back(read_vec(p, "n1"), read_vec(p, "n2"));
  return SettingsPair(std::move(dirs));
}

}  // namespace corrbell
