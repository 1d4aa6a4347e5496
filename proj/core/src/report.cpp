#include "evocert/report.hpp"

#include <json.hpp>

namespace evocert {

namespace {

using json = nlohmann::ordered_json;

json certificate_json(const Certificate& c) {
  return json{{"kind", c.kind},
              {"margin", c.margin},
              {"threshold", c.threshold},
              {"passed", c.passed}};
}

json theorem_json(const TheoremRow& row) {
  json residuals = json::object();
  for (const auto& [name, value] : row.report.residuals) residuals[name] = value;
  json j{{"theorem", row.report.theorem},
         {"residuals", residuals},
         {"passed", row.report.passed},
         {"expected", row.expected},
         {"ok", row.ok()}};
  if (!row.report.note.empty()) j["note"] = row.report.note;
  return j;
}

}  // namespace

bool RunReport::all_ok() const {
  for (const auto& c : certificates)
    if (!c.passed) return false;
  for (const auto& t : theorems)
    if (!t.ok()) return false;
  if (solve && !solve->bound_ok) return false;
  return true;
}

std::string to_json_string(const RunReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["config_hash"] = r.config_hash;
  j["seed"] = r.seed;
  j["version"] = r.version;
  j["certificates"] = json::array();
  for (const auto& c : r.certificates)
    j["certificates"].push_back(certificate_json(c));
  j["theorems"] = json::array();
  for (const auto& t : r.theorems) j["theorems"].push_back(theorem_json(t));
  if (r.solve) {
    double max_cond = 0.0;
    for (double c : r.solve->step_conditions) max_cond = std::max(max_cond, c);
    j["solve"] = json{
        {"norms",
         json{{"forcing", r.solve->forcing_norm},
              {"solution", r.solve->solution_norm},
              {"residual", r.solve->residual_norm}}},
        {"margin", r.solve->margin},
        {"bound_ok", r.solve->bound_ok},
        {"causality_residual", r.solve->causality_residual},
        {"max_step_condition", max_cond},
    };
  }
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

}  // namespace evocert
