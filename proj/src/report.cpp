#include "qdg/report.hpp"

#include <algorithm>
#include <cmath>

namespace qdg {

Check& Report::add(std::string suite, std::string id, std::string site, std::string parameter, double residual,
                   double tolerance, bool expect_fail) {
  const bool below = std::isfinite(residual) && residual < tolerance;
  checks.push_back({std::move(suite), std::move(id), std::move(site), std::move(parameter), residual, tolerance,
                    expect_fail ? !below : below, expect_fail ? "expected to exceed tolerance" : ""});
  return checks.back();
}

Check& Report::flag(std::string suite, std::string id, std::string site, bool pass, std::string note) {
  checks.push_back({std::move(suite), std::move(id), std::move(site), "", 0.0, 0.0, pass, std::move(note)});
  return checks.back();
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (const auto& [k, v] : other.info) info[k] = v;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double Report::max_residual(const std::string& id) const {
  double m = 0;
  for (const auto& c : checks)
    if (c.id == id) m = std::max(m, c.residual);
  return m;
}

std::map<std::string, double> Report::max_by_family() const {
  std::map<std::string, double> m;
  for (const auto& c : checks) m[c.suite + "/" + c.id] = std::max(m[c.suite + "/" + c.id], c.residual);
  return m;
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["pass"] = passed();
  j["entries"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e = {{"suite", c.suite},         {"check", c.id},   {"site", c.site},
                        {"parameter", c.parameter}, {"residual", c.residual},
                        {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    j["entries"].push_back(std::move(e));
  }
  for (const auto& [k, v] : max_by_family()) j["max_residual"][k] = v;
  for (const auto& [k, v] : info) j["info"][k] = v;
  return j;
}

}  // namespace qdg
